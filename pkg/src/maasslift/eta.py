"""Dedekind eta quotients and the named scalar forms used by the lift pipeline.

``T`` always counts integer q-steps past the leading exponent: a form with
leading term ``q^v`` is returned exact for exponents ``< v + T``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from ._cache import SeriesCache
from .qseries import PuiseuxSeries, series_pow, series_rescale


@dataclass(frozen=True)
class EtaQuotientSpec:
    """``prod eta(m z)^r`` over ``factors = ((m, r), ...)``."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        factors = tuple((int(m), int(r)) for m, r in self.factors)
        ms = [m for m, _ in factors]
        if any(m <= 0 for m in ms):
            raise DomainError("eta multipliers must be positive")
        if len(set(ms)) != len(ms):
            raise DomainError(f"eta multipliers must be distinct: {ms}")
        object.__setattr__(self, "factors", factors)

    @property
    def valuation(self) -> Fraction:
        return Fraction(sum(m * r for m, r in self.factors), 24)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.factors), 2)

    @classmethod
    def parse(cls, text: str) -> "EtaQuotientSpec":
        """Parse ``"3^8"`` or ``"1^12,3^-12"`` (commas or spaces)."""
        factors = []
        for tok in re.split(r"[,\s]+", text.strip()):
            if not tok:
                continue
            m = re.fullmatch(r"(\d+)\^\(?(-?\d+)\)?", tok.replace("−", "-"))
            if not m:
                raise DomainError(f"bad eta factor {tok!r}; expected m^r")
            factors.append((int(m.group(1)), int(m.group(2))))
        return cls(tuple(factors))

    def __str__(self):
        return ",".join(f"{m}^{r}" for m, r in self.factors) or "1"


@lru_cache(maxsize=64)
def euler_product(n_terms: int) -> PuiseuxSeries:
    """``prod_{n>=1} (1 - q^n)`` exact below ``q^n_terms``, via the pentagonal number theorem."""
    coeffs = {}
    k = 0
    while True:
        emitted = False
        for kk in ((k, -k) if k else (0,)):
            e = kk * (3 * kk - 1) // 2
            if e < n_terms:
                coeffs[e] = Fraction(-1 if kk % 2 else 1)
                emitted = True
        if not emitted:
            break
        k += 1
    return PuiseuxSeries(1, coeffs, n_terms)


def _factor_series(m: int, r: int, n_terms: int) -> PuiseuxSeries:
    """``prod (1 - q^{mn})^r`` exact below ``q^n_terms``."""
    inner = -(-n_terms // m)
    base = series_pow(euler_product(inner), r)
    return series_rescale(base, m).truncate(n_terms)


def eta_quotient(spec: EtaQuotientSpec | str, T: int) -> PuiseuxSeries:
    """q-expansion of ``prod eta(m z)^r`` with ``eta = q^(1/24) prod (1 - q^n)``."""
    if isinstance(spec, str):
        spec = EtaQuotientSpec.parse(spec)
    if T < 1:
        raise DomainError("T must be at least 1")
    out = PuiseuxSeries(1, {0: Fraction(1)}, T)
    for m, r in spec.factors:
        if r:
            out = (out * _factor_series(m, r, T)).truncate(T)
    return out.shift(spec.valuation)


@lru_cache(maxsize=64)
def _sigma3(n_terms: int) -> list[int]:
    sig = [0] * n_terms
    for d in range(1, n_terms):
        d3 = d ** 3
        for k in range(d, n_terms, d):
            sig[k] += d3
    return sig


def eisenstein_e4(T: int) -> PuiseuxSeries:
    sig = _sigma3(T)
    coeffs = {0: Fraction(1)}
    for n in range(1, T):
        coeffs[n] = Fraction(240 * sig[n])
    return PuiseuxSeries(1, coeffs, T)


def _j(T):
    e4 = eisenstein_e4(T)
    return series_pow(e4, 3) * eta_quotient(EtaQuotientSpec(((1, -24),)), T)


def _F(T):
    first = eta_quotient(EtaQuotientSpec(((1, 10), (2, -5), (4, -6))), T)
    second = eta_quotient(EtaQuotientSpec(((1, 2), (2, -5), (4, 2))), max(T - 1, 1))
    return first + second * 20


def _w(T):
    a = eta_quotient(EtaQuotientSpec(((1, -3), (3, 2), (9, -3))), T)
    b = eta_quotient(EtaQuotientSpec(((1, 3), (3, -10), (9, 3))), max(T - 1, 1))
    c = eta_quotient(EtaQuotientSpec(((3, -10), (9, 6))), max(T - 2, 1))
    return a - b * 3 - c * 18


NAMED_FORMS = {
    "F": _F,
    "j": _j,
    "j3": lambda T: eta_quotient(EtaQuotientSpec(((1, 12), (3, -12))), T),
    "Delta3": lambda T: eta_quotient(EtaQuotientSpec(((1, 6), (3, 6))), T),
    # the CM newform g = eta(3z)^8
    "eta8": lambda T: eta_quotient(EtaQuotientSpec(((3, 8),)), T),
    "w": _w,
}


LEADING_EXPONENT = {"F": -1, "j": -1, "j3": -1, "Delta3": 1, "eta8": 1, "w": -1}

_named_cache = SeriesCache()


def named_form(name: str, T: int) -> PuiseuxSeries:
    """Expansion of one of ``F, j, j3, Delta3, w, eta8`` with ``T`` terms past the leading exponent.

    Results are memoised per name; a cached longer expansion is truncated,
    which is identical to computing the shorter one directly.
    """
    try:
        build = NAMED_FORMS[name]
    except KeyError:
        raise DomainError(f"unknown form {name!r}; choose from {sorted(NAMED_FORMS)}") from None
    if T < 1:
        raise DomainError("T must be at least 1")
    precision = LEADING_EXPONENT[name] + T
    hit = _named_cache.get(name, precision)
    if hit is not None:
        return hit
    series = build(T)
    _named_cache.put(name, series)
    return series


def eta_power(r: int, T: int) -> PuiseuxSeries:
    """``eta(tau)^r`` with ``T`` terms."""
    return eta_quotient(EtaQuotientSpec(((1, r),)), T)


def terms_for_precision(valuation, precision) -> int:
    """Number of integer steps ``T`` so that a form with leading exponent
    ``valuation`` is known for every exponent ``< precision``."""
    return max(1, math.ceil(Fraction(precision) - Fraction(valuation)))
