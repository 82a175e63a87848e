"""Vector-valued q-series indexed by a cyclic discriminant group Z/nZ.

Three instances are used:

* Z/3 from the Eisenstein lattice (O_k, Nm): the weight-4 basis ``f_m``
  (with ``kappa`` odd, so component 0 vanishes and component 2 is minus
  component 1),
* Z/2 from Z[1]: the Kohnen split of the weight -1/2 form ``F``,
* Z/6 from their tensor product, via ``mu -> (mu mod 3, mu mod 2)``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, PrecisionError
from .exact import Polynomial, as_rational
from .eta import eta_power, named_form
from .qseries import PuiseuxSeries


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def _parity(kappa) -> int:
    if kappa in ("even", 0):
        return 0
    if kappa in ("odd", 1):
        return 1
    if isinstance(kappa, int):
        return kappa % 2
    raise DomainError(f"kappa parity must be 'even' or 'odd', got {kappa!r}")


@dataclass(frozen=True)
class VectorValuedSeries:
    """``sum_mu components[mu] * phi_mu`` over Z/nZ.

    The symmetry ``f_{n-mu} = (-1)^kappa f_mu`` is checked on construction
    (coefficient by coefficient on the common known range), and all
    components are brought to one ``den``.
    """

    n: int
    components: dict
    kappa: int = 0
    weight: Fraction = Fraction(0)
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("modulus must be positive")
        kappa = _parity(self.kappa)
        comps = {}
        den = 1
        for mu, s in self.components.items():
            if not 0 <= mu < self.n:
                raise DomainError(f"component index {mu} outside Z/{self.n}")
            den = _lcm(den, s.den)
        for mu in range(self.n):
            s = self.components.get(mu)
            comps[mu] = PuiseuxSeries.zero(den, None) if s is None else s.with_den(den)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "weight", as_rational(self.weight))
        if self.check:
            self.check_symmetry()

    @property
    def den(self) -> int:
        return self.components[0].den

    def __getitem__(self, mu: int) -> PuiseuxSeries:
        return self.components[mu % self.n]

    def coeff(self, e, mu: int):
        return self.components[mu % self.n].coeff(e)

    def check_symmetry(self) -> None:
        sign = -1 if self.kappa else 1
        for mu in range(self.n):
            a, b = self.components[mu], self.components[(-mu) % self.n]
            if not a.compare(b * sign)[0]:
                raise DomainError(
                    f"component {(-mu) % self.n} != {sign:+d} * component {mu} (kappa parity {self.kappa})")

    def exponent_classes(self) -> dict:
        """``{mu: e mod 1}`` for each non-zero component; raises if a component mixes classes."""
        out = {}
        for mu, s in self.components.items():
            classes = {e % 1 for e, _ in s.terms()}
            if len(classes) > 1:
                raise DomainError(f"component {mu} mixes exponent classes {sorted(classes)}")
            if classes:
                out[mu] = classes.pop()
        return out

    def principal_part(self, mu: int) -> PuiseuxSeries:
        return self.components[mu % self.n].principal_part()

    def __add__(self, other: "VectorValuedSeries"):
        self._same_shape(other)
        return VectorValuedSeries(self.n, {mu: self[mu] + other[mu] for mu in range(self.n)},
                                  self.kappa, self.weight)

    def __neg__(self):
        return VectorValuedSeries(self.n, {mu: -s for mu, s in self.components.items()}, self.kappa, self.weight)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "VectorValuedSeries":
        return VectorValuedSeries(self.n, {mu: s * c for mu, s in self.components.items()},
                                  self.kappa, self.weight, check=False)

    def _same_shape(self, other):
        if other.n != self.n:
            raise DomainError(f"discriminant groups differ: Z/{self.n} vs Z/{other.n}")

    def truncate(self, exponent) -> "VectorValuedSeries":
        return VectorValuedSeries(self.n, {mu: s.truncate(exponent) for mu, s in self.components.items()},
                                  self.kappa, self.weight, check=False)

    def equals(self, other: "VectorValuedSeries") -> bool:
        return other.n == self.n and all(self[mu] == other[mu] for mu in range(self.n))


def indicator_vector(n: int, values: dict, kappa=0) -> VectorValuedSeries:
    """Constant vector ``sum values[mu] * phi_mu`` (exact)."""
    return VectorValuedSeries(n, {mu: PuiseuxSeries.constant(as_rational(c)) for mu, c in values.items()},
                              kappa, Fraction(0))


PHI_ETA = {1: 1, 5: -1, 7: -1, 11: 1}


# -- the weight-4 basis over Z/3 -------------------------------------------

_powers_lock = threading.Lock()
_powers_cache: dict = {}


def _eta8_j_powers(n: int, T: int) -> list[PuiseuxSeries]:
    """``[eta^8 j^i for i = 0..n]``, each exact below ``q^(1/3 - i + T)``."""
    with _powers_lock:
        hit = _powers_cache.get("powers")
    if hit is not None:
        T0, seq = hit
        if T0 >= T and len(seq) > n:
            return [s.truncate(Fraction(1, 3) - i + T) for i, s in enumerate(seq[: n + 1])]
    eta8 = eta_power(8, T)
    j = named_form("j", T)
    seq = [eta8]
    for _ in range(n):
        seq.append(seq[-1] * j)
    with _powers_lock:
        old = _powers_cache.get("powers")
        if old is None or (old[0] <= T and len(old[1]) <= len(seq)):
            _powers_cache["powers"] = (T, seq)
    return seq


def _check_basis_index(m) -> Fraction:
    m = as_rational(m)
    if (m - Fraction(2, 3)) % 1 != 0 or m < Fraction(-1, 3):
        raise DomainError(f"basis index must satisfy m = 2/3 mod 1 and m >= -1/3, got {m}")
    return m


def basis_polynomial(m, T: int | None = None) -> Polynomial:
    """Monic ``P`` of degree ``m + 1/3`` with ``P(j) eta^8 = q^(-m) + O(q^(4/3))``.

    Solved top-down: the system in the basis ``eta^8 j^i`` is unitriangular
    because ``j = q^-1 + O(1)``.
    """
    m = _check_basis_index(m)
    n = int(m + Fraction(1, 3))
    if n == 0:
        return Polynomial([1])
    powers = _eta8_j_powers(n, max(T or 0, n + 2))
    p = [Fraction(0)] * (n + 1)
    p[n] = Fraction(1)
    for k in range(n - 1, -1, -1):
        e = Fraction(1, 3) - k
        p[k] = -sum((p[i] * powers[i].coeff(e) for i in range(k + 1, n + 1)), Fraction(0))
    return Polynomial(p)


def basis_fm(m, T: int) -> VectorValuedSeries:
    """``f_m = 1/2 P(j) eta^8 (phi_1 - phi_2)``; ``T`` steps past the leading exponent ``-m``."""
    m = _check_basis_index(m)
    n = int(m + Fraction(1, 3))
    if T < 1:
        raise DomainError("T must be at least 1")
    P = basis_polynomial(m)
    powers = _eta8_j_powers(n, T + n)
    prec = -m + T
    total = None
    for i, c in enumerate(P.coeffs):
        if c:
            term = powers[i].truncate(prec) * c
            total = term if total is None else total + term
    half = (total * Fraction(1, 2)).truncate(prec)
    return VectorValuedSeries(3, {0: PuiseuxSeries.zero(3, None), 1: half, 2: -half}, kappa=1, weight=4)


# -- the Kohnen split of F over Z/2 ----------------------------------------

def kohnen_split(T: int) -> VectorValuedSeries:
    """``F_0(tau/4) phi_0 + F_1(tau/4) phi_1``, exact below ``q^(-1/4 + T)``."""
    F = named_form("F", 4 * T)
    bad = [e for e, _ in F.terms() if e % 4 not in (0, 3)]
    if bad:
        raise DomainError(f"F is not in the plus space: exponents {bad[:5]}")
    # index n in units of 1/4 is exactly the term q^(n/4) of F(tau/4)
    comp0 = PuiseuxSeries(4, {n: c for n, c in F.coeffs.items() if n % 4 == 0}, F.trunc)
    comp1 = PuiseuxSeries(4, {n: c for n, c in F.coeffs.items() if n % 4 == 3}, F.trunc)
    return VectorValuedSeries(2, {0: comp0, 1: comp1}, kappa=0, weight=Fraction(-1, 2))


# -- tensor products and pairing -------------------------------------------

def _crt_index(n1: int, n2: int):
    if math.gcd(n1, n2) != 1:
        raise DomainError(f"tensor needs coprime moduli, got {n1} and {n2}")
    return lambda mu: (mu % n1, mu % n2)


def tensor(f: VectorValuedSeries, g: VectorValuedSeries) -> VectorValuedSeries:
    """Component ``mu`` of the result is ``f[mu mod n1] * g[mu mod n2]``."""
    idx = _crt_index(f.n, g.n)
    n = f.n * g.n
    comps = {}
    for mu in range(n):
        a, b = idx(mu)
        comps[mu] = f[a] * g[b]
    return VectorValuedSeries(n, comps, (f.kappa + g.kappa) % 2, f.weight + g.weight)


class LazyTensor:
    """Tensor product whose coefficients are convolved on demand.

    The lift only needs the coefficients at ``d^2/12``, so multiplying the
    full components would waste almost all of the work.
    """

    def __init__(self, f: VectorValuedSeries, g: VectorValuedSeries):
        self._idx = _crt_index(f.n, g.n)
        self.f, self.g = f, g
        self.n = f.n * g.n
        self.kappa = (f.kappa + g.kappa) % 2
        self.weight = f.weight + g.weight
        self._terms = {}

    def _factor_terms(self, mu):
        a, b = self._idx(mu % self.n)
        key = (a, b)
        if key not in self._terms:
            self._terms[key] = (self.f[a].terms(), self.g[b])
        return self._terms[key], self.f[a], self.g[b]

    def precision(self, mu: int):
        (_, _), fa, gb = self._factor_terms(mu)
        if fa.is_zero() and fa.trunc is None or gb.is_zero() and gb.trunc is None:
            return None
        bounds = []
        if fa.trunc is not None:
            bounds.append(fa.precision + gb.valuation_exponent)
        if gb.trunc is not None:
            bounds.append(gb.precision + fa.valuation_exponent)
        return min(bounds) if bounds else None

    def coeff(self, e, mu: int):
        e = as_rational(e)
        (fterms, gb), fa, _ = self._factor_terms(mu)
        if not fterms or (gb.is_zero() and gb.trunc is None):
            return Fraction(0)
        prec = self.precision(mu)
        if prec is not None and e >= prec:
            raise PrecisionError(f"tensor coefficient at {e} on component {mu} is beyond O(q^{prec})")
        gv = gb.valuation_exponent
        total = Fraction(0)
        for ea, ca in fterms:
            eb = e - ea
            if gv is not None and eb < gv:
                break
            cb = gb.coeff(eb)
            if cb:
                total += ca * cb
        return total

    def principal_part(self, mu: int) -> PuiseuxSeries:
        (fterms, gb), fa, _ = self._factor_terms(mu)
        if not fterms or gb.is_zero():
            return PuiseuxSeries.zero(1, None)
        a = PuiseuxSeries(fa.den, {n: c for n, c in fa.coeffs.items() if Fraction(n, fa.den) + gb.valuation_exponent < 0}, None)
        b = PuiseuxSeries(gb.den, {n: c for n, c in gb.coeffs.items() if Fraction(n, gb.den) + fa.valuation_exponent < 0}, None)
        return (a * b).principal_part()

    def materialize(self, precision) -> VectorValuedSeries:
        comps = {}
        for mu in range(self.n):
            a, b = self._idx(mu)
            comps[mu] = (self.f[a].truncate(precision - self.g[b].valuation_exponent if not self.g[b].is_zero() else precision)
                         * self.g[b]).truncate(precision)
        return VectorValuedSeries(self.n, comps, self.kappa, self.weight)


def pairing(f: VectorValuedSeries, g: VectorValuedSeries) -> PuiseuxSeries:
    """``sum_mu f_mu * g_mu``."""
    if f.n != g.n:
        raise DomainError(f"pairing needs equal discriminant groups, got Z/{f.n} and Z/{g.n}")
    total = None
    for mu in range(f.n):
        term = f[mu] * g[mu]
        total = term if total is None else total + term
    return total
