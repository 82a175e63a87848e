"""Truncated Puiseux series in q^(1/den) with exact coefficients.

A :class:`PuiseuxSeries` stores ``{n: c}`` meaning ``sum c * q^(n/den)``; it is
exact for exponents ``n/den < trunc/den`` and unknown from there on.  A
``trunc`` of ``None`` marks an exact (finite) series such as a monomial.

Coefficients are :class:`fractions.Fraction` or :class:`~maasslift.exact.QuadElem`.
Products of rational series run on integers after clearing denominators,
which keeps the large eta-quotient expansions fast.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import DomainError, PrecisionError
from .exact import QuadElem, as_rational, format_coefficient, format_rational, parse_coefficient

_SCALARS = (int, Fraction, QuadElem)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _min_trunc(*ts):
    vals = [t for t in ts if t is not None]
    return min(vals) if vals else None


def _add_trunc(t, v):
    return None if t is None else t + v


class PuiseuxSeries:
    __slots__ = ("den", "coeffs", "trunc")

    def __init__(self, den: int, coeffs: Mapping[int, object] | None = None, trunc: int | None = None):
        if not isinstance(den, int) or den <= 0:
            raise DomainError(f"den must be a positive integer, got {den!r}")
        clean = {}
        for n, c in (coeffs or {}).items():
            if trunc is not None and n >= trunc:
                continue
            if isinstance(c, int):
                c = Fraction(c)
            if c:
                clean[int(n)] = c
        self.den = den
        self.coeffs = clean
        self.trunc = trunc

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, den: int = 1, trunc: int | None = None) -> "PuiseuxSeries":
        return cls(den, {}, trunc)

    @classmethod
    def constant(cls, c, den: int = 1, trunc: int | None = None) -> "PuiseuxSeries":
        return cls(den, {0: c}, trunc)

    @classmethod
    def monomial(cls, exponent, c=1, trunc_exponent=None) -> "PuiseuxSeries":
        e = as_rational(exponent)
        den = e.denominator
        trunc = None if trunc_exponent is None else _exp_to_index(as_rational(trunc_exponent), den)
        return cls(den, {e.numerator: c}, trunc)

    @classmethod
    def from_list(cls, coeffs: Iterable, start: int = 0, den: int = 1, trunc: int | None = None) -> "PuiseuxSeries":
        """Dense constructor: ``coeffs[i]`` is the coefficient of ``q^((start+i)/den)``.

        ``trunc`` defaults to one past the last listed index.
        """
        coeffs = list(coeffs)
        if trunc is None:
            trunc = start + len(coeffs)
        return cls(den, {start + i: c for i, c in enumerate(coeffs)}, trunc)

    # basic properties ---------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.trunc is None

    @property
    def valuation(self):
        """Smallest stored index (in units of 1/den); ``trunc`` for a zero series."""
        if self.coeffs:
            return min(self.coeffs)
        return self.trunc

    @property
    def valuation_exponent(self) -> Fraction | None:
        v = self.valuation
        return None if v is None else Fraction(v, self.den)

    @property
    def precision(self) -> Fraction | None:
        """Exponent bound: the series is exact below ``q^precision``."""
        return None if self.trunc is None else Fraction(self.trunc, self.den)

    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self) -> list[tuple[int, object]]:
        return sorted(self.coeffs.items())

    def terms(self) -> list[tuple[Fraction, object]]:
        return [(Fraction(n, self.den), c) for n, c in self.items()]

    def __iter__(self) -> Iterator[tuple[Fraction, object]]:
        return iter(self.terms())

    def __len__(self):
        return len(self.coeffs)

    def is_rational(self) -> bool:
        return all(not isinstance(c, QuadElem) or c.b == 0 for c in self.coeffs.values())

    # coefficient access -------------------------------------------------

    def coeff(self, e):
        """Coefficient of ``q^e``; raises :class:`PrecisionError` at or past the truncation."""
        e = as_rational(e)
        scaled = e * self.den
        if self.trunc is not None and scaled >= self.trunc:
            raise PrecisionError(f"exponent {format_rational(e)} is not below the truncation O(q^{format_rational(self.precision)})")
        if scaled.denominator != 1:
            return Fraction(0)
        return self.coeffs.get(scaled.numerator, Fraction(0))

    __getitem__ = coeff

    # re-indexing --------------------------------------------------------

    def with_den(self, den: int) -> "PuiseuxSeries":
        if den % self.den:
            raise DomainError(f"den {den} is not a multiple of {self.den}")
        k = den // self.den
        if k == 1:
            return self
        return PuiseuxSeries(den, {n * k: c for n, c in self.coeffs.items()}, _scale_trunc(self.trunc, k))

    def normalized(self) -> "PuiseuxSeries":
        """Same series with the smallest possible ``den``."""
        g = self.den
        for n in self.coeffs:
            g = math.gcd(g, n)
        if self.trunc is not None:
            # keep the truncation representable
            g = math.gcd(g, self.trunc)
        if g == 1:
            return self
        return PuiseuxSeries(self.den // g, {n // g: c for n, c in self.coeffs.items()},
                             None if self.trunc is None else self.trunc // g)

    def truncate(self, exponent) -> "PuiseuxSeries":
        """Forget everything at and above ``q^exponent``."""
        e = as_rational(exponent)
        den = _lcm(self.den, e.denominator)
        f = self.with_den(den)
        t = (e * den).numerator
        return PuiseuxSeries(den, f.coeffs, _min_trunc(f.trunc, t))

    def shift(self, exponent) -> "PuiseuxSeries":
        """Multiply by ``q^exponent`` exactly."""
        e = as_rational(exponent)
        den = _lcm(self.den, e.denominator)
        f = self.with_den(den)
        s = (e * den).numerator
        return PuiseuxSeries(den, {n + s: c for n, c in f.coeffs.items()}, _add_trunc(f.trunc, s))

    def map_coefficients(self, func) -> "PuiseuxSeries":
        return PuiseuxSeries(self.den, {n: func(c) for n, c in self.coeffs.items()}, self.trunc)

    def filter_indices(self, predicate) -> "PuiseuxSeries":
        """Keep terms whose exponent ``e`` satisfies ``predicate(e)``; truncation unchanged."""
        return PuiseuxSeries(self.den, {n: c for n, c in self.coeffs.items() if predicate(Fraction(n, self.den))}, self.trunc)

    def principal_part(self) -> "PuiseuxSeries":
        return PuiseuxSeries(self.den, {n: c for n, c in self.coeffs.items() if n < 0}, None)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "PuiseuxSeries | None":
        if isinstance(other, PuiseuxSeries):
            return other
        if isinstance(other, _SCALARS):
            return PuiseuxSeries.constant(other, self.den, None)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        den = _lcm(self.den, o.den)
        a, b = self.with_den(den), o.with_den(den)
        out = dict(a.coeffs)
        for n, c in b.coeffs.items():
            out[n] = out[n] + c if n in out else c
        return PuiseuxSeries(den, out, _min_trunc(a.trunc, b.trunc))

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(self.den, {n: -c for n, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            if isinstance(other, int):
                other = Fraction(other)
            return PuiseuxSeries(self.den, {n: c * other for n, c in self.coeffs.items()}, self.trunc)
        if isinstance(other, PuiseuxSeries):
            return series_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            inv = Fraction(1) / other if isinstance(other, (int, Fraction)) else other.inverse()
            return self * inv
        if isinstance(other, PuiseuxSeries):
            return series_mul(self, series_inv(other))
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        return series_pow(self, e)

    # comparison ---------------------------------------------------------

    def compare(self, other) -> tuple[bool, Fraction | None]:
        """Compare on the common known range; returns ``(equal, exponent_bound)``."""
        o = self._coerce(other)
        if o is None:
            raise DomainError(f"cannot compare a series with {other!r}")
        den = _lcm(self.den, o.den)
        a, b = self.with_den(den), o.with_den(den)
        t = _min_trunc(a.trunc, b.trunc)
        keys = set(a.coeffs) | set(b.coeffs)
        for n in keys:
            if t is not None and n >= t:
                continue
            if a.coeffs.get(n, 0) != b.coeffs.get(n, 0):
                return False, None if t is None else Fraction(t, den)
        return True, None if t is None else Fraction(t, den)

    def __eq__(self, other):
        if not isinstance(other, (PuiseuxSeries,) + _SCALARS):
            return NotImplemented
        return self.compare(other)[0]

    __hash__ = None

    def first_difference(self, other) -> Fraction | None:
        """Smallest exponent (in the common range) where the two series differ."""
        o = self._coerce(other)
        den = _lcm(self.den, o.den)
        a, b = self.with_den(den), o.with_den(den)
        t = _min_trunc(a.trunc, b.trunc)
        bad = [n for n in set(a.coeffs) | set(b.coeffs)
               if (t is None or n < t) and a.coeffs.get(n, 0) != b.coeffs.get(n, 0)]
        return Fraction(min(bad), den) if bad else None

    # text ---------------------------------------------------------------

    def dump(self) -> str:
        return series_dump(self)

    def __repr__(self):
        shown = self.terms()[:6]
        body = " + ".join(f"({format_coefficient(c)})*q^({format_rational(e)})" for e, c in shown)
        if len(self.coeffs) > 6:
            body += " + ..."
        tail = "" if self.trunc is None else f" + O(q^({format_rational(self.precision)}))"
        return f"PuiseuxSeries({body or '0'}{tail})"

    def to_json(self) -> dict:
        return {
            "den": self.den,
            "trunc": self.trunc,
            "terms": [[format_rational(e), format_coefficient(c)] for e, c in self.terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PuiseuxSeries":
        den = data["den"]
        coeffs = {}
        for e, c in data["terms"]:
            idx = Fraction(e) * den
            coeffs[idx.numerator] = parse_coefficient(c)
        return cls(den, coeffs, data["trunc"])


def _exp_to_index(e: Fraction, den: int) -> int:
    v = e * den
    if v.denominator != 1:
        raise DomainError(f"exponent {e} not representable with den {den}")
    return v.numerator


def _scale_trunc(t, k):
    return None if t is None else t * k


def _common_den(a: PuiseuxSeries, b: PuiseuxSeries):
    den = _lcm(a.den, b.den)
    return den, a.with_den(den), b.with_den(den)


def _all_rational(coeffs) -> bool:
    return all(isinstance(c, Fraction) for c in coeffs)


def _to_integers(items):
    """Scale rational coefficients to integers: returns ``(scale, [(n, int)])``."""
    d = 1
    for _, c in items:
        if c.denominator != 1:
            d = _lcm(d, c.denominator)
    if d == 1:
        return 1, [(n, c.numerator) for n, c in items]
    return d, [(n, c.numerator * (d // c.denominator)) for n, c in items]


def series_mul(f: PuiseuxSeries, g: PuiseuxSeries) -> PuiseuxSeries:
    """Exact product; known below ``min(f.trunc + val(g), g.trunc + val(f))``."""
    den, f, g = _common_den(f, g)
    vf, vg = f.valuation, g.valuation
    if (f.is_zero() and f.trunc is None) or (g.is_zero() and g.trunc is None):
        return PuiseuxSeries.zero(den, None)
    trunc = _min_trunc(_add_trunc(f.trunc, vg), _add_trunc(g.trunc, vf))
    if f.is_zero() or g.is_zero():
        return PuiseuxSeries.zero(den, trunc)
    fa, ga = f.items(), g.items()
    if len(fa) > len(ga):
        fa, ga = ga, fa
    base = fa[0][0] + ga[0][0]
    top = fa[-1][0] + ga[-1][0] + 1
    limit = top if trunc is None else min(top, trunc)
    if limit <= base:
        return PuiseuxSeries.zero(den, trunc)
    size = limit - base
    if _all_rational(c for _, c in fa) and _all_rational(c for _, c in ga):
        sf, fi = _to_integers(fa)
        sg, gi = _to_integers(ga)
        out = _convolve(fi, gi, base, size, 0)
        scale = sf * sg
        if scale == 1:
            coeffs = {base + k: Fraction(c) for k, c in enumerate(out) if c}
        else:
            coeffs = {base + k: Fraction(c, scale) for k, c in enumerate(out) if c}
    else:
        out = _convolve(fa, ga, base, size, Fraction(0))
        coeffs = {base + k: c for k, c in enumerate(out) if c}
    return PuiseuxSeries(den, coeffs, trunc)


def _convolve(fa, ga, base, size, zero):
    out = [zero] * size
    g_idx = [j for j, _ in ga]
    g_val = [b for _, b in ga]
    dense_g = g_idx[-1] - g_idx[0] + 1 == len(g_idx)
    g0 = g_idx[0]
    for i, a in fa:
        start = i + g0 - base
        if start >= size:
            break
        if dense_g:
            # contiguous run: out[start + t] += a * g_val[t]
            stop = min(len(g_val), size - start)
            for t in range(stop):
                out[start + t] += a * g_val[t]
        else:
            off = i - base
            for j, b in zip(g_idx, g_val):
                k = off + j
                if k >= size:
                    break
                out[k] += a * b
    return out


def _default_inverse_trunc(f: PuiseuxSeries, prec):
    if prec is not None:
        return math.ceil(as_rational(prec) * f.den)
    if f.trunc is None:
        raise DomainError("inverse of an exact series needs an explicit precision")
    return None


def series_inv(f: PuiseuxSeries, prec=None) -> PuiseuxSeries:
    """Multiplicative inverse.

    For a truncated input the relative precision is preserved.  ``prec`` (an
    exponent bound) is required for exact inputs such as ``1 - q`` and caps the
    result otherwise.
    """
    if f.is_zero():
        raise DomainError("inverse of the zero series")
    v = f.valuation
    items = f.items()
    c0 = items[0][1]
    if f.trunc is None and len(items) == 1 and prec is None:
        return PuiseuxSeries(f.den, {-v: Fraction(1) / c0 if isinstance(c0, Fraction) else c0.inverse()}, None)
    rel = [(n - v, c) for n, c in items]
    cap = _default_inverse_trunc(f, prec)
    if f.trunc is None:
        trunc = cap
    else:
        trunc = f.trunc - 2 * v
        if cap is not None:
            trunc = min(trunc, cap)
    length = trunc + v  # number of relative indices to compute
    if length <= 0:
        return PuiseuxSeries.zero(f.den, trunc)
    tail = [(k, c) for k, c in rel[1:] if k < length]
    if _all_rational(c for _, c in rel) and all(c.denominator == 1 for _, c in rel) and abs(c0) == 1:
        sign = int(c0)
        ti = [(k, int(c)) for k, c in tail]
        g = [0] * length
        g[0] = sign
        for n in range(1, length):
            s = 0
            for k, c in ti:
                if k > n:
                    break
                s += c * g[n - k]
            g[n] = -sign * s
        coeffs = {n - v: Fraction(c) for n, c in enumerate(g) if c}
    else:
        inv0 = Fraction(1) / c0 if isinstance(c0, Fraction) else c0.inverse()
        g = [Fraction(0)] * length
        g[0] = inv0
        for n in range(1, length):
            s = Fraction(0)
            for k, c in tail:
                if k > n:
                    break
                s = s + c * g[n - k]
            g[n] = -(s * inv0)
        coeffs = {n - v: c for n, c in enumerate(g) if c}
    return PuiseuxSeries(f.den, coeffs, trunc)


def series_pow(f: PuiseuxSeries, e: int, prec=None) -> PuiseuxSeries:
    """Integer power via the J.C.P. Miller recurrence (cheap for sparse inputs).

    Relative precision is preserved; ``prec`` is required for exact inputs
    when ``e < 0`` and optionally caps the result.
    """
    if e == 0:
        return PuiseuxSeries.constant(Fraction(1), f.den, None)
    if e == 1 and prec is None:
        return f
    if f.is_zero():
        if e < 0:
            raise DomainError("negative power of the zero series")
        return PuiseuxSeries.zero(f.den, None if f.trunc is None else f.trunc * e)
    if f.trunc is None and e > 0 and prec is None:
        out, base, k = PuiseuxSeries.constant(Fraction(1), f.den), f, e
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out
    v = f.valuation
    items = f.items()
    c0 = items[0][1]
    cap = None
    if prec is not None:
        cap = math.ceil(as_rational(prec) * f.den)
    elif f.trunc is None:
        raise DomainError("negative power of an exact series needs an explicit precision")
    trunc = None if f.trunc is None else e * v + (f.trunc - v)
    if cap is not None:
        trunc = cap if trunc is None else min(trunc, cap)
    length = trunc - e * v
    if length <= 0:
        return PuiseuxSeries.zero(f.den, trunc)
    inv0 = Fraction(1) / c0 if isinstance(c0, Fraction) else c0.inverse()
    rel = [(n - v, c * inv0) for n, c in items[1:] if n - v < length]
    lead = c0 ** e
    if all(isinstance(c, Fraction) and c.denominator == 1 for _, c in rel):
        ri = [(k, int(c)) for k, c in rel]
        g = [0] * length
        g[0] = 1
        for n in range(1, length):
            s = 0
            for k, c in ri:
                if k > n:
                    break
                s += ((e + 1) * k - n) * c * g[n - k]
            q, r = divmod(s, n)
            if r:
                raise ArithmeticError("non-integral power coefficient; input is not normalised")
            g[n] = q
        coeffs = {n + e * v: lead * c for n, c in enumerate(g) if c}
    else:
        g = [Fraction(0)] * length
        g[0] = Fraction(1)
        for n in range(1, length):
            s = Fraction(0)
            for k, c in rel:
                if k > n:
                    break
                s = s + c * g[n - k] * ((e + 1) * k - n)
            g[n] = s / n
        coeffs = {n + e * v: lead * c for n, c in enumerate(g) if c}
    return PuiseuxSeries(f.den, coeffs, trunc)


def series_rescale(f: PuiseuxSeries, c) -> PuiseuxSeries:
    """Substitute ``q -> q^c`` for a positive rational ``c``."""
    c = as_rational(c)
    if c <= 0:
        raise DomainError("rescale factor must be positive")
    den = f.den * c.denominator
    k = c.numerator
    out = PuiseuxSeries(den, {n * k: v for n, v in f.coeffs.items()}, _scale_trunc(f.trunc, k))
    return out.normalized()


def coeff(f: PuiseuxSeries, e):
    return f.coeff(e)


def series_dump(f: PuiseuxSeries) -> str:
    """Canonical text form: ``exponent<TAB>coefficient`` lines then ``O(q^{t})``."""
    lines = [f"{format_rational(e)}\t{format_coefficient(c)}" for e, c in f.terms()]
    if f.trunc is not None:
        lines.append(f"O(q^{{{format_rational(f.precision)}}})")
    return "\n".join(lines)


def parse_dump(text: str) -> PuiseuxSeries:
    terms = []
    trunc_e = None
    for line in text.strip().splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("O(q^{"):
            trunc_e = Fraction(line[len("O(q^{"):-2])
            continue
        e, c = line.split("\t")
        terms.append((Fraction(e), parse_coefficient(c)))
    den = 1
    for e, _ in terms:
        den = _lcm(den, e.denominator)
    if trunc_e is not None:
        den = _lcm(den, trunc_e.denominator)
    coeffs = {(e * den).numerator: c for e, c in terms}
    trunc = None if trunc_e is None else (trunc_e * den).numerator
    return PuiseuxSeries(den, coeffs, trunc)
