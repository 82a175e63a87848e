"""Borcherds-Shimura lift of ``f_m (x) F`` on Gamma0(3) and the mock coefficients it yields.

Pipeline per basis index ``m``:

1. ``LazyTensor(basis_fm(m), kohnen_split)`` gives the Z/6 input form;
2. :func:`lift_expansion` produces the weight-6 lift as a q-series;
3. :func:`pole_data` and :func:`heegner_points` locate its CM poles;
4. :func:`identify_rational` writes the lift as ``1/2 Delta3 A(j3)/B(j3)``;
5. evaluating ``A/B`` at ``j3(z_U) = -27`` gives the coefficient ``r_m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, IdentificationError, PrecisionError
from .eta import named_form
from .exact import Polynomial, RationalFunction, as_rational, format_rational, poly_lcm
from .numerics import (DEFAULT_BITS, CMPoint, bits_for, context, eval_j3, poly_from_roots, recognize_algebraic,
                       round_polynomial)
from .qseries import PuiseuxSeries, series_inv
from .vvforms import LazyTensor, VectorValuedSeries, basis_fm, kohnen_split

LIFT_LEVEL = 3
LIFT_MODULUS = 2 * LIFT_LEVEL
POLE_ORDER = 3
Z_U = CMPoint(3, -3, 1)
IDENTIFY_MARGIN = 8
FINGERPRINT_TOL = Fraction(1, 10**20)


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def lift_expansion(f, T: int, divisor_exponent: int = 2) -> PuiseuxSeries:
    """``sum_{n=1}^{T} sum_{d|n} (n/d)^e c_f(d^2/12, d mod 6) q^n``.

    ``f`` is anything with ``coeff(exponent, mu)`` over Z/6: a
    :class:`VectorValuedSeries` or a :class:`LazyTensor`.  The result is exact
    below ``q^(T+1)``.
    """
    if getattr(f, "n", LIFT_MODULUS) != LIFT_MODULUS:
        raise DomainError(f"the lift needs a form over Z/{LIFT_MODULUS}, got Z/{f.n}")
    if T < 1:
        raise DomainError("T must be at least 1")
    cf = {}
    for d in range(1, T + 1):
        try:
            cf[d] = f.coeff(Fraction(d * d, 12), d % LIFT_MODULUS)
        except PrecisionError as exc:
            raise PrecisionError(f"lift to q^{T} needs c_f({d * d}/12): {exc}") from None
    coeffs = {}
    for n in range(1, T + 1):
        total = Fraction(0)
        for d in _divisors(n):
            c = cf[d]
            if c:
                total += (n // d) ** divisor_exponent * c
        if total:
            coeffs[n] = total
    return PuiseuxSeries(1, coeffs, T + 1)


# -- poles and Heegner points ----------------------------------------------

def _normalize_residue(r: int) -> int:
    r %= LIFT_MODULUS
    return min(r, LIFT_MODULUS - r)


@dataclass(frozen=True, order=True)
class PoleDatum:
    """Pole of order ``order`` along the Heegner divisor of discriminant ``D``, residue ``+-r``."""

    D: int
    r: int
    order: int = POLE_ORDER

    def __post_init__(self):
        r = _normalize_residue(self.r)
        if self.D >= 0:
            raise DomainError(f"pole discriminant must be negative, got {self.D}")
        if (self.D - r * r) % (2 * LIFT_MODULUS) != 0:
            raise DomainError(f"D = {self.D} is not r^2 = {r * r} mod {2 * LIFT_MODULUS}")
        object.__setattr__(self, "r", r)

    def __str__(self):
        return f"(D={self.D}, r=+-{self.r}, order={self.order})"


def _principal_terms(f, mu):
    if isinstance(f, LazyTensor):
        return f.principal_part(mu).terms()
    return f[mu].principal_part().terms()


def pole_data(f) -> list[PoleDatum]:
    """Every term ``c q^(D/12)`` with ``c != 0`` and ``D < 0`` on component ``r``."""
    found = set()
    for mu in range(LIFT_MODULUS):
        for e, c in _principal_terms(f, mu):
            if not c or e >= 0:
                continue
            D = e * 12
            if D.denominator != 1:
                raise DomainError(f"principal exponent {e} on component {mu} is not in Z/12")
            found.add(PoleDatum(int(D), mu))
    return sorted(found, key=lambda p: (-p.D, p.r))


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """SL2(Z)-reduced positive definite forms of discriminant ``D``, imprimitive ones included."""
    if D >= 0 or D % 4 not in (0, 1):
        raise DomainError(f"{D} is not a negative discriminant")
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            out.append((a, b, c))
        a += 1
    return out


# left coset representatives of Gamma0(3) in SL2(Z), one per point of P^1(F_3)
_COSETS = (((1, 0), (0, 1)), ((0, -1), (1, 0)), ((1, 0), (1, 1)), ((-1, 0), (1, -1)))


def _transform(form, g):
    a, b, c = form
    (p, q), (r, s) = g
    Q = lambda x, y: a * x * x + b * x * y + c * y * y
    return (Q(p, r), 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s, Q(q, s))


def _reduce_gamma0(form):
    """Shift ``b`` into ``(-a, a]`` with a translation, which lies in Gamma0(3)."""
    a, b, c = form
    k = -((b + a - 1) // (2 * a)) if b > a else (a - b) // (2 * a)
    return _transform(form, ((1, k), (0, 1)))


@dataclass(frozen=True)
class HeegnerClass:
    """Gamma0(3)-classes of forms ``[a, b, c]`` with ``3 | a``, ``b = r mod 6``, ``b^2 - 4ac = D``."""

    D: int
    r: int
    forms: tuple[tuple[int, int, int], ...]

    @property
    def points(self) -> tuple[CMPoint, ...]:
        return tuple(CMPoint(*f) for f in self.forms)

    def __len__(self):
        return len(self.forms)


def _close(x, y, tol, ctx) -> bool:
    return abs(x - y) <= ctx.mpf(tol.numerator) / tol.denominator * max(1, abs(x))


def heegner_points(D: int, r: int, bits: int = DEFAULT_BITS) -> HeegnerClass:
    """Representatives of ``Q_{3,D,r} / Gamma0(3)``.

    Every SL2-reduced form is moved by the four coset representatives; the
    images with ``3 | a`` and ``b = r mod 6`` cover all Gamma0(3)-classes.
    Images that coincide (forms with extra automorphisms) are merged by
    comparing ``j3`` at their CM points.
    """
    if (D - r * r) % (2 * LIFT_MODULUS):
        raise DomainError(f"D = {D} and r = {r} violate D = r^2 mod 12")
    ctx = context(bits)
    forms, values = [], []
    for base in reduced_forms(D):
        for g in _COSETS:
            a, b, c = _transform(base, g)
            if a < 0:
                a, b, c = -a, -b, -c
            if a % LIFT_LEVEL or (b - r) % LIFT_MODULUS:
                continue
            form = _reduce_gamma0((a, b, c))
            val = eval_j3(CMPoint(*form), bits)
            if any(_close(val, v, FINGERPRINT_TOL, ctx) for v in values):
                continue
            forms.append(form)
            values.append(val)
    return HeegnerClass(D, r % LIFT_MODULUS, tuple(sorted(forms)))


def _j3_values(D: int, r: int, bits: int):
    r = r % LIFT_MODULUS
    residues = [r] if r in ((-r) % LIFT_MODULUS,) else [r, (-r) % LIFT_MODULUS]
    return [eval_j3(p, bits) for rr in residues for p in heegner_points(D, rr, bits).points]


def minimal_poly_j3(D: int, r: int, bits: int = DEFAULT_BITS) -> Polynomial:
    """``prod (X - j3(z))`` over the Heegner points of ``(D, r)`` and ``(D, -r)``, rounded to Z[X]."""
    roots = _j3_values(D, r, bits)
    if not roots:
        raise DomainError(f"no Heegner points for D = {D}, r = {r}")
    # the constant term is a product of |j3| values; the roots themselves need that many extra digits
    digits = sum(math.log10(max(1.0, abs(complex(z)))) for z in roots) + 2
    work = bits_for(digits, bits)
    if work > bits:
        roots = _j3_values(D, r, work)
    poly, _ = round_polynomial(poly_from_roots(roots, work), work)
    return poly


def pole_polynomial(poles, bits: int = DEFAULT_BITS) -> Polynomial:
    """``B`` = lcm of the minimal polynomials raised to the pole order.

    An imprimitive discriminant ``D f^2`` shares CM points with ``D``; taking
    the lcm keeps each point once.
    """
    B = Polynomial([1])
    orders = {p.order for p in poles}
    if len(orders) > 1:
        raise DomainError(f"mixed pole orders {sorted(orders)} are not supported")
    base = Polynomial([1])
    for p in poles:
        base = poly_lcm(base, minimal_poly_j3(p.D, p.r, bits))
    if poles:
        B = base ** orders.pop()
    return B


# -- identification as a rational function of j3 --------------------------

def _series_poly(P: Polynomial, x: PuiseuxSeries) -> PuiseuxSeries:
    out = PuiseuxSeries.constant(P.coeffs[-1] if P.coeffs else 0, x.den, None)
    for c in reversed(P.coeffs[:-1]):
        out = out * x + c
    return out


def j3_powers(n: int, top) -> list[PuiseuxSeries]:
    """``[j3^k for k = 0..n]`` with ``j3^k`` exact below ``q^(top + n - k)``.

    That is just enough for ``j3^n`` to be known below ``q^top``; carrying
    the extra ``n - k`` steps lets each product lose one.
    """
    j3 = named_form("j3", top + n + 1)
    powers = [PuiseuxSeries.constant(1, 1, None)]
    for k in range(1, n + 1):
        powers.append((powers[-1] * j3).truncate(top + n - k))
    return powers


def identify_rational(lift: PuiseuxSeries, poles, T: int | None = None, bits: int = DEFAULT_BITS,
                      B: Polynomial | None = None) -> RationalFunction:
    """Find ``A`` with ``lift = 1/2 Delta3 A(j3) / B(j3)``.

    ``H = 2 lift / Delta3 * B(j3)`` is a polynomial in ``j3`` of degree at
    most ``deg B``; its coefficients are peeled off from ``q^-deg B`` upwards
    and the remaining coefficients must vanish through the available precision.
    """
    if B is None:
        B = pole_polynomial(poles, bits)
    nB = B.degree
    prec = lift.precision
    if T is not None:
        prec = min(prec, Fraction(T + 1)) if prec is not None else Fraction(T + 1)
    if prec is None:
        raise DomainError("identification needs a truncated lift")
    avail = int(prec) - 1  # G = 2 lift / Delta3 is exact below q^avail
    if avail - nB < 1:
        raise PrecisionError(f"lift known below q^{prec} cannot pin down a degree-{nB} numerator; need more terms")
    top = avail - nB  # H = G * B(j3) is exact below q^top
    delta3 = named_form("Delta3", avail + 1)
    G = ((lift.truncate(prec) * 2) * series_inv(delta3)).truncate(avail)
    powers = j3_powers(nB, top)
    BJ = None
    for k, b in enumerate(B.coeffs):
        if b:
            term = powers[k] * b
            BJ = term if BJ is None else BJ + term
    H = (G * BJ.truncate(top)).truncate(top)
    powers = [p.truncate(top) for p in powers]
    A = [Fraction(0)] * (nB + 1)
    rest = H
    v = rest.valuation_exponent
    if v is not None and v < -nB:
        raise IdentificationError(f"numerator degree exceeds deg B = {nB}", exponent=v)
    for k in range(nB, -1, -1):
        c = rest.coeff(-k)
        if c:
            A[k] = c
            rest = rest - powers[k] * c
    bad = [e for e, c in rest.terms() if c]
    if bad:
        raise IdentificationError(f"residual does not vanish; first nonzero at q^{bad[0]} (checked below q^{top})", exponent=bad[0])
    return RationalFunction(Polynomial(A), B)


def re_expand(rf: RationalFunction, T: int) -> PuiseuxSeries:
    """``1/2 Delta3 A(j3) / B(j3)`` as a q-series exact below ``q^(T+1)``."""
    nB = rf.den.degree
    j3 = named_form("j3", T + 2 * nB + 2)
    num = _series_poly(rf.num, j3)
    den = _series_poly(rf.den, j3)
    delta3 = named_form("Delta3", T + 1)
    out = delta3 * num * series_inv(den) * Fraction(1, 2)
    return out.truncate(T + 1)


# -- the per-m pipeline ----------------------------------------------------

def j3_at_z_u(bits: int = DEFAULT_BITS) -> Fraction:
    """``j3((3 + sqrt(-3))/6)``, recognized from its numerical value."""
    p = recognize_algebraic(eval_j3(Z_U, bits), max_degree=1, bits=bits)
    if p.degree != 1:
        raise IdentificationError(f"j3(z_U) is not rational: {p}")
    return -p[0] / p[1]


@dataclass
class LiftResult:
    m: Fraction
    lift: PuiseuxSeries
    poles: list[PoleDatum]
    rational: RationalFunction
    value: Fraction


def tensor_input(m, T_lift: int) -> LazyTensor:
    """``f_m (x) F`` with enough terms for a lift to ``q^T_lift``."""
    m = as_rational(m)
    top = Fraction(T_lift * T_lift, 12) + 1
    f = basis_fm(m, int(math.ceil(top + m)) + 1)
    g = kohnen_split(int(math.ceil(top + m + Fraction(1, 4))) + 1)
    return LazyTensor(f, g)


def run_lift(m, T: int | None = None, bits: int = DEFAULT_BITS, divisor_exponent: int = 2,
             x_value: Fraction | None = None) -> LiftResult:
    """Lift ``f_m (x) F``, identify it and evaluate at ``z_U``.

    With ``T=None`` the lift length is ``deg B`` plus a fixed margin, which is
    the least that still leaves residual coefficients to check.
    """
    m = as_rational(m)
    poles = pole_data(tensor_input(m, 1))
    B = pole_polynomial(poles, bits)
    if T is None:
        T = B.degree + IDENTIFY_MARGIN
    lift = lift_expansion(tensor_input(m, T), T, divisor_exponent)
    rf = identify_rational(lift, poles, T, bits, B=B)
    x = j3_at_z_u(bits) if x_value is None else x_value
    return LiftResult(m, lift, poles, rf, rf(x))


@dataclass
class MockCoefficientTable:
    """``r_m`` for ``m = 2/3 mod 1``, normalised so that ``r_{-1/3} = 1``."""

    entries: dict = field(default_factory=dict)

    def __getitem__(self, m):
        return self.entries[as_rational(m)]

    def items(self):
        return sorted(self.entries.items())

    def rows(self) -> list[tuple[str, str]]:
        return [(format_rational(m), format_rational(v)) for m, v in self.items()]

    @property
    def max_m(self) -> Fraction:
        return max(self.entries)


def basis_indices(m_max) -> list[Fraction]:
    m_max = as_rational(m_max)
    out, m = [], Fraction(2, 3)
    while m <= m_max:
        out.append(m)
        m += 1
    return out


def mock_coefficients(m_max, bits: int = DEFAULT_BITS, divisor_exponent: int = 2) -> MockCoefficientTable:
    m_max = as_rational(m_max)
    if m_max < Fraction(2, 3):
        raise DomainError("m_max must be at least 2/3")
    x = j3_at_z_u(bits)
    ms = basis_indices(m_max)
    # the -1/3 lift normalises the table; it must be 1/2 Delta3 exactly
    base = run_lift(Fraction(-1, 3), IDENTIFY_MARGIN, bits, divisor_exponent, x).value
    if base == 0:
        raise IdentificationError("the normalising lift vanishes at z_U")
    table = MockCoefficientTable({Fraction(-1, 3): Fraction(1)})
    # largest m first: its expansions fill the caches the smaller ones reuse
    for m in sorted(ms, reverse=True):
        v = run_lift(m, None, bits, divisor_exponent, x).value / base
        if not isinstance(v, Fraction):
            raise IdentificationError(f"r_{m} = {v} is not rational")
        table.entries[m] = v
    return table


# -- the scalar preimage and the comparison --------------------------------

BOR_EXPECTED = {
    -1: Fraction(1),
    2: Fraction(-1, 4),
    5: Fraction(49, 125),
    8: Fraction(-48, 512),
    11: Fraction(-771, 1331),
    14: Fraction(2744, 2744),
}


def scalar_preimage(table: MockCoefficientTable) -> PuiseuxSeries:
    """``1/4 (q^-1 + sum_m r_m q^(3m))``, exact below the first missing ``q^(3m)``."""
    coeffs = {-1: Fraction(1, 4)}
    for m, r in table.items():
        if m > 0:
            coeffs[int(3 * m)] = r / 4
    return PuiseuxSeries(1, coeffs, int(3 * table.max_m) + 3)


def bor_report(table: MockCoefficientTable) -> list[tuple[str, Fraction, Fraction, bool]]:
    """Rows ``(name, expected, got, ok)`` comparing ``preimage + 3/4 w`` with the reference expansion."""
    pre = scalar_preimage(table)
    top = int(pre.precision)
    w = named_form("w", top + 1)
    total = pre + w.truncate(top) * Fraction(3, 4)
    rows = []
    for e, expected in sorted(BOR_EXPECTED.items()):
        if e >= top:
            continue
        got = total.coeff(e)
        rows.append((f"bor_q^{e}", expected, got, got == expected))
    return rows
