"""Exact arithmetic: rationals, quadratic-field elements, polynomials.

Rationals are :class:`fractions.Fraction` throughout.  Text encodings:

* Rational: ``"p/q"`` or ``"p"`` when ``q == 1``
* QuadElem: ``"a+b*sqrt(d)"`` with rational ``a`` and ``b``
* polynomials: coefficient lists, lowest degree first
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import DomainError, PoleError

Rational = Fraction


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise DomainError(f"cannot interpret {x!r} as a rational number")


def format_rational(x) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s.strip().replace("−", "-"))
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational number: {s!r}") from exc


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class QuadElem:
    """The element ``a + b*sqrt(d)`` of the quadratic field Q(sqrt(d)).

    Binary operations between elements with different ``d`` raise
    :class:`DomainError`; plain rationals mix freely.
    """

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))
        if not isinstance(self.d, int) or self.d == 1 or not is_squarefree(self.d):
            raise DomainError(f"d must be a square-free integer != 1, got {self.d!r}")

    @classmethod
    def sqrt(cls, d: int) -> "QuadElem":
        return cls(Fraction(0), Fraction(1), d)

    def _coerce(self, other) -> "QuadElem | None":
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise DomainError(f"mixed quadratic fields: sqrt({self.d}) and sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(Fraction(other), Fraction(0), self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.a * other, self.b * other, self.d)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conj(self) -> "QuadElem":
        return QuadElem(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in a quadratic field")
        return QuadElem(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QuadElem(self.a / other, self.b / other, self.d)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadElem(Fraction(1), Fraction(0), self.d)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def __complex__(self):
        if self.d < 0:
            return complex(float(self.a), float(self.b) * math.sqrt(-self.d))
        return complex(float(self.a) + float(self.b) * math.sqrt(self.d))

    def __str__(self):
        return f"{format_rational(self.a)}+{format_rational(self.b)}*sqrt({self.d})"

    def __repr__(self):
        return f"QuadElem({self})"


_QUAD_RE = re.compile(r"^\s*([^*]+?)\s*\+\s*([^*]+?)\s*\*\s*sqrt\(\s*(-?\d+)\s*\)\s*$")


def parse_quad(s: str) -> QuadElem:
    m = _QUAD_RE.match(s)
    if not m:
        raise DomainError(f"not a quadratic field element: {s!r}")
    return QuadElem(parse_rational(m.group(1)), parse_rational(m.group(2)), int(m.group(3)))


def format_coefficient(c) -> str:
    if isinstance(c, QuadElem):
        return str(c)
    return format_rational(c)


def parse_coefficient(s: str):
    return parse_quad(s) if "sqrt" in s else parse_rational(s)


def quad_arith(x, y=None, op: str = "add"):
    """Dispatch table for the four field operations ``add, mul, conj, norm``."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "conj":
        return x.conj()
    if op == "norm":
        return x.norm()
    raise DomainError(f"unknown operation {op!r}")


def _trim(coeffs: Sequence[Fraction]) -> tuple:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Polynomial:
    """Univariate polynomial with rational coefficients (lowest degree first).

    ``IntPolynomial`` is an alias: every polynomial produced by the lift
    pipeline has integer coefficients, but intermediate ones need not.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim(as_rational(c) for c in coeffs)

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def from_roots_product(cls, factors: Iterable["Polynomial"]) -> "Polynomial":
        out = cls([1])
        for f in factors:
            out = out * f
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def _wrap(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial([other])
        return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Polynomial(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(c * other for c in self.coeffs)
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result, base = Polynomial([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.leading()
        if len(rem) - 1 < dq:
            return Polynomial(), Polynomial(rem)
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lc
            quot[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] -= c * b
        return Polynomial(quot), Polynomial(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        return poly_eval(self, x)

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lc = self.leading()
        return Polynomial(c / lc for c in self.coeffs)

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def integer_coefficients(self) -> list[int]:
        if not self.is_integral():
            raise DomainError("polynomial has non-integer coefficients")
        return [c.numerator for c in self.coeffs]

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = format_rational(abs(c)) + ("*" + mono if mono else "")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def to_list(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]


IntPolynomial = Polynomial


def _int_primitive(coeffs: list[int]) -> list[int]:
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
    if g == 0:
        return []
    if coeffs[-1] < 0:
        g = -g
    return [c // g for c in coeffs]


def _to_int_primitive(p: Polynomial) -> list[int]:
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return _int_primitive([(c * den).numerator for c in p.coeffs])


def _int_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    lc = b[-1]
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        lead = a[-1]
        a = [lc * c for c in a]
        for i, c in enumerate(b):
            a[shift + i] -= lead * c
        while a and a[-1] == 0:
            a.pop()
    return a


_GCD_PRIMES = (2**61 - 1, 2**89 - 1, 2**107 - 1)


def _gcd_degree_mod(a: list[int], b: list[int], p: int) -> int:
    """Degree of ``gcd(a mod p, b mod p)`` over F_p."""
    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim([c % p for c in a]), trim([c % p for c in b])
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            f = a[-1] * inv % p
            s = len(a) - len(b)
            for i, c in enumerate(b):
                a[s + i] = (a[s + i] - f * c) % p
            trim(a)
        a, b = b, a
    return len(a) - 1


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd over Q via the primitive polynomial remainder sequence.

    A gcd of degree 0 modulo a prime not dividing either leading coefficient
    proves coprimality, which short-cuts the common case.
    """
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    a, b = _to_int_primitive(p), _to_int_primitive(q)
    for prime in _GCD_PRIMES:
        if a[-1] % prime and b[-1] % prime:
            if _gcd_degree_mod(a, b, prime) == 0:
                return Polynomial([1])
            break
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_pseudo_rem(a, b)
        a, b = b, _int_primitive(r) if r else []
    return Polynomial(a).monic()


def poly_lcm(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.is_zero() or q.is_zero():
        return Polynomial()
    return ((p * q) // poly_gcd(p, q)).monic()


def is_squarefree_poly(p: Polynomial) -> bool:
    return poly_gcd(p, p.derivative()).degree == 0


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Polynomial, max_divisor_search: int = 10**7) -> list[Fraction]:
    """Rational roots by the rational root theorem.

    Only the leading coefficient and a shifted constant need factoring; for
    large constants the candidate numerators are restricted to divisors up to
    ``max_divisor_search`` together with the cofactors, which is exhaustive.
    """
    coeffs = _to_int_primitive(p)
    roots = []
    while coeffs and coeffs[0] == 0:
        roots.append(Fraction(0))
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return roots
    const, lead = abs(coeffs[0]), abs(coeffs[-1])
    isqrt = math.isqrt(const)
    if isqrt > max_divisor_search:
        raise DomainError("constant term too large for exhaustive rational root search")
    nums = _divisors(const)
    dens = _divisors(lead)
    prim = Polynomial(coeffs)
    found = set()
    for n in nums:
        for d in dens:
            for cand in (Fraction(n, d), Fraction(-n, d)):
                if cand not in found and prim(cand) == 0:
                    found.add(cand)
    return roots + sorted(found)


def poly_eval(p, x):
    """Horner evaluation of a Polynomial or RationalFunction at ``x``.

    ``x`` may be any ring element supporting ``*`` and ``+`` with rationals
    (Fraction, QuadElem, truncated series).
    """
    if isinstance(p, RationalFunction):
        return p(x)
    if p.is_zero():
        return Fraction(0)
    acc = p.coeffs[-1]
    for c in reversed(p.coeffs[:-1]):
        acc = acc * x + c
    return acc


class RationalFunction:
    """Quotient ``num/den`` of polynomials, reduced to coprime form with monic ``den``."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial([1])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lc = den.leading()
        self.num = Polynomial(c / lc for c in num.coeffs)
        self.den = Polynomial(c / lc for c in den.coeffs)

    def __call__(self, x):
        d = poly_eval(self.den, x)
        if d == 0:
            raise PoleError(f"denominator vanishes at {x}")
        return poly_eval(self.num, x) / d

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction(({self.num}) / ({self.den}))"
