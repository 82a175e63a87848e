"""Binary theta series with harmonic polynomial ``lambda^(k-1)`` and unary theta series.

A binary lattice is given by two generators in Q(sqrt(-D)) and a scale ``s``
so that ``Q(x) = Nm(x) / s``.  Cosets are named by a representative
``mu`` in the field; lattice points ``mu + a w1 + b w2`` are enumerated over an
integer box that provably contains every vector of norm below the target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .exact import QuadElem, as_rational
from .qseries import PuiseuxSeries
from .vvforms import VectorValuedSeries


def _quad(x, d: int) -> QuadElem:
    if isinstance(x, QuadElem):
        if x.d != d and x.b != 0:
            raise DomainError(f"element of Q(sqrt({x.d})) used in Q(sqrt({d}))")
        return QuadElem(x.a, x.b, d)
    return QuadElem(as_rational(x), Fraction(0), d)


@dataclass(frozen=True)
class BinaryLatticeSpec:
    """Lattice ``Z w1 + Z w2`` in Q(sqrt(-D)) with ``Q(x) = Nm(x) / scale``."""

    D: int
    basis: tuple
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        if self.D <= 0:
            raise DomainError("D must be positive (the field is Q(sqrt(-D)))")
        w1, w2 = (_quad(w, -self.D) for w in self.basis)
        object.__setattr__(self, "basis", (w1, w2))
        object.__setattr__(self, "scale", as_rational(self.scale))
        if self.scale <= 0:
            raise DomainError("scale must be positive")
        if self.det == 0:
            raise DomainError("basis vectors are linearly dependent")
        g = self.gram
        if any(x.denominator != 1 for row in g for x in row) or g[0][0] % 2 or g[1][1] % 2:
            raise DomainError(f"Gram matrix {g} is not even integral")

    @property
    def d(self) -> int:
        return -self.D

    def Q(self, x: QuadElem) -> Fraction:
        return x.norm() / self.scale

    def bilinear(self, x: QuadElem, y: QuadElem) -> Fraction:
        return self.Q(x + y) - self.Q(x) - self.Q(y)

    @property
    def gram(self):
        w1, w2 = self.basis
        return ((self.bilinear(w1, w1), self.bilinear(w1, w2)), (self.bilinear(w2, w1), self.bilinear(w2, w2)))

    @property
    def det(self) -> Fraction:
        (a, b), (c, e) = self.gram
        return a * e - b * c

    @property
    def discriminant_order(self) -> int:
        return abs(int(self.det))

    def coordinates(self, x) -> tuple[Fraction, Fraction]:
        """Rational ``(s, t)`` with ``x = s w1 + t w2``."""
        x = _quad(x, self.d)
        w1, w2 = self.basis
        det = w1.a * w2.b - w2.a * w1.b
        s = (x.a * w2.b - w2.a * x.b) / det
        t = (w1.a * x.b - x.a * w1.b) / det
        return s, t

    def eigenvalue_lower_bound(self) -> Fraction:
        """``det / trace`` of the matrix of ``Q``; bounds its smallest eigenvalue from below."""
        (a, _), (_, e) = self.gram
        return (self.det / 4) / ((a + e) / 2)

    def box_bound(self, T, box_scale: int = 1) -> int:
        lam = self.eigenvalue_lower_bound()
        return box_scale * (1 + math.isqrt(math.ceil(Fraction(T) / lam)) + 1)


def eisenstein_lattice() -> BinaryLatticeSpec:
    """``(O_k, Nm)`` for ``k = Q(sqrt(-3))``, basis ``1, zeta = (1 + sqrt(-3))/2``."""
    return BinaryLatticeSpec(3, (QuadElem(1, 0, -3), QuadElem(Fraction(1, 2), Fraction(1, 2), -3)))


def different_lattice() -> BinaryLatticeSpec:
    """``(sqrt(-3) O_k, Nm)``."""
    s = QuadElem.sqrt(-3)
    return BinaryLatticeSpec(3, (s, s * QuadElem(Fraction(1, 2), Fraction(1, 2), -3)))


def eisenstein_coset(r: int) -> QuadElem:
    """Representative ``r (1 + zeta)/3`` of the class ``r`` in ``d^-1 / O_k = Z/3``."""
    return QuadElem(Fraction(r, 2), Fraction(r, 6), -3)


def _exponent_den(spec: BinaryLatticeSpec, mu: QuadElem) -> int:
    w1, w2 = spec.basis
    vals = [spec.Q(mu), spec.bilinear(mu, w1), spec.bilinear(mu, w2)]
    den = 1
    for v in vals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return den


def binary_theta(spec: BinaryLatticeSpec, mu=0, k: int = 4, T=10, box_scale: int = 1) -> PuiseuxSeries:
    """``sum_{lambda in L + mu} lambda^(k-1) q^Q(lambda)`` for ``Q(lambda) < T``."""
    if k < 1:
        raise DomainError("k must be at least 1")
    mu = _quad(mu, spec.d)
    s0, t0 = spec.coordinates(mu)
    # shift the representative near the origin so the box is centred
    mu = mu - spec.basis[0] * math.floor(s0) - spec.basis[1] * math.floor(t0)
    den = _exponent_den(spec, mu)
    T = as_rational(T)
    R = spec.box_bound(T, box_scale)
    w1, w2 = spec.basis
    coeffs: dict[int, object] = {}
    for a in range(-R, R + 1):
        base = mu + w1 * a
        for b in range(-R, R + 1):
            lam = base + w2 * b
            e = spec.Q(lam)
            if e >= T:
                continue
            n = int(e * den)
            val = lam ** (k - 1)
            coeffs[n] = coeffs.get(n, 0) + val
    coeffs = {n: (c.a if isinstance(c, QuadElem) and c.b == 0 else c) for n, c in coeffs.items() if c}
    return PuiseuxSeries(den, coeffs, int(T * den) if (T * den).denominator == 1 else math.ceil(T * den))


def eisenstein_theta_vector(T=10, k: int = 4, box_scale: int = 1) -> VectorValuedSeries:
    """``sum_{r mod 3} theta_{O_k + r(1+zeta)/3} phi_r`` (odd for even ``k``)."""
    spec = eisenstein_lattice()
    comps = {r: binary_theta(spec, eisenstein_coset(r), k, T, box_scale) for r in range(3)}
    return VectorValuedSeries(3, comps, kappa=(k - 1) % 2, weight=k)


def hecke_theta_eta8(T=10, box_scale: int = 1) -> PuiseuxSeries:
    """``(theta_{d+1} - theta_{d-1}) / 6`` on the different ``d``; equals ``eta(3z)^8``."""
    spec = different_lattice()
    plus = binary_theta(spec, 1, 4, T, box_scale)
    minus = binary_theta(spec, -1, 4, T, box_scale)
    out = (plus - minus) * Fraction(1, 6)
    return out.map_coefficients(lambda c: c.a if isinstance(c, QuadElem) and c.b == 0 else c).normalized()


def unary_theta(variant: str, T=10) -> VectorValuedSeries:
    """``Z1``: ``sum_{n = r mod 2} q^(n^2/4)``; ``Z6``: ``sum_{n = r mod 12} q^(n^2/24)``."""
    if variant == "Z1":
        n_mod, den = 2, 4
    elif variant == "Z6":
        n_mod, den = 12, 24
    else:
        raise DomainError(f"unknown unary theta {variant!r}; choose Z1 or Z6")
    T = as_rational(T)
    trunc = math.ceil(T * den)
    comps = {r: {} for r in range(n_mod)}
    N = math.isqrt(trunc) + 1
    for n in range(-N, N + 1):
        if n * n < trunc:
            c = comps[n % n_mod]
            c[n * n] = c.get(n * n, 0) + 1
    return VectorValuedSeries(n_mod, {r: PuiseuxSeries(den, c, trunc) for r, c in comps.items()},
                              kappa=0, weight=Fraction(1, 2))
