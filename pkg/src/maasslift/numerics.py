"""Multi-precision evaluation of eta and the Hauptmodul j3 at CM points.

Every function takes its precision explicitly and works in a private mpmath
context, so no global state is touched.  Values are ``mpc``/``mpf`` objects
bound to that context (``BigFloatComplex``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .errors import DomainError, RecognitionError
from .exact import Polynomial

BigFloatComplex = mpmath.mpc

DEFAULT_BITS = 256
GUARD_BITS = 24


def context(bits: int) -> mpmath.ctx_mp.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


@dataclass(frozen=True)
class CMPoint:
    """The root ``(-b + sqrt(D)) / (2a)`` in the upper half-plane of ``[a, b, c]``."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.D >= 0:
            raise DomainError(f"[{self.a},{self.b},{self.c}] is not positive definite")

    @classmethod
    def from_form(cls, form) -> "CMPoint":
        a, b, c = (int(x) for x in form)
        return cls(a, b, c)

    @property
    def D(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def form(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def to_complex(self, bits: int = DEFAULT_BITS):
        ctx = context(bits)
        return ctx.mpc(ctx.mpf(-self.b), ctx.sqrt(-self.D)) / (2 * self.a)

    def __str__(self):
        return f"[{self.a},{self.b},{self.c}]"


def _as_tau(tau, ctx):
    if isinstance(tau, CMPoint):
        return ctx.mpc(ctx.mpf(-tau.b), ctx.sqrt(-tau.D)) / (2 * tau.a)
    return ctx.mpc(tau)


def eval_eta(tau, bits: int = DEFAULT_BITS):
    """``eta(tau) = q^(1/24) sum_k (-1)^k q^(k(3k-1)/2)``, summed until terms drop below ``2^-(bits+guard)``."""
    ctx = context(bits + GUARD_BITS)
    t = _as_tau(tau, ctx)
    if t.imag <= 0:
        raise DomainError("eta needs Im(tau) > 0")
    two_pi_i = 2 * ctx.pi * ctx.j
    q = ctx.exp(two_pi_i * t)
    absq = abs(q)
    eps = ctx.ldexp(1, -(bits + GUARD_BITS))
    total = ctx.mpc(1)
    k = 1
    while True:
        e1, e2 = k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
        if absq ** e1 < eps:
            break
        sign = -1 if k % 2 else 1
        total += sign * (q ** e1 + q ** e2)
        k += 1
    out = ctx.exp(two_pi_i * t / 24) * total
    return context(bits).mpc(out)


def eval_j3(tau, bits: int = DEFAULT_BITS):
    """Hauptmodul ``j3 = (eta(tau)/eta(3 tau))^12`` of Gamma0(3)."""
    ctx = context(bits + GUARD_BITS)
    t = _as_tau(tau, ctx)
    ratio = eval_eta(t, bits + GUARD_BITS) / eval_eta(3 * t, bits + GUARD_BITS)
    return context(bits).mpc(ratio ** 12)


def eval_delta3(tau, bits: int = DEFAULT_BITS):
    """``eta(tau)^6 eta(3 tau)^6``."""
    ctx = context(bits + GUARD_BITS)
    t = _as_tau(tau, ctx)
    val = (eval_eta(t, bits + GUARD_BITS) * eval_eta(3 * t, bits + GUARD_BITS)) ** 6
    return context(bits).mpc(val)


def chowla_selberg(bits: int = DEFAULT_BITS):
    """Period of Q(sqrt(-3)): ``(6 pi)^(-1/2) (Gamma(1/3)/Gamma(2/3))^(3/2)``.

    With this normalisation ``eta(z)^6 eta(3z)^6 = -3 sqrt(3) Omega^6`` at
    ``z = (3 + sqrt(-3))/6``.
    """
    ctx = context(bits + GUARD_BITS)
    third = ctx.mpf(1) / 3
    val = (ctx.gamma(third) / ctx.gamma(2 * third)) ** ctx.mpf(1.5) / ctx.sqrt(6 * ctx.pi)
    return context(bits).mpf(val)


def eval_series(series, tau, bits: int = DEFAULT_BITS):
    """Sum a truncated q-series (rational coefficients) at ``q = exp(2 pi i tau)``."""
    ctx = context(bits + GUARD_BITS)
    t = _as_tau(tau, ctx)
    total = ctx.mpc(0)
    for e, c in series.terms():
        total += ctx.mpf(c.numerator) / c.denominator * ctx.exp(2 * ctx.pi * ctx.j * t * ctx.mpf(e.numerator) / e.denominator)
    return context(bits).mpc(total)


def default_tolerance(bits: int):
    return mpmath.mpf(2) ** (-(bits // 2))


def recognize_algebraic(x, max_degree: int = 2, height_bound: int = 10**4, bits: int = DEFAULT_BITS, tol=None) -> Polynomial:
    """Smallest-height integer polynomial of degree <= ``max_degree`` vanishing at ``x``.

    Degree 1 is tried for (numerically) real ``x``; degree 2 pairs ``x`` with
    its complex conjugate and rounds ``a * trace`` and ``a * norm`` to integers
    for leading coefficients ``a = 1, 2, ...``.
    """
    ctx = context(bits)
    x = ctx.mpc(x)
    if not (ctx.isfinite(x.real) and ctx.isfinite(x.imag)):
        raise DomainError("cannot recognize a non-finite value")
    tol = default_tolerance(bits) if tol is None else ctx.mpf(tol)
    scale = max(ctx.mpf(1), abs(x))
    best = None
    if abs(x.imag) <= tol * scale:
        for a in range(1, height_bound + 1):
            b = ctx.nint(a * x.real)
            if abs(a * x.real - b) <= tol * scale * a:
                best = Polynomial([-int(b), a])
                break
    if best is None and max_degree >= 2 and abs(x.imag) > tol * scale:
        tr, nm = 2 * x.real, abs(x) ** 2
        for a in range(1, height_bound + 1):
            t, n = ctx.nint(a * tr), ctx.nint(a * nm)
            height = max(a, abs(int(t)), abs(int(n)))
            if height > height_bound * max(1, int(nm) + 1):
                break
            p_at_x = a * x * x - t * x + n
            if abs(p_at_x) <= tol * a * scale ** 2:
                best = Polynomial([int(n), -int(t), a])
                break
    if best is None:
        raise RecognitionError(f"no polynomial of degree <= {max_degree} and height <= {height_bound} fits {ctx.nstr(x, 20)}")
    return best


def round_polynomial(coeffs, bits: int = DEFAULT_BITS) -> tuple[Polynomial, object]:
    """Round complex coefficients to integers; returns the polynomial and the residual.

    Raises :class:`~maasslift.errors.PrecisionError` when the residual exceeds
    ``2^-(bits/4)``.
    """
    from .errors import PrecisionError

    ctx = context(bits)
    out, residual = [], ctx.mpf(0)
    for c in coeffs:
        c = ctx.mpc(c)
        r = ctx.nint(c.real)
        residual = max(residual, abs(c - r))
        out.append(int(r))
    if residual > ctx.ldexp(1, -(bits // 4)):
        raise PrecisionError(f"rounding residual {ctx.nstr(residual, 5)} too large at {bits} bits")
    return Polynomial(out), residual


def poly_from_roots(roots, bits: int = DEFAULT_BITS):
    """Complex coefficients (lowest first) of ``prod (X - r)``."""
    ctx = context(bits)
    coeffs = [ctx.mpc(1)]
    for r in roots:
        r = ctx.mpc(r)
        nxt = [ctx.mpc(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= r * c
        coeffs = nxt
    return coeffs


def bits_for(value_digits: float, bits: int) -> int:
    """Precision large enough to hold ``value_digits`` decimal digits plus ``bits`` of fraction."""
    return bits + int(math.ceil(value_digits * math.log2(10)))
