import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from maasslift.errors import DomainError, PrecisionError, RecognitionError
from maasslift.eta import named_form
from maasslift.exact import Polynomial
from maasslift.numerics import (CMPoint, chowla_selberg, context, eval_delta3, eval_eta, eval_j3, eval_series,
                                poly_from_roots, recognize_algebraic, round_polynomial)
from maasslift.shimura import Z_U

taus = st.tuples(st.floats(-0.5, 0.5), st.floats(0.6, 1.5)).map(lambda t: complex(*t))
gamma0_3 = st.sampled_from([(1, 1, 0, 1), (1, 0, 3, 1), (2, 1, 3, 2), (1, -1, -3, 4), (-1, 0, 3, -1), (4, 1, 3, 1)])


def test_eta_at_i():
    ctx = context(200)
    ref = ctx.gamma(ctx.mpf(1) / 4) / (2 * ctx.pi ** ctx.mpf(0.75))
    assert abs(eval_eta(1j, 200) - ref) < ctx.mpf(10) ** -55


def test_eta_rejects_lower_half_plane():
    with pytest.raises(DomainError):
        eval_eta(-1j)


def test_cm_point_validation():
    with pytest.raises(DomainError):
        CMPoint(1, 3, 1)
    assert CMPoint(3, -3, 1).D == -3


@pytest.mark.parametrize("form, poly", [((3, -3, 1), [27, 1]), ((3, 1, 1), [729, -10, 1]), ((3, 2, 1), [729, 46, 1])])
def test_recognized_cm_values(form, poly):
    assert recognize_algebraic(eval_j3(CMPoint(*form))) == Polynomial(poly)


@pytest.mark.parametrize("form", [(3, -3, 1), (3, 1, 1), (6, 2, 2)])
def test_precision_doubling(form):
    lo = eval_j3(CMPoint(*form), 128)
    hi = eval_j3(CMPoint(*form), 256)
    assert abs(lo - hi) < mpmath.mpf(2) ** -100 * max(1, abs(hi))


@settings(max_examples=30)
@given(taus, gamma0_3)
def test_j3_is_gamma0_3_invariant(tau, g):
    a, b, c, d = g
    assert a * d - b * c == 1 and c % 3 == 0
    ctx = context(160)
    t = ctx.mpc(tau)
    image = (a * t + b) / (c * t + d)
    v1, v2 = eval_j3(t, 160), eval_j3(image, 160)
    assert abs(v1 - v2) < ctx.mpf(10) ** -25 * max(1, abs(v1))


@settings(max_examples=30)
@given(taus)
def test_eta_translation_law(tau):
    ctx = context(160)
    t = ctx.mpc(tau)
    lhs = eval_eta(t + 1, 160)
    rhs = ctx.exp(2 * ctx.pi * ctx.j / 24) * eval_eta(t, 160)
    assert abs(lhs - rhs) < ctx.mpf(10) ** -35


@settings(max_examples=30)
@given(taus)
def test_eta_reflection_law(tau):
    # eta(-1/tau) = sqrt(-i tau) eta(tau)
    ctx = context(160)
    t = ctx.mpc(tau)
    lhs = eval_eta(-1 / t, 160)
    rhs = ctx.sqrt(-ctx.j * t) * eval_eta(t, 160)
    assert abs(lhs - rhs) < ctx.mpf(10) ** -30


@settings(max_examples=20)
@given(taus)
def test_series_evaluation_matches_product(tau):
    ctx = context(128)
    t = ctx.mpc(tau.real, tau.imag + 0.5)
    assert abs(eval_series(named_form("j3", 80), t, 128) - eval_j3(t, 128)) < ctx.mpf(10) ** -20


def test_chowla_selberg_relation():
    ctx = context(300)
    delta = eval_delta3(Z_U, 300)
    omega = chowla_selberg(300)
    assert abs(delta + 3 * ctx.sqrt(3) * omega ** 6) < ctx.mpf(10) ** -80
    assert abs(omega - ctx.mpf("0.6409273802")) < ctx.mpf(10) ** -10


def test_recognition_failure():
    with pytest.raises(RecognitionError):
        recognize_algebraic(mpmath.pi, height_bound=50)


def test_round_polynomial():
    poly, residual = round_polynomial(poly_from_roots([2, 3]))
    assert poly == Polynomial([6, -5, 1])
    assert residual == 0
    with pytest.raises(PrecisionError):
        round_polynomial([mpmath.mpf("0.4")])
