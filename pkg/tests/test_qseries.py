from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from maasslift.errors import DomainError, PrecisionError
from maasslift.qseries import (PuiseuxSeries, parse_dump, series_dump, series_inv, series_pow, series_rescale)

from strategies import rationals, series

F = Fraction


def perturb_tail(f: PuiseuxSeries, extra: dict) -> PuiseuxSeries:
    """Same known part, arbitrary garbage at and above the truncation point."""
    coeffs = dict(f.coeffs)
    for k, v in extra.items():
        coeffs[f.trunc + k] = v
    return PuiseuxSeries(f.den, coeffs, None)


tails = st.dictionaries(st.integers(0, 10), rationals.filter(bool), min_size=1, max_size=4)


def test_geometric_inverse():
    inv = series_inv(PuiseuxSeries(1, {0: 1, 1: -1}), prec=10)
    assert inv == PuiseuxSeries.from_list([1] * 10, trunc=10)
    assert inv.precision == 10


def test_inverse_of_exact_needs_precision():
    with pytest.raises(DomainError):
        series_inv(PuiseuxSeries(1, {0: 1, 1: -1}))


def test_inverse_of_zero():
    with pytest.raises(DomainError):
        series_inv(PuiseuxSeries.zero(trunc=5))


def test_fractional_exponents_and_precision():
    f = PuiseuxSeries(3, {-1: 1, 2: 5}, 6)
    assert f.coeff(F(-1, 3)) == 1
    assert f.coeff(F(2, 3)) == 5
    assert f.coeff(F(1, 2)) == 0
    assert f.precision == 2
    with pytest.raises(PrecisionError):
        f.coeff(2)


def test_negative_power_shifts_precision():
    f = PuiseuxSeries(1, {-1: 1, 0: 2, 1: 1}, 5)
    g = f ** -1
    assert g.valuation_exponent == 1
    assert (f * g).compare(1)[0]


def test_rescale():
    f = PuiseuxSeries.from_list([1, 2, 3], trunc=3)
    g = series_rescale(f, F(2, 3))
    assert g.coeff(F(2, 3)) == 2
    assert g.precision == 2


def test_dump_format():
    f = PuiseuxSeries(3, {-1: 1, 2: F(-5, 2)}, 6)
    assert series_dump(f) == "-1/3\t1\n2/3\t-5/2\nO(q^{2})"


def test_zero_division_by_scalar():
    with pytest.raises(ZeroDivisionError):
        PuiseuxSeries.from_list([1]) / 0


@settings(max_examples=1000)
@given(series(den=1), series(den=1), series(den=1))
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == 0


@settings(max_examples=300)
@given(series(), series())
def test_mixed_denominators_commute(f, g):
    assert f * g == g * f
    assert (f + g).compare(g + f)[0]


@given(series(), series(), tails, tails)
def test_product_truncation_never_optimistic(f, g, tf, tg):
    prod = f * g
    wild = perturb_tail(f, tf) * perturb_tail(g, tg)
    same, _ = prod.compare(wild)
    assert same


@given(series(), tails)
def test_inverse_truncation_never_optimistic(f, tf):
    if f.is_zero():
        return
    inv = series_inv(f)
    wild = series_inv(perturb_tail(f, tf), prec=inv.precision + 3)
    assert inv.compare(wild)[0]


@given(series(), st.integers(0, 4), tails)
def test_power_truncation_never_optimistic(f, e, tf):
    p = series_pow(f, e)
    assert p.compare(series_pow(perturb_tail(f, tf), e))[0]


@given(series())
def test_inverse_is_inverse(f):
    if f.is_zero():
        return
    assert (f * series_inv(f)).compare(1)[0]


@given(series(), st.integers(-3, 3))
def test_power_matches_repeated_product(f, e):
    if f.is_zero() and e < 0:
        return
    p = series_pow(f, e)
    q = PuiseuxSeries.constant(1)
    for _ in range(abs(e)):
        q = q * f
    if e < 0:
        q = series_inv(q)
    assert p.compare(q)[0]


@given(series(), st.fractions(min_value=F(1, 6), max_value=6, max_denominator=6).filter(lambda c: c > 0))
def test_rescale_round_trip(f, c):
    assert series_rescale(series_rescale(f, c), 1 / c).compare(f) == (True, f.precision)


@given(series())
def test_dump_round_trip(f):
    g = parse_dump(series_dump(f))
    assert g.compare(f) == (True, f.precision)
    assert series_dump(g) == series_dump(f)


@given(series())
def test_json_round_trip(f):
    g = PuiseuxSeries.from_json(f.to_json())
    assert g.compare(f) == (True, f.precision)
