from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from maasslift.errors import DomainError, PoleError
from maasslift.exact import (Polynomial, QuadElem, RationalFunction, format_rational, is_squarefree_poly,
                             parse_coefficient, parse_quad, parse_rational, poly_eval, poly_gcd, quad_arith,
                             rational_roots)
from maasslift.verify import A_TWO_THIRDS, B_TWO_THIRDS

from strategies import nonzero_rationals, polynomials, quad_elems, rationals

F = Fraction
A = Polynomial(A_TWO_THIRDS)
B = B_TWO_THIRDS


def test_norm_of_cm_value_is_constant_term():
    x = QuadElem(5, 8, -11)
    assert quad_arith(x, x.conj(), "mul") == 729


def test_conj_of_zero():
    assert quad_arith(QuadElem(0, 0, -3), op="conj") == 0


def test_cube_of_shortest_coset_vector():
    lam = QuadElem(F(3, 2), F(1, 2), -3)
    assert lam ** 3 == QuadElem(0, 3, -3)


def test_norm_and_add_dispatch():
    x, y = QuadElem(1, 2, -3), QuadElem(F(1, 2), -1, -3)
    assert quad_arith(x, op="norm") == 13
    assert quad_arith(x, y, "add") == QuadElem(F(3, 2), 1, -3)
    with pytest.raises(DomainError):
        quad_arith(x, y, "pow")


def test_mixed_fields_rejected():
    with pytest.raises(DomainError):
        QuadElem(1, 1, -3) * QuadElem(1, 1, -11)


def test_non_squarefree_d_rejected():
    with pytest.raises(DomainError):
        QuadElem(1, 1, -12)


def test_eval_identity():
    assert poly_eval(Polynomial([0, 1]), 5) == 5


def test_pole_polynomial_at_minus_27():
    assert poly_eval(B, -27) == 72 ** 9


def test_lift_ratio_at_minus_27():
    assert poly_eval(RationalFunction(A, B), -27) == -61


def test_rational_function_pole():
    rf = RationalFunction(Polynomial([1]), Polynomial([-2, 1]))
    with pytest.raises(PoleError):
        rf(2)


def test_rational_function_reduces():
    x1 = Polynomial([-1, 1])
    rf = RationalFunction(x1 * Polynomial([3, 1]), x1 * Polynomial([5, 2]))
    assert rf.num == Polynomial([F(3, 2), F(1, 2)])
    assert rf.den == Polynomial([F(5, 2), 1])


def test_numerator_is_coprime_and_has_no_rational_root():
    assert poly_gcd(A, B).degree == 0
    assert is_squarefree_poly(A)
    # leading coefficient is a power of 2, so a rational root would survive reduction mod 11
    assert all(sum(int(c) * x ** k for k, c in enumerate(A.coeffs)) % 11 for x in range(11))


def test_gcd_finds_common_factor():
    g = Polynomial([729, -10, 1])
    assert poly_gcd(g * Polynomial([1, 1]), g ** 2) == g


def test_rational_roots():
    p = Polynomial([-6, 1]) * Polynomial([1, 2]) * Polynomial([1, 0, 1])
    assert rational_roots(p) == [F(-1, 2), F(6)]


def test_text_encodings():
    assert format_rational(F(-65804, 125)) == "-65804/125"
    assert format_rational(F(4)) == "4"
    assert parse_rational("−61") == -61
    x = QuadElem(F(1, 2), F(-3, 7), -3)
    assert parse_quad(str(x)) == x
    assert parse_coefficient("3/4") == F(3, 4)
    assert str(Polynomial([-736, 1])) == "X - 736"
    with pytest.raises(DomainError):
        parse_rational("abc")


@given(rationals, rationals, rationals)
def test_rational_field_associativity(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(nonzero_rationals)
def test_rational_inverse(x):
    assert x * (1 / x) == 1


@given(quad_elems(), quad_elems())
def test_norm_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()


@given(quad_elems())
def test_conj_involution(x):
    assert x.conj().conj() == x


@given(quad_elems(), quad_elems())
def test_quad_division(x, y):
    if y:
        assert (x / y) * y == x


@given(polynomials(), polynomials().filter(lambda p: not p.is_zero()))
def test_rational_function_coprime(p, q):
    rf = RationalFunction(p, q)
    assert poly_gcd(rf.num, rf.den).degree == 0
    assert rf.den.leading() == 1


@given(polynomials(), polynomials(), rationals)
def test_eval_homomorphism(p, q, x):
    assert poly_eval(p + q, x) == poly_eval(p, x) + poly_eval(q, x)
    assert poly_eval(p * q, x) == poly_eval(p, x) * poly_eval(q, x)


@given(polynomials(), polynomials().filter(lambda p: not p.is_zero()))
def test_divmod(p, q):
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.is_zero() or rem.degree < q.degree


@given(st.lists(st.integers(-30, 30), min_size=1, max_size=4), st.lists(st.integers(-30, 30), min_size=1, max_size=4))
def test_gcd_divides_both(a, b):
    p = Polynomial([1, 1]) * Polynomial(a)
    q = Polynomial([1, 1]) * Polynomial(b)
    if p.is_zero() or q.is_zero():
        return
    g = poly_gcd(p, q)
    assert (p % g).is_zero() and (q % g).is_zero()
    assert g.degree >= 1
