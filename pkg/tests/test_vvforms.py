from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from maasslift.errors import DomainError, PrecisionError
from maasslift.exact import Polynomial
from maasslift.qseries import PuiseuxSeries
from maasslift.vvforms import (LazyTensor, VectorValuedSeries, basis_fm, basis_polynomial, indicator_vector,
                               kohnen_split, pairing, tensor)
from maasslift.verify import TENSOR_MINUS, TENSOR_TWO_THIRDS

from test_eta import naive_product

F = Fraction
basis_indices = st.integers(0, 4).map(lambda k: F(3 * k - 1, 3))


def solve(rows, rhs):
    """Gauss-Jordan over Q."""
    n = len(rows)
    a = [list(map(F, r)) + [F(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col])
        a[col], a[piv] = a[piv], a[col]
        a[col] = [x / a[col][col] for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                a[i] = [x - a[i][col] * y for x, y in zip(a[i], a[col])]
    return [r[-1] for r in a]


def mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def brute_force_P(deg):
    """Monic P with P(j) eta^8 = q^(-deg+1/3) + O(q^(4/3)), solved as a dense linear system.

    Series are indexed by the shift q^(-deg) so everything stays in integer lists.
    """
    n = 2 * deg + 4
    eta8 = naive_product([(1, 8)], n)                    # eta^8 / q^(1/3)
    delta = naive_product([(1, 24)], n + deg + 2)        # Delta / q
    sig = [0] * n
    for d in range(1, n):
        for k in range(d, n, d):
            sig[k] += d ** 3
    e4 = [1] + [240 * s for s in sig[1:]]
    e4c = mul(mul(e4, e4, n), e4, n)
    inv_delta = [0] * n                                  # q / Delta
    inv_delta[0] = 1
    for i in range(1, n):
        inv_delta[i] = -sum(delta[k] * inv_delta[i - k] for k in range(1, i + 1))
    qj = mul(e4c, inv_delta, n)                          # q * j
    # basis[i] = q^deg * j^i * eta^8 / q^(1/3), as a list
    basis = []
    power = [1] + [0] * (n - 1)
    for i in range(deg + 1):
        shifted = [0] * (deg - i) + power
        basis.append(mul(shifted, eta8, n))
        power = mul(power, qj, n)
    # require coefficients of q^(1/3 - k) for k = 0..deg-1 to vanish: shifted index deg - k
    rows = [[basis[i][deg - k] for i in range(deg)] for k in range(deg)]
    rhs = [-basis[deg][deg - k] for k in range(deg)]
    return Polynomial(solve(rows, rhs) + [F(1)])


@pytest.mark.parametrize("deg", [1, 2, 3])
def test_basis_polynomial_matches_brute_force(deg):
    assert basis_polynomial(F(3 * deg - 1, 3)) == brute_force_P(deg)


def test_basis_polynomial_degree_three_coefficients():
    assert basis_polynomial(F(8, 3)) == Polynomial([-35621376, 1058096, -2224, 1])


@settings(max_examples=10)
@given(basis_indices)
def test_basis_form_shape(m):
    f = basis_fm(m, 8)
    assert f[0].is_zero()
    assert f[1].coeff(-m) == F(1, 2)
    expected = PuiseuxSeries.monomial(-m, F(1, 2)) if m > 0 else PuiseuxSeries.zero()
    assert f.principal_part(1) == expected
    # the gap between -m and 4/3 is empty apart from the leading term
    for e in range(int(-m - F(1, 3)) + 1, 1):
        if e + F(1, 3) != -m:
            assert f[1].coeff(e + F(1, 3)) == 0
    assert f.exponent_classes() == {1: F(1, 3), 2: F(1, 3)}


@settings(max_examples=10)
@given(basis_indices)
def test_basis_symmetry(m):
    f = basis_fm(m, 6)
    assert f[2] == -f[1]
    assert f.kappa == 1


def test_symmetry_violation_is_caught():
    s = PuiseuxSeries.monomial(F(1, 3))
    with pytest.raises(DomainError):
        VectorValuedSeries(3, {1: s, 2: s}, kappa=1)


def test_kohnen_split_components():
    k = kohnen_split(6)
    assert k.coeff(F(-1, 4), 1) == 1
    assert k.coeff(0, 0) == 10
    assert k.coeff(F(3, 4), 1) == -64
    assert k.coeff(1, 0) == 108
    assert k.exponent_classes() == {0: 0, 1: F(3, 4)}


@pytest.mark.parametrize("m, table", [(F(-1, 3), TENSOR_MINUS), (F(2, 3), TENSOR_TWO_THIRDS)])
def test_tensor_values(m, table):
    t = tensor(basis_fm(m, 6), kohnen_split(6))
    for (mu, e), c in table.items():
        assert t.coeff(e, mu) == c
        assert t.coeff(e, 6 - mu) == -c
    assert t[0].is_zero() and t[3].is_zero()
    assert t.kappa == 1


@settings(max_examples=5)
@given(basis_indices)
def test_lazy_tensor_agrees_with_full_tensor(m):
    f, g = basis_fm(m, 5), kohnen_split(5)
    full = tensor(f, g)
    lazy = LazyTensor(f, g)
    for mu in range(6):
        assert lazy.precision(mu) == full[mu].precision
        for e, c in full[mu].terms():
            assert lazy.coeff(e, mu) == c
        assert lazy.principal_part(mu) == full.principal_part(mu)
    assert lazy.materialize(2).equals(full.truncate(2))


def test_lazy_tensor_refuses_unknown_coefficients():
    lazy = LazyTensor(basis_fm(F(2, 3), 3), kohnen_split(3))
    with pytest.raises(PrecisionError):
        lazy.coeff(lazy.precision(1), 1)


def test_tensor_needs_coprime_moduli():
    with pytest.raises(DomainError):
        tensor(kohnen_split(3), kohnen_split(3))


def test_pairing_shape_mismatch():
    with pytest.raises(DomainError):
        pairing(kohnen_split(3), basis_fm(F(2, 3), 3))


@given(st.dictionaries(st.integers(0, 2), st.integers(-5, 5)))
def test_indicator_vector_scaling(values):
    sym = dict(values)
    sym.update({(-mu) % 5: c for mu, c in values.items()})
    v = indicator_vector(5, sym)
    w = v.scale(3) - v - v
    assert w.equals(v)
