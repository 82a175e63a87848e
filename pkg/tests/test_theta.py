from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from maasslift.errors import DomainError
from maasslift.eta import eta_power, named_form
from maasslift.exact import QuadElem
from maasslift.theta import (BinaryLatticeSpec, binary_theta, different_lattice, eisenstein_coset,
                             eisenstein_lattice, eisenstein_theta_vector, hecke_theta_eta8, unary_theta)
from maasslift.vvforms import PHI_ETA, indicator_vector, kohnen_split, pairing

F = Fraction


def test_eisenstein_lattice_is_even_with_discriminant_three():
    spec = eisenstein_lattice()
    assert spec.gram == ((2, 1), (1, 2))
    assert spec.discriminant_order == 3


def test_different_lattice():
    assert different_lattice().discriminant_order == 27


def test_coset_norms():
    spec = eisenstein_lattice()
    assert spec.Q(eisenstein_coset(1)) == F(1, 3)
    assert spec.coordinates(eisenstein_coset(1) * 3) == (F(1), F(1))


def test_odd_gram_rejected():
    with pytest.raises(DomainError):
        BinaryLatticeSpec(1, (QuadElem(1, 0, -1), QuadElem(0, 1, -1)), scale=2)


def test_weight_one_theta_counts_representations():
    # k = 1: r(n) = 6 * sum_{d|n} chi_{-3}(d)
    th = binary_theta(eisenstein_lattice(), 0, 1, 30)
    chi = {0: 0, 1: 1, 2: -1}
    for n in range(1, 30):
        assert th.coeff(n) == 6 * sum(chi[d % 3] for d in range(1, n + 1) if n % d == 0)
    assert th.coeff(0) == 1


def test_vector_theta_is_eta_power():
    v = eisenstein_theta_vector(21)
    target = eta_power(8, 21) * QuadElem(0, F(1, 3), -3)
    assert v[0].is_zero()
    assert v[1] == target
    assert v[2] == -target


def test_hecke_theta():
    assert hecke_theta_eta8(25) == named_form("eta8", 25)


def test_unary_pairing_is_constant():
    p = pairing(kohnen_split(32), unary_theta("Z1", 31))
    assert p.coeff(0) == 12
    assert all(e == 0 for e, _ in p.terms() if e < 30)


def test_z6_pairs_to_eta():
    phi = indicator_vector(12, PHI_ETA)
    s = pairing(phi, unary_theta("Z6", 10))
    assert s == eta_power(1, 10) * 2


def test_unknown_unary_variant():
    with pytest.raises(DomainError):
        unary_theta("Z7", 3)


@settings(max_examples=20)
@given(st.integers(0, 2), st.integers(1, 4), st.integers(2, 14))
def test_box_doubling_does_not_change_theta(r, k, T):
    spec = eisenstein_lattice()
    mu = eisenstein_coset(r)
    assert binary_theta(spec, mu, k, T, box_scale=1) == binary_theta(spec, mu, k, T, box_scale=2)


@settings(max_examples=20)
@given(st.integers(0, 2), st.integers(-3, 3), st.integers(-3, 3))
def test_theta_depends_only_on_the_coset(r, a, b):
    spec = eisenstein_lattice()
    w1, w2 = spec.basis
    mu = eisenstein_coset(r)
    assert binary_theta(spec, mu, 4, 8) == binary_theta(spec, mu + w1 * a + w2 * b, 4, 8)
