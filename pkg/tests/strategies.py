"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from maasslift.exact import Polynomial, QuadElem
from maasslift.qseries import PuiseuxSeries

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
nonzero_rationals = rationals.filter(lambda x: x != 0)
small_ints = st.integers(min_value=-20, max_value=20)


@st.composite
def quad_elems(draw, d=-3):
    return QuadElem(draw(rationals), draw(rationals), d)


@st.composite
def polynomials(draw, max_degree=5):
    return Polynomial(draw(st.lists(rationals, max_size=max_degree + 1)))


@st.composite
def series(draw, den=None, max_terms=8, exact=False):
    den = draw(st.sampled_from([1, 2, 3, 4, 12])) if den is None else den
    start = draw(st.integers(min_value=-3 * den, max_value=2 * den))
    coeffs = draw(st.dictionaries(st.integers(min_value=start, max_value=start + 6 * den), rationals,
                                  max_size=max_terms))
    if exact:
        trunc = None
    else:
        top = max(coeffs, default=start) + 1
        trunc = draw(st.integers(min_value=top, max_value=top + 4 * den))
    return PuiseuxSeries(den, coeffs, trunc)
