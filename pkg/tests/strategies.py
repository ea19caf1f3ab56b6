"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from torus_nielsen.algebra import Endo, Monomial, RingElt
from torus_nielsen.hochschild import Chain1, Chain2
from torus_nielsen.intlinalg import IntMatrix2

small = st.integers(-3, 3)
monomials = st.builds(Monomial, small, small)
ring_elts = st.dictionaries(monomials, st.integers(-4, 4), max_size=4).map(RingElt)
endos = st.builds(Endo, small, small, small, small)

chain1s = st.dictionaries(st.tuples(monomials, monomials), st.integers(-3, 3), max_size=4).map(Chain1)
chain2s = st.dictionaries(st.tuples(monomials, monomials, monomials), st.integers(-3, 3), max_size=4).map(Chain2)


def _unimodular(entries):
    m = IntMatrix2(*entries)
    return m if m.det() in (1, -1) else None


unimodular = st.tuples(small, small, small, small).map(_unimodular).filter(lambda m: m is not None)

# phi = (1, 0, b3, b4) with ker([phi] - I) = <(1, 0)>
supported_endos = st.builds(lambda b3, b4: Endo(1, 0, b3, b4), small, small.filter(lambda b: b != 1))
