"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from quivcusp.exact import RatPoly
from quivcusp.series import Box, TruncSeries

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def polys(draw, max_degree=6, coeffs=small_fracs):
    cs = draw(st.lists(coeffs, max_size=max_degree + 1))
    return RatPoly(cs)


@st.composite
def boxes(draw, max_rank=2, max_bound=3):
    rank = draw(st.integers(1, max_rank))
    return Box(tuple(draw(st.integers(0, max_bound)) for _ in range(rank)))


@st.composite
def series(draw, box=None, augmented=True, max_degree=3, coeffs=small_ints):
    if box is None:
        box = draw(boxes())
    out = {}
    for e in box.points():
        if augmented and not any(e):
            continue
        if draw(st.booleans()):
            out[e] = draw(polys(max_degree=max_degree, coeffs=coeffs))
    if not augmented:
        out[box.zero()] = RatPoly.one()
    return TruncSeries(box, out)
