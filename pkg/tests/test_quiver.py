import pytest
from hypothesis import given, strategies as st

from quivcusp.quiver import (HYPERBOLIC, ISOTROPIC, REAL, Quiver, QuiverError, classify_vertices,
                             euler_form, is_primitive, is_totally_negative, primitive_part, reflect,
                             sym_form)

jordan = Quiver.loops(1)
s2 = Quiver.loops(2)
k2 = Quiver.kronecker(2)
k3 = Quiver.kronecker(3)


@st.composite
def quivers(draw, max_n=3, max_arrows=6):
    n = draw(st.integers(1, max_n))
    arrows = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_arrows))
    return Quiver(tuple(str(i) for i in range(n)), tuple(sorted(arrows)))


def vecs(n, lo=-4, hi=4):
    return st.tuples(*[st.integers(lo, hi)] * n)


def test_json_and_canonical_order():
    Q = Quiver.from_json({"vertices": ["b", "a"], "arrows": [["b", "a"], ["a", "a"]]})
    assert Q.vertices == ("a", "b")
    assert Q.arrows == ((0, 0), (1, 0))
    same = Quiver.from_json({"vertices": ["a", "b"], "arrows": [["a", "a"], ["b", "a"]]})
    assert Q.sha256() == same.sha256()
    assert Quiver.from_json(Q.to_json()) == Q
    for bad in ({"vertices": []}, {"vertices": [], "arrows": []}, {"vertices": ["a"], "arrows": [["a", "b"]]},
                {"vertices": ["a"], "arrows": [["a"]]}, [1, 2], {"vertices": "a", "arrows": []}):
        with pytest.raises(QuiverError):
            Quiver.from_json(bad)


def test_euler_form_examples():
    assert euler_form(jordan, (1,), (1,)) == 0
    for g in range(5):
        assert euler_form(Quiver.loops(g), (1,), (1,)) == 1 - g
    assert euler_form(k3, (1, 0), (0, 1)) == -3
    with pytest.raises(QuiverError):
        euler_form(k3, (1,), (1, 0))


def test_sym_form_examples():
    assert sym_form(jordan, (1,), (1,)) == 0
    assert sym_form(s2, (1,), (1,)) == -2
    assert sym_form(k2, (1, 1), (1, 1)) == 0


def test_classify():
    assert [tag for tag, _ in classify_vertices(Quiver.linear(2))] == [REAL, REAL]
    assert classify_vertices(jordan) == [(ISOTROPIC, 1)]
    assert classify_vertices(s2) == [(HYPERBOLIC, 2)]


def test_totally_negative():
    assert is_totally_negative(s2)
    assert not is_totally_negative(jordan)
    assert not is_totally_negative(k3)
    both = Quiver(("1", "2"), ((0, 0), (0, 0), (0, 1), (1, 1), (1, 1)))
    assert is_totally_negative(both)


def test_reflect_examples():
    A1 = Quiver.linear(1)
    assert reflect(A1, (1,), 0) == (-1,)
    assert reflect(k3, (0, 1), 0) == (3, 1)
    assert reflect(k2, (1, 1), 0) == (1, 1)
    with pytest.raises(QuiverError, match="reflection only at real vertices"):
        reflect(jordan, (1,), 0)


@given(st.data())
def test_reflection_is_involution(data):
    Q = data.draw(quivers())
    d = data.draw(vecs(Q.n))
    for i in Q.real_vertices():
        assert reflect(Q, reflect(Q, d, i), i) == d
        # reflections preserve the form
        assert sym_form(Q, reflect(Q, d, i), reflect(Q, d, i)) == sym_form(Q, d, d)


@given(st.data())
def test_sym_form_symmetric_bilinear(data):
    Q = data.draw(quivers())
    a, b, c = (data.draw(vecs(Q.n)) for _ in range(3))
    k = data.draw(st.integers(-3, 3))
    assert sym_form(Q, a, b) == sym_form(Q, b, a)
    ab = tuple(x + k * y for x, y in zip(a, b))
    assert sym_form(Q, ab, c) == sym_form(Q, a, c) + k * sym_form(Q, b, c)
    assert sym_form(Q.reversed(), a, b) == sym_form(Q, a, b)


@given(quivers())
def test_totally_negative_implies_hyperbolic(Q):
    if is_totally_negative(Q):
        assert all(tag == HYPERBOLIC for tag, _ in classify_vertices(Q))


def test_primitive():
    assert is_primitive((2, 3)) and not is_primitive((2, 4))
    assert primitive_part((2, 4)) == ((1, 2), 2)
    with pytest.raises(ValueError):
        primitive_part((0, 0))
