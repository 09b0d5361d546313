import pytest

from quivcusp.exact import RatPoly
from quivcusp.fforacle import iso_class_count, kac_tables, table_from_a
from quivcusp.hua import hua_a_table
from quivcusp.quiver import Quiver
from quivcusp.series import Box

t = RatPoly.t()


@pytest.mark.parametrize("Q,box", [
    (Quiver.loops(1), (3,)), (Quiver.kronecker(2), (2, 2)), (Quiver.kronecker(3), (1, 2)),
    (Quiver.linear(2), (2, 2)), (Quiver.loops(2), (2,)),
    (Quiver.from_names(["a", "b"], [["a", "a"], ["a", "b"]]), (2, 1)),
    (Quiver.from_names(["a", "b", "c"], [["a", "b"], ["c", "b"]]), (1, 2, 1)),
])
def test_hua_matches_oracle(Q, box):
    B = Box(box)
    oracle = kac_tables(Q, B)
    hua = hua_a_table(Q, B)
    assert all(hua[d] == oracle.A[d] for d in hua)


def test_hua_closed_values():
    assert hua_a_table(Quiver.loops(1), Box((5,))) == {(d,): t for d in range(1, 6)}
    A = hua_a_table(Quiver.kronecker(2), Box((3, 3)))
    assert all(A[(l, l)] == t + 1 for l in (1, 2, 3))
    assert A[(2, 0)] == 0 and A[(1, 2)] == 1


def test_hua_33_agrees_with_direct_counts():
    # interpolation at (3,3) is out of reach, evaluation at small primes is not
    Q = Quiver.kronecker(3)
    tab = table_from_a(Q, Box((3, 3)), hua_a_table(Q, Box((3, 3))))
    for p in (2, 3):
        assert tab.H[(3, 3)](p) == iso_class_count(Q, (3, 3), p)
        assert tab.H[(2, 3)](p) == iso_class_count(Q, (2, 3), p)


def test_box_mismatch():
    with pytest.raises(ValueError):
        hua_a_table(Quiver.loops(1), Box((2, 2)))
