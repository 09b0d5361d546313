"""Characters of enveloping algebras of Borcherds algebras attached to a quiver.

Simple roots are identified with dimension vectors.  A :class:`SimpleTable`
lists them together with their charges; the real ones (``eps_i`` at a loop-free
vertex ``i``) generate the Weyl group and the imaginary ones feed the series
``S``.  The character of ``U(n_+)`` is the inverse of the denominator::

    sum_{w in W} sign(w) z^{rho - w rho} w(S)

Only the shifts ``rho - w rho`` are ever materialised, built one reflection at
a time from ``shift(w s_i) = shift(w) + w(eps_i)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exact import RatPoly, binomial_poly
from .quiver import HYPERBOLIC, ISOTROPIC, REAL, DimVector, Quiver, sym_form
from .series import AdamsScope, Box, TruncSeries, pleth_exp, ts_inverse

Matrix = Tuple[Tuple[int, ...], ...]


class BorcherdsError(ValueError):
    pass


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _apply(a: Matrix, v: Sequence[int]) -> DimVector:
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


def reflection_matrix(Q: Quiver, i: int) -> Matrix:
    """Matrix of ``x -> x - (x, eps_i) eps_i``."""
    if Q.loop_count(i):
        raise BorcherdsError("reflection only at real vertices")
    n = Q.n
    ei = Q.unit(i)
    pair = [sym_form(Q, Q.unit(k), ei) for k in range(n)]
    return tuple(tuple(int(r == c) - (pair[c] if r == i else 0) for c in range(n)) for r in range(n))


@dataclass(frozen=True)
class WeylElement:
    word: Tuple[int, ...]
    action: Matrix
    shift: DimVector
    sign: int

    def __call__(self, v: Sequence[int]) -> DimVector:
        return _apply(self.action, v)


def weyl_enumerate(Q: Quiver, box: Box, real_vertices: Optional[Iterable[int]] = None,
                   slack: int = 0) -> List[WeylElement]:
    """All ``w`` with ``rho - w rho`` inside ``box`` (enlarged by ``slack`` in every direction).

    ``real_vertices`` restricts the generating reflections; by default every
    loop-free vertex is used.  Elements are found breadth first and
    deduplicated by their action matrix.
    """
    gens = sorted(Q.real_vertices() if real_vertices is None else set(real_vertices))
    for i in gens:
        if Q.loop_count(i):
            raise BorcherdsError(f"vertex {i} carries loops and is not real")
    bounds = tuple(b + slack for b in box.bounds)
    mats = {i: reflection_matrix(Q, i) for i in gens}
    ident = _identity(Q.n)
    start = WeylElement((), ident, box.zero(), 1)
    seen = {ident}
    out = [start]
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in gens:
            col = tuple(row[i] for row in w.action)
            # w s_i is longer than w exactly when w(eps_i) is positive
            if any(x < 0 for x in col):
                continue
            shift = tuple(a + b for a, b in zip(w.shift, col))
            if any(s > b for s, b in zip(shift, bounds)):
                continue
            action = _matmul(w.action, mats[i])
            if action in seen:
                continue
            seen.add(action)
            v = WeylElement(w.word + (i,), action, shift, -w.sign)
            out.append(v)
            queue.append(v)
    return out


# ---------------------------------------------------------------------------
# simple roots with charges

@dataclass(frozen=True)
class SimpleRoot:
    charge: RatPoly
    kind: str


class SimpleTable:
    """Simple roots keyed by dimension vector, each with a charge and a kind."""

    def __init__(self, Q: Quiver, entries: Optional[Mapping[DimVector, Tuple[RatPoly, str]]] = None):
        self.quiver = Q
        self.entries: Dict[DimVector, SimpleRoot] = {}
        for d, (charge, kind) in (entries or {}).items():
            self.add(d, charge, kind)

    def add(self, d: Sequence[int], charge, kind: Optional[str] = None) -> None:
        d = tuple(d)
        Q = self.quiver
        Q._check(d)
        if not any(d) or any(x < 0 for x in d):
            raise BorcherdsError(f"simple root {d} must be a nonzero dimension vector")
        charge = RatPoly.coerce(charge)
        expected = self.kind_of(d)
        if kind is None:
            kind = expected
        if kind != expected:
            raise BorcherdsError(f"kind {kind!r} inconsistent with (d,d) at {d} (expected {expected!r})")
        if kind == REAL and charge != 1:
            raise BorcherdsError(f"real simple root {d} must have charge 1, got {charge}")
        for e, root in self.entries.items():
            if sym_form(Q, d, e) > 0:
                raise BorcherdsError(f"simple roots {e} and {d} pair positively")
        self.entries[d] = SimpleRoot(charge, kind)

    def kind_of(self, d: DimVector) -> str:
        Q = self.quiver
        n = sym_form(Q, d, d)
        if n == 2 and sum(d) == 1 and Q.loop_count(d.index(1)) == 0:
            return REAL
        if n == 0:
            return ISOTROPIC
        if n < 0:
            return HYPERBOLIC
        raise BorcherdsError(f"{d} with (d,d)={n} cannot be a simple root")

    def real_vertices(self) -> List[int]:
        return [d.index(1) for d, r in self.entries.items() if r.kind == REAL]

    def imaginary(self) -> List[Tuple[DimVector, SimpleRoot]]:
        return sorted((d, r) for d, r in self.entries.items() if r.kind != REAL)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, d) -> bool:
        return tuple(d) in self.entries

    def __getitem__(self, d) -> SimpleRoot:
        return self.entries[tuple(d)]


# ---------------------------------------------------------------------------
# the series S

def isotropic_term(box: Box, gamma: DimVector, charge: RatPoly, graded: bool) -> TruncSeries:
    """``Exp(-charge z^gamma) - 1`` in the ``z``-only or ``(t, z)`` sense."""
    scope = AdamsScope.T_AND_Z if graded else AdamsScope.Z_ONLY
    return pleth_exp(TruncSeries.monomial(box, gamma, -charge), scope) - TruncSeries.one(box)


def isotropic_term_product(box: Box, gamma: DimVector, charge: RatPoly, graded: bool) -> TruncSeries:
    """The same term through binomial expansions.

    Ungraded it is ``(1 - z^gamma)^charge - 1``; graded it is
    ``prod_j (1 - t^j z^gamma)^{a_j} - 1`` where ``charge = sum_j a_j t^j``.
    """
    one = TruncSeries.one(box)

    def power(base_coeff: RatPoly, exponent: RatPoly) -> TruncSeries:
        # (1 - c z^gamma)^exponent
        out = {}
        k = 0
        while True:
            e = tuple(k * g for g in gamma)
            if not box.contains(e):
                break
            out[e] = binomial_poly(exponent, k) * (-base_coeff) ** k
            k += 1
        return TruncSeries(box, out)

    if not graded:
        return power(RatPoly.one(), charge) - one
    acc = one
    for j, a in enumerate(charge.coeffs):
        if a:
            acc = acc * power(RatPoly.monomial(1, j), RatPoly.const(a))
    return acc - one


def _term(box: Box, gamma: DimVector, root: SimpleRoot, graded: bool, product: bool) -> TruncSeries:
    if root.kind == HYPERBOLIC:
        return TruncSeries.monomial(box, gamma, -root.charge)
    fn = isotropic_term_product if product else isotropic_term
    return fn(box, gamma, root.charge, graded)


def s_series(Q: Quiver, table: SimpleTable, box: Box, graded: bool, product: bool = False) -> TruncSeries:
    """Sum over sets of distinct, pairwise orthogonal imaginary simple roots of the product of terms."""
    imag = [(d, r) for d, r in table.imaginary() if box.contains(d)]
    terms = [_term(box, d, r, graded, product) for d, r in imag]
    total = TruncSeries.one(box)

    def rec(start: int, chosen: List[int], low: DimVector, acc: TruncSeries):
        nonlocal total
        for k in range(start, len(imag)):
            d = imag[k][0]
            nlow = tuple(a + b for a, b in zip(low, d))
            if not box.contains(nlow):
                continue
            if any(sym_form(Q, d, imag[j][0]) != 0 for j in chosen):
                continue
            nacc = acc * terms[k]
            total = total + nacc
            rec(k + 1, chosen + [k], nlow, nacc)

    rec(0, [], box.zero(), TruncSeries.one(box))
    return total


def denominator_series(Q: Quiver, table: SimpleTable, box: Box, graded: bool,
                       product: bool = False) -> TruncSeries:
    S = s_series(Q, table, box, graded, product)
    total = {}
    for w in weyl_enumerate(Q, box, table.real_vertices()):
        for e, c in S.items():
            we = w(e)
            if any(x < 0 for x in we):
                raise BorcherdsError("internal: W moved an imaginary root negative")
            k = tuple(a + b for a, b in zip(we, w.shift))
            if not box.contains(k):
                continue
            v = c if w.sign > 0 else -c
            total[k] = total[k] + v if k in total else v
    return TruncSeries(box, total)


def univ_env_char(Q: Quiver, table: SimpleTable, box: Box, graded: bool) -> TruncSeries:
    return ts_inverse(denominator_series(Q, table, box, graded))
