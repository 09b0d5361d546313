"""Counting quiver representations over prime fields.

The count of isomorphism classes of representations of dimension ``d`` over
``F_p`` is an orbit count for ``G = prod_i GL_{d_i}(F_p)`` acting on the
representation space.  Burnside's lemma turns it into a sum over pairs of
conjugacy classes; the number of fixed points of ``(g_i)`` on the arrow
``s -> t`` is ``p^{dim ker(X -> g_t X - X g_s)}``, and those kernel dimensions
are computed by Gaussian elimination over ``F_p``, vectorised with numpy.

Counting at enough primes and interpolating gives ``H_d(t)``; the tables of
indecomposable (``I``) and absolutely indecomposable (``A``) counts follow by
plethystic logarithms in ``z`` resp. ``(t, z)``.
"""

from __future__ import annotations

import itertools
import logging
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .exact import RatPoly, conjugate, multiplicities, partitions_of, poly_interpolate
from .quiver import DimVector, Quiver
from .series import AdamsScope, Box, TruncSeries, pleth_exp, pleth_log

log = logging.getLogger(__name__)

MAX_GL_RANK = 3
DEFAULT_BUDGET = 30_000_000
HELD_OUT = 2
SPOT_PRIMES = (2, 3, 5)
SPOT_BUDGET = 2_000_000


class OracleInconsistency(ArithmeticError):
    pass


class CapabilityGap(RuntimeError):
    """A dimension vector the oracle cannot reach and no imported table covers."""

    def __init__(self, d, reason=""):
        self.d = tuple(d)
        msg = f"dimension vector {','.join(map(str, self.d))} is beyond the finite-field oracle"
        super().__init__(msg + (f" ({reason})" if reason else "") + "; supply an A-table")


# ---------------------------------------------------------------------------
# primes and the prime field

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def first_primes(count: int) -> List[int]:
    out, n = [], 2
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n += 1
    return out


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def elements(self) -> range:
        return range(self.p)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, self.p - 2, self.p)

    def primitive_root(self) -> int:
        p = self.p
        if p == 2:
            return 1
        factors = [q for q in range(2, p) if (p - 1) % q == 0 and is_prime(q)]
        for g in range(2, p):
            if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
                return g
        raise AssertionError("no primitive root")


# ---------------------------------------------------------------------------
# polynomials over F_p (coefficient tuples, lowest first)

def _pmod(a: tuple, b: tuple, p: int) -> tuple:
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv % p
        if c:
            for j, x in enumerate(b):
                a[k + j] = (a[k + j] - c * x) % p
    a = a[: len(b) - 1]
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _pmul(a: tuple, b: tuple, p: int) -> tuple:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return tuple(out)


def irreducible_polys(p: int, max_degree: int) -> List[tuple]:
    """Monic irreducible polynomials over F_p other than ``x``, by degree then coefficients."""
    found: List[tuple] = []
    xs = np.arange(p, dtype=np.int64)
    for k in range(1, max_degree + 1):
        tails = np.array(list(itertools.product(range(p), repeat=k)), dtype=np.int64)
        if k == 1:
            found.extend((c, 1) for c in range(1, p))
            continue
        if k <= 3:
            # degree 2 or 3: irreducible iff no root in F_p
            vals = np.ones((len(tails), p), dtype=np.int64)
            for i in range(k - 1, -1, -1):
                vals = (vals * xs[None, :] + tails[:, i:i + 1]) % p
            keep = (vals != 0).all(axis=1)
            found.extend(tuple(int(c) for c in row) + (1,) for row in tails[keep])
            continue
        small = [f for f in found if 2 * (len(f) - 1) <= k]
        for row in tails:
            f = tuple(int(c) for c in row) + (1,)
            if f[0] and all(_pmod(f, g, p) for g in small):
                found.append(f)
    return found


def _companion(f: tuple) -> List[List[int]]:
    m = len(f) - 1
    p_mat = [[0] * m for _ in range(m)]
    for i in range(1, m):
        p_mat[i][i - 1] = 1
    for i in range(m):
        p_mat[i][m - 1] = -f[i]
    return p_mat


# ---------------------------------------------------------------------------
# conjugacy classes of GL_n(F_p)

@dataclass(frozen=True)
class GLClass:
    n: int
    representative: Tuple[Tuple[int, ...], ...]
    size: int
    label: tuple = field(default=(), compare=False)


def gl_order(n: int, p: int) -> int:
    out = 1
    for k in range(n):
        out *= p ** n - p ** k
    return out


def _centralizer_order(data, p: int) -> int:
    key = (p, tuple(sorted((len(f) - 1, lam) for f, lam in data)))
    hit = _CENTRALIZER_CACHE.get(key)
    if hit is not None:
        return hit
    total = Fraction(1)
    for deg, lam in key[1]:
        q = p ** deg
        total *= Fraction(q) ** sum(x * x for x in conjugate(lam))
        for m in multiplicities(lam).values():
            for j in range(1, m + 1):
                total *= 1 - Fraction(1, q ** j)
    assert total.denominator == 1
    _CENTRALIZER_CACHE[key] = total.numerator
    return total.numerator


_CENTRALIZER_CACHE: Dict[tuple, int] = {}


@lru_cache(maxsize=64)
def gl_classes(n: int, p: int) -> Tuple[GLClass, ...]:
    """All conjugacy classes of ``GL_n(F_p)`` with exact sizes.

    A class is a map from monic irreducibles ``f != x`` to partitions with
    ``sum deg(f) |lambda_f| = n``; its representative is the block diagonal
    of companion matrices of the elementary divisors ``f^{lambda_k}``.
    """
    if not 1 <= n <= MAX_GL_RANK:
        raise ValueError(f"GL_{n} classes are not supported (n must be in 1..{MAX_GL_RANK})")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    irr = irreducible_polys(p, n)
    order = gl_order(n, p)
    powers: Dict[tuple, tuple] = {}

    def power(f, k):
        key = (f, k)
        if key not in powers:
            g = (1,)
            for _ in range(k):
                g = _pmul(g, f, p)
            powers[key] = g
        return powers[key]

    out: List[GLClass] = []

    def rec(start, remaining, acc):
        if remaining == 0:
            blocks = [_companion(power(f, part)) for f, lam in acc for part in lam]
            mat = [[0] * n for _ in range(n)]
            off = 0
            for b in blocks:
                for i, row in enumerate(b):
                    for j, x in enumerate(row):
                        mat[off + i][off + j] = x % p
                off += len(b)
            size = order // _centralizer_order(acc, p)
            out.append(GLClass(n, tuple(tuple(r) for r in mat), size, tuple(acc)))
            return
        for idx in range(start, len(irr)):
            f = irr[idx]
            k = len(f) - 1
            if k > remaining:
                break
            for m in range(1, remaining // k + 1):
                for lam in partitions_of(m):
                    rec(idx + 1, remaining - k * m, acc + [(f, lam)])

    rec(0, n, [])
    return tuple(out)


# ---------------------------------------------------------------------------
# batched linear algebra over F_p

def batch_rank_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of integer matrices ``(B, r, c)`` over F_p."""
    M = np.mod(np.asarray(mats, dtype=np.int64), p)
    B, r, c = M.shape
    rank = np.zeros(B, dtype=np.int64)
    if r == 0 or c == 0:
        return rank
    inv_table = np.array([0] + [pow(x, p - 2, p) for x in range(1, p)], dtype=np.int64)
    rows = np.arange(B)
    for j in range(c):
        col = M[:, :, j]
        nz = col != 0
        has = nz.any(axis=1)
        if not has.any():
            continue
        piv = nz.argmax(axis=1)
        prow = M[rows, piv, :]
        scale = inv_table[prow[:, j]]
        prow = (prow * scale[:, None]) % p
        factors = np.where(has[:, None], col, 0)
        # subtracting the normalised pivot row zeroes column j, and the pivot row itself
        M = (M - factors[:, :, None] * prow[:, None, :]) % p
        rank += has
    return rank


def _class_array(classes: Sequence[GLClass]) -> np.ndarray:
    return np.array([c.representative for c in classes], dtype=np.int64)


def kernel_dims(gs: np.ndarray, gt: np.ndarray, p: int, budget: int = 4_000_000) -> np.ndarray:
    """``dim ker(X -> g_t X - X g_s)`` for all pairs; shape ``(len(gs), len(gt))``."""
    ns, ds = gs.shape[0], gs.shape[1]
    nt, dt = gt.shape[0], gt.shape[1]
    dim = ds * dt
    out = np.empty((ns, nt), dtype=np.int64)
    eye_s = np.eye(ds, dtype=np.int64)
    eye_t = np.eye(dt, dtype=np.int64)
    # left action on X (dt x ds) flattened row-major: kron(g_t, I_ds) - kron(I_dt, g_s^T)
    left = np.einsum("jac,be->jabce", gt, eye_s).reshape(nt, dim, dim)
    right = np.einsum("ac,ieb->iabce", eye_t, gs).reshape(ns, dim, dim)
    step = max(1, budget // (max(nt, 1) * dim * dim))
    for i0 in range(0, ns, step):
        r = right[i0:i0 + step]
        mats = left[None, :, :, :] - r[:, None, :, :]
        ranks = batch_rank_mod_p(mats.reshape(-1, dim, dim), p)
        out[i0:i0 + step] = dim - ranks.reshape(r.shape[0], nt)
    return out


def centralizer_dims(gs: np.ndarray, p: int) -> np.ndarray:
    """``dim ker(X -> gX - Xg)`` for each matrix in the stack."""
    n = gs.shape[1]
    eye = np.eye(n, dtype=np.int64)
    left = np.einsum("iac,be->iabce", gs, eye).reshape(len(gs), n * n, n * n)
    right = np.einsum("ac,ieb->iabce", eye, gs).reshape(len(gs), n * n, n * n)
    return n * n - batch_rank_mod_p(left - right, p)


# ---------------------------------------------------------------------------
# orbit counting

def iso_class_count(Q: Quiver, d: Sequence[int], p: int) -> int:
    """Number of isomorphism classes of representations of dimension ``d`` over F_p."""
    d = tuple(d)
    Q._check(d)
    if any(x > MAX_GL_RANK for x in d):
        raise ValueError(f"dimension vector {d} needs GL_n with n > {MAX_GL_RANK}")
    active = [i for i in range(Q.n) if d[i] > 0]
    if not active:
        return 1
    classes = {i: gl_classes(d[i], p) for i in active}
    # class sizes are bounded by |GL_n(F_p)|; fall back to Python ints before int64 overflows
    sizes = {i: np.array([c.size for c in classes[i]],
                         dtype=np.int64 if gl_order(d[i], p) < 2 ** 62 // len(classes[i]) else object)
             for i in active}
    reps = {i: _class_array(classes[i]) for i in active}

    loop_exp = {i: np.zeros(len(classes[i]), dtype=np.int64) for i in active}
    pair_exp: Dict[Tuple[int, int], np.ndarray] = {}
    kcache: Dict[Tuple[int, int], np.ndarray] = {}
    for s, t in Q.arrows:
        if d[s] == 0 or d[t] == 0:
            continue
        if s == t:
            if (s, s) not in kcache:
                kcache[(s, s)] = centralizer_dims(reps[s], p)
            loop_exp[s] = loop_exp[s] + kcache[(s, s)]
            continue
        if (s, t) not in kcache:
            kcache[(s, t)] = kernel_dims(reps[s], reps[t], p)
        k = kcache[(s, t)]
        # store as (lower index, higher index)
        key = (min(s, t), max(s, t))
        k = k if s < t else k.T
        pair_exp[key] = pair_exp.get(key, 0) + k

    last = active[-1]
    prefix = active[:-1]
    total = 0
    for combo in itertools.product(*(range(len(classes[i])) for i in prefix)):
        choice = dict(zip(prefix, combo))
        weight = 1
        base = 0
        for i in prefix:
            weight *= int(sizes[i][choice[i]])
            base += int(loop_exp[i][choice[i]])
        vec = loop_exp[last].copy()
        for (a, b), mat in pair_exp.items():
            if b == last and a in choice:
                vec += mat[choice[a]]
            elif a in choice and b in choice:
                base += int(mat[choice[a], choice[b]])
        acc = np.zeros(int(vec.max()) + 1, dtype=sizes[last].dtype)
        np.add.at(acc, vec, sizes[last])
        inner = sum(int(a) * p ** e for e, a in enumerate(acc) if a)
        total += weight * p ** base * inner
    group = 1
    for i in active:
        group *= gl_order(d[i], p)
    if total % group:
        raise OracleInconsistency(f"Burnside sum {total} not divisible by |G|={group} at d={d}, p={p}")
    return total // group


# -- brute force, used to validate the Burnside route on tiny cases ----------

def _mat_mul(a, b, p):
    n, m, k = len(a), len(b), len(b[0]) if b else 0
    return tuple(tuple(sum(a[i][l] * b[l][j] for l in range(m)) % p for j in range(k)) for i in range(n))


def _mat_inv(a, p):
    n = len(a)
    M = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] % p)
        M[col], M[piv] = M[piv], M[col]
        inv = pow(M[col][col], p - 2, p)
        M[col] = [x * inv % p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [(x - f * y) % p for x, y in zip(M[r], M[col])]
    return tuple(tuple(row[n:]) for row in M)


def gl_generators(n: int, p: int) -> list:
    """Elementary transvections plus ``diag(zeta, 1, ..., 1)``; they generate GL_n(F_p)."""
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                gens.append(tuple(tuple(1 if (a == b or (a, b) == (i, j)) else 0 for b in range(n))
                                  for a in range(n)))
    z = PrimeField(p).primitive_root()
    if z != 1:
        gens.append(tuple(tuple((z if a == 0 else 1) if a == b else 0 for b in range(n)) for a in range(n)))
    return gens


def gl_elements(n: int, p: int) -> list:
    out = []
    for flat in itertools.product(range(p), repeat=n * n):
        m = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if _rank_small(m, p) == n:
            out.append(m)
    return out


def _rank_small(m, p) -> int:
    return int(batch_rank_mod_p(np.array([m], dtype=np.int64), p)[0])


def gl_classes_bruteforce(n: int, p: int) -> List[frozenset]:
    """Conjugacy classes of GL_n(F_p) as explicit element sets (tiny cases only)."""
    elems = gl_elements(n, p)
    gens = [(g, _mat_inv(g, p)) for g in gl_generators(n, p)]
    seen: set = set()
    classes = []
    for x in elems:
        if x in seen:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g, gi in gens:
                z = _mat_mul(_mat_mul(g, y, p), gi, p)
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        seen |= orbit
        classes.append(frozenset(orbit))
    return classes


def orbit_count_bruteforce(Q: Quiver, d: Sequence[int], p: int) -> int:
    """Orbits of ``prod GL_{d_i}`` on the representation space, by union-find."""
    d = tuple(d)
    arrows = [(s, t) for s, t in Q.arrows if d[s] and d[t]]
    shapes = [(d[t], d[s]) for s, t in arrows]
    sizes = [a * b for a, b in shapes]
    total = sum(sizes)
    npts = p ** total
    if npts > 2_000_000:
        raise ValueError("representation space too large for brute force")

    def decode(code):
        digits = []
        for _ in range(total):
            digits.append(code % p)
            code //= p
        mats, off = [], 0
        for (r, c), sz in zip(shapes, sizes):
            chunk = digits[off:off + sz]
            mats.append(tuple(tuple(chunk[i * c:(i + 1) * c]) for i in range(r)))
            off += sz
        return mats

    def encode(mats):
        digits = []
        for m in mats:
            for row in m:
                digits.extend(row)
        code = 0
        for x in reversed(digits):
            code = code * p + x
        return code

    gens = []
    for v in range(Q.n):
        if d[v]:
            for g in gl_generators(d[v], p):
                gens.append((v, g, _mat_inv(g, p)))

    parent = list(range(npts))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for code in range(npts):
        mats = decode(code)
        for v, g, gi in gens:
            new = []
            for (s, t), m in zip(arrows, mats):
                if t == v:
                    m = _mat_mul(g, m, p)
                if s == v:
                    m = _mat_mul(m, gi, p)
                new.append(m)
            a, b = find(code), find(encode(new))
            if a != b:
                parent[a] = b
    return sum(1 for x in range(npts) if find(x) == x)


# ---------------------------------------------------------------------------
# interpolation of H_d(t)

def required_primes(Q: Quiver, d: Sequence[int]) -> List[int]:
    """Interpolation nodes followed by the held-out primes."""
    return first_primes(1 + Q.rep_dimension(tuple(d)) + HELD_OUT)


def oracle_cost(Q: Quiver, d: Sequence[int]) -> int:
    cost = 0
    for p in required_primes(Q, d):
        c = 1
        for x in d:
            if x:
                c *= p ** x
        cost += c
    return cost


def oracle_supports(Q: Quiver, d: Sequence[int], budget: int = DEFAULT_BUDGET,
                    primes_limit: Optional[int] = None) -> Tuple[bool, str]:
    d = tuple(d)
    if any(x > MAX_GL_RANK for x in d):
        return False, f"needs GL_n with n > {MAX_GL_RANK}"
    if not any(d):
        return True, ""
    ps = required_primes(Q, d)
    if primes_limit is not None and ps[-1] > primes_limit:
        return False, f"needs primes up to {ps[-1]} > limit {primes_limit}"
    cost = oracle_cost(Q, d)
    if cost > budget:
        return False, f"estimated cost {cost} exceeds budget {budget}"
    return True, ""


CountFn = Callable[[Quiver, DimVector, int], int]


def h_poly(Q: Quiver, d: Sequence[int], count: CountFn = iso_class_count) -> RatPoly:
    """Interpolate the isomorphism-class count; verified at two held-out primes."""
    d = tuple(d)
    if not any(d):
        return RatPoly.one()
    ps = required_primes(Q, d)
    nodes, held = ps[:-HELD_OUT], ps[-HELD_OUT:]
    values = {p: count(Q, d, p) for p in ps}
    H = poly_interpolate([(p, values[p]) for p in nodes])
    for p in held:
        if H(p) != values[p]:
            raise OracleInconsistency(f"degree bound violated at d={d}: H({p})={H(p)} but count={values[p]}")
    return H


# ---------------------------------------------------------------------------
# Kac tables

@dataclass
class KacTable:
    quiver: Quiver
    box: Box
    H: Dict[DimVector, RatPoly]
    I: Dict[DimVector, RatPoly]
    A: Dict[DimVector, RatPoly]
    source: Dict[DimVector, str] = field(default_factory=dict)

    SCHEMA = "kac-table/1"

    def h_series(self) -> TruncSeries:
        return TruncSeries(self.box, self.H)

    def a_series(self) -> TruncSeries:
        return TruncSeries(self.box, {d: a for d, a in self.A.items() if any(d)})

    def to_json(self) -> dict:
        entries = {}
        for d in self.box.points():
            if not any(d):
                continue
            entries[",".join(map(str, d))] = {
                "H": self.H[d].to_json(), "I": self.I[d].to_json(), "A": self.A[d].to_json(),
                "source": self.source.get(d, "oracle"),
            }
        return {"schema": self.SCHEMA, "quiver": self.quiver.to_json(),
                "box": list(self.box.bounds), "entries": entries}

    @classmethod
    def from_json(cls, data) -> "KacTable":
        """Load a table; only the ``A`` entries are required, ``H`` and ``I`` are recomputed."""
        if not isinstance(data, dict) or "entries" not in data or "box" not in data:
            raise ValueError("not a KacTable document")
        Q = Quiver.from_json(data["quiver"])
        box = Box(tuple(data["box"]))
        if box.rank != Q.n:
            raise ValueError("box rank does not match the quiver")
        A = {}
        source = {}
        for key, rec in data["entries"].items():
            d = tuple(int(x) for x in key.split(","))
            if len(d) != Q.n or not box.contains(d):
                raise ValueError(f"entry {key} outside box {box}")
            A[d] = RatPoly.from_json(rec["A"])
            source[d] = rec.get("source", "import")
        table = table_from_a(Q, box, A, source="import")
        table.source.update(source)
        return table


def table_from_a(Q: Quiver, box: Box, A: Mapping[DimVector, RatPoly], source="import") -> KacTable:
    missing = [d for d in box.points() if any(d) and d not in A]
    if missing:
        raise CapabilityGap(missing[0], "not covered by the A-table")
    a_ser = TruncSeries(box, {d: A[d] for d in box.points() if any(d)})
    H_ser = pleth_exp(a_ser, AdamsScope.T_AND_Z)
    I_ser = pleth_log(H_ser, AdamsScope.Z_ONLY)
    pts = box.points()
    zero = box.zero()
    H = {d: H_ser[d] for d in pts}
    I = {d: (I_ser[d] if d != zero else RatPoly.zero()) for d in pts}
    Afull = {d: (a_ser[d] if d != zero else RatPoly.zero()) for d in pts}
    return KacTable(Q, box, H, I, Afull, {d: (source if d != zero else "trivial") for d in pts})


def kac_tables(Q: Quiver, box: Box, provider: Optional[Mapping[DimVector, RatPoly]] = None, *,
               budget: int = DEFAULT_BUDGET, primes_limit: Optional[int] = None,
               count: CountFn = iso_class_count, use_oracle: bool = True) -> KacTable:
    """H, I and A tables on ``box``.

    Dimension vectors within the oracle's reach are counted over prime
    fields.  The rest must come from ``provider`` (an A-table); where both are
    available they must agree exactly.
    """
    if box.rank != Q.n:
        raise ValueError(f"box {box} does not match quiver with {Q.n} vertices")
    pts = box.points()
    zero = box.zero()
    reach = set()
    if use_oracle:
        for d in pts:
            ok, why = oracle_supports(Q, d, budget, primes_limit)
            if ok:
                reach.add(d)
            elif provider is None or d not in provider:
                raise CapabilityGap(d, why)
    elif provider is None:
        raise ValueError("no oracle and no A-table: nothing to compute from")
    for d in reach:
        for n in itertools.product(*(range(x + 1) for x in d)):
            if n not in reach:
                raise AssertionError(f"oracle reach not downward closed at {n} <= {d}")

    H_oracle = {}
    for d in pts:
        if d in reach:
            log.info("oracle: counting d=%s", d)
            H_oracle[d] = h_poly(Q, d, count)
    A_oracle = {}
    if reach:
        h_ser = TruncSeries(box, H_oracle)
        a_ser = pleth_log(h_ser, AdamsScope.T_AND_Z)
        A_oracle = {d: a_ser[d] for d in reach if d != zero}
        for d, a in A_oracle.items():
            if not (a.is_integral() and a.is_nonnegative()):
                raise OracleInconsistency(f"A_{d} = {a} is not in N[t]")

    A = {}
    source = {}
    for d in pts:
        if d == zero:
            continue
        if d in A_oracle:
            A[d] = A_oracle[d]
            source[d] = "oracle"
            if provider is not None and d in provider and provider[d] != A[d]:
                raise OracleInconsistency(f"imported A_{d} = {provider[d]} disagrees with oracle {A[d]}")
        else:
            A[d] = RatPoly.coerce(provider[d])
            source[d] = "import"
    table = table_from_a(Q, box, A)
    table.source = {d: source.get(d, "trivial") for d in pts}
    for d, h in H_oracle.items():
        if table.H[d] != h:
            raise OracleInconsistency(f"H_{d} mismatch after reassembly")
    for d in pts:
        if d != zero and not (table.A[d].is_integral() and table.A[d].is_nonnegative()):
            raise OracleInconsistency(f"A_{d} = {table.A[d]} is not in N[t]")
    if use_oracle:
        spot_check(table, [d for d in pts if d not in reach], count)
    return table


def spot_check(table: KacTable, dims: Sequence[DimVector], count: CountFn = iso_class_count) -> List[Tuple]:
    """Compare imported ``H_d`` with direct counts at small primes where counting is cheap.

    Interpolation may be out of reach while a handful of evaluations is not;
    any disagreement means the imported table is wrong.
    """
    done = []
    for d in dims:
        if max(d) > MAX_GL_RANK:
            continue
        for p in SPOT_PRIMES:
            if p ** sum(d) > SPOT_BUDGET:
                break
            c = count(table.quiver, d, p)
            if table.H[d](p) != c:
                raise OracleInconsistency(f"imported table gives H_{d}({p}) = {table.H[d](p)}, count is {c}")
            done.append((d, p))
    return done
