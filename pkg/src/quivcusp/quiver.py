"""Quivers, their Euler forms and the reflections at loop-free vertices."""

from __future__ import annotations

import hashlib
import json
from math import gcd
from dataclasses import dataclass
from typing import Sequence, Tuple

DimVector = Tuple[int, ...]

REAL = "real"
ISOTROPIC = "imaginary-isotropic"
HYPERBOLIC = "imaginary-hyperbolic"


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Quiver:
    """A quiver with vertices in canonical (sorted) order.

    ``arrows`` holds pairs of vertex *indices*; loops and parallel arrows are
    allowed.  Use :meth:`from_names` to build one from vertex identifiers.
    """

    vertices: Tuple[str, ...]
    arrows: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if not self.vertices:
            raise QuiverError("a quiver needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex names")
        n = len(self.vertices)
        for s, t in self.arrows:
            if not (0 <= s < n and 0 <= t < n):
                raise QuiverError(f"arrow ({s},{t}) has an undeclared endpoint")

    @classmethod
    def from_names(cls, vertices: Sequence, arrows: Sequence) -> "Quiver":
        names = [str(v) for v in vertices]
        order = sorted(names)
        index = {v: i for i, v in enumerate(order)}
        idx = []
        for arrow in arrows:
            if len(arrow) != 2:
                raise QuiverError(f"arrow {arrow!r} must be a [source, target] pair")
            s, t = (str(x) for x in arrow)
            if s not in index or t not in index:
                raise QuiverError(f"arrow {arrow!r} uses an undeclared vertex")
            idx.append((index[s], index[t]))
        return cls(tuple(order), tuple(sorted(idx)))

    # -- common examples --------------------------------------------------
    @classmethod
    def loops(cls, g: int) -> "Quiver":
        """One vertex carrying ``g`` loops (``g=1`` is the Jordan quiver)."""
        return cls(("1",), ((0, 0),) * g)

    @classmethod
    def kronecker(cls, m: int) -> "Quiver":
        """Two vertices with ``m`` parallel arrows 1 -> 2."""
        return cls(("1", "2"), ((0, 1),) * m)

    @classmethod
    def linear(cls, n: int) -> "Quiver":
        """Equioriented type A_n."""
        return cls(tuple(str(i + 1) for i in range(n)), tuple((i, i + 1) for i in range(n - 1)))

    # -- JSON -------------------------------------------------------------
    @classmethod
    def from_json(cls, data) -> "Quiver":
        if not isinstance(data, dict) or "vertices" not in data or "arrows" not in data:
            raise QuiverError('quiver JSON must be an object with "vertices" and "arrows"')
        if not isinstance(data["vertices"], list) or not isinstance(data["arrows"], list):
            raise QuiverError('"vertices" and "arrows" must be arrays')
        return cls.from_names(data["vertices"], data["arrows"])

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "arrows": [[self.vertices[s], self.vertices[t]] for s, t in self.arrows]}

    def canonical_bytes(self) -> bytes:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")).encode()

    def sha256(self) -> str:
        return hashlib.sha256(self.canonical_bytes()).hexdigest()

    # -- structure --------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.vertices)

    def loop_count(self, i: int) -> int:
        return sum(1 for s, t in self.arrows if s == i == t)

    def reversed(self) -> "Quiver":
        return Quiver(self.vertices, tuple(sorted((t, s) for s, t in self.arrows)))

    def real_vertices(self) -> list:
        return [i for i in range(self.n) if self.loop_count(i) == 0]

    def rep_dimension(self, d: DimVector) -> int:
        """Dimension of the representation space of dimension vector ``d``."""
        return sum(d[s] * d[t] for s, t in self.arrows)

    def unit(self, i: int) -> DimVector:
        return tuple(1 if j == i else 0 for j in range(self.n))

    def _check(self, *vs):
        for v in vs:
            if len(v) != self.n:
                raise QuiverError(f"vector {tuple(v)} does not match {self.n} vertices")

    def cartan_matrix(self) -> tuple:
        return tuple(tuple(sym_form(self, self.unit(i), self.unit(j)) for j in range(self.n))
                     for i in range(self.n))


def euler_form(Q: Quiver, d: Sequence[int], n: Sequence[int]) -> int:
    Q._check(d, n)
    return sum(a * b for a, b in zip(d, n)) - sum(d[s] * n[t] for s, t in Q.arrows)


def sym_form(Q: Quiver, d: Sequence[int], n: Sequence[int]) -> int:
    return euler_form(Q, d, n) + euler_form(Q, n, d)


def classify_vertices(Q: Quiver) -> list:
    """Per vertex ``(tag, loop count)``."""
    out = []
    for i in range(Q.n):
        g = Q.loop_count(i)
        tag = REAL if g == 0 else ISOTROPIC if g == 1 else HYPERBOLIC
        out.append((tag, g))
    return out


def is_totally_negative(Q: Quiver) -> bool:
    return all(sym_form(Q, Q.unit(i), Q.unit(j)) < 0 for i in range(Q.n) for j in range(Q.n))


def reflect(Q: Quiver, d: Sequence[int], i: int) -> DimVector:
    if Q.loop_count(i) != 0:
        raise QuiverError("reflection only at real vertices")
    c = sym_form(Q, d, Q.unit(i))
    return tuple(x - c if j == i else x for j, x in enumerate(d))


def is_primitive(d: Sequence[int]) -> bool:
    g = 0
    for x in d:
        g = gcd(g, x)
    return g == 1


def primitive_part(d: Sequence[int]) -> Tuple[DimVector, int]:
    """Split ``d = l * beta`` with ``beta`` primitive."""
    g = 0
    for x in d:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("the zero vector has no primitive part")
    return tuple(x // g for x in d), g
