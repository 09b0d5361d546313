"""Box-truncated power series in ``z_1, ..., z_n`` with polynomial coefficients.

A series stores a dict from exponent tuples (inside the box) to coefficients.
Coefficients are either all :class:`RatPoly` or all :class:`RatFunc`; the
choice is fixed per series and mixing the two raises ``TypeError``.

The plethystic maps follow the usual conventions::

    Exp(f) = exp(sum_l psi_l(f) / l),   Log(f) = sum_l mu(l)/l psi_l(log f)

where ``psi_l`` raises every ``z`` (and, for ``T_AND_Z``, also ``t``) to the
``l``-th power.  ``exp`` and ``log`` are computed exactly through the Euler
operator for total degree, so no nilpotency bookkeeping is needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Tuple

from .exact import RatFunc, RatPoly, mobius

Exponent = Tuple[int, ...]


class AdamsScope(Enum):
    Z_ONLY = "z"
    T_AND_Z = "t,z"


@dataclass(frozen=True)
class Box:
    bounds: Tuple[int, ...]

    def __post_init__(self):
        bounds = tuple(int(b) for b in self.bounds)
        if any(b < 0 for b in bounds):
            raise ValueError(f"box bounds must be nonnegative, got {bounds}")
        object.__setattr__(self, "bounds", bounds)

    @property
    def rank(self) -> int:
        return len(self.bounds)

    @property
    def height(self) -> int:
        return sum(self.bounds)

    def contains(self, e: Exponent) -> bool:
        return all(0 <= x <= b for x, b in zip(e, self.bounds))

    def points(self) -> list:
        """All exponents in the box, by total degree then lexicographically."""
        pts = itertools.product(*(range(b + 1) for b in self.bounds))
        return sorted(pts, key=lambda e: (sum(e), e))

    def zero(self) -> Exponent:
        return (0,) * len(self.bounds)

    def __str__(self) -> str:
        return ",".join(map(str, self.bounds))

    @classmethod
    def parse(cls, text: str) -> "Box":
        try:
            return cls(tuple(int(x) for x in text.split(",")))
        except ValueError as exc:
            raise ValueError(f"bad box {text!r}: expected d1,d2,...") from exc


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


class TruncSeries:
    __slots__ = ("box", "coeffs", "ring")

    def __init__(self, box: Box, coeffs: Dict[Exponent, object] | None = None, ring=RatPoly):
        if ring not in (RatPoly, RatFunc):
            raise TypeError(f"unsupported coefficient ring {ring!r}")
        self.box = box
        self.ring = ring
        clean = {}
        for e, c in (coeffs or {}).items():
            e = tuple(e)
            if len(e) != box.rank:
                raise ValueError(f"exponent {e} does not match box rank {box.rank}")
            if not box.contains(e):
                continue
            c = _coerce(ring, c)
            if c:
                clean[e] = c
        self.coeffs = clean

    @classmethod
    def _raw(cls, box, coeffs, ring) -> "TruncSeries":
        s = object.__new__(cls)
        s.box, s.coeffs, s.ring = box, coeffs, ring
        return s

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, box: Box, ring=RatPoly) -> "TruncSeries":
        return cls._raw(box, {}, ring)

    @classmethod
    def one(cls, box: Box, ring=RatPoly) -> "TruncSeries":
        return cls._raw(box, {box.zero(): ring.one()}, ring)

    @classmethod
    def monomial(cls, box: Box, e: Exponent, c=1, ring=RatPoly) -> "TruncSeries":
        return cls(box, {tuple(e): c}, ring)

    # -- access -----------------------------------------------------------
    def __getitem__(self, e) -> object:
        return self.coeffs.get(tuple(e), self.ring.zero())

    def constant(self):
        return self[self.box.zero()]

    def items(self):
        return self.coeffs.items()

    def __len__(self) -> int:
        return len(self.coeffs)

    def _check(self, other: "TruncSeries"):
        if not isinstance(other, TruncSeries):
            raise TypeError(f"expected TruncSeries, got {type(other).__name__}")
        if self.box != other.box:
            raise ValueError(f"box mismatch: {self.box} vs {other.box}")
        if self.ring is not other.ring:
            raise TypeError("cannot mix RatPoly and RatFunc coefficient modes")

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.one(self.box, self.ring).scale(other)
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return TruncSeries._raw(self.box, out, self.ring)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries._raw(self.box, {e: -c for e, c in self.coeffs.items()}, self.ring)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.one(self.box, self.ring).scale(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return ts_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "TruncSeries":
        """Multiply every coefficient by a scalar or a coefficient-ring element."""
        if isinstance(c, (int, Fraction)):
            if not c:
                return TruncSeries.zero(self.box, self.ring)
            return TruncSeries._raw(self.box, {e: v * c for e, v in self.coeffs.items()}, self.ring)
        c = _coerce(self.ring, c)
        out = {}
        for e, v in self.coeffs.items():
            w = v * c
            if w:
                out[e] = w
        return TruncSeries._raw(self.box, out, self.ring)

    def shift(self, e: Exponent) -> "TruncSeries":
        """Multiply by ``z^e``."""
        out = {}
        for k, v in self.coeffs.items():
            k2 = _add_exp(k, e)
            if self.box.contains(k2):
                out[k2] = v
        return TruncSeries._raw(self.box, out, self.ring)

    def map_coeffs(self, fn, ring=None) -> "TruncSeries":
        ring = ring or self.ring
        return TruncSeries(self.box, {e: fn(c) for e, c in self.coeffs.items()}, ring)

    def evaluate_t(self, x) -> "TruncSeries":
        """Specialise ``t`` to a number; result has constant polynomial coefficients."""
        return TruncSeries(self.box, {e: RatPoly.const(c(x)) for e, c in self.coeffs.items()}, RatPoly)

    def restrict(self, box: Box) -> "TruncSeries":
        """Re-truncate into another box of the same rank."""
        if box.rank != self.box.rank:
            raise ValueError("rank mismatch")
        return TruncSeries._raw(box, {e: c for e, c in self.coeffs.items() if box.contains(e)}, self.ring)

    def to_ring(self, ring) -> "TruncSeries":
        if ring is self.ring:
            return self
        if ring is RatFunc:
            return TruncSeries._raw(self.box, {e: RatFunc.coerce(c) for e, c in self.coeffs.items()}, RatFunc)
        return TruncSeries._raw(self.box, {e: c.to_poly() for e, c in self.coeffs.items()}, RatPoly)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.box == other.box and self.ring is other.ring and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        terms = [f"({c})*z^{e}" for e, c in sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))]
        return f"TruncSeries[{self.box}]({' + '.join(terms) or '0'})"

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        if self.ring is not RatPoly:
            raise TypeError("only polynomial-coefficient series are serializable")
        return {",".join(map(str, e)): c.to_json()
                for e, c in sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))}

    @classmethod
    def from_json(cls, box: Box, data: dict) -> "TruncSeries":
        coeffs = {}
        for key, poly in data.items():
            e = tuple(int(x) for x in key.split(","))
            if not box.contains(e):
                raise ValueError(f"exponent {key} lies outside box {box}")
            coeffs[e] = RatPoly.from_json(poly)
        return cls(box, coeffs)


def _coerce(ring, c):
    if ring is RatPoly:
        if isinstance(c, RatFunc):
            raise TypeError("RatFunc coefficient in a RatPoly-mode series")
        return RatPoly.coerce(c)
    return RatFunc.coerce(c)


def ts_mul(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """Product truncated to the common box."""
    f._check(g)
    box = f.box
    bounds = box.bounds
    out: dict = {}
    for e1, c1 in f.coeffs.items():
        for e2, c2 in g.coeffs.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            if any(x > b for x, b in zip(e, bounds)):
                continue
            v = out.get(e)
            out[e] = c1 * c2 if v is None else v + c1 * c2
    return TruncSeries._raw(box, {e: c for e, c in out.items() if c}, f.ring)


def _below(e: Exponent):
    """All exponents ``e' <= e`` componentwise."""
    return itertools.product(*(range(x + 1) for x in e))


def ts_inverse(f: TruncSeries) -> TruncSeries:
    """Multiplicative inverse; the constant coefficient must be exactly 1."""
    if f.constant() != f.ring.one():
        raise ValueError("series not invertible")
    box = f.box
    zero = box.zero()
    g = {zero: f.ring.one()}
    for e in box.points()[1:]:
        acc = None
        for e1, c1 in f.coeffs.items():
            if e1 == zero or any(a > b for a, b in zip(e1, e)):
                continue
            c2 = g.get(_sub_exp(e, e1))
            if c2 is None:
                continue
            acc = c1 * c2 if acc is None else acc + c1 * c2
        if acc is not None and acc:
            g[e] = -acc
    return TruncSeries._raw(box, g, f.ring)


def adams(f: TruncSeries, l: int, scope: AdamsScope) -> TruncSeries:
    """``psi_l``: ``z^e -> z^{le}``, and ``t -> t^l`` when scope is ``T_AND_Z``."""
    if l < 1:
        raise ValueError(f"Adams operation needs l >= 1, got {l}")
    if l == 1:
        return f
    out = {}
    for e, c in f.coeffs.items():
        e2 = tuple(l * x for x in e)
        if f.box.contains(e2):
            out[e2] = c.subs_power(l) if scope is AdamsScope.T_AND_Z else c
    return TruncSeries._raw(f.box, out, f.ring)


def series_exp(h: TruncSeries) -> TruncSeries:
    """Formal ``exp`` of a series with zero constant term."""
    box = h.box
    zero = box.zero()
    if h.coeffs.get(zero):
        raise ValueError("exp needs a series with zero constant term")
    # |e| g_e = sum_{0 < e' <= e} |e'| h_{e'} g_{e-e'}
    weighted = {e: c * sum(e) for e, c in h.coeffs.items()}
    g = {zero: h.ring.one()}
    for e in box.points()[1:]:
        acc = None
        for e1, c1 in weighted.items():
            if any(a > b for a, b in zip(e1, e)):
                continue
            c2 = g.get(_sub_exp(e, e1))
            if c2 is None:
                continue
            acc = c1 * c2 if acc is None else acc + c1 * c2
        if acc is not None and acc:
            g[e] = acc * Fraction(1, sum(e))
    return TruncSeries._raw(box, g, h.ring)


def series_log(f: TruncSeries) -> TruncSeries:
    """Formal ``log`` of a series with constant term 1."""
    box = f.box
    if f.constant() != f.ring.one():
        raise ValueError("log needs a series with constant term 1")
    # |e| h_e = |e| f_e - sum_{0 < e' < e} |e'| h_{e'} f_{e-e'}
    h: dict = {}
    for e in box.points()[1:]:
        n = sum(e)
        acc = f.coeffs.get(e)
        acc = acc * n if acc is not None else None
        for e1, c1 in h.items():
            if e1 == e or any(a > b for a, b in zip(e1, e)):
                continue
            c2 = f.coeffs.get(_sub_exp(e, e1))
            if c2 is None:
                continue
            term = c1 * c2 * sum(e1)
            acc = -term if acc is None else acc - term
        if acc is not None and acc:
            h[e] = acc * Fraction(1, n)
    return TruncSeries._raw(box, h, f.ring)


def pleth_exp(f: TruncSeries, scope: AdamsScope) -> TruncSeries:
    if f.coeffs.get(f.box.zero()):
        raise ValueError("Exp requires augmentation-ideal input")
    total = TruncSeries.zero(f.box, f.ring)
    for l in range(1, max(f.box.height, 1) + 1):
        total = total + adams(f, l, scope).scale(Fraction(1, l))
    return series_exp(total)


def pleth_log(f: TruncSeries, scope: AdamsScope) -> TruncSeries:
    if f.constant() != f.ring.one():
        raise ValueError("Log requires constant term 1")
    h = series_log(f)
    total = TruncSeries.zero(f.box, f.ring)
    for l in range(1, max(f.box.height, 1) + 1):
        mu = mobius(l)
        if mu:
            total = total + adams(h, l, scope).scale(Fraction(mu, l))
    return total


def ray_series(coeffs: Iterable, ring=RatPoly) -> TruncSeries:
    """Univariate series ``sum_{l>=1} c_l x^l`` in a one-variable box."""
    coeffs = list(coeffs)
    box = Box((len(coeffs),))
    return TruncSeries(box, {(l + 1,): c for l, c in enumerate(coeffs)}, ring)
