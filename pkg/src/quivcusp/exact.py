"""Exact rationals, univariate polynomials and rational functions in ``t``.

Everything here is immutable.  Rationals are plain :class:`fractions.Fraction`
values; polynomials store a tuple of coefficients, lowest power first.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Sequence, Tuple

Rational = Fraction

Partition = Tuple[int, ...]


def rational(value) -> Fraction:
    """Parse ``"a/b"``, ``"a"``, an int or a Fraction into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _strip(cs: list) -> tuple:
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


class RatPoly:
    """Polynomial in ``t`` with rational coefficients."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _strip([rational(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "RatPoly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls) -> "RatPoly":
        return _ZERO

    @classmethod
    def one(cls) -> "RatPoly":
        return _ONE

    @classmethod
    def const(cls, c) -> "RatPoly":
        c = rational(c)
        return cls._raw((c,)) if c else _ZERO

    @classmethod
    def monomial(cls, c, k: int) -> "RatPoly":
        c = rational(c)
        if not c:
            return _ZERO
        return cls._raw((Fraction(0),) * k + (c,))

    @classmethod
    def t(cls) -> "RatPoly":
        return cls.monomial(1, 1)

    @classmethod
    def coerce(cls, x) -> "RatPoly":
        if isinstance(x, RatPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial coefficient")

    # -- basic queries ----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, RatPoly):
            if isinstance(other, (int, Fraction)):
                other = RatPoly.const(other)
            else:
                return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly._raw(_strip(out))

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, RatPoly):
            if isinstance(other, (int, Fraction)):
                other = RatPoly.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatPoly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return _ZERO
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return RatPoly._raw(_strip(out))
        if isinstance(other, (int, Fraction)):
            if not other:
                return _ZERO
            return RatPoly._raw(tuple(c * other for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of a polynomial by zero")
            return RatPoly._raw(tuple(c / other for c in self.coeffs))
        return NotImplemented

    def __pow__(self, n: int) -> "RatPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = _ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "RatPoly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dv = other.coeffs
        lead = dv[-1]
        q = [Fraction(0)] * max(len(rem) - len(dv) + 1, 0)
        for k in range(len(rem) - len(dv), -1, -1):
            c = rem[k + len(dv) - 1] / lead
            q[k] = c
            if c:
                for j, d in enumerate(dv):
                    rem[k + j] -= c * d
        return RatPoly._raw(_strip(q)), RatPoly._raw(_strip(rem[: len(dv) - 1]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "RatPoly") -> "RatPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self) -> "RatPoly":
        if not self.coeffs:
            return self
        return self / self.coeffs[-1]

    def gcd(self, other: "RatPoly") -> "RatPoly":
        """Monic greatest common divisor (zero if both are zero)."""
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    # -- evaluation / substitution ---------------------------------------
    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, RatPoly) else _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def subs_power(self, l: int) -> "RatPoly":
        """Return ``P(t^l)``."""
        if l == 1 or len(self.coeffs) <= 1:
            return self
        out = [Fraction(0)] * (l * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            out[l * i] = c
        return RatPoly._raw(tuple(out))

    # -- comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RatPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("RatPoly", self.coeffs))
        return self._hash

    # -- rendering --------------------------------------------------------
    def to_json(self) -> list:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "RatPoly":
        if not isinstance(data, list):
            raise ValueError(f"polynomial must be a JSON array, got {type(data).__name__}")
        return cls(rational(c) for c in data)

    def __str__(self) -> str:
        return _render(self.coeffs, "t", "^", "")

    def __repr__(self) -> str:
        return f"RatPoly({self})"

    def latex(self) -> str:
        return _render(self.coeffs, "t", "^{", "}", frac=True)


def _render(coeffs, var, pre, post, frac=False) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if frac and a.denominator != 1:
            num = f"\\frac{{{a.numerator}}}{{{a.denominator}}}"
        else:
            num = format_rational(a)
        if k == 0:
            body = num
        else:
            mon = var if k == 1 else f"{var}{pre}{k}{post}"
            body = mon if a == 1 else (f"{num}{mon}" if frac else f"{num}*{mon}")
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


_ZERO = RatPoly._raw(())
_ONE = RatPoly._raw((Fraction(1),))


class RatFunc:
    """Rational function ``num/den`` in ``t``; den is monic and coprime to num."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _normalized=False):
        num = RatPoly.coerce(num)
        den = _ONE if den is None else RatPoly.coerce(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            if not num:
                den = _ONE
            elif den.degree > 0:
                g = num.gcd(den)
                if g.degree > 0:
                    num, den = num.exact_div(g), den.exact_div(g)
            lc = den.leading()
            if lc != 1:
                num, den = num / lc, den / lc
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def zero(cls) -> "RatFunc":
        return cls(_ZERO, _ONE, _normalized=True)

    @classmethod
    def one(cls) -> "RatFunc":
        return cls(_ONE, _ONE, _normalized=True)

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        return cls(RatPoly.coerce(x), _ONE, _normalized=True)

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def to_poly(self) -> RatPoly:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction, RatPoly)):
                other = RatFunc.coerce(other)
            else:
                return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        if g.degree == 0:
            return RatFunc(self.num * other.den + other.num * self.den,
                           self.den * other.den, _normalized=True)
        b1 = self.den.exact_div(g)
        d1 = other.den.exact_div(g)
        return RatFunc(self.num * d1 + other.num * b1, b1 * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction, RatPoly)):
                other = RatFunc.coerce(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc.zero()
            return RatFunc(self.num * other, self.den, _normalized=True)
        if isinstance(other, RatPoly):
            other = RatFunc.coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if not self.num or not other.num:
            return RatFunc.zero()
        a, b, c, d = self.num, self.den, other.num, other.den
        g1 = a.gcd(d) if d.degree > 0 else _ONE
        g2 = c.gcd(b) if b.degree > 0 else _ONE
        if g1.degree > 0:
            a, d = a.exact_div(g1), d.exact_div(g1)
        if g2.degree > 0:
            c, b = c.exact_div(g2), b.exact_div(g2)
        return RatFunc(a * c, b * d, _normalized=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * RatFunc.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _normalized=True)

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError(f"pole at t={x}")
        return self.num(x) / d

    def subs_power(self, l: int) -> "RatFunc":
        # t -> t^l keeps coprimality and monicity
        return RatFunc(self.num.subs_power(l), self.den.subs_power(l), _normalized=True)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, RatPoly)):
            other = RatFunc.coerce(other)
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("RatFunc", self.num.coeffs, self.den.coeffs))
        return self._hash

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def poly_interpolate(samples: Sequence[Tuple]) -> RatPoly:
    """Unique polynomial of degree < len(samples) through the given points."""
    if not samples:
        raise ValueError("interpolation needs at least one sample")
    xs = [rational(x) for x, _ in samples]
    ys = [rational(y) for _, y in samples]
    if len(set(xs)) != len(xs):
        raise ValueError("degenerate sample set")
    n = len(xs)
    # Newton divided differences
    dd = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    poly = RatPoly.const(dd[-1])
    for i in range(n - 2, -1, -1):
        poly = poly * RatPoly((-xs[i], 1)) + dd[i]
    return poly


def binomial_poly(P: RatPoly, k: int) -> RatPoly:
    """``P(P-1)...(P-k+1)/k!``."""
    if k < 0:
        raise ValueError("binomial_poly needs k >= 0")
    P = RatPoly.coerce(P)
    acc = _ONE
    for j in range(k):
        acc = acc * (P - j)
    return acc / factorial(k)


def mobius(l: int) -> int:
    if l < 1:
        raise ValueError(f"mobius is defined for l >= 1, got {l}")
    result, n, p = 1, l, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``n`` as weakly decreasing tuples, lexicographically decreasing."""
    if n < 0:
        raise ValueError("cannot partition a negative integer")
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(max_part, 0, -1):
        for rest in partitions_of(n - k, k):
            yield (k,) + rest


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part > i) for i in range(lam[0]))


def multiplicities(lam: Partition) -> dict:
    out: dict = {}
    for part in lam:
        out[part] = out.get(part, 0) + 1
    return out
