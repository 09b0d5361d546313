"""A-polynomials from Hua's multipartition formula.

For a quiver ``Q`` Hua's identity reads::

    sum_{lambda in P^I}  prod_{i->j} t^<lambda^i, lambda^j>
                         / prod_i t^<lambda^i, lambda^i> b_{lambda^i}(t^-1)  z^|lambda|
        = Exp_{t,z}( sum_d A_d(t) z^d / (t - 1) )

with ``<lambda, mu> = sum_k lambda'_k mu'_k`` and
``b_lambda(u) = prod_k prod_{j <= m_k(lambda)} (1 - u^j)``.  This module is the
provider seam for dimension vectors the finite-field oracle cannot reach; its
output is checked against the oracle wherever both are available.
"""

from __future__ import annotations

import itertools
from typing import Dict

from .exact import RatFunc, RatPoly, conjugate, multiplicities, partitions_of
from .quiver import DimVector, Quiver
from .series import AdamsScope, Box, TruncSeries, pleth_log


def _pair(lam, mu) -> int:
    return sum(a * b for a, b in zip(conjugate(lam), conjugate(mu)))


def hua_series(Q: Quiver, box: Box) -> TruncSeries:
    """Left-hand side of Hua's identity, truncated to ``box`` (RatFunc coefficients)."""
    t = RatPoly.t()
    parts = [[lam for n in range(b + 1) for lam in partitions_of(n)] for b in box.bounds]
    coeffs: Dict[DimVector, RatFunc] = {}
    for lams in itertools.product(*parts):
        exponent = sum(_pair(lams[s], lams[r]) for s, r in Q.arrows)
        den = RatPoly.one()
        for lam in lams:
            exponent -= _pair(lam, lam)
            for m in multiplicities(lam).values():
                for j in range(1, m + 1):
                    # 1/(1 - t^-j) = t^j / (t^j - 1)
                    exponent += j
                    den = den * (t ** j - 1)
        if exponent >= 0:
            term = RatFunc(t ** exponent, den)
        else:
            term = RatFunc(RatPoly.one(), den * t ** (-exponent))
        e = tuple(sum(lam) for lam in lams)
        coeffs[e] = coeffs[e] + term if e in coeffs else term
    return TruncSeries(box, coeffs, RatFunc)


def hua_a_table(Q: Quiver, box: Box) -> Dict[DimVector, RatPoly]:
    """``A_d(t)`` for every nonzero ``d`` in ``box``."""
    if box.rank != Q.n:
        raise ValueError(f"box {box} does not match quiver with {Q.n} vertices")
    logged = pleth_log(hua_series(Q, box), AdamsScope.T_AND_Z)
    t_minus_1 = RatFunc(RatPoly((-1, 1)))
    out = {}
    for d in box.points():
        if not any(d):
            continue
        a = logged[d] * t_minus_1
        if not a.is_polynomial():
            raise ArithmeticError(f"Hua's formula gave a non-polynomial A_{d} = {a}")
        poly = a.to_poly()
        if not poly.is_integral():
            raise ArithmeticError(f"Hua's formula gave a non-integral A_{d} = {poly}")
        out[d] = poly
    return out
