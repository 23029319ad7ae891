"""Directed-rounded enclosures for the irrational quantities in bounds.

The codec paths are exact-rational; only *verdicts* like
``E[len] < n*H + 2`` involve logarithms.  Those are decided by
enclosing the irrational side in a rational interval computed with
mpmath's interval arithmetic (outward rounded at every step) and
comparing the exact side against the enclosure endpoints, never against
a rounded point value.  Every endpoint extracted from mpmath is a
dyadic rational, so the final comparison is again exact.
"""

from __future__ import annotations

from typing import Callable

import mpmath
from mpmath.libmp import to_rational

from .exactnum import Rat, rat

__all__ = [
    "DEFAULT_PREC",
    "log2_bounds",
    "entropy_bounds",
    "decisively_less",
    "decisively_greater",
]

DEFAULT_PREC = 192
_PREC_LADDER = (192, 384, 768, 1536)


def _iv_ctx(prec: int):
    ctx = mpmath.iv
    ctx.prec = prec
    return ctx


def _to_rat_pair(x) -> tuple[Rat, Rat]:
    lo_t, hi_t = x._mpi_
    lo_p, lo_q = to_rational(lo_t)
    hi_p, hi_q = to_rational(hi_t)
    return rat(int(lo_p), int(lo_q)), rat(int(hi_p), int(hi_q))


def _iv_of_rat(ctx, q: Rat):
    return ctx.mpf(int(q.numerator)) / ctx.mpf(int(q.denominator))


def log2_bounds(q: Rat, prec: int = DEFAULT_PREC) -> tuple[Rat, Rat]:
    """Rational enclosure of log2(q) for a positive rational q."""
    ctx = _iv_ctx(prec)
    val = ctx.log(_iv_of_rat(ctx, q)) / ctx.log(ctx.mpf(2))
    return _to_rat_pair(val)


def entropy_bounds(p0: Rat, prec: int = DEFAULT_PREC) -> tuple[Rat, Rat]:
    """Rational enclosure of the binary entropy of p0, in bits."""
    ctx = _iv_ctx(prec)
    p = _iv_of_rat(ctx, p0)
    q = _iv_of_rat(ctx, 1 - p0)
    ln2 = ctx.log(ctx.mpf(2))
    h = -(p * ctx.log(p) + q * ctx.log(q)) / ln2
    return _to_rat_pair(h)


def decisively_less(value: Rat, make_bounds: Callable[[int], tuple[Rat, Rat]]) -> bool:
    """Decide ``value < X`` where X is enclosed by ``make_bounds(prec)``.

    Tightens the enclosure until it no longer contains ``value``; the
    irrational targets in this package never equal a rational, so the
    loop always resolves.
    """
    for prec in _PREC_LADDER:
        lo, hi = make_bounds(prec)
        if value < lo:
            return True
        if value > hi:
            return False
    raise ArithmeticError("enclosure did not separate; is the target rational?")


def decisively_greater(value: Rat, make_bounds: Callable[[int], tuple[Rat, Rat]]) -> bool:
    """Decide ``value > X`` with the same contract as :func:`decisively_less`."""
    for prec in _PREC_LADDER:
        lo, hi = make_bounds(prec)
        if value > hi:
            return True
        if value < lo:
            return False
    raise ArithmeticError("enclosure did not separate; is the target rational?")
