"""Gray code, block orders, and linear-time CDF / inverse-CDF on them.

Blocks are bit strings of a fixed length n.  Two total orders are
supported: plain lexicographic order, and Gray order, under which a
block sorts by the index whose Gray code it is.  Adjacent blocks in
Gray order differ in exactly one bit, so their probabilities under a
biased i.i.d. source differ by at most the symbol ratio rho - the
property the shortened codec and its dual build on.

The CDF is *inclusive*: cdf(x) = Pr[X <= x].  The exclusive companion
cdf_low(x) = cdf(x) - prob(x) is what the encoders use.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import Callable

from .errors import DomainError, OrderBoundaryError
from .exactnum import Rat, rat
from .source import SourceModel, prob

__all__ = [
    "Order",
    "gray_map_int",
    "gray_inv_int",
    "gray_map",
    "gray_inv",
    "rank",
    "block_at",
    "succ",
    "pred",
    "min_block",
    "max_block",
    "iter_blocks",
    "cdf",
    "cdf_low",
    "cdf_inv",
    "cdf_inv_search",
    "cum_table",
]


class Order(enum.Enum):
    LEX = "lex"
    GRAY = "gray"


def gray_map_int(value: int) -> int:
    """Gray code of an integer: XOR with its one-bit right shift."""
    return value ^ (value >> 1)


def gray_inv_int(value: int) -> int:
    """Inverse Gray code (prefix XOR of the bits)."""
    out = value
    value >>= 1
    while value:
        out ^= value
        value >>= 1
    return out


def _check_bits(bits: str) -> None:
    if bits.strip("01"):
        raise DomainError(f"{bits!r} contains non-bit characters")


def gray_map(bits: str) -> str:
    """Gray code of a bit string (same length)."""
    _check_bits(bits)
    if not bits:
        return bits
    return format(gray_map_int(int(bits, 2)), f"0{len(bits)}b")


def gray_inv(bits: str) -> str:
    """Inverse of :func:`gray_map`."""
    _check_bits(bits)
    if not bits:
        return bits
    return format(gray_inv_int(int(bits, 2)), f"0{len(bits)}b")


def rank(block: str, order: Order) -> int:
    """Zero-based position of a block in the given order."""
    _check_bits(block)
    v = int(block, 2) if block else 0
    return v if order is Order.LEX else gray_inv_int(v)


def block_at(position: int, n: int, order: Order) -> str:
    """Block at a zero-based position of the order over n-bit strings."""
    if not 0 <= position < (1 << n):
        raise DomainError(f"rank {position} out of range for n={n}")
    v = position if order is Order.LEX else gray_map_int(position)
    return format(v, f"0{n}b")


def min_block(n: int, order: Order) -> str:
    return "0" * n


def max_block(n: int, order: Order) -> str:
    return block_at((1 << n) - 1, n, order)


def succ(block: str, order: Order) -> str:
    """Next block in the order; raises at the maximum element."""
    r = rank(block, order)
    if r + 1 >= (1 << len(block)):
        raise OrderBoundaryError(f"{block} is the maximum element")
    return block_at(r + 1, len(block), order)


def pred(block: str, order: Order) -> str:
    """Previous block in the order; raises at the minimum element."""
    r = rank(block, order)
    if r == 0:
        raise OrderBoundaryError(f"{block} is the minimum element")
    return block_at(r - 1, len(block), order)


def iter_blocks(n: int, order: Order):
    """All n-bit blocks in ascending order."""
    for position in range(1 << n):
        yield block_at(position, n, order)


def cdf(model: SourceModel, block: str, order: Order = Order.GRAY) -> Rat:
    """Inclusive CDF Pr[X <= block], in O(n) exact operations.

    Gray order uses the two-register recursion over suffixes (the
    probability of being <= and of being >= the suffix), which is what
    makes Gray-order cumulative probabilities linear-time.
    """
    model.check_block(block)
    p0, p1 = model.p0, model.p1
    if order is Order.LEX:
        le = rat(1)
        for bit in reversed(block):
            le = p0 * le if bit == "0" else p0 + p1 * le
        return le
    le = rat(1)
    ge = rat(1)
    for bit in reversed(block):
        if bit == "0":
            le, ge = p0 * le, p1 + p0 * ge
        else:
            le, ge = p0 + p1 * ge, p1 * le
    return le


def cdf_low(model: SourceModel, block: str, order: Order = Order.GRAY) -> Rat:
    """Exclusive CDF Pr[X < block]; 0 at the minimum element."""
    return cdf(model, block, order) - prob(model, block)


def cdf_inv_search(
    model: SourceModel,
    is_less: Callable[[Rat], bool],
    order: Order = Order.GRAY,
) -> tuple[str, Rat, Rat]:
    """Locate the block whose CDF cell contains an abstract point r.

    ``is_less(t)`` must answer "r < t?" for rational thresholds t; the
    point itself never needs to be materialized, which lets decoders
    drive this with a lazy bit cursor.  Returns (block, cdf_low, prob).
    """
    p0, p1 = model.p0, model.p1
    lo = rat(0)
    width = rat(1)
    reflected = False
    bits = []
    for _ in range(model.n):
        if order is Order.GRAY:
            first_bit = "1" if reflected else "0"
        else:
            first_bit = "0"
        if first_bit == "0":
            p_first, p_second = p0, p1
        else:
            p_first, p_second = p1, p0
        boundary = lo + width * p_first
        if is_less(boundary):
            bits.append(first_bit)
            width = width * p_first
            if order is Order.GRAY:
                reflected = False  # first child keeps ascending sub-order
        else:
            bits.append("1" if first_bit == "0" else "0")
            lo = boundary
            width = width * p_second
            if order is Order.GRAY:
                reflected = True  # second child runs its sub-order reversed
    return "".join(bits), lo, width


def cdf_inv(model: SourceModel, r: Rat, order: Order = Order.GRAY) -> str:
    """Smallest block whose inclusive CDF exceeds r, for r in [0, 1)."""
    if not (0 <= r < 1):
        raise DomainError(f"cdf_inv argument {r!r} outside [0, 1)")
    block, _, _ = cdf_inv_search(model, lambda t: r < t, order)
    return block


@lru_cache(maxsize=128)
def cum_table(model: SourceModel, order: Order):
    """Cached per-model tables for the stream codecs.

    Returns (blocks, probs, cum_incl) where cum_incl[i] is the inclusive
    CDF of blocks[i]; all exact rationals, blocks in ascending order.
    """
    blocks = tuple(iter_blocks(model.n, order))
    probs = tuple(prob(model, b) for b in blocks)
    cum = []
    acc = rat(0)
    for p in probs:
        acc = acc + p
        cum.append(acc)
    return blocks, probs, tuple(cum)
