"""Gray-order Shannon-Fano-Elias codec with shortened codewords.

The encoder is the midpoint truncation of the baseline codec with two
changes: the CDF runs over Gray order, and the codeword length drops to
ceil(-log2((1+rho)/rho * p(x))) + 1.  The codeword set is no longer
prefix-free; the decoder recovers each block by CDF inversion of the
remaining stream followed by a +-1 neighbor correction, which is where
the bounded probability ratio of Gray-adjacent blocks earns its keep.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .errors import DecodeError
from .exactnum import BitCursor, floor_bits, dyadic_to_bits, compare_tail, LESS
from .grayorder import Order, cum_table, gray_inv_int
from .source import SourceModel, len_sfeg

__all__ = ["sfeg_encode_block", "sfeg_encode_stream", "sfeg_decode_stream"]


def sfeg_encode_block(model: SourceModel, block: str) -> str:
    """Codeword of one block: Gray-order CDF midpoint, shortened length."""
    model.check_block(block)
    length = len_sfeg(model, block)
    blocks, probs, cum = cum_table(model, Order.GRAY)
    idx = gray_inv_int(int(block, 2))
    midpoint = cum[idx] - probs[idx] / 2
    return dyadic_to_bits(floor_bits(midpoint, length), length)


def sfeg_encode_stream(model: SourceModel, blocks: Iterable[str]) -> str:
    """Concatenation of per-block codewords (framing is external)."""
    return "".join(sfeg_encode_block(model, b) for b in blocks)


@lru_cache(maxsize=128)
def _decode_tables(model: SourceModel):
    blocks, probs, cum = cum_table(model, Order.GRAY)
    den = int(model.p0.denominator) ** model.n
    cum_nums = tuple(int(c.numerator) * (den // int(c.denominator)) for c in cum)
    lens = tuple(len_sfeg(model, b) for b in blocks)
    # codeword value as an integer at scale 2**len, per block
    word_nums = []
    for b, p, c in zip(blocks, probs, cum):
        length = len_sfeg(model, b)
        mid = c - p / 2
        val = floor_bits(mid, length)
        word_nums.append(int(val.numerator) * ((1 << length) // int(val.denominator)))
    return blocks, cum_nums, den, lens, tuple(word_nums)


def sfeg_decode_stream(model: SourceModel, bits: str, block_count: int) -> list[str]:
    """Recover ``block_count`` blocks from a concatenated codeword stream.

    Per block: invert the Gray-order CDF on the remaining bits (taken as
    a zero-padded real r), then correct by one position if r falls
    outside the candidate's own codeword cell [G, G + 2**-len).  The
    cursor then advances by the length of the block actually emitted.
    """
    blocks, cum_nums, den, lens, word_nums = _decode_tables(model)
    cursor = BitCursor(bits)
    out: list[str] = []
    total = len(blocks)
    for _ in range(block_count):
        pos = cursor.position
        lo, hi = 0, total - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if compare_tail(bits, pos, cum_nums[mid], den) is LESS:
                hi = mid
            else:
                lo = mid + 1
        length = lens[lo]
        scale = 1 << length
        if compare_tail(bits, pos, word_nums[lo] + 1, scale) >= 0:
            # r at or past the cell top: the true block is the next one
            if lo + 1 >= total:
                raise DecodeError(f"corrupt stream: overshoot at top block, bit {pos}")
            lo += 1
        elif compare_tail(bits, pos, word_nums[lo], scale) is LESS:
            if lo == 0:
                raise DecodeError(f"corrupt stream: undershoot at bottom block, bit {pos}")
            lo -= 1
        out.append(blocks[lo])
        cursor.advance(lens[lo])
    return out
