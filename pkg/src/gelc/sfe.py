"""Baseline Shannon-Fano-Elias block codec under lexicographic order.

Each block x is encoded as the first ceil(-log2 p(x)) + 1 bits of the
CDF midpoint F(x-1) + p(x)/2.  That truncation always stays inside
[F(x-1), F(x)), so the codeword set is prefix-free and a decoder can
recover x by CDF inversion on the incoming bits alone.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .errors import DecodeError
from .exactnum import BitCursor, Rat, rat, floor_bits, dyadic_to_bits, compare_tail, LESS
from .grayorder import Order, cum_table, iter_blocks
from .source import SourceModel, len_sfe

__all__ = [
    "sfe_encode_block",
    "sfe_encode_stream",
    "sfe_decode_stream",
    "kraft_sum",
]


def sfe_encode_block(model: SourceModel, block: str) -> str:
    """Codeword of a single block: truncated lexicographic CDF midpoint."""
    length = len_sfe(model, block)
    blocks, probs, cum = cum_table(model, Order.LEX)
    idx = int(block, 2)
    model.check_block(block)
    midpoint = cum[idx] - probs[idx] / 2
    return dyadic_to_bits(floor_bits(midpoint, length), length)


def sfe_encode_stream(model: SourceModel, blocks: Iterable[str]) -> str:
    """Concatenation of per-block codewords."""
    return "".join(sfe_encode_block(model, b) for b in blocks)


@lru_cache(maxsize=128)
def _decode_tables(model: SourceModel):
    blocks, probs, cum = cum_table(model, Order.LEX)
    # every cumulative value divides den(p0)**n, so scale to plain integers
    den = int(model.p0.denominator) ** model.n
    cum_nums = tuple(int(c.numerator) * (den // int(c.denominator)) for c in cum)
    lens = tuple(len_sfe(model, b) for b in blocks)
    words = tuple(sfe_encode_block(model, b) for b in blocks)
    return blocks, cum_nums, den, lens, words


def sfe_decode_stream(model: SourceModel, bits: str, block_count: int) -> list[str]:
    """Recover ``block_count`` blocks from a concatenated codeword stream.

    The next codeword, wherever it ends, keeps the stream value inside
    the emitting block's CDF cell, so CDF inversion of the remaining
    bits identifies the block; the codeword is then checked verbatim so
    corrupt streams fail loudly instead of resynchronizing silently.
    """
    blocks, cum_nums, den, lens, words = _decode_tables(model)
    cursor = BitCursor(bits)
    out: list[str] = []
    total = len(blocks)
    for _ in range(block_count):
        lo, hi = 0, total - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if compare_tail(bits, cursor.position, cum_nums[mid], den) is LESS:
                hi = mid
            else:
                lo = mid + 1
        word = words[lo]
        got = bits[cursor.position : cursor.position + lens[lo]]
        got += "0" * (lens[lo] - len(got))
        if got != word:
            raise DecodeError(
                f"stream does not continue with a valid codeword at bit {cursor.position}"
            )
        out.append(blocks[lo])
        cursor.advance(lens[lo])
    return out


def kraft_sum(model: SourceModel, lengths: Mapping[str, int] | Callable[[str], int]) -> Rat:
    """Exact sum of 2**-len(x) over all n-bit blocks."""
    if callable(lengths):
        get = lengths
    else:
        get = lengths.__getitem__
    total = rat(0)
    for block in iter_blocks(model.n, Order.LEX):
        total += rat(1, 1 << get(block))
    return total
