"""Shared helpers: tiny independent oracles the tests check against.

These deliberately avoid the library's own code paths: probabilities by
per-bit products, CDFs by sorting and summing, truncation by integer
long division on fractions.Fraction.  Slow and obviously correct.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from gelc import SourceModel
from gelc.exactnum import rat


def brute_prob(p0: Fraction, block: str) -> Fraction:
    p = Fraction(1)
    for c in block:
        p *= p0 if c == "0" else 1 - p0
    return p


def brute_gray_rank(block: str) -> int:
    acc = 0
    bits = []
    for c in block:
        acc ^= int(c)
        bits.append(str(acc))
    return int("".join(bits), 2)


def brute_order(n: int, order: str) -> list[str]:
    blocks = [format(v, f"0{n}b") for v in range(2**n)]
    if order == "lex":
        return sorted(blocks)
    return sorted(blocks, key=brute_gray_rank)


def brute_cdf(p0: Fraction, block: str, order: str) -> Fraction:
    """Inclusive CDF by summing every block up to and including this one."""
    total = Fraction(0)
    for b in brute_order(len(block), order):
        total += brute_prob(p0, b)
        if b == block:
            return total
    raise AssertionError("block not found in order")


def brute_truncate(x: Fraction, l_bits: int) -> Fraction:
    """First l binary fraction digits of x by repeated doubling."""
    out = Fraction(0)
    step = Fraction(1, 2)
    for _ in range(l_bits):
        if x >= step + out:
            out += step
        step /= 2
    return out


def to_frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


@pytest.fixture
def m13n2() -> SourceModel:
    return SourceModel(rat(1, 3), 2)


@pytest.fixture
def m13n4() -> SourceModel:
    return SourceModel(rat(1, 3), 4)
