from __future__ import annotations

import random
from fractions import Fraction

import pytest

from gelc.errors import DomainError
from gelc.exactnum import (
    BitCursor,
    EQUAL,
    GREATER,
    LESS,
    bits_to_rat,
    ceil_log2,
    cursor_compare,
    dyadic_to_bits,
    floor_bits,
    floor_log2,
    rat,
    residue_bits,
)

from conftest import brute_truncate, to_frac


class TestFloorBits:
    def test_pinned_values(self):
        assert floor_bits(rat(5, 9), 2) == rat(1, 2)
        assert floor_bits(rat(4, 3), 0) == 1
        assert floor_bits(rat(3, 4), 2) == rat(3, 4)

    def test_zero_bits_on_unit_interval(self):
        rng = random.Random(1)
        for _ in range(50):
            den = rng.randint(1, 500)
            num = rng.randrange(den)
            assert floor_bits(rat(num, den), 0) == 0

    def test_matches_digitwise_truncation(self):
        rng = random.Random(2)
        for _ in range(300):
            den = rng.randint(1, 10_000)
            num = rng.randrange(den)
            l = rng.randint(0, 24)
            got = floor_bits(rat(num, den), l)
            want = brute_truncate(Fraction(num, den), l)
            assert to_frac(got) == want

    def test_bracketing(self):
        rng = random.Random(3)
        for _ in range(300):
            den = rng.randint(1, 10_000)
            num = rng.randrange(2 * den)
            l = rng.randint(0, 20)
            r = rat(num, den)
            f = floor_bits(r, l)
            assert f <= r < f + rat(1, 1 << l)

    def test_domain(self):
        with pytest.raises(DomainError):
            floor_bits(rat(-1, 2), 3)
        with pytest.raises(DomainError):
            floor_bits(rat(2), 3)
        with pytest.raises(DomainError):
            floor_bits(rat(1, 2), -1)


class TestResidueBits:
    def test_pinned_values(self):
        assert residue_bits(rat(5, 9), 2) == rat(2, 9)
        assert residue_bits(rat(3, 4), 2) == 0

    def test_identity_at_zero_bits(self):
        rng = random.Random(4)
        for _ in range(50):
            den = rng.randint(1, 500)
            num = rng.randrange(den)
            assert residue_bits(rat(num, den), 0) == rat(num, den)

    def test_reconstruction(self):
        # r = floor_bits(r, l) + 2**-l * residue_bits(r, l), exactly
        rng = random.Random(5)
        for _ in range(300):
            den = rng.randint(1, 10_000)
            num = rng.randrange(den)
            l = rng.randint(0, 24)
            r = rat(num, den)
            assert floor_bits(r, l) + residue_bits(r, l) / (1 << l) == r

    def test_domain(self):
        with pytest.raises(DomainError):
            residue_bits(rat(1), 2)
        with pytest.raises(DomainError):
            residue_bits(rat(-1, 3), 2)


class TestDyadicToBits:
    @pytest.mark.parametrize(
        "num,den,l,expect",
        [(1, 2, 2, "10"), (0, 1, 4, "0000"), (11, 16, 4, "1011"), (0, 1, 0, "")],
    )
    def test_pinned(self, num, den, l, expect):
        assert dyadic_to_bits(rat(num, den), l) == expect

    def test_rejects_non_dyadic(self):
        with pytest.raises(DomainError):
            dyadic_to_bits(rat(1, 3), 4)

    def test_rejects_out_of_range(self):
        with pytest.raises(DomainError):
            dyadic_to_bits(rat(17, 16), 4)
        with pytest.raises(DomainError):
            dyadic_to_bits(rat(1, 2), 0)

    def test_roundtrip_with_bits_to_rat(self):
        rng = random.Random(6)
        for _ in range(100):
            l = rng.randint(0, 30)
            k = rng.randrange(1 << l) if l else 0
            d = rat(k, 1 << l)
            assert bits_to_rat(dyadic_to_bits(d, l)) == d


class TestLog2:
    def test_exact_powers(self):
        for k in range(-20, 21):
            q = rat(1 << k, 1) if k >= 0 else rat(1, 1 << -k)
            assert floor_log2(q) == k
            assert ceil_log2(q) == k

    def test_definition(self):
        rng = random.Random(7)
        for _ in range(300):
            num = rng.randint(1, 1 << 40)
            den = rng.randint(1, 1 << 40)
            q = rat(num, den)
            f = floor_log2(q)
            c = ceil_log2(q)
            two_f = rat(1 << f, 1) if f >= 0 else rat(1, 1 << -f)
            two_c = rat(1 << c, 1) if c >= 0 else rat(1, 1 << -c)
            assert two_f <= q < 2 * two_f
            assert two_c >= q and two_c / 2 < q

    def test_domain(self):
        with pytest.raises(DomainError):
            floor_log2(rat(0))


class TestCursorCompare:
    def test_pinned_examples(self):
        # "1011" read from its first bit is r = 11/16
        assert cursor_compare(BitCursor("1011"), rat(7, 9)) == LESS
        assert cursor_compare(BitCursor("1011"), rat(1, 3)) == GREATER
        assert cursor_compare(BitCursor(""), rat(0)) == EQUAL

    def test_zero_padding_semantics(self):
        c = BitCursor("1")
        assert c.compare(rat(1, 2)) == EQUAL  # 0.1000... == 1/2
        assert c.compare(rat(9, 16)) == LESS
        assert c.compare(rat(7, 16)) == GREATER

    def test_targets_outside_unit_interval(self):
        c = BitCursor("1111")
        assert c.compare(rat(1)) == LESS  # r < 1 always
        assert c.compare(rat(3, 2)) == LESS
        assert c.compare(rat(-1, 2)) == GREATER

    def test_agrees_with_materialized_comparison(self):
        rng = random.Random(8)
        for _ in range(500):
            nbits = rng.randint(0, 90)
            bits = "".join(rng.choice("01") for _ in range(nbits))
            pos = rng.randint(0, nbits)
            cur = BitCursor(bits, pos)
            if rng.random() < 0.5:
                den = rng.randint(1, 1 << 20)
                t = rat(rng.randrange(den + 1), den)
            else:
                # adversarial: the value itself, or a one-ulp neighbour
                tail = bits[pos:]
                base = int(tail, 2) if tail else 0
                width = max(len(tail), 1)
                delta = rng.choice((-1, 0, 1))
                t = rat(max(base + delta, 0), 1 << width)
            want = (to_frac(bits_to_rat(bits[pos:])) > to_frac(t)) - (
                to_frac(bits_to_rat(bits[pos:])) < to_frac(t)
            )
            assert cur.compare(t) == want
            assert cur.position == pos  # comparisons never consume

    def test_long_shared_prefix(self):
        bits = "01" * 300 + "1"
        t = bits_to_rat("01" * 300)  # differs only after 600 bits
        assert BitCursor(bits).compare(t) == GREATER
        assert BitCursor("01" * 300).compare(t) == EQUAL


class TestBitCursor:
    def test_padding_accounting(self):
        c = BitCursor("101")
        assert c.read(2) == "10"
        assert (c.position, c.padded_reads, c.consumed) == (2, 0, 2)
        assert c.read(4) == "1000"
        assert (c.position, c.padded_reads, c.consumed) == (3, 3, 6)
        assert c.remaining == 0

    def test_position_bounds(self):
        with pytest.raises(DomainError):
            BitCursor("01", 3)
        with pytest.raises(DomainError):
            BitCursor("01").advance(-1)
