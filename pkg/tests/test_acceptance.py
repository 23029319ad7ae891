"""Headline acceptance checks, one test per criterion (A1..A10).

Each test prints a single PASS/FAIL line so the suite doubles as a
report: run with ``pytest tests/test_acceptance.py -v -s``.  Sizes and
tolerances are pinned here, not configurable.

A10 pins a historically expected two-block reference trace.  Two of its
sub-claims (the second block consuming two bits, and the decoder
reproducing those two bits) contradict decodable framing: at state
[1/3, 7/9) the top block's two-bit cell tops out at 3/4 < 7/9, so a
two-bit budget would make the consumed bits ambiguous and messages with
values in [3/4, 7/9) undecodable.  The budget rule therefore consumes
one bit there, those sub-claims fail, and the failure is expected and
deliberate: every round-trip criterion above it depends on the fix.
"""

from __future__ import annotations

import random
import time

from gelc import SourceModel
from gelc import dualsfeg, oracle
from gelc.dualsfeg import INITIAL_STATE, IntervalState
from gelc.exactnum import rat
from gelc.grayorder import (
    Order,
    cdf,
    gray_inv_int,
    gray_map_int,
    iter_blocks,
)
from gelc.sfe import kraft_sum
from gelc.sfeg import sfeg_decode_stream, sfeg_encode_stream
from gelc.source import len_sfe, prob

P0_SWEEP = (rat(1, 3), rat(1, 5), rat(7, 10))


def _report(tag: str, ok: bool, detail: str = "") -> None:
    print(f"\n[{tag}] {'PASS' if ok else 'FAIL'} {detail}")


def _random_blocks(rng: random.Random, n: int, count: int) -> list[str]:
    return [format(rng.getrandbits(n), f"0{n}b") for _ in range(count)]


def test_a01_sfeg_round_trip():
    """Exhaustive singles and pairs (n <= 6) plus 10^4 random streams (n=8)."""
    t0 = time.perf_counter()
    failures = 0
    for p0 in P0_SWEEP:
        for n in range(1, 7):
            m = SourceModel(p0, n)
            blocks = list(iter_blocks(n, Order.GRAY))
            for a in blocks:
                if sfeg_decode_stream(m, sfeg_encode_stream(m, [a]), 1) != [a]:
                    failures += 1
            for a in blocks:
                for b in blocks:
                    pair = [a, b]
                    bits = sfeg_encode_stream(m, pair)
                    if sfeg_decode_stream(m, bits, 2) != pair:
                        failures += 1
    rng = random.Random(0xA1)
    streams = 10_000
    models = [SourceModel(p0, 8) for p0 in P0_SWEEP]
    for i in range(streams):
        m = models[i % len(models)]
        blocks = _random_blocks(rng, 8, 100)
        bits = sfeg_encode_stream(m, blocks)
        if sfeg_decode_stream(m, bits, 100) != blocks:
            failures += 1
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 60.0
    _report(
        "A1",
        ok,
        f"sfeg round-trip: exhaustive pairs n<=6 + {streams} random 100-block "
        f"streams at n=8; failures={failures}, elapsed={elapsed:.1f}s (cap 60s)",
    )
    assert ok


def test_a02_expected_length_bounds():
    """E[len] bounds for both block codecs, decided by rational enclosures."""
    bad = []
    for p0 in P0_SWEEP:
        for n in range(1, 11):
            rep = oracle.expected_lengths_report(SourceModel(p0, n))
            if not rep.sfe_bound_ok:
                bad.append((str(p0), n, "sfe"))
            if not rep.sfeg_bound_ok:
                bad.append((str(p0), n, "sfeg"))
    ok = not bad
    _report(
        "A2",
        ok,
        "expected-length bounds (sfeg strict improvement incl. its margin, "
        f"sfe base bound), p0 in {{1/3,1/5,7/10}}, n<=10; violations={bad!r}",
    )
    assert ok


def test_a03_dual_round_trip():
    """10^4 random messages, lengths up to 10^5 bits, across five configs."""
    t0 = time.perf_counter()
    configs = [
        (rat(1, 3), 2, 4_096),
        (rat(1, 3), 4, 20_000),
        (rat(1, 3), 8, 100_000),
        (rat(1, 5), 4, 20_000),
        (rat(1, 5), 8, 100_000),
    ]
    per_config = 2_000
    rng = random.Random(0xA3)
    failures = 0
    longest = 0
    for p0, n, max_len in configs:
        m = SourceModel(p0, n)  # alpha_hat defaults to rho
        lengths = [rng.randint(0, 256) for _ in range(per_config - 51)]
        lengths += [rng.randint(257, 2_048) for _ in range(40)]
        lengths += [rng.randint(2_049, min(16_384, max_len)) for _ in range(10)]
        lengths += [max_len]
        for msg_len in lengths:
            longest = max(longest, msg_len)
            msg = format(rng.getrandbits(msg_len), f"0{msg_len}b") if msg_len else ""
            result = dualsfeg.encode(m, msg)
            out = dualsfeg.decode(m, result.blocks)
            if out[:msg_len] != msg or len(out) != result.consumed_bits:
                failures += 1
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 120.0
    _report(
        "A3",
        ok,
        f"dual round-trip: {per_config * len(configs)} messages, longest "
        f"{longest} bits; failures={failures}, elapsed={elapsed:.1f}s (cap 120s)",
    )
    assert ok


def test_a04_per_block_divergence_bound():
    """Emitted block probability < 2*alpha_hat*target at depth-3 states, n <= 4."""
    bad = []
    states_total = 0
    for p0 in P0_SWEEP:
        for n in range(1, 5):
            m = SourceModel(p0, n)
            cap = 2 * m.alpha_hat
            for state in oracle.reachable_states(m, 3):
                states_total += 1
                dist = oracle.block_distribution(m, state)
                for block, p_emit in dist.entries.items():
                    if not p_emit < cap * prob(m, block):
                        bad.append((str(p0), n, str(state.a), str(state.b), block))
    ok = not bad
    _report(
        "A4",
        ok,
        f"per-block divergence bound over {states_total} reachable states "
        f"(depth<=3, n<=4, 3 sources); violations={len(bad)}",
    )
    assert ok


def test_a05_weak_perfectness_rate():
    """k-block max-divergence rate <= (1/n) log2(2*alpha_hat), k <= 3."""
    bad = []
    for n in (2, 3):
        m = SourceModel(rat(1, 3), n, rat(2))
        for k in (1, 2, 3):
            rep = oracle.max_divergence_rate(m, k)
            # exact form of the same inequality: max ratio <= (2 alpha)^k
            if not rep.within_bound:
                bad.append((n, k, "exact-ratio"))
            # decisive interval form: enclosures must separate cleanly
            if not rep.rate_bounds[1] <= rep.rate_cap[0]:
                bad.append((n, k, "interval-rate"))
    ok = not bad
    _report(
        "A5",
        ok,
        "k-block divergence rate vs (1/n)log2(2a), n in {2,3}, k<=3, "
        f"p0=1/3, alpha=2; violations={bad!r}",
    )
    assert ok


def test_a06_consumption_lower_bound():
    """E[bits consumed] > n*H - 1 - 2 log2(rho) at depth-<=2 states."""
    bad = []
    states_total = 0
    pinned = oracle.dual_consume_expectation(SourceModel(rat(1, 3), 2, rat(2)))
    for p0 in (rat(1, 3), rat(1, 5)):
        for n in range(3, 9):
            m = SourceModel(p0, n)
            for state in oracle.reachable_states(m, 2):
                states_total += 1
                if not oracle.dual_consume_bound_holds(m, state):
                    bad.append((str(p0), n, str(state.a), str(state.b)))
    ok = not bad and pinned == rat(2, 3)
    _report(
        "A6",
        ok,
        f"consumption lower bound at {states_total} states (depth<=2, "
        f"n=3..8, p0 in {{1/3,1/5}}); pinned E at (1/3,2,2) = {pinned}; "
        f"violations={len(bad)}",
    )
    assert ok


def test_a07_floor_lemma():
    """Truncation monotonicity: exhaustive 10-bit grid plus 10^5 random."""
    grid_ok = oracle.floor_lemma_exhaustive(frac_bits=10, max_l=10)
    rand_ok = oracle.floor_lemma_random(100_000, random.Random(0xA7), frac_bits=24, max_l=24)
    ok = grid_ok and rand_ok
    _report(
        "A7",
        ok,
        f"floor lemma: exhaustive grid (10 fractional bits, l<=10) {grid_ok}, "
        f"100000 random 24-bit cases {rand_ok}",
    )
    assert ok


def test_a08_gray_infrastructure():
    """Gray bijection n<=16, adjacency n<=14, ratio bound and CDF oracle n<=10."""
    bij = all(
        gray_inv_int(gray_map_int(v)) == v
        for n in range(1, 17)
        for v in range(1 << n)
    )
    adj = all(
        bin(gray_map_int(v) ^ gray_map_int(v + 1)).count("1") == 1
        for n in range(1, 15)
        for v in range((1 << n) - 1)
    )
    ratio_ok = True
    for p0 in P0_SWEEP:
        for n in range(1, 11):
            m = SourceModel(p0, n)
            blocks = list(iter_blocks(n, Order.GRAY))
            for prev, here in zip(blocks, blocks[1:]):
                r = prob(m, prev) / prob(m, here)
                if not (1 / m.rho <= r <= m.rho):
                    ratio_ok = False
    cdf_ok = True
    for p0 in (rat(1, 3), rat(7, 10)):
        for n in range(1, 11):
            m = SourceModel(p0, n)
            for order in Order:
                acc = rat(0)
                for b in iter_blocks(n, order):
                    acc += prob(m, b)
                    if cdf(m, b, order) != acc:
                        cdf_ok = False
    ok = bij and adj and ratio_ok and cdf_ok
    _report(
        "A8",
        ok,
        f"gray bijection(n<=16)={bij} adjacency(n<=14)={adj} "
        f"neighbour-ratio(n<=10)={ratio_ok} cdf-vs-bruteforce(n<=10)={cdf_ok}",
    )
    assert ok


def test_a09_kraft_incompleteness():
    """The baseline codec's tree is strictly incomplete at (1/3, n=4)."""
    m = SourceModel(rat(1, 3), 4)
    value = kraft_sum(m, lambda b: len_sfe(m, b))
    ok = value == rat(81, 256) and value < 1
    _report("A9", ok, f"kraft sum of baseline codeword lengths = {value} < 1")
    assert ok


def test_a10_worked_reference_trace():
    """Two-block reference trace; two sub-claims fail by design (see module doc)."""
    m = SourceModel(rat(1, 3), 2, rat(2))
    claims: list[tuple[str, bool]] = []

    result = dualsfeg.encode(m, "1011")
    state1 = dualsfeg.state_update(INITIAL_STATE, m, result.blocks[0])
    claims.append(("first block is 11", result.blocks[0] == "11"))
    claims.append(
        ("first block consumes 0 bits",
         dualsfeg.len_dual_effective(INITIAL_STATE, m, "11") == 0)
    )
    claims.append(
        ("state after first block is [1/3, 7/9)",
         state1 == IntervalState(rat(1, 3), rat(7, 9)))
    )
    claims.append(("second block is 10", result.blocks[1] == "10"))
    second_budget = dualsfeg.len_dual_effective(state1, m, "10")
    claims.append(("second block consumes bits '10'", second_budget == 2))
    claims.append(("decoder reproduces '10' from [11, 10]",
                   dualsfeg.decode(m, ["11", "10"]) == "10"))

    failed = [name for name, ok in claims if not ok]
    ok = not failed
    _report(
        "A10",
        ok,
        "reference trace sub-claims: "
        + "; ".join(f"{name}={'ok' if good else 'FAIL'}" for name, good in claims)
        + ("  [expected: the two consumption sub-claims cannot hold in any "
           "uniquely decodable construction; see module docstring]" if failed else ""),
    )
    assert ok, f"known-unattainable sub-claims failed: {failed}"
