"""Brute-force verification engine for the codecs' headline properties.

Everything here recomputes quantities from first principles: exact
per-block emission probabilities from slice widths, exact k-block joint
distributions by walking the state tree, expected lengths by direct
enumeration, and randomized/exhaustive searches for counterexamples to
the floor/fence/partition facts the codecs rely on.  Inequalities with
irrational sides are decided through rational enclosures (logbounds);
everything else is exact rational comparison.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import BudgetError
from .exactnum import Rat, rat, floor_bits
from .grayorder import Order, iter_blocks
from .logbounds import (
    entropy_bounds,
    log2_bounds,
    decisively_less,
    decisively_greater,
)
from .source import SourceModel, prob
from . import dualsfeg
from .dualsfeg import INITIAL_STATE, IntervalState, block_interval

__all__ = [
    "BlockDistribution",
    "block_distribution",
    "reachable_states",
    "KBlockTree",
    "kblock_distribution",
    "DivergenceReport",
    "max_divergence_rate",
    "ExpectedLengthsReport",
    "expected_lengths_report",
    "dual_consume_expectation",
    "dual_consume_bound_holds",
    "divergence_bound_holds",
    "floor_lemma_exhaustive",
    "floor_lemma_random",
    "LemmaSuiteReport",
    "lemma_suite",
    "uniformity_mc_statistic",
    "ENUMERATION_GUARD_BITS",
]

ENUMERATION_GUARD_BITS = 20


@dataclass(frozen=True)
class BlockDistribution:
    """Exact per-block emission probabilities at one codec state."""

    entries: dict
    context: IntervalState


def block_distribution(model: SourceModel, state: IntervalState = INITIAL_STATE) -> BlockDistribution:
    """Emission probability of each block: slice width over state width."""
    w = state.width
    entries = {}
    total = rat(0)
    for row in dualsfeg.slice_table(state, model):
        p = (row.hi - row.lo) / w
        entries[row.block] = p
        total += p
    assert total == 1, f"slice widths do not tile the state: total {total}"
    return BlockDistribution(entries, state)


def reachable_states(model: SourceModel, depth: int) -> list[IntervalState]:
    """All states reachable within ``depth`` blocks of the initial state."""
    seen = {INITIAL_STATE}
    frontier = [INITIAL_STATE]
    for _ in range(depth):
        nxt = []
        for state in frontier:
            for child, _, _ in dualsfeg.children(state, model).values():
                if child not in seen:
                    seen.add(child)
                    nxt.append(child)
        frontier = nxt
    return sorted(seen, key=lambda s: (s.a, s.b))


@dataclass
class KBlockTree:
    """Depth-k emission tree: states, block edges and edge probabilities."""

    state: IntervalState
    depth: int
    edges: dict = field(default_factory=dict)  # block -> (probability, subtree|None)

    def leaf_distribution(self) -> dict:
        """Exact joint distribution over the first ``depth`` blocks."""
        out: dict[tuple[str, ...], Rat] = {}

        def walk(node: KBlockTree, prefix: tuple[str, ...], mass: Rat):
            if not node.edges:
                out[prefix] = mass
                return
            for block, (p, child) in node.edges.items():
                if child is None:
                    out[prefix + (block,)] = mass * p
                else:
                    walk(child, prefix + (block,), mass * p)

        walk(self, (), rat(1))
        return out


def _build_tree(model: SourceModel, state: IntervalState, depth: int) -> KBlockTree:
    node = KBlockTree(state, depth)
    if depth == 0:
        return node
    w = state.width
    for block, (child_state, width, _) in dualsfeg.children(state, model).items():
        child = _build_tree(model, child_state, depth - 1) if depth > 1 else None
        node.edges[block] = (width / w, child)
    return node


def kblock_distribution(model: SourceModel, k: int) -> tuple[KBlockTree, dict]:
    """Joint distribution of the first k emitted blocks for uniform input."""
    if k * model.n > ENUMERATION_GUARD_BITS:
        raise BudgetError(
            f"k*n = {k * model.n} exceeds the enumeration guard of "
            f"{ENUMERATION_GUARD_BITS} bits"
        )
    tree = _build_tree(model, INITIAL_STATE, k)
    return tree, tree.leaf_distribution()


@dataclass(frozen=True)
class DivergenceReport:
    k: int
    max_ratio: Rat            # max over sequences of emitted/target probability
    ratio_bound: Rat          # (2*alpha_hat)**k
    within_bound: bool        # exact comparison max_ratio <= ratio_bound
    rate_bounds: tuple        # enclosure of (1/(k*n)) * log2(max_ratio)
    rate_cap: tuple           # enclosure of (1/n) * log2(2*alpha_hat)


def max_divergence_rate(model: SourceModel, k: int, prec: int = 192) -> DivergenceReport:
    """Worst per-bit log-ratio of emitted vs target block distribution."""
    _, dist = kblock_distribution(model, k)
    max_ratio = rat(0)
    for seq, p_emit in dist.items():
        if p_emit == 0:
            continue
        p_target = rat(1)
        for b in seq:
            p_target *= prob(model, b)
        ratio = p_emit / p_target
        if ratio > max_ratio:
            max_ratio = ratio
    cap_ratio = (2 * model.alpha_hat) ** k
    lo, hi = log2_bounds(max_ratio, prec) if max_ratio != 1 else (rat(0), rat(0))
    scale = rat(1, k * model.n)
    cap_lo, cap_hi = log2_bounds(2 * model.alpha_hat, prec)
    return DivergenceReport(
        k=k,
        max_ratio=max_ratio,
        ratio_bound=cap_ratio,
        within_bound=max_ratio <= cap_ratio,
        rate_bounds=(scale * lo, scale * hi),
        rate_cap=(rat(1, model.n) * cap_lo, rat(1, model.n) * cap_hi),
    )


def divergence_bound_holds(model: SourceModel, state: IntervalState) -> bool:
    """Per-block check: emitted probability < 2*alpha_hat*target, exactly."""
    dist = block_distribution(model, state)
    cap = 2 * model.alpha_hat
    return all(p < cap * prob(model, b) for b, p in dist.entries.items())


def dual_consume_expectation(model: SourceModel, state: IntervalState = INITIAL_STATE) -> Rat:
    """Exact expected bits consumed by the next block at this state."""
    total = rat(0)
    for row in dualsfeg.slice_table(state, model):
        if row.hi > row.lo and row.budget:
            total += (row.hi - row.lo) * row.budget
    return total / state.width


def dual_consume_bound_holds(model: SourceModel, state: IntervalState = INITIAL_STATE) -> bool:
    """Check E[consumed bits] > n*H - 1 - 2*log2(rho), decisively."""
    expected = dual_consume_expectation(model, state)

    def bounds(prec: int):
        h_lo, h_hi = entropy_bounds(model.p0, prec)
        r_lo, r_hi = log2_bounds(model.rho, prec)
        return (
            model.n * h_lo - 1 - 2 * r_hi,
            model.n * h_hi - 1 - 2 * r_lo,
        )

    return decisively_greater(expected, bounds)


@dataclass(frozen=True)
class ExpectedLengthsReport:
    model: SourceModel
    e_sfe: Rat
    e_sfeg: Rat
    e_dual_first_block: Rat
    entropy: tuple
    sfe_bound_ok: bool          # E[sfe] < n*H + 2
    sfeg_bound_ok: bool         # E[sfeg] < n*H + 2 - log2((1+rho)/rho)
    sfeg_not_longer: bool       # E[sfeg] <= E[sfe], exact
    dual_bound_ok: bool         # E[dual] > n*H - 1 - 2*log2(rho)
    realized_gain: Rat          # E[sfe] - E[sfeg], reported not asserted


def _expected_code_length(model: SourceModel, length_of_p: Callable[[Rat], int]) -> Rat:
    """Sum p(x) * len(x) grouped by composition (len depends on p only)."""
    from math import comb

    total = rat(0)
    for ones in range(model.n + 1):
        p = model.p0 ** (model.n - ones) * model.p1**ones
        total += comb(model.n, ones) * p * length_of_p(p)
    return total


def expected_lengths_report(model: SourceModel, prec: int = 192) -> ExpectedLengthsReport:
    """Exact expected lengths plus decisive verdicts on their bounds."""
    from .exactnum import floor_log2

    e_sfe = _expected_code_length(model, lambda p: -floor_log2(p) + 1)
    e_sfeg = _expected_code_length(model, lambda p: -floor_log2(model.alpha_s * p) + 1)
    e_dual = dual_consume_expectation(model, INITIAL_STATE)

    def sfe_bounds(prec: int):
        h_lo, h_hi = entropy_bounds(model.p0, prec)
        return (model.n * h_lo + 2, model.n * h_hi + 2)

    def sfeg_bounds(prec: int):
        h_lo, h_hi = entropy_bounds(model.p0, prec)
        a_lo, a_hi = log2_bounds(model.alpha_s, prec)
        return (model.n * h_lo + 2 - a_hi, model.n * h_hi + 2 - a_lo)

    return ExpectedLengthsReport(
        model=model,
        e_sfe=e_sfe,
        e_sfeg=e_sfeg,
        e_dual_first_block=e_dual,
        entropy=entropy_bounds(model.p0, prec),
        sfe_bound_ok=decisively_less(e_sfe, sfe_bounds),
        sfeg_bound_ok=decisively_less(e_sfeg, sfeg_bounds),
        sfeg_not_longer=e_sfeg <= e_sfe,
        dual_bound_ok=dual_consume_bound_holds(model, INITIAL_STATE),
        realized_gain=e_sfe - e_sfeg,
    )


def floor_lemma_exhaustive(frac_bits: int = 10, max_l: int = 10) -> bool:
    """Exhaustive truncation-monotonicity check on a dyadic grid.

    Claim: if x + 2**-l2 >= y + 2**-min(l1, l2) then the first l1 bits
    of x are at least the first l2 bits of y.  Checked for every pair of
    dyadics with ``frac_bits`` fractional bits and every l1, l2 up to
    ``max_l`` by exact integer arithmetic on numpy arrays.
    """
    # scale everything to integers at 2**S so grid steps and the 2**-l
    # terms are both exact no matter how frac_bits and max_l compare
    s_bits = max(frac_bits, max_l)
    step = 1 << (s_bits - frac_bits)
    scale = 1 << s_bits
    ks = np.arange(1 << frac_bits, dtype=np.int64) * step
    col = ks[:, None]
    row = ks[None, :]
    for l1 in range(max_l + 1):
        for l2 in range(max_l + 1):
            m = min(l1, l2)
            cond = col + (scale >> l2) >= row + (scale >> m)
            trunc_x = (col >> (s_bits - l1)) << (s_bits - l1)
            trunc_y = (row >> (s_bits - l2)) << (s_bits - l2)
            if np.any(cond & (trunc_x < trunc_y)):
                return False
    return True


def floor_lemma_random(samples: int, rng: random.Random, frac_bits: int = 24, max_l: int = 24) -> bool:
    """Randomized search for floor-lemma counterexamples at high precision.

    Half the samples place y adversarially close to the boundary of the
    hypothesis, the rest are uniform.  Uses the real floor_bits path, so
    this route is independent of the integer-grid check above.
    """
    scale = 1 << frac_bits
    for trial in range(samples):
        l1 = rng.randint(0, max_l)
        l2 = rng.randint(0, max_l)
        kx = rng.randrange(scale)
        if trial % 2 == 0:
            ky = rng.randrange(scale)
        else:
            # park y within a few grid steps of the hypothesis boundary
            m = min(l1, l2)
            target = kx + (scale >> l2) - (scale >> m)
            ky = max(0, min(scale - 1, target + rng.randint(-2, 2)))
        x = rat(kx, scale)
        y = rat(ky, scale)
        if x + rat(1, 1 << l2) >= y + rat(1, 1 << min(l1, l2)):
            if floor_bits(x, l1) < floor_bits(y, l2):
                return False
    return True


def _fence_lemma_holds(model: SourceModel, state: IntervalState) -> bool:
    """Fence facts at one state, at nominal-clamped budgets.

    fence(x) >= F_I(x-1) for every block, and
    fence(x) >= floor(F_I(x)) at the budget of x+1 for non-top blocks.
    """
    blocks = list(iter_blocks(model.n, Order.GRAY))
    w = state.width
    for i, block in enumerate(blocks):
        f_low = dualsfeg.f_i_low(state, model, block)
        fence = dualsfeg._fence_effective(state, model, i)
        if fence < f_low:
            return False
        if i + 1 < len(blocks):
            nxt_budget = dualsfeg._budget_effective(state, model, i + 1)
            f_inc = dualsfeg.f_i(state, model, block)
            if fence < floor_bits(f_inc, nxt_budget):
                return False
    return True


def _inclusion_holds(model: SourceModel, state: IntervalState) -> bool:
    """Every nonempty slice lies inside its block's dyadic cell."""
    blocks = list(iter_blocks(model.n, Order.GRAY))
    for i, block in enumerate(blocks):
        iv = block_interval(state, model, block)
        if iv.width == 0:
            continue
        budget = dualsfeg._budget_effective(state, model, i)
        base = floor_bits(dualsfeg.f_i_low(state, model, block), budget)
        if not (base <= iv.lo and iv.hi <= base + rat(1, 1 << budget)):
            return False
    return True


def _partition_holds(model: SourceModel, state: IntervalState) -> bool:
    """The slices tile [a, b) exactly: telescoping ends, full coverage."""
    blocks = list(iter_blocks(model.n, Order.GRAY))
    prev_hi = state.a
    for block in blocks:
        iv = block_interval(state, model, block)
        if iv.lo != prev_hi or iv.hi < iv.lo:
            return False
        prev_hi = iv.hi
    return prev_hi == state.b


def _prop_gray_holds(model: SourceModel) -> bool:
    """Adjacent Gray-order blocks have probability ratio within [1/rho, rho]."""
    blocks = list(iter_blocks(model.n, Order.GRAY))
    for prev, here in zip(blocks, blocks[1:]):
        ratio = prob(model, prev) / prob(model, here)
        if not (1 / model.rho <= ratio <= model.rho):
            return False
    return True


def uniformity_mc_statistic(
    model: SourceModel, samples: int, rng: random.Random, msg_bits: int = 24
) -> tuple[float, int]:
    """Chi-squared statistic of sampled first-block frequencies.

    Sanity cross-check only (never asserted): feeds random messages to
    the encoder and compares first-block counts against the exact slice
    widths.  Returns (statistic, degrees of freedom).
    """
    counts: dict[str, int] = {}
    for _ in range(samples):
        msg = format(rng.getrandbits(msg_bits), f"0{msg_bits}b")
        result = dualsfeg.encode(model, msg)
        first = result.blocks[0]
        counts[first] = counts.get(first, 0) + 1
    dist = block_distribution(model, INITIAL_STATE)
    stat = 0.0
    dof = -1
    for block, p in dist.entries.items():
        if p == 0:
            continue
        expected = samples * p.numerator / p.denominator
        observed = counts.get(block, 0)
        stat += (observed - expected) ** 2 / expected
        dof += 1
    return stat, max(dof, 1)


@dataclass(frozen=True)
class LemmaSuiteReport:
    floor_grid_ok: bool
    floor_random_ok: bool
    fence_ok: bool
    inclusion_ok: bool
    partition_ok: bool
    prop_gray_ok: bool
    divergence_ok: bool
    states_checked: int
    mc_chi2: tuple | None

    @property
    def all_ok(self) -> bool:
        return (
            self.floor_grid_ok
            and self.floor_random_ok
            and self.fence_ok
            and self.inclusion_ok
            and self.partition_ok
            and self.prop_gray_ok
            and self.divergence_ok
        )


def lemma_suite(
    model: SourceModel,
    depth: int = 3,
    rng: random.Random | None = None,
    floor_samples: int = 20_000,
    mc_samples: int = 0,
) -> LemmaSuiteReport:
    """Aggregate structural checks backing the codecs, at desk scale."""
    rng = rng or random.Random(0x5FE6)
    states = reachable_states(model, depth)
    fence = all(_fence_lemma_holds(model, s) for s in states)
    inclusion = all(_inclusion_holds(model, s) for s in states)
    partition = all(_partition_holds(model, s) for s in states)
    divergence = all(divergence_bound_holds(model, s) for s in states)
    mc = None
    if mc_samples:
        mc = uniformity_mc_statistic(model, mc_samples, rng)
    return LemmaSuiteReport(
        floor_grid_ok=floor_lemma_exhaustive(frac_bits=6, max_l=8),
        floor_random_ok=floor_lemma_random(floor_samples, rng),
        fence_ok=fence,
        inclusion_ok=inclusion,
        partition_ok=partition,
        prop_gray_ok=_prop_gray_holds(model),
        divergence_ok=divergence,
        states_checked=len(states),
        mc_chi2=mc,
    )
