"""Variable-to-fixed homophonic codec: uniform bits -> biased n-bit blocks.

The encoder runs the Gray-order codec's decoder against the message: it
keeps an interval I = [a, b) of [0, 1), reads the upcoming message bits
as a real number r, picks the block whose slice of I contains r,
consumes that block's bit budget, and renormalizes I.  The decoder
replays the same state machine from the emitted blocks alone, so the
consumed bits are recoverable and the emitted block distribution tracks
the source distribution to within a factor 2*alpha_hat per block.

Geometry per state and block x (F_I is the Gray CDF mapped onto I):

* budget(x): nominal floor(-log2(alpha_hat * width * p(x))), never
  negative (clamped), and for the top block of the order reduced until
  its dyadic cell [floor_l(F_I(x-1)), +2**-l) covers b.  Without that
  reduction the slice of the top block can poke past its cell and the
  consumed bits would not be a function of the block - such streams
  could not be decoded.  Every reduction only widens cells, which keeps
  all the fence inequalities below intact.
* fence(x): the cell top floor_l(F_I(x-1)) + 2**-l at budget(x).  It is
  at least F_I(x-1), and at least floor(F_I(x)) at the next block's
  budget, because Gray-adjacent probabilities differ by at most rho and
  alpha_hat >= rho.
* slice(x): [min(fence(x-1), F_I(x-1)), min(fence(x), F_I(x))), with a
  at the bottom block and b at the top block.  The slices tile [a, b)
  exactly and each lies inside its block's dyadic cell, so the bits the
  encoder consumed are exactly the cell index the decoder regenerates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BudgetError, DomainError
from .exactnum import BitCursor, Rat, rat, ceil_log2, floor_bits
from .grayorder import Order, cum_table, gray_inv_int
from .source import SourceModel, len_dual

__all__ = [
    "IntervalState",
    "BlockInterval",
    "INITIAL_STATE",
    "f_i",
    "f_i_low",
    "fbar",
    "len_dual_effective",
    "block_interval",
    "state_update",
    "SliceRow",
    "slice_table",
    "children",
    "DualEncodeResult",
    "encode",
    "decode",
]


@dataclass(frozen=True)
class IntervalState:
    """Current interval [a, b) of the codec state machine."""

    a: Rat
    b: Rat

    def __post_init__(self):
        object.__setattr__(self, "a", rat(self.a))
        object.__setattr__(self, "b", rat(self.b))
        if not (0 <= self.a < self.b <= 1):
            raise DomainError(f"invalid interval [{self.a}, {self.b})")

    @property
    def width(self) -> Rat:
        return self.b - self.a


INITIAL_STATE = IntervalState(rat(0), rat(1))


@dataclass(frozen=True)
class BlockInterval:
    """Half-open slice of message values r that emit a given block."""

    lo: Rat
    hi: Rat

    @property
    def width(self) -> Rat:
        return self.hi - self.lo


def _tables(model: SourceModel):
    return cum_table(model, Order.GRAY)


def _gray_rank(block: str) -> int:
    return gray_inv_int(int(block, 2))


def f_i(state: IntervalState, model: SourceModel, block: str) -> Rat:
    """Inclusive Gray CDF mapped affinely onto the state interval."""
    model.check_block(block)
    _, _, cum = _tables(model)
    return state.a + state.width * cum[_gray_rank(block)]


def f_i_low(state: IntervalState, model: SourceModel, block: str) -> Rat:
    """Exclusive counterpart of :func:`f_i`; equals a at the bottom block."""
    model.check_block(block)
    blocks, probs, cum = _tables(model)
    idx = _gray_rank(block)
    return state.a + state.width * (cum[idx] - probs[idx])


def _budget_nominal(model: SourceModel, width: Rat, p: Rat) -> int:
    t = model.alpha_hat * width * p
    return 0 if t > 1 else -ceil_log2(t)


def _cell(y: Rat, budget: int) -> tuple[int, int]:
    """(floor numerator, scale) of y's dyadic cell at the given budget."""
    scale = 1 << budget
    return (int(y.numerator) * scale) // int(y.denominator), scale


def _budget_effective(state: IntervalState, model: SourceModel, idx: int) -> int:
    blocks, probs, cum = _tables(model)
    budget = _budget_nominal(model, state.width, probs[idx])
    if idx == len(blocks) - 1:
        # top block: its slice ends at b, so shrink the budget until the
        # cell of F_I(x-1) reaches b and the consumed bits stay unique
        y = state.a + state.width * (cum[idx] - probs[idx])
        b = state.b
        while budget > 0:
            base, scale = _cell(y, budget)
            if rat(base + 1, scale) >= b:
                break
            budget -= 1
    return budget


def len_dual_effective(state: IntervalState, model: SourceModel, block: str) -> int:
    """Bits actually consumed/produced for ``block`` in this state.

    Equals the nominal budget everywhere except the clamp at zero and
    the top-block reduction described in the module docstring.
    """
    model.check_block(block)
    return _budget_effective(state, model, _gray_rank(block))


def fbar(state: IntervalState, model: SourceModel, block: str) -> Rat:
    """Dyadic fence floor_l(F_I(x-1) + 2**-l) at the nominal budget l.

    This is the bump threshold of the encoder for non-top blocks.  The
    argument may reach into [1, 2), hence the extended floor domain.
    Raises for models whose nominal budget would be negative.
    """
    model.check_block(block)
    budget = len_dual(model, state.width, block)  # validates the model
    return floor_bits(f_i_low(state, model, block) + rat(1, 1 << budget), budget)


def _fence_effective(state: IntervalState, model: SourceModel, idx: int) -> Rat:
    blocks, probs, cum = _tables(model)
    budget = _budget_effective(state, model, idx)
    y = state.a + state.width * (cum[idx] - probs[idx])
    base, scale = _cell(y, budget)
    return rat(base + 1, scale)


def _slice_bounds(state: IntervalState, model: SourceModel, idx: int) -> tuple[Rat, Rat]:
    blocks, probs, cum = _tables(model)
    w = state.width
    if idx == 0:
        lo = state.a
    else:
        lo = min(_fence_effective(state, model, idx - 1), state.a + w * cum[idx - 1])
    if idx == len(blocks) - 1:
        hi = state.b
    else:
        hi = min(_fence_effective(state, model, idx), state.a + w * cum[idx])
    return lo, hi


def block_interval(state: IntervalState, model: SourceModel, block: str) -> BlockInterval:
    """Exact slice of r values that make the encoder emit ``block``."""
    model.check_block(block)
    lo, hi = _slice_bounds(state, model, _gray_rank(block))
    return BlockInterval(lo, hi)


def state_update(state: IntervalState, model: SourceModel, block: str) -> IntervalState:
    """Next interval after emitting ``block``: its slice, renormalized.

    The slice sits inside one dyadic cell at the block's budget; the
    update subtracts the cell base and scales by 2**budget.  Subtracting
    the shared base (rather than taking per-endpoint bit residues)
    keeps an endpoint that lands exactly on the next cell boundary at 1
    instead of wrapping to 0.
    """
    model.check_block(block)
    idx = _gray_rank(block)
    new_state, _, _ = _apply_block(state, model, idx)
    return new_state


def _apply_block(
    state: IntervalState, model: SourceModel, idx: int
) -> tuple[IntervalState, int, int]:
    """Shared step: returns (next state, budget, consumed-bits integer)."""
    blocks, probs, cum = _tables(model)
    budget = _budget_effective(state, model, idx)
    y = state.a + state.width * (cum[idx] - probs[idx])
    base_num, scale = _cell(y, budget)
    lo, hi = _slice_bounds(state, model, idx)
    # every slice is strictly nonempty: the fence sits strictly above
    # F_I(x-1) and blocks have positive probability
    base = rat(base_num, scale)
    new_a = (lo - base) * scale
    new_b = (hi - base) * scale
    if not (0 <= new_a < new_b <= 1):
        raise AssertionError(
            f"interval update escaped [0,1]: [{new_a}, {new_b}) from block {blocks[idx]}"
        )
    return IntervalState(new_a, new_b), budget, base_num


@dataclass(frozen=True)
class DualEncodeResult:
    blocks: tuple[str, ...]
    consumed_bits: int


def _default_budget(msg_len: int) -> int:
    return 64 + 16 * msg_len


def encode(
    model: SourceModel, message: str, block_budget: int | None = None
) -> DualEncodeResult:
    """Map message bits onto blocks until all bits are consumed.

    The message is padded with zeros on the right, exactly as if the
    input continued with an all-zero tail; encoding stops once the
    blocks emitted so far account for at least ``len(message)`` bits.
    Blocks with a zero budget consume nothing and are legal, so a block
    cap (``block_budget``) guards against runaway degenerate loops.
    """
    if message.strip("01"):
        raise DomainError("message must consist of 0/1 characters")
    blocks_t, _, cum = _tables(model)
    top = len(blocks_t) - 1
    cap = _default_budget(len(message)) if block_budget is None else block_budget
    cursor = BitCursor(message)
    state = INITIAL_STATE
    out: list[str] = []
    consumed = 0
    while consumed < len(message):
        if len(out) >= cap:
            raise BudgetError(
                f"block budget {cap} exhausted with {len(message) - consumed} bits left"
            )
        a, w = state.a, state.width
        # invert the mapped CDF on the remaining bits: first block with F_I > r
        lo_i, hi_i = 0, top
        while lo_i < hi_i:
            mid = (lo_i + hi_i) // 2
            if cursor.compare(a + w * cum[mid]) < 0:
                hi_i = mid
            else:
                lo_i = mid + 1
        idx = lo_i
        if idx != top and cursor.compare(_fence_effective(state, model, idx)) >= 0:
            idx += 1  # r sits at/past the fence: the next block owns it
        state, budget, _ = _apply_block(state, model, idx)
        out.append(blocks_t[idx])
        consumed += budget
        cursor.advance(budget)
    return DualEncodeResult(tuple(out), consumed)


@lru_cache(maxsize=128)
def _meta(model: SourceModel):
    """Per-model arrays for the sweep: probabilities, CDF, popcounts."""
    blocks, probs, cum = _tables(model)
    ones = tuple(b.count("1") for b in blocks)
    return blocks, probs, cum, ones


@dataclass(frozen=True)
class SliceRow:
    """One row of a full-state sweep: a block's slice and bit budget."""

    block: str
    lo: Rat
    hi: Rat
    budget: int


def slice_table(state: IntervalState, model: SourceModel) -> list[SliceRow]:
    """All block slices of a state in one pass.

    Computes each fence once and telescopes the slice boundaries, so a
    whole state costs O(2**n) rational operations instead of the O(2**n)
    per block of repeated :func:`block_interval` calls.  The rows tile
    [a, b) in order.
    """
    blocks, probs, cum, ones = _meta(model)
    a, b, w = state.a, state.b, state.width
    budget_by_ones = [
        _budget_nominal(model, w, model.p0 ** (model.n - k) * model.p1**k)
        for k in range(model.n + 1)
    ]
    top = len(blocks) - 1
    rows: list[SliceRow] = []
    prev = a
    for i, block in enumerate(blocks):
        budget = budget_by_ones[ones[i]]
        y = a + w * (cum[i] - probs[i])
        if i == top:
            while budget > 0:
                base_num, scale = _cell(y, budget)
                if rat(base_num + 1, scale) >= b:
                    break
                budget -= 1
            hi = b
        else:
            base_num, scale = _cell(y, budget)
            fence = rat(base_num + 1, scale)
            f_inc = a + w * cum[i]
            hi = fence if fence < f_inc else f_inc
        rows.append(SliceRow(block, prev, hi, budget))
        prev = hi
    return rows


def children(state: IntervalState, model: SourceModel) -> dict[str, tuple[IntervalState, Rat, int]]:
    """Reachable successor states: block -> (next state, slice width, budget)."""
    blocks, probs, cum, ones = _meta(model)
    out: dict[str, tuple[IntervalState, Rat, int]] = {}
    a, w = state.a, state.width
    for i, row in enumerate(slice_table(state, model)):
        if row.hi <= row.lo:
            continue
        y = a + w * (cum[i] - probs[i])
        base_num, scale = _cell(y, row.budget)
        base = rat(base_num, scale)
        child = IntervalState((row.lo - base) * scale, (row.hi - base) * scale)
        out[row.block] = (child, row.hi - row.lo, row.budget)
    return out


def decode(model: SourceModel, blocks: Iterable[str] | Sequence[str]) -> str:
    """Reproduce the bits the encoder consumed for this block sequence.

    Every block sequence decodes to some bit string (all slices are
    strictly nonempty at every state); stream integrity is the
    container's business.  Output length is the total of the per-block
    budgets; the caller truncates to the original message length.
    """
    state = INITIAL_STATE
    pieces: list[str] = []
    for block in blocks:
        model.check_block(block)
        idx = _gray_rank(block)
        state, budget, base_num = _apply_block(state, model, idx)
        pieces.append(format(base_num, f"0{budget}b") if budget else "")
    return "".join(pieces)
