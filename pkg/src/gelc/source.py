"""Binary i.i.d. source model and the codeword-length functions."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, ModelError
from .exactnum import Rat, rat, floor_log2, ceil_log2

__all__ = ["SourceModel", "prob", "len_sfe", "len_sfeg", "len_dual"]


@dataclass(frozen=True)
class SourceModel:
    """A biased binary memoryless source cut into blocks of n bits.

    p0 is the probability of a 0 bit and must differ from 1/2 (the gap
    ratio rho would otherwise be 1 and the shortened length functions
    degenerate).  ``alpha_hat`` tunes the dual codec's bit budgets; it
    defaults to rho, the tightest admissible value.
    """

    p0: Rat
    n: int
    alpha_hat: Rat = field(default=None)

    def __post_init__(self):
        p0 = rat(self.p0)
        object.__setattr__(self, "p0", p0)
        if not (0 < p0 < 1):
            raise ModelError(f"p0 must lie in (0, 1), got {p0}")
        if 2 * p0 == 1:
            raise ModelError("p0 = 1/2 is not supported (symmetric source)")
        if self.n < 1:
            raise ModelError("block length must be at least 1")
        if self.alpha_hat is None:
            object.__setattr__(self, "alpha_hat", self.rho)
        else:
            object.__setattr__(self, "alpha_hat", rat(self.alpha_hat))
            if self.alpha_hat < self.rho:
                raise ModelError(
                    f"alpha_hat must be at least rho = {self.rho}, got {self.alpha_hat}"
                )

    @property
    def p1(self) -> Rat:
        return 1 - self.p0

    @property
    def rho(self) -> Rat:
        """Probability ratio between the two symbols, always > 1."""
        return max(self.p0 / self.p1, self.p1 / self.p0)

    @property
    def alpha_s(self) -> Rat:
        """Length-shortening factor (1 + rho)/rho of the Gray-order codec."""
        return (1 + self.rho) / self.rho

    @property
    def p_max(self) -> Rat:
        return max(self.p0, self.p1)

    @property
    def dual_safe(self) -> bool:
        """Whether every nominal dual bit budget is nonnegative.

        Holds iff alpha_hat * p_max**n <= 1.  Models failing this still
        encode and decode (budgets clamp at zero) but the command line
        refuses them so that file parameters stay in the nominal regime.
        """
        return self.alpha_hat * self.p_max**self.n <= 1

    def min_dual_blocklen(self) -> int:
        """Smallest block length at which this p0/alpha_hat pair is dual-safe."""
        n = 1
        while self.alpha_hat * self.p_max**n > 1:
            n += 1
        return n

    def check_block(self, block: str) -> None:
        if len(block) != self.n:
            raise DomainError(f"block {block!r} does not have length {self.n}")
        if block.strip("01"):
            raise DomainError(f"block {block!r} contains non-bit characters")


def prob(model: SourceModel, block: str) -> Rat:
    """Exact probability of an n-bit block under the source."""
    model.check_block(block)
    ones = block.count("1")
    return model.p0 ** (model.n - ones) * model.p1**ones


def len_sfe(model: SourceModel, block: str) -> int:
    """Midpoint-code length ceil(-log2 p) + 1 bits."""
    return -floor_log2(prob(model, block)) + 1


def len_sfeg(model: SourceModel, block: str) -> int:
    """Shortened length ceil(-log2(alpha_s * p)) + 1 of the Gray-order codec."""
    return -floor_log2(model.alpha_s * prob(model, block)) + 1


def len_dual(model: SourceModel, width: Rat, block: str) -> int:
    """Nominal dual bit budget floor(-log2(alpha_hat * width * p)).

    ``width`` is the current interval width in (0, 1].  Rejects
    arguments where the budget would be negative; the codec itself
    clamps instead (see dualsfeg).
    """
    t = model.alpha_hat * width * prob(model, block)
    if t > 1:
        raise ModelError(
            f"alpha_hat * width * p = {t} exceeds 1; model not dual-safe "
            f"(needs block length >= {model.min_dual_blocklen()})"
        )
    return -ceil_log2(t)
