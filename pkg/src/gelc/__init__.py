"""Exact-rational block codecs over Gray-ordered binary sources.

Three codecs share one arithmetic core:

* ``sfe``  - baseline Shannon-Fano-Elias midpoint codec (lexicographic).
* ``sfeg`` - the Gray-order variant with shortened codewords.
* ``dualsfeg`` - the variable-to-fixed homophonic mapper that runs the
  Gray-order machinery in reverse to turn uniform bits into blocks that
  closely follow a biased target distribution.

All probabilities, CDFs and interval states are exact rationals; the
``oracle`` module re-derives every headline property by brute force.
"""

from .errors import (
    GelcError,
    DomainError,
    ModelError,
    OrderBoundaryError,
    DecodeError,
    BudgetError,
)
from .exactnum import (
    Rat,
    RAT_BACKEND,
    rat,
    LESS,
    EQUAL,
    GREATER,
    floor_bits,
    residue_bits,
    dyadic_to_bits,
    bits_to_rat,
    BitCursor,
    cursor_compare,
)
from .source import SourceModel, prob, len_sfe, len_sfeg, len_dual
from .grayorder import (
    Order,
    gray_map,
    gray_inv,
    succ,
    pred,
    iter_blocks,
    cdf,
    cdf_low,
    cdf_inv,
)
from .sfe import sfe_encode_block, sfe_encode_stream, sfe_decode_stream, kraft_sum
from .sfeg import sfeg_encode_block, sfeg_encode_stream, sfeg_decode_stream
from .dualsfeg import (
    IntervalState,
    BlockInterval,
    INITIAL_STATE,
    f_i,
    f_i_low,
    fbar,
    len_dual_effective,
    block_interval,
    state_update,
    DualEncodeResult,
    encode,
    decode,
)

__version__ = "0.1.0"
