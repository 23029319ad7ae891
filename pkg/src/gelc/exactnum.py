"""Exact rational arithmetic primitives and a lazy bit cursor.

Every probability, CDF value and interval endpoint in this package is an
exact rational; nothing in any codec path ever touches floating point.
The rational backend is gmpy2's ``mpq`` when available (much faster on
big operands) and ``fractions.Fraction`` otherwise.  Both expose
``.numerator``/``.denominator`` and exact arithmetic, which is all the
code relies on.
"""

from __future__ import annotations

from .errors import DomainError

try:
    from gmpy2 import mpq as Rat

    RAT_BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rat

    RAT_BACKEND = "fractions"

__all__ = [
    "Rat",
    "RAT_BACKEND",
    "rat",
    "LESS",
    "EQUAL",
    "GREATER",
    "floor_log2",
    "ceil_log2",
    "floor_bits",
    "residue_bits",
    "dyadic_to_bits",
    "bits_to_rat",
    "BitCursor",
    "cursor_compare",
]

LESS = -1
EQUAL = 0
GREATER = 1


def rat(numerator, denominator=1) -> Rat:
    """Construct an exact rational in lowest terms."""
    return Rat(numerator, denominator)


def _pow2_le(num, den, k: int) -> bool:
    # 2**k <= num/den, for positive num, den
    if k >= 0:
        return (den << k) <= num
    return den <= (num << -k)


def floor_log2(q) -> int:
    """Largest integer k with 2**k <= q, for a positive rational q.

    Computed from integer bit lengths; no floating point, so dyadic
    arguments land exactly on their tie.
    """
    num, den = q.numerator, q.denominator
    if num <= 0:
        raise DomainError("floor_log2 requires a positive argument")
    k = num.bit_length() - den.bit_length()
    if not _pow2_le(num, den, k):
        k -= 1
    while _pow2_le(num, den, k + 1):
        k += 1
    return k


def ceil_log2(q) -> int:
    """Smallest integer k with 2**k >= q, for a positive rational q."""
    f = floor_log2(q)
    num, den = q.numerator, q.denominator
    exact = (den << f) == num if f >= 0 else den == (num << -f)
    return f if exact else f + 1


def floor_bits(r, l_bits: int):
    """Truncate r in [0, 2) to its first ``l_bits`` fractional bits.

    Returns floor(2**l * r) / 2**l.  The domain extends beyond [0, 1)
    because fence values of the dual codec may reach into [1, 2).
    """
    if l_bits < 0:
        raise DomainError("bit count must be nonnegative")
    num, den = r.numerator, r.denominator
    if num < 0 or num >= 2 * den:
        raise DomainError(f"floor_bits argument {r!r} outside [0, 2)")
    return Rat((num << l_bits) // den, 1 << l_bits)


def residue_bits(r, l_bits: int):
    """Return 2**l * r - floor(2**l * r): the tail of r past l bits."""
    if l_bits < 0:
        raise DomainError("bit count must be nonnegative")
    num, den = r.numerator, r.denominator
    if num < 0 or num >= den:
        raise DomainError(f"residue_bits argument {r!r} outside [0, 1)")
    scaled = num << l_bits
    return Rat(scaled - (scaled // den) * den, den)


def dyadic_to_bits(d, l_bits: int) -> str:
    """Render a dyadic rational k/2**l, 0 <= k < 2**l, as l binary digits."""
    if l_bits < 0:
        raise DomainError("bit count must be nonnegative")
    num, den = d.numerator, d.denominator
    if num < 0:
        raise DomainError("dyadic value must be nonnegative")
    scale = 1 << l_bits
    if scale % den != 0:
        raise DomainError(f"{d!r} is not dyadic with {l_bits} fractional bits")
    k = num * (scale // den)
    if k >= scale:
        raise DomainError(f"{d!r} does not lie in [0, 1) at {l_bits} bits")
    return format(k, f"0{l_bits}b") if l_bits else ""


def bits_to_rat(bits: str):
    """Exact value of ``0.bits`` as a rational."""
    if not bits:
        return Rat(0)
    return Rat(int(bits, 2), 1 << len(bits))


def compare_tail(bits: str, start: int, num, den) -> int:
    """Compare r = 0.bits[start:] (zero-padded to infinity) with num/den.

    Returns LESS/EQUAL/GREATER.  Only finitely many bits are examined:
    the window over the remaining bits grows geometrically until the
    comparison is decided, and the zero tail makes r rational, so a
    decision always exists.
    """
    if num >= den:
        return LESS  # r < 1 <= target (the padded tail is eventually 0)
    if num < 0:
        return GREATER
    n_rem = len(bits) - start
    if n_rem <= 0:
        return EQUAL if num == 0 else LESS
    if num == 0:
        return GREATER if "1" in bits[start:] else EQUAL
    width = n_rem if n_rem < 64 else 64
    while True:
        window = int(bits[start : start + width], 2)
        lhs = den * window
        rhs = num << width
        if lhs > rhs:
            return GREATER  # window/2**W alone already exceeds the target
        if lhs == rhs:
            return GREATER if "1" in bits[start + width :] else EQUAL
        if rhs - lhs >= den:
            return LESS  # target >= (window+1)/2**W > r
        if width >= n_rem:
            return LESS  # r is exactly window/2**W < target
        width = width * 2 if width * 2 < n_rem else n_rem


class BitCursor:
    """Read position over a finite bit string with a zero-padded tail.

    Models an infinite input whose bits past the end of the message are
    all zero.  Comparisons peek (they never move the position); only
    :meth:`advance`/:meth:`read` consume bits.
    """

    __slots__ = ("bits", "position", "padded_reads")

    def __init__(self, bits: str, position: int = 0):
        if position < 0 or position > len(bits):
            raise DomainError("cursor position outside the bit sequence")
        self.bits = bits
        self.position = position
        self.padded_reads = 0

    @property
    def consumed(self) -> int:
        """Total bits consumed, including zero padding."""
        return self.position + self.padded_reads

    @property
    def remaining(self) -> int:
        """Actual (non-padding) bits left."""
        return len(self.bits) - self.position

    def compare(self, target) -> int:
        """Compare the real number 0.<remaining bits><zeros...> with target."""
        return compare_tail(self.bits, self.position, target.numerator, target.denominator)

    def advance(self, count: int) -> None:
        if count < 0:
            raise DomainError("cannot advance backwards")
        take = min(count, self.remaining)
        self.position += take
        self.padded_reads += count - take

    def read(self, count: int) -> str:
        """Consume ``count`` bits, zero-padded past the end."""
        out = self.bits[self.position : self.position + count]
        self.advance(count)
        return out + "0" * (count - len(out))


def cursor_compare(cursor: BitCursor, target) -> int:
    """Ordering of the cursor's remaining value versus a rational target."""
    return cursor.compare(target)
