"""Fixed binary container for encoded streams.

Layout (all integers big-endian):

    magic   4 bytes  b"GELC"
    version u8       1
    codec   u8       0 = sfe, 1 = sfeg, 2 = dual
    n       u16      block length
    p0      u32+u32  numerator, denominator
    alpha   u32+u32  numerator, denominator (zero/zero for sfe, sfeg)
    sfe/sfeg: block_count u64
    dual:     msg_len u64, block_count u64
    payload: bits packed most-significant-bit first, zero-padded to a
             byte boundary.  For sfe/sfeg the payload is the codeword
             stream; for dual it is the emitted blocks, n bits each.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .errors import DecodeError, DomainError
from .exactnum import Rat, rat

__all__ = ["MAGIC", "CODEC_IDS", "Container", "pack_bits", "unpack_bits"]

MAGIC = b"GELC"
VERSION = 1
CODEC_IDS = {"sfe": 0, "sfeg": 1, "dual": 2}
_CODEC_NAMES = {v: k for k, v in CODEC_IDS.items()}
_HEADER = struct.Struct(">4sBBHIIII")


def pack_bits(bits: str) -> bytes:
    """Pack a 0/1 string MSB-first, zero-padded to a whole byte."""
    if bits.strip("01"):
        raise DomainError("payload must consist of 0/1 characters")
    if not bits:
        return b""
    padded = bits + "0" * (-len(bits) % 8)
    return int(padded, 2).to_bytes(len(padded) // 8, "big")


def unpack_bits(data: bytes, bit_count: int) -> str:
    """First ``bit_count`` bits of packed data, MSB-first."""
    if bit_count > 8 * len(data):
        raise DecodeError("truncated payload: fewer bits than declared")
    if not data:
        return ""
    return format(int.from_bytes(data, "big"), f"0{8 * len(data)}b")[:bit_count]


def _u32_rat(q: Rat) -> tuple[int, int]:
    num, den = int(q.numerator), int(q.denominator)
    if not (0 <= num < 2**32 and 0 < den < 2**32):
        raise DomainError(f"rational {q} does not fit the u32 header fields")
    return num, den


@dataclass(frozen=True)
class Container:
    """Parsed container: parameters plus the raw payload bit string."""

    codec: str
    n: int
    p0: Rat
    alpha_hat: Rat | None
    block_count: int
    msg_len: int  # 0 for sfe/sfeg
    payload_bits: str

    def to_bytes(self) -> bytes:
        if self.codec not in CODEC_IDS:
            raise DomainError(f"unknown codec {self.codec!r}")
        p0n, p0d = _u32_rat(self.p0)
        if self.codec == "dual":
            if self.alpha_hat is None:
                raise DomainError("dual containers need alpha_hat")
            ahn, ahd = _u32_rat(self.alpha_hat)
        else:
            ahn = ahd = 0
        head = _HEADER.pack(MAGIC, VERSION, CODEC_IDS[self.codec], self.n, p0n, p0d, ahn, ahd)
        if self.codec == "dual":
            head += struct.pack(">QQ", self.msg_len, self.block_count)
        else:
            head += struct.pack(">Q", self.block_count)
        return head + pack_bits(self.payload_bits)

    @classmethod
    def from_bytes(cls, data: bytes) -> "Container":
        if len(data) < _HEADER.size:
            raise DecodeError("container shorter than the fixed header")
        magic, version, codec_id, n, p0n, p0d, ahn, ahd = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise DecodeError(f"bad magic {magic!r}")
        if version != VERSION:
            raise DecodeError(f"unsupported container version {version}")
        if codec_id not in _CODEC_NAMES:
            raise DecodeError(f"unknown codec id {codec_id}")
        codec = _CODEC_NAMES[codec_id]
        offset = _HEADER.size
        if codec == "dual":
            if len(data) < offset + 16:
                raise DecodeError("container truncated in the length fields")
            msg_len, block_count = struct.unpack_from(">QQ", data, offset)
            offset += 16
            payload_bits_needed = block_count * n
            alpha = rat(ahn, ahd) if ahd else None
        else:
            if len(data) < offset + 8:
                raise DecodeError("container truncated in the length fields")
            (block_count,) = struct.unpack_from(">Q", data, offset)
            offset += 8
            msg_len = 0
            payload_bits_needed = 8 * len(data[offset:])  # self-delimiting stream
            alpha = None
        if p0d == 0:
            raise DecodeError("zero denominator in p0 field")
        payload = unpack_bits(data[offset:], payload_bits_needed)
        return cls(
            codec=codec,
            n=n,
            p0=rat(p0n, p0d),
            alpha_hat=alpha,
            block_count=block_count,
            msg_len=msg_len,
            payload_bits=payload,
        )
