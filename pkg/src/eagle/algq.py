"""Two-part construction: a three-block encryption under derived keys plus an
ordinary cipher encryption of the randomness the keys were derived from.

``p`` random words ``X`` are compressed into ``Y1, Y2, Y3``.  Part one
encodes ``(M1, M2, M3)`` with codec key ``(Y2, Y3)``, masking the state with
``Y1`` between the first and second block.  Part two is the cipher
encryption of ``X`` under the real key.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .bitword import Word, check_width, pack_words, packed_size, unpack_words
from .cipher import CiphertextContainer, decrypt_blocks, encrypt
from .codec import CodecKey, decode_int, encode_int
from .errors import ContractError, FormatError

MAGIC = b"EGLQ"
VERSION = 1
_HEADER = struct.Struct(">4sBBI")

Compressor = Callable[[Sequence[int], int], int]


def transpose_row(i: int, xs: Sequence[int], width: int) -> int:
    """Row ``i`` of the bit matrix whose columns are ``xs``: bit j is bit i of X_j."""
    if len(xs) != width:
        raise ContractError(
            f"transpose compressor needs p == L, got p={len(xs)}, L={width}"
        )
    shift = width - i
    out = 0
    for x in xs:
        out = (out << 1) | ((x >> shift) & 1)
    return out


def transpose_compressor(i: int, xs: Sequence[Word]) -> Word:
    if i not in (1, 2, 3):
        raise ContractError(f"compressor index must be 1, 2 or 3, got {i!r}")
    if not xs:
        raise ContractError("empty X")
    width = xs[0].width
    return Word(transpose_row(i, [x.value for x in xs], width), width)


def _default_compressors() -> tuple[Compressor, Compressor, Compressor]:
    return tuple(
        (lambda xs, width, i=i: transpose_row(i, xs, width)) for i in (1, 2, 3)
    )


@dataclass(frozen=True)
class QParams:
    p: int
    compressors: tuple[Compressor, Compressor, Compressor] = field(
        default_factory=_default_compressors, compare=False
    )
    name: str = "transpose"

    def __post_init__(self):
        if self.p < 2:
            raise ContractError(f"p must be > 1, got {self.p}")

    def check(self, width: int) -> None:
        if self.name == "transpose" and self.p != width:
            raise ContractError(
                f"transpose compressors need p == L, got p={self.p}, L={width}"
            )

    def derive(self, xs: Sequence[int], width: int) -> tuple[int, int, int]:
        """(Y1, Y2, Y3) with Y3's last bit flipped when Y2 ^ Y3 has even weight."""
        y1, y2, y3 = (f(xs, width) for f in self.compressors)
        if not (y2 ^ y3).bit_count() & 1:
            y3 ^= 1
        return y1, y2, y3

    def raw(self, xs: Sequence[int], width: int) -> tuple[int, int, int]:
        """(Y1, Y2, Y3) before the parity repair."""
        return tuple(f(xs, width) for f in self.compressors)


@dataclass(frozen=True)
class QCiphertext:
    part1: tuple[Word, Word, Word, Word]  # C1, C2, C3, S3
    part2: CiphertextContainer

    @property
    def width(self) -> int:
        return self.part2.width

    def to_bytes(self, p: int) -> bytes:
        header = _HEADER.pack(MAGIC, VERSION, self.width.bit_length() - 1, p)
        return header + pack_words(self.part1, self.width) + self.part2.to_bytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> tuple[QCiphertext, int]:
        """Parse a Q container; returns (ciphertext, p)."""
        if len(data) < _HEADER.size:
            raise FormatError(
                f"header: truncated, {len(data)} of {_HEADER.size} bytes present"
            )
        magic, version, wlog, p = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise FormatError(f"magic: expected {MAGIC!r}, got {magic!r}")
        if version != VERSION:
            raise FormatError(f"version: unsupported version {version}")
        if not 2 <= wlog <= 16:
            raise FormatError(f"width_log2: {wlog} out of range")
        width = 1 << wlog
        start = _HEADER.size
        size = packed_size(4, width)
        body = data[start:start + size]
        if len(body) != size:
            raise FormatError(f"part1: truncated, {len(body)} of {size} bytes present")
        part1 = tuple(unpack_words(body, 4, width))
        part2 = CiphertextContainer.from_bytes(data[start + size:])
        if part2.width != width:
            raise FormatError("part2: embedded container width differs from header")
        if part2.plain_bits != p * width:
            raise FormatError(
                f"part2: plain_bits {part2.plain_bits} != p*L = {p * width}"
            )
        return cls(part1, part2), p


def _part1_encrypt(y, s0, m1, m2, m3, width):
    y1, y2, y3 = y
    s1, c1 = encode_int(y2, y3, s0, m1, width)
    s2, c2 = encode_int(y2, y3, s1 ^ y1, m2, width)
    s3, c3 = encode_int(y2, y3, s2, m3, width)
    return c1, c2, c3, s3


def part1_decrypt(y, part1, width) -> tuple[int, int, int]:
    """Invert part one given (Y1, Y2, Y3); returns (M1, M2, M3)."""
    y1, y2, y3 = y
    c1, c2, c3, s3 = part1
    m3, start3 = decode_int(y2, y3, s3, c3, width)
    # block 3 started from S2, whose last bit was recorded as C2's last bit
    s2 = start3 if start3 & 1 == c2 & 1 else start3 ^ ((1 << width) - 1)
    m2, start2 = decode_int(y2, y3, s2, c2, width)
    # block 2 started from S1 ^ Y1, and S1's last bit is C1's last bit
    if start2 & 1 != (c1 ^ y1) & 1:
        start2 ^= (1 << width) - 1
    s1 = start2 ^ y1
    m1, _ = decode_int(y2, y3, s1, c1, width)
    return m1, m2, m3


def q_encrypt(key: CodecKey, m1: Word, m2: Word, params: QParams, rng) -> QCiphertext:
    """Randomness is drawn in the order X_1..X_p, S0, M3, then by the cipher."""
    width = key.width
    for w in (m1, m2):
        if w.width != width:
            raise ContractError(f"width mismatch: key is {width}, block is {w.width}")
    params.check(width)
    xs = [rng.getrandbits(width) for _ in range(params.p)]
    y = params.derive(xs, width)
    s0 = rng.getrandbits(width)
    m3 = rng.getrandbits(width)
    part1 = _part1_encrypt(y, s0, m1.value, m2.value, m3, width)
    x_bits = "".join(format(x, f"0{width}b") for x in xs)
    part2 = encrypt(key, x_bits, rng)
    return QCiphertext(tuple(Word(v, width) for v in part1), part2)


def recover_x(key: CodecKey, qc: QCiphertext, params: QParams) -> list[int]:
    if qc.part2.plain_bits != params.p * key.width:
        raise FormatError(
            f"part2: plain_bits {qc.part2.plain_bits} != p*L = {params.p * key.width}"
        )
    return decrypt_blocks(key, qc.part2)[:params.p]


def q_decrypt(key: CodecKey, qc: QCiphertext, params: QParams) -> tuple[Word, Word]:
    width = key.width
    check_width(width)
    params.check(width)
    xs = recover_x(key, qc, params)
    y = params.derive(xs, width)
    m1, m2, _ = part1_decrypt(y, [w.value for w in qc.part1], width)
    return Word(m1, width), Word(m2, width)
