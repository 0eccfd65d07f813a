"""Randomized block cipher built on the codec, plus its binary container.

A message is cut into ``T`` blocks of ``L`` bits (the tail is filled with
random bits), one random cover block is appended, and the blocks are encoded
in a chain that starts from a random state.  After every block the state is
reset to ``S_i ^ C_i``.  The ciphertext is ``C_1 .. C_{T+1}`` followed by the
final reset state.

Random sources only need a ``getrandbits(k)`` method; ``random.Random`` is the
usual choice.  Draw order in :func:`encrypt` is: tail fill (if any), initial
state, cover block.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .bitword import Word, check_width, pack_words, packed_size, unpack_words
from .codec import CodecKey, decode_int, encode_int
from .errors import ContractError, FormatError

MAGIC = b"EGL1"
VERSION = 1
_HEADER = struct.Struct(">4sBBIQ")
HEADER_SIZE = _HEADER.size

EagleKey = CodecKey


def keygen(rng, width: int) -> CodecKey:
    """Draw a key: ``2L`` random bits, first half ``w0``, second half ``w1``.

    If the halves differ in an even number of bits the last bit of ``w1`` is
    flipped, so every one of the ``2**(2L-1)`` valid keys is equally likely.
    """
    check_width(width)
    raw = rng.getrandbits(2 * width)
    return key_from_raw(raw, width)


def key_from_raw(raw: int, width: int) -> CodecKey:
    w0 = raw >> width
    w1 = raw & ((1 << width) - 1)
    if not (w0 ^ w1).bit_count() & 1:
        w1 ^= 1
    return CodecKey.from_ints(w0, w1, width)


@dataclass(frozen=True)
class CiphertextContainer:
    width: int
    plain_bits: int
    blocks: tuple[Word, ...]  # C_1 .. C_{T+1}
    final_state: Word  # reset state after the cover block

    def __post_init__(self):
        check_width(self.width)
        t = len(self.blocks) - 1
        if t < 1:
            raise FormatError("block_count: need at least one data block plus cover")
        if not (t - 1) * self.width < self.plain_bits <= t * self.width:
            raise FormatError(
                f"plain_bits: {self.plain_bits} inconsistent with "
                f"{t} data blocks of {self.width} bits"
            )
        for w in (*self.blocks, self.final_state):
            if w.width != self.width:
                raise FormatError("body: word width differs from header width")

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def to_bytes(self) -> bytes:
        header = _HEADER.pack(
            MAGIC,
            VERSION,
            self.width.bit_length() - 1,
            self.block_count,
            self.plain_bits,
        )
        return header + pack_words((*self.blocks, self.final_state), self.width)

    @classmethod
    def from_bytes(cls, data: bytes) -> CiphertextContainer:
        container, rest = cls.read(data)
        if rest:
            raise FormatError(f"body: {len(rest)} trailing bytes after container")
        return container

    @classmethod
    def read(cls, data: bytes) -> tuple[CiphertextContainer, bytes]:
        """Parse one container from the front of ``data``; return the remainder."""
        if len(data) < HEADER_SIZE:
            raise FormatError(
                f"header: truncated, {len(data)} of {HEADER_SIZE} bytes present"
            )
        magic, version, wlog, count, plain_bits = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise FormatError(f"magic: expected {MAGIC!r}, got {magic!r}")
        if version != VERSION:
            raise FormatError(f"version: unsupported version {version}")
        if not 2 <= wlog <= 16:
            raise FormatError(f"width_log2: {wlog} out of range")
        width = 1 << wlog
        if count < 2:
            raise FormatError(f"block_count: {count} is below the minimum of 2")
        size = packed_size(count + 1, width)
        body = data[HEADER_SIZE:HEADER_SIZE + size]
        if len(body) != size:
            raise FormatError(
                f"body: truncated, {len(body)} of {size} bytes present"
            )
        words = unpack_words(body, count + 1, width)
        container = cls(width, plain_bits, tuple(words[:-1]), words[-1])
        return container, data[HEADER_SIZE + size:]


def _split(bits: str, width: int, rng) -> list[int]:
    blocks = [int(bits[i:i + width], 2) for i in range(0, len(bits) - width + 1, width)]
    tail = len(bits) % width
    if tail:
        fill = width - tail
        blocks.append((int(bits[-tail:], 2) << fill) | rng.getrandbits(fill))
    return blocks


def _encrypt_chain(key: CodecKey, plaintext: str, rng):
    if not plaintext:
        raise ContractError("plaintext must not be empty")
    if set(plaintext) - {"0", "1"}:
        raise ContractError("plaintext must be a string of '0' and '1'")
    width = key.width
    blocks = _split(plaintext, width, rng)
    state = rng.getrandbits(width)
    blocks.append(rng.getrandbits(width))
    w0, w1 = key.w0.value, key.w1.value
    out, resets = [], []
    for m in blocks:
        s, c = encode_int(w0, w1, state, m, width)
        out.append(Word(c, width))
        state = s ^ c
        resets.append(Word(state, width))
    ct = CiphertextContainer(width, len(plaintext), tuple(out), resets[-1])
    return ct, resets


def encrypt(key: CodecKey, plaintext: str, rng) -> CiphertextContainer:
    """Encrypt a '0'/'1' string.  Output is randomized through ``rng``."""
    return _encrypt_chain(key, plaintext, rng)[0]


def encrypt_traced(key: CodecKey, plaintext: str, rng) -> tuple[CiphertextContainer, list[Word]]:
    """Like :func:`encrypt`, also returning the reset state after every block."""
    return _encrypt_chain(key, plaintext, rng)


def decrypt_blocks(key: CodecKey, ct: CiphertextContainer) -> list[int]:
    """All decoded blocks M_1 .. M_{T+1} as integers, cover block included."""
    width = key.width
    if ct.width != width:
        raise FormatError(
            f"width_log2: container width {ct.width} does not match key width {width}"
        )
    w0, w1 = key.w0.value, key.w1.value
    blocks = [c.value for c in ct.blocks]
    state = ct.final_state.value ^ blocks[-1]
    out = []
    for i in range(len(blocks) - 1, -1, -1):
        m, start = decode_int(w0, w1, state, blocks[i], width)
        out.append(m)
        if i:
            # the true start is a reset state S_{i-1} ^ C_{i-1}, whose last bit
            # is 0, so the canonical candidate is exact
            state = start ^ blocks[i - 1]
    out.reverse()
    return out


def decrypt(key: CodecKey, ct: CiphertextContainer) -> str:
    blocks = decrypt_blocks(key, ct)[:-1]
    width = key.width
    bits = "".join(format(m, f"0{width}b") for m in blocks)
    return bits[:ct.plain_bits]


def encrypt_bytes(key: CodecKey, data: bytes, rng) -> CiphertextContainer:
    return encrypt(key, bytes_to_bits(data), rng)


def decrypt_bytes(key: CodecKey, ct: CiphertextContainer) -> bytes:
    return bits_to_bytes(decrypt(key, ct))


def bytes_to_bits(data: bytes) -> str:
    return "".join(format(b, "08b") for b in data)


def bits_to_bytes(bits: str) -> bytes:
    """Pack a bit string, zero-padding the final byte on the right."""
    pad = -len(bits) % 8
    bits += "0" * pad
    return int(bits, 2).to_bytes(len(bits) // 8, "big") if bits else b""
