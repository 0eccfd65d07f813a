"""Bit-state chaining codec.

Each message bit ``b`` advances the state as ``S <- w_b ^ S ^ rotl(S, 1)`` and
the last bit of every intermediate state is recorded as one output bit.
Decoding walks backwards: only one of ``S ^ w0``, ``S ^ w1`` has even parity
(the key words differ in an odd number of places), that choice is the message
bit, and the predecessor state is one of the two complementary solutions of
``X ^ rotl(X, 1) = S ^ w_b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .bitword import Word, check_width, mask, solve_twist_int, twist_int
from .errors import ContractError, MalformedInput


@dataclass(frozen=True, slots=True)
class CodecKey:
    w0: Word
    w1: Word

    def __post_init__(self):
        if self.w0.width != self.w1.width:
            raise ContractError(
                f"key width mismatch: {self.w0.width} vs {self.w1.width}"
            )
        if not (self.w0.value ^ self.w1.value).bit_count() & 1:
            raise ContractError("key words must differ in an odd number of bits")

    @property
    def width(self) -> int:
        return self.w0.width

    @classmethod
    def from_ints(cls, w0: int, w1: int, width: int) -> CodecKey:
        return cls(Word(w0, width), Word(w1, width))

    def __str__(self) -> str:
        return f"({self.w0}, {self.w1})"


class BlockResult(NamedTuple):
    end_state: Word
    stream: Word


class TraceStep(NamedTuple):
    index: int
    bit: int
    state: Word
    out: int


def _check(key: CodecKey, *words: Word) -> int:
    width = key.width
    for w in words:
        if not isinstance(w, Word):
            raise ContractError(f"expected Word, got {type(w).__name__}")
        if w.width != width:
            raise ContractError(f"width mismatch: key is {width}, word is {w.width}")
    return width


# Integer kernels shared with the analysis workbench.

def encode_int(w0: int, w1: int, s: int, m: int, width: int) -> tuple[int, int]:
    """Encode block ``m`` from state ``s``; returns (end_state, stream)."""
    full = mask(width)
    top = width - 1
    c = 0
    for i in range(top, -1, -1):
        s = (w1 if (m >> i) & 1 else w0) ^ s ^ (((s << 1) | (s >> top)) & full)
        c = (c << 1) | (s & 1)
    return s, c


def decode_int(w0: int, w1: int, s: int, c: int, width: int) -> tuple[int, int]:
    """Invert :func:`encode_int`; returns (message, start_state with last bit 0).

    The caller guarantees ``s & 1 == c & 1``.
    """
    m = 0
    for i in range(width):
        # parity(s ^ w0) even means w0 was used
        if (s ^ w0).bit_count() & 1:
            x, t = 1, s ^ w1
        else:
            x, t = 0, s ^ w0
        pair = solve_twist_int(t, width)
        if pair is None:
            raise AssertionError("both key words fail the parity test")
        m |= x << i
        # the predecessor's last bit was recorded as the previous stream bit;
        # at the first step there is none, so keep the canonical solution
        s = pair[(c >> (i + 1)) & 1] if i < width - 1 else pair[0]
    return m, s


def encode_bit(key: CodecKey, state: Word, bit: int) -> Word:
    width = _check(key, state)
    if bit not in (0, 1):
        raise ContractError(f"bit must be 0 or 1, got {bit!r}")
    w = key.w1 if bit else key.w0
    return Word(w.value ^ twist_int(state.value, width), width)


def solve_state(t: Word) -> tuple[Word, Word] | None:
    """The two states ``s`` with ``s ^ rotl(s, 1) == t``, last-bit-0 one first.

    None when ``t`` has odd parity.
    """
    pair = solve_twist_int(t.value, t.width)
    if pair is None:
        return None
    return Word(pair[0], t.width), Word(pair[1], t.width)


def encode_block(key: CodecKey, s0: Word, m: Word) -> BlockResult:
    width = _check(key, s0, m)
    s, c = encode_int(key.w0.value, key.w1.value, s0.value, m.value, width)
    return BlockResult(Word(s, width), Word(c, width))


def decode_block(key: CodecKey, s_end: Word, c: Word) -> tuple[Word, Word]:
    """Recover ``(m, s_start)`` from an end state and output stream.

    ``s_start`` is the member of the complementary start-state pair whose last
    bit is 0; both members encode ``m`` to the same output.
    """
    width = _check(key, s_end, c)
    if s_end.last != c.last:
        raise MalformedInput(
            "end state and stream disagree in their last bit; "
            "no encoder run produces this pair"
        )
    m, s = decode_int(key.w0.value, key.w1.value, s_end.value, c.value, width)
    return Word(m, width), Word(s, width)


# Short aliases in the notation the algorithms are usually written in.
xi = encode_block
zeta = decode_block


def trace_block(key: CodecKey, s0: Word, m: Word) -> list[TraceStep]:
    """Per-bit states of an encoding run: (i, M[i], S_i, C[i]) for i = 1..L."""
    width = _check(key, s0, m)
    steps = []
    s = s0
    for i in range(1, width + 1):
        s = encode_bit(key, s, m[i])
        steps.append(TraceStep(i, m[i], s, s.last))
    return steps


# Vectorised encoder for the statistical workbench (widths up to 64).

def encode_many(w0, w1, s0, m, width: int):
    """Element-wise :func:`encode_int` over broadcastable uint64 arrays."""
    check_width(width)
    if width > 64:
        raise ContractError("vectorised encoder supports widths up to 64")
    w0, w1, s, m = (np.asarray(a, dtype=np.uint64) for a in (w0, w1, s0, m))
    s, m = np.broadcast_arrays(s, m)
    s = s.copy()
    full = np.uint64(mask(width))
    one = np.uint64(1)
    top = np.uint64(width - 1)
    diff = w0 ^ w1
    c = np.zeros(np.broadcast_shapes(s.shape, w0.shape, w1.shape), dtype=np.uint64)
    for i in range(width - 1, -1, -1):
        b = (m >> np.uint64(i)) & one
        # w0 ^ (b * (w0 ^ w1)) selects w_b without a branch
        s = w0 ^ (b * diff) ^ s ^ (((s << one) | (s >> top)) & full)
        c = (c << one) | (s & one)
    return s, c
