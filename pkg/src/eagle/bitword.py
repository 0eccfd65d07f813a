"""Fixed-width bit strings.

Bit numbering is 1-based from the left: bit 1 is the most significant bit and
bit ``width`` (the "last bit") is the least significant one.  Serialized
words are big-endian in bit order, so bit 1 lands in the top bit of the first
byte.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractError


def check_width(width: int) -> int:
    if not isinstance(width, int) or width < 4 or width & (width - 1):
        raise ContractError(f"width must be a power of two >= 4, got {width!r}")
    return width


def mask(width: int) -> int:
    return (1 << width) - 1


# Integer kernels.  These skip validation and are what the hot loops use.

def rotl_int(x: int, n: int, width: int) -> int:
    n %= width
    return ((x << n) | (x >> (width - n))) & mask(width)


def parity_int(x: int) -> int:
    return x.bit_count() & 1


def twist_int(x: int, width: int) -> int:
    """x XOR rotl(x, 1)."""
    return x ^ (((x << 1) | (x >> (width - 1))) & mask(width))


def solve_twist_int(t: int, width: int) -> tuple[int, int] | None:
    """Both preimages of ``t`` under :func:`twist_int`, last-bit-0 first.

    Returns None when ``t`` has odd parity (no preimage exists).
    """
    if t.bit_count() & 1:
        return None
    # s[1] = 0 and s[j+1] = s[j] ^ t[j], i.e. s is the exclusive prefix XOR of
    # t taken from the left; the log-step scan computes the inclusive one.
    p = t
    k = 1
    while k < width:
        p ^= p >> k
        k <<= 1
    s = p >> 1
    other = s ^ mask(width)
    return (s, other) if not s & 1 else (other, s)


@dataclass(frozen=True, slots=True)
class Word:
    value: int
    width: int

    def __post_init__(self):
        check_width(self.width)
        if not 0 <= self.value <= mask(self.width):
            raise ContractError(
                f"value {self.value:#x} does not fit in {self.width} bits"
            )

    @classmethod
    def zero(cls, width: int) -> Word:
        return cls(0, width)

    @classmethod
    def from_bits(cls, bits: str) -> Word:
        """Build a word from a '0'/'1' string, bit 1 first."""
        if not bits or set(bits) - {"0", "1"}:
            raise ContractError(f"not a bit string: {bits!r}")
        return cls(int(bits, 2), len(bits))

    @classmethod
    def from_hex(cls, text: str, width: int | None = None) -> Word:
        text = text.strip().lower().removeprefix("0x")
        if width is None:
            width = 4 * len(text)
        if len(text) != width // 4:
            raise ContractError(
                f"expected {width // 4} hex digits for width {width}, got {text!r}"
            )
        try:
            value = int(text, 16)
        except ValueError:
            raise ContractError(f"not a hex word: {text!r}") from None
        return cls(value, width)

    def _same_width(self, other: Word) -> None:
        if not isinstance(other, Word):
            raise ContractError(f"expected Word, got {type(other).__name__}")
        if other.width != self.width:
            raise ContractError(f"width mismatch: {self.width} vs {other.width}")

    def __xor__(self, other: Word) -> Word:
        self._same_width(other)
        return Word(self.value ^ other.value, self.width)

    def __invert__(self) -> Word:
        return Word(self.value ^ mask(self.width), self.width)

    def __len__(self) -> int:
        return self.width

    def __getitem__(self, i: int) -> int:
        """Bit ``i``, 1-indexed from the left."""
        if not 1 <= i <= self.width:
            raise IndexError(f"bit index {i} out of range 1..{self.width}")
        return (self.value >> (self.width - i)) & 1

    @property
    def last(self) -> int:
        return self.value & 1

    def rotl(self, n: int) -> Word:
        """Left cyclic shift by ``n`` positions, 0 <= n < width."""
        if not 0 <= n < self.width:
            raise ContractError(f"shift {n} out of range 0..{self.width - 1}")
        return Word(rotl_int(self.value, n, self.width), self.width)

    def parity(self) -> int:
        return parity_int(self.value)

    def popcount(self) -> int:
        return self.value.bit_count()

    def bits(self) -> str:
        return format(self.value, f"0{self.width}b")

    def hex(self) -> str:
        return format(self.value, f"0{self.width // 4}x")

    def __str__(self) -> str:
        return self.bits()

    def __repr__(self) -> str:
        return f"Word('{self.bits()}')" if self.width <= 16 else f"Word(0x{self.hex()}, {self.width})"


def rotl(w: Word, n: int) -> Word:
    return w.rotl(n)


def parity(w: Word) -> int:
    return w.parity()


def diff_is_odd(a: Word, b: Word) -> bool:
    """True iff ``a`` and ``b`` differ in an odd number of bit positions."""
    return bool((a ^ b).parity())


def pack_words(words, width: int) -> bytes:
    """Concatenate words as one big-endian bit stream, zero-padded to a byte."""
    check_width(width)
    acc = 0
    n = 0
    for w in words:
        if isinstance(w, Word):
            if w.width != width:
                raise ContractError(f"width mismatch: {w.width} vs {width}")
            w = w.value
        acc = (acc << width) | w
        n += width
    pad = -n % 8
    return (acc << pad).to_bytes((n + pad) // 8, "big")


def unpack_words(data: bytes, count: int, width: int) -> list[Word]:
    """Inverse of :func:`pack_words`; ``data`` must be exactly the packed size."""
    n = count * width
    pad = -n % 8
    acc = int.from_bytes(data, "big") >> pad
    m = mask(width)
    return [
        Word((acc >> (width * (count - 1 - i))) & m, width) for i in range(count)
    ]


def packed_size(count: int, width: int) -> int:
    return (count * width + 7) // 8
