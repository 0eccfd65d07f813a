import pytest
from hypothesis import given, strategies as st

from eagle.bitword import (
    Word,
    diff_is_odd,
    pack_words,
    parity,
    rotl,
    rotl_int,
    solve_twist_int,
    twist_int,
    unpack_words,
)
from eagle.errors import ContractError

import oracles

W = Word.from_bits


def words_of(width):
    return st.integers(0, (1 << width) - 1).map(lambda v: Word(v, width))


widths = st.sampled_from([4, 8, 16, 32, 64, 128])


def test_rotl_worked_example():
    # seven bits is not a legal Word width, so go through the raw kernel
    assert rotl_int(0b1001101, 2, 7) == 0b0110110


def test_rotl_wraps_top_bit():
    assert rotl(W("10000001"), 1) == W("00000011")


@pytest.mark.parametrize("value", range(16))
def test_rotl_zero_is_identity(value):
    assert rotl(Word(value, 4), 0) == Word(value, 4)


def test_rotl_rejects_full_shift():
    with pytest.raises(ContractError):
        rotl(W("0101"), 4)


@given(st.data(), widths)
def test_rotl_matches_list_rotation(data, width):
    w = data.draw(words_of(width))
    n = data.draw(st.integers(0, width - 1))
    assert rotl(w, n).bits() == oracles.to_str(oracles.rotl(oracles.bits(w.bits()), n))


@given(st.data(), widths)
def test_rotl_composes(data, width):
    w = data.draw(words_of(width))
    a = data.draw(st.integers(0, width - 1))
    b = data.draw(st.integers(0, width - 1))
    assert rotl(rotl(w, a), b) == rotl(w, (a + b) % width)


@pytest.mark.parametrize("text,expected", [("0000", 0), ("1011", 1), ("1111", 0)])
def test_parity(text, expected):
    assert parity(W(text)) == expected


@given(st.data(), widths)
def test_parity_is_linear(data, width):
    a = data.draw(words_of(width))
    b = data.draw(words_of(width))
    assert parity(a ^ b) == parity(a) ^ parity(b)


@pytest.mark.parametrize("width", [4, 8])
def test_twist_lands_in_even_parity(width):
    for v in range(1 << width):
        s = Word(v, width)
        assert parity(s ^ rotl(s, 1)) == 0


@pytest.mark.parametrize("width", [4, 8])
def test_twist_is_two_to_one_onto_complement_pairs(width):
    full = (1 << width) - 1
    pre = {}
    for v in range(1 << width):
        pre.setdefault(twist_int(v, width), []).append(v)
    assert len(pre) == 1 << (width - 1)
    for t, group in pre.items():
        assert len(group) == 2
        assert group[0] ^ group[1] == full
        assert t.bit_count() % 2 == 0


def test_diff_is_odd():
    assert diff_is_odd(W("11010011"), W("10100101"))
    assert not diff_is_odd(W("0110"), W("0110"))
    assert diff_is_odd(W("0000"), W("0001"))


def test_diff_is_odd_width_mismatch():
    with pytest.raises(ContractError):
        diff_is_odd(W("0000"), W("00000000"))


@pytest.mark.parametrize("width", [4, 8])
def test_solver_matches_brute_force(width):
    for t in range(1 << width):
        expected = sorted(
            int(oracles.to_str(s), 2)
            for s in oracles.solve(oracles.bits(format(t, f"0{width}b")))
        )
        got = solve_twist_int(t, width)
        if not expected:
            assert got is None
        else:
            assert got[0] & 1 == 0
            assert sorted(got) == expected


@given(st.data(), widths)
def test_solver_inverts_twist(data, width):
    s = data.draw(words_of(width)).value
    a, b = solve_twist_int(twist_int(s, width), width)
    assert s in (a, b)
    assert a & 1 == 0 and b & 1 == 1


@pytest.mark.parametrize("width", [3, 6, 12, 2, 0])
def test_rejects_bad_widths(width):
    with pytest.raises(ContractError):
        Word(0, width)


def test_value_must_fit():
    with pytest.raises(ContractError):
        Word(16, 4)


def test_bit_indexing_is_msb_first():
    w = W("1000")
    assert w[1] == 1 and w[4] == 0 and w.last == 0
    assert W("0001").last == 1


def test_hex_round_trip():
    w = Word.from_hex("a5")
    assert w.width == 8 and w.bits() == "10100101"
    assert Word.from_hex(w.hex(), 8) == w
    assert Word.from_hex("b").bits() == "1011"


def test_hex_digit_count_checked():
    with pytest.raises(ContractError):
        Word.from_hex("abc", 8)


def test_pack_big_endian_bit_order():
    assert pack_words([W("1000")], 4) == b"\x80"
    assert pack_words([W("1010"), W("0101"), W("1111")], 4) == b"\xa5\xf0"
    assert pack_words([Word(0x0102, 16)], 16) == b"\x01\x02"


@given(st.data(), widths, st.integers(1, 9))
def test_pack_round_trip(data, width, count):
    ws = [data.draw(words_of(width)) for _ in range(count)]
    assert unpack_words(pack_words(ws, width), count, width) == ws


def test_wide_words():
    w = Word((1 << 255) | 1, 256)
    assert rotl(w, 1) == Word(0b11, 256)
    assert parity(w) == 0
