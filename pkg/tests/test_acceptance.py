"""Acceptance suite: one test per exit criterion, at the stated tolerances.

Run ``pytest tests/test_acceptance.py`` and read the "acceptance criteria"
section of the terminal summary for the per-criterion verdict lines.
"""

import time
from collections import Counter
from pathlib import Path

import pytest

from eagle import analysis as A
from eagle.algq import QCiphertext, QParams, q_decrypt, q_encrypt
from eagle.bitword import Word
from eagle.cipher import (
    CiphertextContainer,
    decrypt,
    encrypt,
    encrypt_traced,
    key_from_raw,
    keygen,
)
from eagle.codec import decode_int, encode_int
from eagle.rng import scalar_rng

SEED = 20240601
FIXTURES = Path(__file__).parent / "fixtures"


def criterion(n, title):
    return pytest.mark.criterion(n, title)


@criterion(1, "codec round trip, exhaustive L=4 and 10^4 random at L=8..64")
def test_codec_round_trip(note):
    t0 = time.perf_counter()
    for raw in range(256):
        key = key_from_raw(raw, 4)
        w0, w1 = key.w0.value, key.w1.value
        if raw & 1:
            continue  # raw and raw^1 map to the same key
        for s0 in range(16):
            for m in range(16):
                s, c = encode_int(w0, w1, s0, m, 4)
                got_m, got_s = decode_int(w0, w1, s, c, 4)
                assert got_m == m and got_s in (s0, s0 ^ 15)
    exhaustive = time.perf_counter() - t0
    assert exhaustive < 5

    t0 = time.perf_counter()
    for width in (8, 16, 32, 64):
        rng = scalar_rng(SEED, "codec", width)
        full = (1 << width) - 1
        for _ in range(10_000):
            key = keygen(rng, width)
            w0, w1 = key.w0.value, key.w1.value
            s0, m = rng.getrandbits(width), rng.getrandbits(width)
            s, c = encode_int(w0, w1, s0, m, width)
            got_m, got_s = decode_int(w0, w1, s, c, width)
            assert got_m == m and got_s in (s0, s0 ^ full)
    sampled = time.perf_counter() - t0
    assert sampled < 30
    note(f"exhaustive {exhaustive:.2f}s, sampled {sampled:.2f}s")


@criterion(2, "no wrong-bit state is solvable, exhaustive at L=4 and L=8")
def test_wrong_bit_state_unsolvable(note):
    t0 = time.perf_counter()
    reps = [A.check_theorem1(w) for w in (4, 8)]
    elapsed = time.perf_counter() - t0
    for rep in reps:
        assert rep.statistics["counterexamples_enumeration"] == 0
        assert rep.statistics["counterexamples_parity"] == 0
        assert rep.verdict == "pass"
    assert elapsed < 10
    note(f"{sum(r.statistics['cases'] for r in reps)} cases, 0 counterexamples")


@criterion(3, "end state independent of start state, exhaustive at L=4")
def test_end_state_determinism(note):
    t0 = time.perf_counter()
    rep = A.check_theorem2(4)
    assert time.perf_counter() - t0 < 5
    assert rep.statistics["pairs_with_multiple_end_states"] == 0
    assert rep.verdict == "pass"
    note(f"{rep.parameters['pairs']} (key, m) pairs x 16 starts")


@criterion(4, "key-space totality: every (m, c) fitted by all 128 keys at L=4")
def test_keyspace_totality(note):
    t0 = time.perf_counter()
    rep = A.keyspace_consistency(4)
    assert time.perf_counter() - t0 < 10
    s = rep.statistics
    note(
        f"pairs fully explained {s['pairs_explained_by_all_keys']}/256, "
        f"keys fitting per pair {s['min_keys_fitting']}..{s['max_keys_fitting']}/128"
    )
    assert s["pairs_explained_by_all_keys"] == 256


@pytest.fixture(scope="module")
def cipher_runs():
    """1000 (key, message, seed) triples per width, with reset-state traces."""
    runs = []
    t0 = time.perf_counter()
    for width in (4, 8, 16, 32, 64):
        for t in range(1000):
            rng = scalar_rng(SEED, "cipher", width, t)
            key = keygen(rng, width)
            n = rng.randrange(1, 6 * width)
            plain = format(rng.getrandbits(n), f"0{n}b")
            ct, resets = encrypt_traced(key, plain, rng)
            runs.append((width, key, plain, ct, resets))
    return runs, time.perf_counter() - t0


@criterion(5, "cipher round trip, 1000 triples at each L in {4..64}")
def test_cipher_round_trip(cipher_runs, note):
    runs, enc_time = cipher_runs
    t0 = time.perf_counter()
    odd = 0
    for width, key, plain, ct, _ in runs:
        odd += len(plain) % width != 0
        assert decrypt(key, ct) == plain
    elapsed = enc_time + time.perf_counter() - t0
    assert odd > 0
    assert elapsed < 60
    note(f"{len(runs)} triples, {odd} with length not divisible by L")


@criterion(6, "every reset state S_i ^ C_i has last bit 0")
def test_reset_state_last_bit(cipher_runs, note):
    runs, _ = cipher_runs
    resets = [r for *_, rs in runs for r in rs]
    assert all(r.last == 0 for r in resets)
    note(f"{len(resets)} reset states checked")


@criterion(7, "ciphertext uniformity, L=8, 10^5 samples, p>0.001 in >=18/20 runs")
def test_ciphertext_uniformity(note):
    t0 = time.perf_counter()
    key = keygen(scalar_rng(SEED, "uniformity"), 8)
    reports, summary = A.seeded_runs(
        A.ciphertext_uniformity, 20, SEED, 18,
        key=key, m=Word(0, 8), samples=100_000,
    )
    assert time.perf_counter() - t0 < 60
    first = reports[0].statistics
    note(
        f"{summary.statistics['passes']}/20 runs pass; "
        f"{first['distinct_values']}/256 values reachable, last bit fixed at "
        f"{first['last_bit_values']}, leading 7 bits p={first['leading_bits_p_value']:.3f}"
    )
    assert summary.statistics["passes"] >= 18


@criterion(8, "differential flatness, L=4, all 16 deltas, >=18/20 runs each")
def test_differential_flatness(note):
    t0 = time.perf_counter()
    key = keygen(scalar_rng(SEED, "differential"), 4)
    passing = {}
    distinct = set()
    for delta in range(16):
        reports, summary = A.seeded_runs(
            A.differential_table, 20, SEED, 18,
            key=key, delta=Word(delta, 4), samples=100_000,
        )
        passing[delta] = summary.statistics["passes"]
        distinct.add(reports[0].statistics["distinct_differences"])
    assert time.perf_counter() - t0 < 120
    ok = sum(p >= 18 for p in passing.values())
    note(f"{ok}/16 deltas flat; distinct output differences per delta {sorted(distinct)}/16")
    assert ok == 16


@criterion(9, "linear bias <= 4/sqrt(10^5) at L=8; XOR toy control bias >= 0.4")
def test_linear_bias(note):
    t0 = time.perf_counter()
    key = keygen(scalar_rng(SEED, "linear"), 8)
    rep = A.linear_scan(key, 100, 100_000, SEED)
    control = A.linear_scan(
        key, 0, 100_000, SEED, cipher=A.xor_toy_cipher(0xA7), exhaustive=True, name="xor"
    )
    full = A.linear_scan(key, 0, 100_000, SEED, exhaustive=True)
    assert time.perf_counter() - t0 < 120
    note(
        f"eagle max bias {rep.statistics['max_bias']:.4f} over 100 pairs "
        f"(band {rep.statistics['band']:.4f}); control {control.statistics['max_bias']:.3f}; "
        f"all-pairs scan max {full.statistics['max_bias']:.3f} at "
        f"(a,b)={tuple(full.tables['top_pairs'][0][:2])}"
    )
    assert rep.parameters["mask_pairs"] == 100
    assert rep.statistics["max_bias"] <= 4 / 100_000 ** 0.5
    assert control.statistics["max_bias"] >= 0.4


@criterion(10, "Algorithm Q round trip, 100 trials at L=p=4 and L=p=8")
def test_q_round_trip(note):
    t0 = time.perf_counter()
    repaired = 0
    for width in (4, 8):
        params = QParams(width)
        for t in range(100):
            rng = scalar_rng(SEED, "q", width, t)
            key = keygen(rng, width)
            m1 = Word(rng.getrandbits(width), width)
            m2 = Word(rng.getrandbits(width), width)
            probe = scalar_rng(SEED, "q", width, t)
            keygen(probe, width)
            probe.getrandbits(width), probe.getrandbits(width)
            xs = [probe.getrandbits(width) for _ in range(width)]
            y = params.raw(xs, width)
            repaired += (y[1] ^ y[2]).bit_count() % 2 == 0
            qc = q_encrypt(key, m1, m2, params, rng)
            assert q_decrypt(key, qc, params) == (m1, m2)
    assert repaired > 0
    assert time.perf_counter() - t0 < 30
    note(f"200 trials, {repaired} needed the parity repair")


@criterion(11, "Q brute force at L=p=4: true key always among candidates")
def test_q_brute_force(note):
    t0 = time.perf_counter()
    params = QParams(4)
    sizes = Counter()
    for t in range(50):
        rng = scalar_rng(SEED, "qbrute", t)
        key = keygen(rng, 4)
        m1, m2 = Word(rng.getrandbits(4), 4), Word(rng.getrandbits(4), 4)
        qc = q_encrypt(key, m1, m2, params, rng)
        rep = A.q_brute_force(qc, m1, m2, params, true_key=key)
        assert rep.statistics["true_key_in_candidates"]
        sizes[rep.statistics["candidates"]] += 1
    assert time.perf_counter() - t0 < 60
    note("candidate-set sizes " + ", ".join(f"{k}:{v}" for k, v in sorted(sizes.items())))


@criterion(12, "golden container bytes for seeded L=4 cipher and Q encryptions")
def test_golden_containers(note):
    t0 = time.perf_counter()
    for name, build in (("cipher_l4.hex", _golden_cipher), ("q_l4.hex", _golden_q)):
        lines = (FIXTURES / name).read_text().splitlines()
        meta = dict(kv.split("=") for kv in lines[0].lstrip("# ").split())
        assert build(meta) == bytes.fromhex(lines[1]), name
    assert time.perf_counter() - t0 < 1
    note("2 fixtures byte-exact")


def _golden_cipher(meta):
    rng = scalar_rng(int(meta["seed"]), meta["stream"])
    key = keygen(rng, 4)
    blob = encrypt(key, meta["plaintext"], rng).to_bytes()
    assert decrypt(key, CiphertextContainer.from_bytes(blob)) == meta["plaintext"]
    return blob


def _golden_q(meta):
    rng = scalar_rng(int(meta["seed"]), meta["stream"])
    key = keygen(rng, 4)
    m1, m2 = Word.from_hex(meta["m1"], 4), Word.from_hex(meta["m2"], 4)
    blob = q_encrypt(key, m1, m2, QParams(int(meta["p"])), rng).to_bytes(int(meta["p"]))
    qc, p = QCiphertext.from_bytes(blob)
    assert q_decrypt(key, qc, QParams(p)) == (m1, m2)
    return blob
