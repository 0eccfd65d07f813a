"""Command-line front end.

Exit codes: 0 success, 1 unreadable container or key file, 2 bad arguments
or contract violation, 3 an analysis verdict failed.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import analysis
from .algq import QCiphertext, QParams, q_decrypt, q_encrypt
from .bitword import Word, check_width
from .cipher import (
    CiphertextContainer,
    bits_to_bytes,
    decrypt,
    encrypt_bytes,
    keygen,
)
from .codec import CodecKey, trace_block
from .errors import ContractError, FormatError, MalformedInput
from .rng import fresh_seed, scalar_rng

log = logging.getLogger("eagle")

EXIT_FORMAT = 1
EXIT_CONTRACT = 2
EXIT_VERDICT = 3


def read_key(path) -> CodecKey:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if len(lines) != 2:
        raise FormatError(f"key file: expected 2 hex lines, found {len(lines)}")
    try:
        w0 = Word.from_hex(lines[0])
        w1 = Word.from_hex(lines[1])
        return CodecKey(w0, w1)
    except ContractError as exc:
        raise FormatError(f"key file: {exc}") from None


def format_key(key: CodecKey) -> str:
    return f"{key.w0.hex()}\n{key.w1.hex()}\n"


def _seed(args) -> int:
    if args.seed is None:
        args.seed = fresh_seed()
        log.warning("seed %d", args.seed)
    return args.seed


def _write(path, data: bytes | str) -> None:
    if path in (None, "-"):
        if isinstance(data, bytes):
            sys.stdout.buffer.write(data)
        else:
            sys.stdout.write(data)
        return
    if isinstance(data, bytes):
        Path(path).write_bytes(data)
    else:
        Path(path).write_text(data)


def _read_bytes(path, hex_text: bool) -> bytes:
    raw = sys.stdin.buffer.read() if path in (None, "-") else Path(path).read_bytes()
    if hex_text:
        try:
            return bytes.fromhex(raw.decode("ascii"))
        except ValueError as exc:
            raise FormatError(f"hex input: {exc}") from None
    return raw


def cmd_keygen(args) -> int:
    key = keygen(scalar_rng(_seed(args)), check_width(args.width))
    _write(args.output, format_key(key))
    return 0


def cmd_encrypt(args) -> int:
    key = read_key(args.key)
    data = _read_bytes(args.input, False)
    ct = encrypt_bytes(key, data, scalar_rng(_seed(args)))
    blob = ct.to_bytes()
    _write(args.output, blob.hex() + "\n" if args.hex else blob)
    return 0


def cmd_decrypt(args) -> int:
    key = read_key(args.key)
    ct = CiphertextContainer.from_bytes(_read_bytes(args.input, args.hex))
    bits = decrypt(key, ct)
    if len(bits) % 8:
        log.warning("plaintext is %d bits; last byte zero-padded", len(bits))
    _write(args.output, bits_to_bytes(bits))
    return 0


def _read_blocks(path, width: int) -> tuple[Word, Word]:
    text = sys.stdin.read() if path in (None, "-") else Path(path).read_text()
    parts = text.split()
    if len(parts) != 2:
        raise FormatError(f"block input: expected 2 hex words, found {len(parts)}")
    try:
        return Word.from_hex(parts[0], width), Word.from_hex(parts[1], width)
    except ContractError as exc:
        raise FormatError(f"block input: {exc}") from None


def cmd_qencrypt(args) -> int:
    key = read_key(args.key)
    m1, m2 = _read_blocks(args.input, key.width)
    params = QParams(args.p)
    qc = q_encrypt(key, m1, m2, params, scalar_rng(_seed(args)))
    blob = qc.to_bytes(args.p)
    _write(args.output, blob.hex() + "\n" if args.hex else blob)
    return 0


def cmd_qdecrypt(args) -> int:
    key = read_key(args.key)
    qc, p = QCiphertext.from_bytes(_read_bytes(args.input, args.hex))
    m1, m2 = q_decrypt(key, qc, QParams(p))
    _write(args.output, f"{m1.hex()} {m2.hex()}\n")
    return 0


def cmd_trace(args) -> int:
    key = read_key(args.key)
    s0 = Word.from_hex(args.state, key.width)
    m = Word.from_hex(args.block, key.width)
    lines = [f"{'i':>3}  M[i]  {'S_i':<{key.width}}  C[i]"]
    lines.append(f"{0:>3}  {'-':>4}  {s0.bits()}  {'-':>4}")
    for step in trace_block(key, s0, m):
        lines.append(f"{step.index:>3}  {step.bit:>4}  {step.state.bits()}  {step.out:>4}")
    _write(None, "\n".join(lines) + "\n")
    return 0


def _key_for(args, width: int) -> CodecKey:
    if args.key:
        key = read_key(args.key)
        if key.width != width:
            raise ContractError(f"key width {key.width} does not match --width {width}")
        return key
    return keygen(scalar_rng(args.seed, "key"), width)


def _run_analysis(args) -> analysis.AnalysisReport:
    width = check_width(args.width)
    test = args.test
    if test == "theorem1":
        return analysis.check_theorem1(width, key_mode=args.key_mode)
    if test == "theorem2":
        return analysis.check_theorem2(width, pairs=args.pairs, seed=_seed(args))
    if test == "keyspace":
        return analysis.keyspace_consistency(
            width, pairs=args.pairs, keys_per_pair=args.keys_per_pair, seed=_seed(args)
        )
    if test == "chain":
        return analysis.chain_consistency(width, args.pairs or 20, _seed(args))
    if test == "xcount":
        return analysis.x_preimage_count(width)

    seed = _seed(args)
    key = _key_for(args, width)
    samples = args.samples or 100 * (1 << width)
    if test == "uniformity":
        _, summary = analysis.seeded_runs(
            analysis.ciphertext_uniformity, args.runs, seed, args.need,
            key=key, m=Word(0, width), samples=samples,
        )
        return summary
    if test == "differential":
        return analysis.difference_distribution(key, samples, seed)
    if test == "linear":
        return analysis.linear_scan(
            key, args.pairs or 100, samples, seed, exhaustive=args.exhaustive
        )
    if test == "qbrute":
        params = QParams(width)
        rng = scalar_rng(seed, "q")
        m1, m2 = Word(rng.getrandbits(width), width), Word(rng.getrandbits(width), width)
        qc = q_encrypt(key, m1, m2, params, rng)
        rep = analysis.q_brute_force(qc, m1, m2, params, true_key=key)
        rep.seed = seed
        return rep
    raise ContractError(f"unknown analysis {test!r}")


ANALYSES = (
    "theorem1", "theorem2", "keyspace", "uniformity", "differential",
    "linear", "qbrute", "chain", "xcount",
)


def cmd_analyze(args) -> int:
    report = _run_analysis(args)
    text = report.to_json() + "\n"
    if args.report:
        Path(args.report).write_text(text)
    print(report.summary())
    return EXIT_VERDICT if report.verdict == "fail" else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eagle", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key file")
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_keygen)

    for name, func, help_ in (
        ("encrypt", cmd_encrypt, "encrypt a file"),
        ("decrypt", cmd_decrypt, "decrypt a container"),
        ("qencrypt", cmd_qencrypt, "encrypt two hex blocks with algorithm Q"),
        ("qdecrypt", cmd_qdecrypt, "decrypt an algorithm Q container"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--key", required=True)
        p.add_argument("--in", dest="input")
        p.add_argument("--out", dest="output")
        p.add_argument("--hex", action="store_true", help="container as hex text")
        if name in ("encrypt", "qencrypt"):
            p.add_argument("--seed", type=int)
        if name == "qencrypt":
            p.add_argument("--p", type=int, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("trace", help="per-bit encoding trace of one block")
    p.add_argument("--key", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--block", required=True)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("analyze", help="run a workbench check")
    p.add_argument("test", choices=ANALYSES)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--report")
    p.add_argument("--key")
    p.add_argument("--pairs", type=int)
    p.add_argument("--keys-per-pair", type=int)
    p.add_argument("--runs", type=int, default=20)
    p.add_argument("--need", type=int, default=18)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--key-mode", choices=("odd", "even"), default="odd")
    p.set_defaults(func=cmd_analyze)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="eagle: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except FormatError as exc:
        log.error("format error: %s", exc)
        return EXIT_FORMAT
    except (ContractError, MalformedInput) as exc:
        log.error("%s", exc)
        return EXIT_CONTRACT
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_FORMAT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
