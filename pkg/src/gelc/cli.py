"""Command-line front end: encode, decode, verify.

Input and output message files are ASCII 0/1 text (whitespace ignored);
encoded files use the fixed binary container.  ``verify`` sweeps the
brute-force checks over a parameter grid and emits a JSON or text
report.  Exit codes: 0 success, 1 usage or I/O or parameter error,
2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from .errors import GelcError
from .exactnum import Rat, rat
from .source import SourceModel
from . import sfe, sfeg, dualsfeg, oracle
from .container import Container

__all__ = ["main"]

_DEFAULT_P0 = ("1/3", "1/5", "7/10")
_DEFAULT_N = (2, 3, 4, 6, 8)
_DEFAULT_K = (1, 2, 3)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; reserve 2 for verify
        self.print_usage(sys.stderr)
        raise SystemExit(_fail(f"argument error: {message}"))


def _fail(message: str) -> int:
    print(f"gelc: error: {message}", file=sys.stderr)
    return 1


def _fmt_rat(q: Rat) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Rat:
    """Parse 'NUM/DEN' (or a bare integer) into an exact rational."""
    parts = text.split("/")
    try:
        if len(parts) == 1:
            return rat(int(parts[0]))
        if len(parts) == 2:
            return rat(int(parts[0]), int(parts[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational {text!r}: {exc}") from None
    raise ValueError(f"invalid rational {text!r}")


def _read_bits(path: str) -> str:
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    bits = "".join(text.split())
    if bits.strip("01"):
        raise ValueError(f"{path} contains characters other than 0/1")
    return bits


def _build_model(args) -> SourceModel:
    p0 = parse_rational(args.p0)
    alpha = parse_rational(args.alpha_hat) if args.alpha_hat else None
    if alpha is None:
        return SourceModel(p0, args.n)
    return SourceModel(p0, args.n, alpha)


def _cmd_encode(args) -> int:
    try:
        model = _build_model(args)
        bits = _read_bits(args.input)
    except (GelcError, ValueError, OSError) as exc:
        return _fail(str(exc))
    try:
        if args.codec == "dual":
            if not model.dual_safe:
                return _fail(
                    "model is not dual-safe: alpha_hat * p_max**n > 1; "
                    f"smallest usable block length is {model.min_dual_blocklen()}"
                )
            result = dualsfeg.encode(model, bits, args.blocks)
            payload = "".join(result.blocks)
            box = Container(
                codec="dual",
                n=model.n,
                p0=model.p0,
                alpha_hat=model.alpha_hat,
                block_count=len(result.blocks),
                msg_len=len(bits),
                payload_bits=payload,
            )
        else:
            if len(bits) % model.n:
                return _fail(
                    f"input has {len(bits)} bits, not a multiple of the block length {model.n}"
                )
            blocks = [bits[i : i + model.n] for i in range(0, len(bits), model.n)]
            enc = sfe.sfe_encode_stream if args.codec == "sfe" else sfeg.sfeg_encode_stream
            box = Container(
                codec=args.codec,
                n=model.n,
                p0=model.p0,
                alpha_hat=None,
                block_count=len(blocks),
                msg_len=0,
                payload_bits=enc(model, blocks),
            )
        with open(args.out, "wb") as fh:
            fh.write(box.to_bytes())
    except (GelcError, OSError) as exc:
        return _fail(str(exc))
    return 0


def _cmd_decode(args) -> int:
    try:
        with open(args.input, "rb") as fh:
            box = Container.from_bytes(fh.read())
        model = SourceModel(box.p0, box.n, box.alpha_hat)
        if box.codec == "dual":
            blocks = [
                box.payload_bits[i : i + box.n]
                for i in range(0, box.block_count * box.n, box.n)
            ]
            bits = dualsfeg.decode(model, blocks)
            if len(bits) < box.msg_len:
                raise GelcError("container inconsistent: decoded fewer bits than msg_len")
            out = bits[: box.msg_len]
        else:
            dec = sfe.sfe_decode_stream if box.codec == "sfe" else sfeg.sfeg_decode_stream
            blocks = dec(model, box.payload_bits, box.block_count)
            used = len("".join(
                (sfe.sfe_encode_block if box.codec == "sfe" else sfeg.sfeg_encode_block)(model, b)
                for b in blocks
            ))
            if used > len(box.payload_bits):
                raise GelcError("truncated payload: codewords overrun the stored bits")
            out = "".join(blocks)
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(out + "\n")
    except (GelcError, ValueError, OSError) as exc:
        return _fail(str(exc))
    return 0


def _verify_one(p0: Rat, n: int, alpha: Rat | None, ks: Sequence[int]) -> dict:
    t0 = time.perf_counter()
    model = SourceModel(p0, n) if alpha is None else SourceModel(p0, n, alpha)
    entry: dict = {
        "p0": _fmt_rat(model.p0),
        "n": n,
        "alpha_hat": _fmt_rat(model.alpha_hat),
        "dual_safe": model.dual_safe,
        "checks": {},
        "skipped": {},
    }
    checks = entry["checks"]

    report = oracle.expected_lengths_report(model)
    checks["sfe_length_bound"] = {
        "expected_len": _fmt_rat(report.e_sfe),
        "ok": report.sfe_bound_ok,
    }
    checks["sfeg_length_bound"] = {
        "expected_len": _fmt_rat(report.e_sfeg),
        "ok": report.sfeg_bound_ok,
    }
    checks["sfeg_not_longer_than_sfe"] = {
        "gain": _fmt_rat(report.realized_gain),
        "ok": report.sfeg_not_longer,
    }
    from .source import len_sfe as _lsfe, len_sfeg as _lsfeg

    kraft_sfe = sfe.kraft_sum(model, lambda b: _lsfe(model, b))
    kraft_sfeg = sfe.kraft_sum(model, lambda b: _lsfeg(model, b))
    checks["kraft_sfe_strictly_incomplete"] = {
        "value": _fmt_rat(kraft_sfe),
        "ok": kraft_sfe < 1,
    }
    checks["kraft_sfeg_admissible"] = {
        "value": _fmt_rat(kraft_sfeg),
        "ok": kraft_sfeg <= 1,
    }

    checks["dual_expected_consumption_bound"] = {
        "expected_bits": _fmt_rat(report.e_dual_first_block),
        "ok": report.dual_bound_ok,
    }
    depth = 2 if n <= 4 else 1
    states = oracle.reachable_states(model, depth)
    checks["dual_per_block_divergence"] = {
        "states": len(states),
        "ok": all(oracle.divergence_bound_holds(model, s) for s in states),
    }
    rates = {}
    for k in ks:
        if k * n > oracle.ENUMERATION_GUARD_BITS:
            entry["skipped"][f"divergence_rate_k{k}"] = "enumeration budget"
            continue
        rep = oracle.max_divergence_rate(model, k)
        rates[f"k{k}"] = {
            "max_ratio": _fmt_rat(rep.max_ratio),
            "ratio_bound": _fmt_rat(rep.ratio_bound),
            "ok": rep.within_bound,
        }
    if rates:
        checks["divergence_rates"] = {
            **rates,
            "ok": all(v["ok"] for v in rates.values()),
        }
    entry["elapsed_ms"] = round(1000 * (time.perf_counter() - t0), 3)
    return entry


def _collect_ok(node) -> bool:
    if isinstance(node, dict):
        oks = [v for k, v in node.items() if k == "ok"]
        sub = all(_collect_ok(v) for v in node.values() if isinstance(v, dict))
        return all(oks) and sub
    return True


def _cmd_verify(args) -> int:
    p0_list = args.p0 or list(_DEFAULT_P0)
    n_list = args.n or list(_DEFAULT_N)
    k_list = args.k or list(_DEFAULT_K)
    alpha = parse_rational(args.alpha_hat) if args.alpha_hat else None
    rows = []
    try:
        for p0_text in p0_list:
            p0 = parse_rational(p0_text)
            for n in sorted(set(n_list)):
                rows.append(_verify_one(p0, n, alpha, sorted(set(k_list))))
    except (GelcError, ValueError) as exc:
        return _fail(str(exc))
    all_ok = all(_collect_ok(r["checks"]) for r in rows)
    doc = {"all_ok": all_ok, "configs": rows}
    if args.report == "json":
        text = json.dumps(doc, indent=2, sort_keys=True)
    else:
        lines = []
        for r in rows:
            head = f"p0={r['p0']} n={r['n']} alpha={r['alpha_hat']}"
            for name, chk in r["checks"].items():
                mark = "ok" if chk.get("ok", True) else "FAIL"
                lines.append(f"{head:32s} {name:34s} {mark}")
            for name, why in r["skipped"].items():
                lines.append(f"{head:32s} {name:34s} skipped ({why})")
        lines.append(f"overall: {'ok' if all_ok else 'FAIL'}")
        text = "\n".join(lines)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if all_ok else 2


def main(argv: Sequence[str] | None = None) -> int:
    parser = _Parser(prog="gelc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", help="encode a 0/1 text file into a container")
    enc.add_argument("input")
    enc.add_argument("--codec", choices=("sfe", "sfeg", "dual"), required=True)
    enc.add_argument("--p0", required=True, help="zero-bit probability, NUM/DEN")
    enc.add_argument("--n", type=int, required=True, help="block length")
    enc.add_argument("--alpha-hat", dest="alpha_hat", help="dual budget factor, NUM/DEN")
    enc.add_argument("--blocks", type=int, default=None, help="dual: block cap")
    enc.add_argument("--out", required=True)
    enc.set_defaults(func=_cmd_encode)

    dec = sub.add_parser("decode", help="decode a container back to 0/1 text")
    dec.add_argument("input")
    dec.add_argument("--out", required=True)
    dec.set_defaults(func=_cmd_decode)

    ver = sub.add_parser("verify", help="run the brute-force verification sweep")
    ver.add_argument("--p0", action="append", help="repeatable; NUM/DEN")
    ver.add_argument("--n", action="append", type=int, help="repeatable")
    ver.add_argument("--k", action="append", type=int, help="repeatable")
    ver.add_argument("--alpha-hat", dest="alpha_hat")
    ver.add_argument("--report", choices=("json", "text"), default="json")
    ver.add_argument("--out")
    ver.set_defaults(func=_cmd_verify)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
