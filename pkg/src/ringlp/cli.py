"""Command-line surface: decode, sweep, independence, curves, verify.

Exit codes: 0 success, 1 usage error, 2 decode abort, 3 check failure
(verify suites or a failed independence comparison).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .channel import PskAwgnScheme, QarySymmetricScheme, snr_to_noise
from .codes import golay_code_path, load_code, weight_enumerator
from .decoder import lp_decode
from .harness import (ExperimentConfig, config_from_mapping, emit_curves,
                      parse_config_file, run_independence_test, run_sweep)
from .pseudocodewords import extract, pcw_report_json, pcw_report_text
from .rings import make_zq, validate_ring_axioms
from .simplex import SimplexError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ABORT = 2
EXIT_CHECK_FAILED = 3


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def _add_config_flags(p: _Parser) -> None:
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--code", help="code file path (or the name 'golay')")
    p.add_argument("--scheme", choices=["psk", "qsc"])
    p.add_argument("--snr-db", dest="snr_db", help="dB grid, comma separated")
    p.add_argument("--eps", help="flip-probability grid, comma separated")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--mode",
                   choices=["float", "rational", "float-with-rational-recheck"])
    p.add_argument("--policy", choices=["all-zero", "random-codeword"])
    p.add_argument("--workers", type=int)
    p.add_argument("--out")


def _gather_config(args) -> ExperimentConfig:
    raw = parse_config_file(args.config) if args.config else {}
    for key in ("code", "scheme", "snr_db", "eps", "trials", "seed", "mode",
                "policy", "workers", "out"):
        val = getattr(args, key, None)
        if val is not None:
            raw[key] = val
    return config_from_mapping(raw)


def _parse_received(text: str, scheme_kind: str):
    tokens = [t for chunk in text.split(",") for t in chunk.split()]
    if scheme_kind == "psk":
        return np.array([complex(t) for t in tokens])
    return np.array([int(t) for t in tokens], dtype=np.int64)


def _cmd_decode(args) -> int:
    path = golay_code_path() if args.code == "golay" else args.code
    code = load_code(path)
    y = _parse_received(args.received, args.scheme)
    if len(y) != code.n:
        raise ValueError(f"received vector has {len(y)} samples, code length is {code.n}")
    if args.scheme == "psk":
        if args.snr_db is None:
            raise ValueError("psk decoding needs --snr-db")
        rate = (code.k_hint or code.n) / code.n
        e_ch, n0 = snr_to_noise(float(args.snr_db), rate)
        scheme = PskAwgnScheme(code.ring.q, e_ch, n0)
    else:
        if args.eps is None:
            raise ValueError("qsc decoding needs --eps")
        scheme = QarySymmetricScheme(code.ring.q, float(args.eps))
    lam = scheme.cost_vector(y)
    mode = args.mode or "float"
    if args.pcw and mode == "float":
        mode = "float-with-rational-recheck"
    dec_mode = "recheck" if mode == "float-with-rational-recheck" else mode
    result = lp_decode(code, lam, mode=dec_mode)
    print(f"outcome: {result.outcome}")
    if result.outcome == "integral":
        print("word: " + " ".join(str(int(v)) for v in result.word))
        print(f"objective: {float(result.objective):.9g}")
        print("ml_certificate: yes")
        return EXIT_OK
    print(f"objective: {float(result.objective):.9g}")
    if args.pcw:
        pcw = extract(result.lp, result.solution)
        if args.pcw == "json":
            print(pcw_report_json(pcw, lam))
        else:
            print(pcw_report_text(pcw, lam))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    config = _gather_config(args)
    result = run_sweep(config)
    for p in result.points:
        print(f"{p.grid_value:g}: trials={p.trials} word_errors={p.word_errors} "
              f"frac={p.frac_failures} ml={p.ml_errors} wer={p.wer:.6g} "
              f"ser={p.ser:.6g} aborts={p.aborts}")
    if result.csv_path:
        print(f"wrote {result.csv_path}")
    if not result.ok:
        print(f"decode aborts: {result.total_aborts}", file=sys.stderr)
        return EXIT_ABORT
    return EXIT_OK


def _cmd_independence(args) -> int:
    config = _gather_config(args)
    report = run_independence_test(config)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _cmd_curves(args) -> int:
    config = _gather_config(args)
    paths = emit_curves(config, args.out_dir, run_simulation=not args.no_sim)
    for kind, path in paths.items():
        if not kind.startswith("_"):
            print(f"{kind}: {path}")
    sim = paths.get("_sim_result")
    if sim is not None and not sim.ok:
        print(f"decode aborts: {sim.total_aborts}", file=sys.stderr)
        return EXIT_ABORT
    return EXIT_OK


GOLAY_ENUMERATOR = (1, 0, 0, 0, 0, 132, 132, 0, 330, 110, 0, 24)


def _verify_suites() -> list:
    from fractions import Fraction

    from .codes import Code
    from .polytope import build_lp, integral_point_words
    from .pseudocodewords import (build_cover, cover_to_lppc, extract,
                                  sample_valid_cover, verify_cover)

    results = []

    def run(name, fn):
        try:
            fn()
            results.append((name, True, ""))
        except Exception as exc:
            results.append((name, False, f"{type(exc).__name__}: {exc}"))

    def ring_axioms():
        for q in range(2, 10):
            bad = validate_ring_axioms(make_zq(q))
            if bad:
                raise AssertionError(f"Z_{q} reported violations: {bad[:2]}")
        broken = make_zq(3)
        tampered = broken.add_table.copy()
        tampered[1, 2] = 1
        from .rings import _axiom_violations
        if not _axiom_violations(3, tampered, broken.mul_table):
            raise AssertionError("tampered table passed the axiom check")

    def golay_enum():
        code = load_code(golay_code_path())
        enum = tuple(weight_enumerator(code))
        if enum != GOLAY_ENUMERATOR:
            raise AssertionError(f"weight enumerator {enum}")

    def integral_points():
        for q, H in ((3, [[1, 1, 1]]), (3, [[1, 1, 1, 0], [0, 1, 1, 1]]),
                     (4, [[1, 1], [3, 1]])):
            code = Code(ring=make_zq(q), H=np.array(H, dtype=np.int64))
            words = sorted(integral_point_words(code))
            from .codes import enumerate_codewords
            book = sorted(tuple(int(v) for v in w) for w in enumerate_codewords(code))
            if words != book:
                raise AssertionError(f"integral points != codewords for q={q}")

    def cover_round_trip():
        code = Code(ring=make_zq(3), H=np.array([[1, 1, 1]], dtype=np.int64))
        lp = build_lp(code, np.zeros(code.n * 2))
        x = [Fraction(1, 3)] * 6 + [Fraction(1, 9)] * 9
        pcw = extract(lp, x)
        cover = build_cover(pcw)
        report = verify_cover(cover)
        if not report.ok:
            raise AssertionError("constructed cover failed verification:\n" + str(report))
        back = cover_to_lppc(cover)
        if back.matrix != pcw.matrix:
            raise AssertionError("round trip changed the count matrix")
        rng = np.random.default_rng(7)
        sampled = sample_valid_cover(code, 2, rng)
        cover_to_lppc(sampled)

    run("ring axioms (Z_2..Z_9 pass, tampered table caught)", ring_axioms)
    run("shipped code weight enumerator", golay_enum)
    run("integral LP points match codewords (3 small codes)", integral_points)
    run("pseudocodeword/cover round trip + sampled cover", cover_round_trip)
    return results


def _cmd_verify(_args) -> int:
    results = _verify_suites()
    failed = 0
    for name, ok, detail in results:
        mark = "pass" if ok else "FAIL"
        print(f"[{mark}] {name}" + (f" :: {detail}" if detail else ""))
        if not ok:
            failed += 1
    return EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


def build_parser() -> _Parser:
    parser = _Parser(prog="ringlp",
                     description="LP decoding toolkit for linear codes over rings")
    sub = parser.add_subparsers(dest="command", required=True)

    p_dec = sub.add_parser("decode", help="decode one received vector")
    p_dec.add_argument("--code", required=True, help="code file path or 'golay'")
    p_dec.add_argument("--scheme", choices=["psk", "qsc"], default="psk")
    p_dec.add_argument("--snr-db", dest="snr_db", type=float)
    p_dec.add_argument("--eps", type=float)
    p_dec.add_argument("--mode",
                       choices=["float", "rational", "float-with-rational-recheck"])
    p_dec.add_argument("--pcw", nargs="?", const="text", choices=["text", "json"],
                       help="on fractional outcome, print the pseudocodeword report")
    p_dec.add_argument("received", help="received samples, comma or space separated")
    p_dec.set_defaults(fn=_cmd_decode)

    p_sweep = sub.add_parser("sweep", help="Monte Carlo sweep over a grid")
    _add_config_flags(p_sweep)
    p_sweep.set_defaults(fn=_cmd_sweep)

    p_ind = sub.add_parser("independence",
                           help="compare all-zero vs random-codeword policies")
    _add_config_flags(p_ind)
    p_ind.set_defaults(fn=_cmd_independence)

    p_cur = sub.add_parser("curves", help="emit analytic + simulated curve CSVs")
    _add_config_flags(p_cur)
    p_cur.add_argument("--out-dir", default="curves")
    p_cur.add_argument("--no-sim", action="store_true",
                       help="skip the Monte Carlo sweep, analytic curves only")
    p_cur.set_defaults(fn=_cmd_curves)

    p_ver = sub.add_parser("verify", help="run the built-in property suites")
    p_ver.set_defaults(fn=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SimplexError as exc:
        print(f"decode abort: {exc}", file=sys.stderr)
        return EXIT_ABORT
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
