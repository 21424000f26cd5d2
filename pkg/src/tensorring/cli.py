"""The ``tr`` command-line tool.

Exit codes: 0 success or verified, 1 verified false or counterexample,
2 unknown or hypotheses unmet, 3 input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import constructs, io
from .errors import NotNilpotentWithinCap, TensorRingError
from .exactla import FieldSpec
from .homcalc import DEFAULT_MAX_LEN
from .hypo import DEFAULT_TOR_BOUND, hypothesis_report
from .tring import classify_over_t, tensor_powers
from .verdict import Verdict
from .verhar import CampaignConfig, run_lemma_suite, verify_theorem

EXIT_OK, EXIT_FALSE, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3


def _verdict_code(v: Verdict) -> int:
    return {Verdict.TRUE: EXIT_OK, Verdict.FALSE: EXIT_FALSE, Verdict.UNKNOWN: EXIT_UNKNOWN}[v]


def _emit(doc, out: str | None) -> None:
    text = io.dumps(doc)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _instance(paths: list[str], cap: int):
    if len(paths) not in (1, 2):
        raise io.DocumentError("expected a directory with manifest.json or an algebra and a bimodule file")
    alg, bim = io.load_instance(*paths)
    return tensor_powers(alg, bim, cap)


def _add_instance(p: argparse.ArgumentParser, extra: str | None = None) -> None:
    help_text = "instance directory, or algebra.json bimodule.json"
    if extra:
        help_text += f", followed by {extra}"
    p.add_argument("inputs", nargs="+", help=help_text)
    p.add_argument("--cap", type=int, default=16, help="nilpotency cap")


def _add_bounds(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bound", type=int, default=DEFAULT_MAX_LEN, help="maximal resolution length")
    p.add_argument("--torbound", type=int, default=DEFAULT_TOR_BOUND, help="Tor sweep bound K")


def _add_campaign(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-gen", type=int, default=3, dest="max_gen")
    p.add_argument("--max-cols", type=int, default=4, dest="max_cols")
    p.add_argument("-o", "--output")


def _config(args, classes=("gp",)) -> CampaignConfig:
    return CampaignConfig(seed=args.seed, samples=args.samples, max_generators=args.max_gen,
                          max_presentation_cols=args.max_cols, classes=tuple(classes),
                          max_len=args.bound, tor_bound=args.torbound)


# -- subcommands -------------------------------------------------------------


def cmd_nilpotency(args) -> int:
    try:
        tp = _instance(args.inputs, args.cap)
    except NotNilpotentWithinCap as exc:
        _emit({"nilIndex": None, "cap": args.cap, "verdict": "unknown", "message": str(exc)}, args.output)
        return EXIT_UNKNOWN
    _emit({"nilIndex": tp.nil_index, "dims": tp.dims, "cap": args.cap, "verdict": "true"}, args.output)
    return EXIT_OK


def cmd_build(args) -> int:
    tp = _instance(args.inputs, args.cap)
    _emit(io.algebra_to_json(tp.ring), args.output)
    return EXIT_OK


def cmd_hypotheses(args) -> int:
    tp = _instance(args.inputs, args.cap)
    rep = hypothesis_report(tp, args.variant, args.bound, args.torbound)
    _emit(rep.to_json(), args.output)
    return _verdict_code(rep.applicable)


def cmd_classify(args) -> int:
    *inst, obj_path = args.inputs
    tp = _instance(inst, args.cap)
    doc = io.read_json(obj_path)
    if isinstance(doc, dict) and "Y" in doc:
        obj = io.copair_from_json(doc, tp, obj_path)
    else:
        obj = io.pair_from_json(doc, tp, obj_path)
    rep = classify_over_t(tp, obj, args.cls, args.method, args.bound)
    _emit(rep.to_json(), args.output)
    if rep.counterexample:
        return EXIT_FALSE
    return _verdict_code(rep.verdict)


def cmd_verify(args) -> int:
    tp = _instance(args.inputs, args.cap)
    variant = args.variant.upper()
    rep = verify_theorem(tp, variant, _config(args, (variant.lower(),)))
    _emit(rep.to_json(), args.output)
    if rep.counterexamples:
        return EXIT_FALSE
    if not rep.hypotheses_met:
        return EXIT_UNKNOWN
    return _verdict_code(rep.verdict)


def cmd_lemmas(args) -> int:
    tp = _instance(args.inputs, args.cap)
    rep = run_lemma_suite(tp, _config(args))
    _emit(rep.to_json(), args.output)
    return _verdict_code(rep.verdict)


def cmd_example(args) -> int:
    field = FieldSpec(args.field)
    r, m = constructs.example_qnak(field, args.n, args.h, args.i, args.j, args.order)
    out = args.output or "."
    io.save_instance(out, r, m)
    sys.stdout.write(io.dumps({"directory": out, "dimR": r.dim, "dimM": m.dim,
                               "name": r.meta.get("name"), "i": args.i, "j": args.j}))
    return EXIT_OK


def cmd_trivext(args) -> int:
    alg, bim = io.load_instance(*args.inputs)
    t = constructs.trivial_extension(alg, bim)
    _emit(io.algebra_to_json(t), args.output)
    return EXIT_OK


def cmd_morita(args) -> int:
    a = io.algebra_from_json(io.read_json(args.a), args.a)
    b = a if args.b == args.a else io.algebra_from_json(io.read_json(args.b), args.b)
    u = io.bimodule_from_json(io.read_json(args.u), b, a, args.u)
    v = io.bimodule_from_json(io.read_json(args.v), a, b, args.v)
    ring = constructs.morita_context_ring(a, b, u, v)
    _emit({"algebra": io.algebra_to_json(ring.algebra),
           "table": [{"block": blk, "index": k} for blk, k in ring.table]}, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tr", description="Tensor rings of nilpotent bimodules.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nilpotency", help="compute the nilpotency index of M")
    _add_instance(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_nilpotency)

    p = sub.add_parser("build", help="write the tensor ring as an algebra document")
    _add_instance(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("hypotheses", help="check condition (T) and the dimension hypotheses")
    _add_instance(p)
    _add_bounds(p)
    p.add_argument("--variant", choices=("GP", "GI", "GF"), default="GP")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_hypotheses)

    p = sub.add_parser("classify", help="classify a pair or copair document")
    _add_instance(p, "the pair or copair document")
    _add_bounds(p)
    p.add_argument("--class", dest="cls", required=True, choices=("proj", "inj", "flat", "gp", "gi", "gf"))
    p.add_argument("--method", choices=("phi", "psi", "direct", "both"), default="both")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run a seeded verification campaign")
    p.add_argument("variant", choices=("gp", "gi", "gf"))
    _add_instance(p)
    _add_bounds(p)
    _add_campaign(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lemmas", help="run the structural lemma suite")
    _add_instance(p)
    _add_bounds(p)
    _add_campaign(p)
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("example", help="generate a named example instance")
    esub = p.add_subparsers(dest="example", required=True)
    q = esub.add_parser("qnak", help="cyclic Nakayama algebra with M = R e_i (x) e_j R")
    q.add_argument("--field", type=int, default=2)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--h", type=int, required=True)
    q.add_argument("--i", type=int, required=True)
    q.add_argument("--j", type=int, required=True)
    q.add_argument("--order", choices=("right-to-left", "left-to-right"), default="right-to-left")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_example)

    p = sub.add_parser("trivext", help="trivial extension of a 1-nilpotent bimodule")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_trivext)

    p = sub.add_parser("morita", help="Morita context ring with zero context maps")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("u", help="B-A bimodule")
    p.add_argument("v", help="A-B bimodule")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_morita)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TensorRingError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
