"""Command-line front end.  Exit codes: 0 ok, 1 verification failed, 2 input error."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .circuit import verify
from .ecsynth import SynthesisError, synthesize
from .formats import FormatError, hwb, parse_circuit, parse_spec, write_circuit, write_spec
from .lnn import map_lnn, simplify
from .metrics import (DEFAULT_COST_MODEL, CostModel, CostModelError, NTooSmall, measure,
                      repeated_terms_bound, worst_case_bound)
from .parallel import BlockVariant, synthesize_parallel_detailed
from .report import REFERENCE, report

OK, VERIFY_FAILED, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _model(path: str | None) -> CostModel:
    return DEFAULT_COST_MODEL if path is None else CostModel.parse(_read(path))


def _verify_line(res) -> str:
    how = "exhaustive" if res.exhaustive else "sampled"
    if res.ok:
        return f"verify: ok ({res.checked} inputs, {how})"
    return (f"verify: FAILED at input {res.counterexample}: expected {res.expected}, "
            f"got {res.actual}")


def cmd_synth(args) -> int:
    p = parse_spec(_read(args.spec))
    model = _model(args.cost_model)
    bins = None
    if args.parallel:
        res = synthesize_parallel_detailed(p, args.parallel, BlockVariant(args.variant), model,
                                           workers=args.workers)
        c = res.circuit
        bins = [{"groups": len(b.groups), "weight": b.weight, "parity": b.parity.value,
                 "depth": d} for b, d in zip(res.plan.bins, res.bin_depths)]
    else:
        c = synthesize(p, model)
    if args.lnn:
        c = simplify(map_lnn(c))
    check = verify(c, p)
    print(_verify_line(check), file=sys.stderr)
    _emit(write_circuit(c), args.out)
    if args.report:
        bench = args.benchmark
        if bench is None and args.spec != "-":
            stem = Path(args.spec).stem
            bench = stem if any(k[0] == stem for k in REFERENCE) else None
        doc = report(c, model, mode="P" if args.parallel else "R", benchmark=bench,
                     lnn=args.lnn, bins=bins, extra={"verified": check.ok})
        text = doc.to_json() + "\n" if args.report.endswith(".json") else doc.to_text()
        _emit(text, args.report)
    return OK if check.ok else VERIFY_FAILED


def cmd_verify(args) -> int:
    p = parse_spec(_read(args.spec))
    c = parse_circuit(_read(args.circuit))
    if p.lines != c.main_lines:
        raise InputError(f"spec has {p.lines} lines, circuit main register has {c.main_lines}")
    res = verify(c, p, samples=args.samples)
    print(_verify_line(res))
    return OK if res.ok else VERIFY_FAILED


def cmd_stats(args) -> int:
    c = parse_circuit(_read(args.circuit))
    m = measure(c, _model(args.cost_model))
    for k, v in m.as_dict().items():
        print(f"{k}: {v}")
    return OK


def cmd_map_lnn(args) -> int:
    c = map_lnn(parse_circuit(_read(args.circuit)))
    if not args.no_simplify:
        c = simplify(c)
    _emit(write_circuit(c), args.out)
    return OK


def cmd_simplify(args) -> int:
    _emit(write_circuit(simplify(parse_circuit(_read(args.circuit)))), args.out)
    return OK


def cmd_gen(args) -> int:
    if args.family != "hwb":
        raise InputError(f"unknown benchmark family {args.family!r}")
    if not 2 <= args.n <= 20:
        raise InputError("hwb needs 2 <= n <= 20")
    _emit(write_spec(hwb(args.n), args.form), args.out)
    return OK


def cmd_bounds(args) -> int:
    if args.n < 3:
        raise InputError("bounds need n >= 3")
    print(f"n: {args.n}")
    print(f"lnn: {str(args.lnn).lower()}")
    print(f"worst_case_bound: {worst_case_bound(args.n, args.lnn):.1f}")
    print(f"repeated_terms_bound: {repeated_terms_bound(args.n):.2f}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclesmith", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synth", help="synthesize a permutation spec into a circuit")
    s.add_argument("spec")
    s.add_argument("--lnn", action="store_true", help="map to nearest-neighbour lines, then simplify")
    s.add_argument("--parallel", type=int, metavar="M", help="parallel structure with M registers (odd, >= 3)")
    s.add_argument("--variant", default="linear", choices=[v.value for v in BlockVariant])
    s.add_argument("--workers", type=int, default=None, help="synthesize registers concurrently")
    s.add_argument("--cost-model", metavar="FILE")
    s.add_argument("--out", metavar="FILE")
    s.add_argument("--report", metavar="FILE", help="write a report (.json for the JSON form)")
    s.add_argument("--benchmark", help="benchmark name for reference figures")
    s.set_defaults(func=cmd_synth)

    v = sub.add_parser("verify", help="check a circuit against a spec")
    v.add_argument("spec")
    v.add_argument("circuit")
    v.add_argument("--samples", type=int, default=4096)
    v.set_defaults(func=cmd_verify)

    st = sub.add_parser("stats", help="print circuit metrics")
    st.add_argument("circuit")
    st.add_argument("--cost-model", metavar="FILE")
    st.set_defaults(func=cmd_stats)

    m = sub.add_parser("map-lnn", help="insert SWAPs for nearest-neighbour lines")
    m.add_argument("circuit")
    m.add_argument("--no-simplify", action="store_true")
    m.add_argument("--out", metavar="FILE")
    m.set_defaults(func=cmd_map_lnn)

    sp = sub.add_parser("simplify", help="apply move/delete rules")
    sp.add_argument("circuit")
    sp.add_argument("--out", metavar="FILE")
    sp.set_defaults(func=cmd_simplify)

    g = sub.add_parser("gen", help="generate a benchmark spec")
    g.add_argument("family", choices=["hwb"])
    g.add_argument("n", type=int)
    g.add_argument("--form", default="permutation", choices=["permutation", "cycles"])
    g.add_argument("--out", metavar="FILE")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bounds", help="worst-case cost bounds for n lines")
    b.add_argument("n", type=int)
    b.add_argument("--lnn", action="store_true")
    b.set_defaults(func=cmd_bounds)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args)
    except (InputError, FormatError, CostModelError, NTooSmall, SynthesisError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
