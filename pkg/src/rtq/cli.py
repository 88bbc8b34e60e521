"""``rtq`` command line: quiver data, oracle polynomials, verification,
diagrams and batch runs.

Exit codes: 0 ok, 1 mismatch, 2 bad input, 3 internal failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .arcdiagram import ConstructionError, build_diagram, emit_svg
from .quiverforms import PartitionInconsistency, block_partition, compute_q_conf2, compute_quiver, reduce_almost
from .seriescheck import verify_tangle
from .skeinoracle import poincare, specialize_t
from .tanglecore import TangleFraction, coprime_fractions
from .windings import LoopError

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
DEFAULT_JMAX_CAP = 6


class InputError(Exception):
    pass


def jmax_cap() -> int:
    raw = os.environ.get("RTQ_JMAX_CAP")
    if raw is None:
        return DEFAULT_JMAX_CAP
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"RTQ_JMAX_CAP must be an integer, got {raw!r}") from None


def _fraction(text: str) -> TangleFraction:
    try:
        return TangleFraction.parse(text)
    except ValueError as exc:
        raise InputError(f"bad tangle {text!r}: {exc}") from None


def _color(j: int) -> int:
    if j < 0:
        raise InputError("color must be non-negative")
    cap = jmax_cap()
    if j > cap:
        raise InputError(f"color {j} exceeds RTQ_JMAX_CAP={cap}")
    return j


def _sweep_size(n: int) -> int:
    if n < 1:
        raise InputError("sweep bound must be at least 1")
    return n


def quiver_data(f: TangleFraction, reduced: bool):
    d = build_diagram(f)
    qd = compute_quiver(d)
    if reduced:
        qd = reduce_almost(qd, block_partition(d, qd))
    return qd


def verify_one(f: TangleFraction, jmax: int) -> list[dict]:
    """Oracle comparison per color plus the two-point-loop Q cross-check."""
    d = build_diagram(f)
    qd = compute_quiver(d)
    red = reduce_almost(qd, block_partition(d, qd))
    lines = verify_tangle(f, qd, jmax, red)
    if compute_q_conf2(d) != qd.Q:
        lines.append({"tangle": str(f), "j": None, "status": "mismatch",
                      "detail": "Q from two-point loops differs"})
    return lines


def cmd_quiver(args) -> int:
    qd = quiver_data(_fraction(args.tangle), args.reduced)
    out = {"json": qd.to_json, "csv": qd.to_csv, "pretty": qd.to_pretty}[args.format]()
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return EXIT_OK


def cmd_poincare(args) -> int:
    f = _fraction(args.tangle)
    w = poincare(f, _color(args.j))
    if args.homfly:
        w = specialize_t(w)
    print(w)
    return EXIT_OK


def _tangles(args) -> list[TangleFraction]:
    if args.sweep is not None:
        return coprime_fractions(_sweep_size(args.sweep))
    if args.tangle is None:
        raise InputError("give a tangle or --sweep N")
    return [_fraction(args.tangle)]


def cmd_verify(args) -> int:
    jmax = _color(args.jmax)
    tangles = _tangles(args)
    status = EXIT_OK
    for f in tangles:
        for line in verify_one(f, jmax):
            print(json.dumps(line))
            if line["status"] != "ok":
                status = EXIT_MISMATCH
    return status


def cmd_svg(args) -> int:
    svg = emit_svg(build_diagram(_fraction(args.tangle)))
    if args.output == "-":
        sys.stdout.write(svg)
    else:
        Path(args.output).write_text(svg)
    return EXIT_OK


def _batch_unit(task: tuple[str, int]) -> dict:
    text, jmax = task
    f = TangleFraction.parse(text)
    full = quiver_data(f, False)
    try:
        red = quiver_data(f, True).to_dict()
    except PartitionInconsistency as exc:
        red = {"error": str(exc)}
    report = verify_one(f, jmax) if jmax >= 0 else []
    return {"tangle": text, "quiver": full.to_dict(), "reduced": red, "verify": report}


def cmd_batch(args) -> int:
    if args.sweep is None:
        raise InputError("batch needs --sweep N")
    tangles = coprime_fractions(_sweep_size(args.sweep))
    jmax = _color(args.jmax) if args.jmax is not None else -1
    if args.jobs < 1:
        raise InputError("--jobs must be positive")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    tasks = [(str(f), jmax) for f in tangles]
    if args.jobs == 1:
        results = [_batch_unit(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_unit, tasks))
    failed = []
    for res in results:
        name = res["tangle"].replace("/", "_") + ".json"
        (out / name).write_text(json.dumps(res, indent=2) + "\n")
        if any(line["status"] != "ok" for line in res["verify"]):
            failed.append(res["tangle"])
    summary = {"count": len(results), "jmax": jmax if jmax >= 0 else None, "failed": failed}
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(json.dumps(summary))
    return EXIT_MISMATCH if failed else EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rtq", description="Quiver forms for rational tangles.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("quiver", help="print K, S, A, T and Q")
    q.add_argument("tangle", help="u/v")
    q.add_argument("--reduced", action="store_true", help="almost-quiver form")
    q.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    q.set_defaults(func=cmd_quiver)

    pc = sub.add_parser("poincare", help="colored polynomial from the twist rules")
    pc.add_argument("tangle")
    pc.add_argument("-j", type=int, required=True, help="color")
    pc.add_argument("--homfly", action="store_true", help="specialize t = -1")
    pc.set_defaults(func=cmd_poincare)

    v = sub.add_parser("verify", help="compare the quiver expansion with the twist rules")
    v.add_argument("tangle", nargs="?")
    v.add_argument("--sweep", type=int, help="all coprime u/v with u + v <= N")
    v.add_argument("--jmax", type=int, default=2)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("svg", help="draw the arc diagram")
    s.add_argument("tangle")
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_svg)

    b = sub.add_parser("batch", help="one JSON file per tangle plus summary.json")
    b.add_argument("--sweep", type=int, required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--jmax", type=int, help="also verify up to this color")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_batch)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"rtq: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConstructionError, PartitionInconsistency, LoopError) as exc:
        print(f"rtq: internal failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # anything else is a bug, not bad input
        print(f"rtq: internal failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
