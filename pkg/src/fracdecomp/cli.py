"""Command-line front end.

Exit status: 0 on success, 1 on malformed input, 2 when the mathematics
fails (an infeasible triangle, a certificate that does not verify, ...).
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

from . import blowup, core, extremal, oracle, pipeline, textio
from .condense import IndexedPartition, PartitionError, canonical_tripartition_of_cycle, condense
from .triangle import InfeasibleError, TriangleTemplate


class MathFailure(Exception):
    pass


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return textio.format_rational(x)
    if isinstance(x, Decimal):
        return "≈" + format(x, ".12f")
    return str(x)


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise textio.FormatError(f"cannot read {path}: {exc.strerror}") from None


def _template(spec: str) -> TriangleTemplate:
    parts = spec[1:] if spec.startswith("T") else spec
    vals = [textio.parse_rational(x) for x in parts.split(",")]
    if len(vals) != 3:
        raise textio.FormatError("a triangle template needs three weights e1,e2,e3")
    try:
        return TriangleTemplate(*vals)
    except ValueError as exc:
        raise textio.FormatError(str(exc)) from None


def cmd_threshold(args) -> None:
    e = (textio.parse_rational(args.e1), textio.parse_rational(args.e2), textio.parse_rational(args.e3))
    try:
        t = TriangleTemplate(*e)
    except ValueError as exc:
        raise textio.FormatError(str(exc)) from None
    print(_fmt(pipeline.delta_threshold(t)))


def cmd_threshold_table(args) -> None:
    label = {"cycle": "l", "K_a11": "a", "K_aa1": "a"}[args.family]
    print(f"{label} lower upper")
    for row in extremal.threshold_table(args.family, args.max):
        print(f"{row.param} {_fmt(row.lower)} {_fmt(row.upper)}")


def cmd_decompose(args) -> None:
    G = core.as_graph(textio.parse_named_graph(args.graph))
    e = _template(args.template)
    try:
        dec = pipeline.fractional_triangle_decomposition(G, e, jobs=args.jobs)
    except pipeline.DecompositionError as exc:
        raise MathFailure(str(exc)) from None
    ver = dec.verification
    _write(args.out, textio.write_decomposition(dec.copies))
    n_tri = sum(1 for _ in pipeline.triangles(G))
    print(f"triangles={n_tri} copies={len(dec.copies)} status={ver.status}")
    if not ver.exact:
        raise MathFailure(ver.describe())


def cmd_condense(args) -> None:
    F = textio.parse_named_graph(args.graph)
    parts = textio.read_partition(_read_text(args.partition))
    try:
        W = condense(F, parts)
    except PartitionError as exc:
        raise textio.FormatError(str(exc)) from None
    text = textio.write_graph(W)
    _write(args.out, text)
    sys.stdout.write(text)


def cmd_blowup(args) -> None:
    F = core.as_graph(textio.parse_named_graph(args.graph))
    if args.partition:
        parts = textio.read_partition(_read_text(args.partition))
    elif F.n % 2 == 1 and F == core.cycle_graph(F.n):
        parts = canonical_tripartition_of_cycle(F.n)
    else:
        raise textio.FormatError("--partition is required unless the graph is an odd cycle")
    try:
        P = IndexedPartition(parts)
        W = condense(F, P)
        size = blowup.count_injections(F, P, args.q)
    except PartitionError as exc:
        raise textio.FormatError(str(exc)) from None
    Q = blowup.blow_up(W, args.q)
    _write(args.host_out, textio.write_graph(Q))
    alpha = _fmt(Fraction(args.q * args.q, size))
    if size > args.max_copies:
        ok = blowup.blowup_identity_check(F, P, args.q)
        print(f"injections={size} alpha={alpha} status={'identity-verified' if ok else 'identity-failed'}")
        if not ok:
            raise MathFailure("per-edge identity failed")
        return
    dec = blowup.blowup_decomposition(F, P, args.q, max_copies=args.max_copies)
    _write(args.out, textio.write_decomposition(dec.copies))
    print(f"injections={size} copies={len(dec.copies)} alpha={alpha} status={dec.verification.status}")
    if not dec.is_exact():
        raise MathFailure(dec.verification.describe())


def _template_name(spec: str) -> str:
    return Path(spec).stem if Path(spec).is_file() else spec


def cmd_extremal(args) -> None:
    W = textio.parse_named_graph(args.template_graph)
    if args.lemma == 7:
        if args.n is None:
            raise textio.FormatError("--n is required for the bipartition construction")
        G, cert = extremal.build_lemma7_graph(W, args.n)
    else:
        n = args.n if args.n is not None else extremal.smallest_fourpart_n(W)
        G, cert = extremal.build_lemma8_graph(W, n)
    _write(args.out, textio.write_bipartition_certificate(cert, W, _template_name(args.template_graph)))
    _write(args.host_out, textio.write_graph(G))
    valid = extremal.verify_certificate(G, cert, W)
    degs = sorted(set(G.degrees()))
    print(
        f"n={G.n} rho={_fmt(cert.rho)} g0={len(cert.g0)} g1={len(cert.g1)} "
        f"degrees={','.join(map(str, degs))} divisible={str(core.is_divisible(G, W)).lower()} "
        f"valid={str(valid).lower()}"
    )
    if not valid:
        raise MathFailure("certificate does not verify")


def cmd_verify(args) -> None:
    host = textio.parse_named_graph(args.host)
    text = _read_text(args.certificate)
    kind = textio.certificate_kind(text)
    if kind == "fractional-decomposition":
        copies = textio.read_decomposition(text)
        try:
            ver = core.verify_fractional_decomposition(host, copies)
        except ValueError as exc:
            raise MathFailure(str(exc)) from None
        print(ver.describe())
        if not ver.exact:
            raise MathFailure(ver.describe())
    elif kind == "edge-bipartition":
        raw = textio.read_bipartition_certificate(text)
        if raw.direction not in extremal.DIRECTIONS:
            raise textio.FormatError(f"unknown direction {raw.direction!r}")
        cert = extremal.make_certificate(host, raw.parts, raw.rho, raw.direction)
        problems = extremal.certificate_problems(host, cert, raw.template)
        if (raw.g0, raw.g1) != (len(cert.g0), len(cert.g1)):
            problems.append(f"declared edge counts {raw.g0}/{raw.g1} differ from {len(cert.g0)}/{len(cert.g1)}")
        if problems:
            print("invalid: " + "; ".join(problems))
            raise MathFailure("certificate does not verify")
        print("valid")
    else:
        raise textio.FormatError("unknown certificate type")


def cmd_oracle(args) -> None:
    W = textio.parse_named_graph(args.template)
    G = textio.parse_named_graph(args.host)
    try:
        res = oracle.fractional_decomposition_exists(W, G, max_vertices=args.max_vertices,
                                                     name=_template_name(args.template))
    except oracle.HostTooLargeError as exc:
        raise textio.FormatError(str(exc)) from None
    print("feasible" if res.feasible else "infeasible")
    if res.feasible and args.witness:
        _write(args.witness, textio.write_decomposition(res.witness.copies))


def cmd_generate(args) -> None:
    rng = random.Random(args.seed)
    if args.min_degree is not None:
        d = args.min_degree
    else:
        d = math.ceil(textio.parse_rational(args.min_fraction) * args.n)
    try:
        G = core.random_graph_min_degree(args.n, d, rng)
    except ValueError as exc:
        raise textio.FormatError(str(exc)) from None
    text = textio.write_graph(G)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    common.add_argument("--seed", type=int, default=0, help="seed for random test-data generation")

    p = argparse.ArgumentParser(prog="fracdecomp", description="Exact fractional graph decompositions.",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("threshold", parents=[common], help="minimum-degree threshold for T_{e1,e2,e3}")
    s.add_argument("--e1", required=True)
    s.add_argument("--e2", required=True)
    s.add_argument("--e3", required=True)
    s.set_defaults(func=cmd_threshold)

    s = sub.add_parser("threshold-table", parents=[common], help="lower/upper bounds for a graph family")
    s.add_argument("--family", choices=["cycle", "K_a11", "K_aa1"], required=True)
    s.add_argument("--max", type=int, required=True)
    s.set_defaults(func=cmd_threshold_table)

    s = sub.add_parser("decompose", parents=[common], help="fractional T_e-decomposition via triangles")
    s.add_argument("--graph", required=True)
    s.add_argument("--template", required=True, help="e1,e2,e3 or Te1,e2,e3")
    s.add_argument("--out", help="certificate output path")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("condense", parents=[common], help="condensation of a graph by a partition")
    s.add_argument("--graph", required=True)
    s.add_argument("--partition", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_condense)

    s = sub.add_parser("blowup", parents=[common], help="fractional F-decomposition of a blown-up condensation")
    s.add_argument("--graph", required=True)
    s.add_argument("--partition")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--out", help="certificate output path")
    s.add_argument("--host-out", help="write the blow-up host graph here")
    s.add_argument("--max-copies", type=int, default=blowup.DEFAULT_MAX_COPIES)
    s.set_defaults(func=cmd_blowup)

    s = sub.add_parser("extremal", parents=[common], help="lower-bound host with a nonexistence certificate")
    s.add_argument("--lemma", type=int, choices=[7, 8], required=True)
    s.add_argument("--template-graph", required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--out", help="certificate output path")
    s.add_argument("--host-out", help="write the host graph here")
    s.set_defaults(func=cmd_extremal)

    s = sub.add_parser("verify", parents=[common], help="check a certificate against a host")
    s.add_argument("--host", required=True)
    s.add_argument("--certificate", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", parents=[common], help="decide existence by exact LP (small hosts)")
    s.add_argument("--template", required=True)
    s.add_argument("--host", required=True)
    s.add_argument("--witness", help="write a witness certificate here when feasible")
    s.add_argument("--max-vertices", type=int, default=oracle.MAX_HOST_VERTICES)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("generate", parents=[common], help="random graph with a minimum-degree floor")
    s.add_argument("--n", type=int, required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--min-degree", type=int)
    g.add_argument("--min-fraction", help="p/q; floor is ceil(p/q * n)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_generate)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        args.func(args)
    except MathFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (textio.FormatError, PartitionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
