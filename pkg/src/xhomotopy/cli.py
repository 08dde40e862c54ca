"""Command-line entry point.

Exit status: 0 success or a true verdict, 1 a false verdict, 2 bad input or
an unmet precondition, 3 a size-guard refusal.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import colimits, homotopy, lifting, verifier
from . import io as gio
from .errors import GraphError, PreconditionError, SizeGuardError
from .graph import GraphMap

OK, FALSE, BAD_INPUT, GUARD = 0, 1, 2, 3


def _graph(src: str):
    doc, _ = gio.load_document(src)
    return gio.parse_graph(doc)


def _map(src: str) -> GraphMap:
    doc, base = gio.load_document(src)
    return gio.parse_map(doc, base)


def _graph_or_map(src: str):
    doc, base = gio.load_document(src)
    if isinstance(doc, dict) and "assignment" in doc:
        return gio.parse_map(doc, base)
    return gio.parse_graph(doc)


def _verdict(args, result: dict, value: bool) -> int:
    result = {"verdict": value, **result}
    gio.write_output(result, args.out)
    return OK if value else FALSE


# -- subcommands -----------------------------------------------------------


def cmd_core(args) -> int:
    core, seq = homotopy.stiff_core(_graph(args.graph))
    gio.write_output({"core": gio.serialize_graph(core), "fold_sequence": gio.serialize_fold_sequence(seq)}, args.out)
    return OK


def cmd_equiv(args) -> int:
    first = _graph_or_map(args.inputs[0])
    if isinstance(first, GraphMap):
        if len(args.inputs) != 1:
            raise PreconditionError("equiv takes one map or two graphs")
        value = homotopy.is_x_equivalence(first, cap=args.cap, method=args.method)
        out: dict = {}
        if value and args.witness and args.method == "search":
            out["inverse"] = gio.serialize_map(homotopy.homotopy_inverse(first, args.cap))
        return _verdict(args, out, value)
    if len(args.inputs) != 2:
        raise PreconditionError("equiv takes one map or two graphs")
    second = _graph(args.inputs[1])
    pair = homotopy.x_equivalence_witness(first, second)
    out = {}
    if pair is not None and args.witness:
        out = {"there": gio.serialize_map(pair[0]), "back": gio.serialize_map(pair[1])}
    return _verdict(args, out, pair is not None)


def cmd_homotopic(args) -> int:
    f, g = _map(args.f), _map(args.g)
    h = homotopy.are_homotopic(f, g, max_n=args.max_n, cap=args.cap)
    out = {"homotopy": gio.serialize_homotopy(h)} if h is not None and args.witness else {}
    return _verdict(args, out, h is not None)


def cmd_product(args) -> int:
    gio.write_output(gio.serialize_graph(colimits.product(_graph(args.g), _graph(args.h))), args.out)
    return OK


def cmd_quotient(args) -> int:
    G = _graph(args.graph)
    classes, _ = gio.load_document(args.classes)
    if isinstance(classes, dict):
        classes = classes.get("classes")
    if not isinstance(classes, list) or not all(isinstance(c, list) for c in classes):
        raise gio.DocumentError("classes: expected a list of lists of vertices")
    Q, proj = colimits.quotient(G, classes)
    gio.write_output({"graph": gio.serialize_graph(Q), "projection": gio.serialize_map(proj)}, args.out)
    return OK


def cmd_pushout(args) -> int:
    res = colimits.pushout(_map(args.f), _map(args.i))
    gio.write_output(
        {
            "object": gio.serialize_graph(res.object),
            "left_leg": gio.serialize_map(res.left_leg),
            "right_leg": gio.serialize_map(res.right_leg),
        },
        args.out,
    )
    return OK


def cmd_glue(args) -> int:
    Q, j = colimits.glue(_map(args.i), args.n)
    gio.write_output({"graph": gio.serialize_graph(Q), "inclusion": gio.serialize_map(j)}, args.out)
    return OK


def cmd_hep(args) -> int:
    i = _map(args.i)
    value = lifting.has_hep(i, args.n, cap=args.cap)
    out: dict = {"classification": lifting.hep_classify(i).value}
    if value and args.witness:
        out["retraction"] = gio.serialize_map(lifting.find_retraction(colimits.glue_embedding(i, args.n), args.cap))
    return _verdict(args, out, value)


def cmd_lift(args) -> int:
    doc, base = gio.load_document(args.square)
    lift = lifting.find_lift(gio.parse_square(doc, base), cap=args.cap)
    out = {"lift": gio.serialize_map(lift)} if lift is not None else {}
    return _verdict(args, out, lift is not None)


def cmd_classify_f(args) -> int:
    p = _map(args.p)
    value = lifting.in_class_f(p)
    out: dict = {}
    if args.rlp_cap is not None:
        sq = lifting.rlp_counterexample(p, args.rlp_cap)
        out["rlp_against_unfolds"] = sq is None
        if sq is not None and args.witness:
            out["failing_square"] = {k: gio.serialize_map(getattr(sq, k)) for k in ("left", "top", "bottom", "right")}
    return _verdict(args, out, value)


def cmd_classify_c(args) -> int:
    return _verdict(args, {}, lifting.in_class_c(_map(args.i)))


def cmd_section(args) -> int:
    s = lifting.section_of(_map(args.p))
    gio.write_output({"section": gio.serialize_map(s)}, args.out)
    return OK


def cmd_verify_paper(args) -> int:
    reports = []
    for name, run in verifier.conformance_suite(hep_max=args.hep_max):
        report = run()
        reports.append(report)
        print(f"{'PASS' if report.verdict else 'FAIL'} {name}")
        if args.verbose:
            print("\n".join(report.lines()[1:]))
    if args.out is not None:
        gio.write_output([r.to_dict() for r in reports], args.out)
    return OK if all(r.verdict for r in reports) else FALSE


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=None,
                        help=f"size-guard cap (default: ${homotopy.CAP_ENV} or {homotopy.DEFAULT_CAP})")
    common.add_argument("--out", default=None, help="write the result document here")
    common.add_argument("--witness", action="store_true", help="include witnesses in the result")

    parser = argparse.ArgumentParser(prog="xhomotopy", description="x-homotopy theory of finite graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    add("core", cmd_core, "stiff core and fold sequence").add_argument("graph")
    p = add("equiv", cmd_equiv, "x-homotopy equivalence of a map, or of two graphs")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--method", choices=("search", "core"), default="search")
    p = add("homotopic", cmd_homotopic, "shortest x-homotopy between two maps")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--max-n", type=int, default=None, help="homotopy length bound")
    p = add("product", cmd_product, "categorical product")
    p.add_argument("g")
    p.add_argument("h")
    p = add("quotient", cmd_quotient, "quotient by a partition")
    p.add_argument("graph")
    p.add_argument("classes")
    p = add("pushout", cmd_pushout, "pushout of f: A -> C and i: A -> B")
    p.add_argument("f")
    p.add_argument("i")
    p = add("glue", cmd_glue, "(A x I_n) glued to B along i")
    p.add_argument("i")
    p.add_argument("--n", type=int, default=1)
    p = add("hep", cmd_hep, "homotopy extension property of i with I_n")
    p.add_argument("i")
    p.add_argument("--n", type=int, default=1)
    add("lift", cmd_lift, "diagonal lift of a commuting square").add_argument("square")
    p = add("classify-f", cmd_classify_f, "membership in the class F")
    p.add_argument("p")
    p.add_argument("--rlp-cap", type=int, default=None, help="also run the brute-force lifting oracle")
    add("classify-c", cmd_classify_c, "membership in the class C").add_argument("i")
    add("section", cmd_section, "section of an acyclic class-F map").add_argument("p")
    p = add("verify-paper", cmd_verify_paper, "run the conformance suite")
    p.add_argument("--hep-max", type=int, default=4)
    p.add_argument("--verbose", action="store_true")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return GUARD
    except (GraphError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
