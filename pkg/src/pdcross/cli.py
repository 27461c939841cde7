"""Command-line front end.

Exit codes: 0 computed, 1 negative verdict, 2 usage or parse error, 3 budget
exceeded. Every command prints at least one ``result key=value ...`` line.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from .extension import BudgetExceeded, SearchBudget, extend_planar, find_alternating_chain
from .formats import ParseError, read_pdg, serialize_pdg, serialize_witness, write_pdg
from .model import DrawingWitness, Edge, GraphError, Multigraph, PredrawnGraph, validate_drawing

OK, NEGATIVE, USAGE, BUDGET = 0, 1, 2, 3


def _result(**kv) -> None:
    parts = []
    for k, v in kv.items():
        if isinstance(v, bool):
            v = "true" if v else "false"
        parts.append(f"{k}={v}")
    print("result " + " ".join(parts))


def _budget(args) -> SearchBudget:
    base = SearchBudget()
    return SearchBudget(base.max_vertices, args.budget_nodes or base.max_nodes, args.budget_seconds)


def _csv(text: Optional[str]) -> list:
    return [t for t in (text or "").split(",") if t]


def cmd_check(args) -> int:
    p = read_pdg(args.file)
    rep = validate_drawing(p.drawing)
    _result(valid=rep.ok, vertices=len(p.graph.vertices), edges=len(p.graph.edges),
            predrawn=len(p.h_edge_ids()), crossings=len(p.crossings))
    return OK if rep.ok else NEGATIVE


def cmd_extend(args) -> int:
    p = read_pdg(args.file)
    d = extend_planar(p, _budget(args))
    if d is None:
        chain = find_alternating_chain(p)
        _result(extendable=False, chain=chain is not None)
        return NEGATIVE
    out = args.out or os.path.splitext(args.file)[0] + ".extended.pdg"
    g = Multigraph(p.graph.vertices, tuple(Edge(e.id, e.u, e.v, True, e.uncrossable, e.weight)
                                           for e in p.graph.edges))
    write_pdg(PredrawnGraph(g, d, dict(p.crossings), p.name), out)
    _result(extendable=True, witness=out)
    return OK


def _write_witness(w: DrawingWitness, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_witness(w, f"cost {w.cost}"))


def cmd_solve(args) -> int:
    from .solver import EXCEEDED, OPTIMAL, SolveOptions, solve_pdcr

    p = read_pdg(args.file)
    opts = SolveOptions(max_q=args.max_q, per_edge_cap=args.cap, simple=args.simple,
                        use_reduction=args.reduction, budget=_budget(args),
                        max_seconds=args.budget_seconds)
    r = solve_pdcr(p, opts)
    if args.trace:
        for line in r.trace:
            print(line)
    if r.status == OPTIMAL:
        if args.witness:
            _write_witness(r.witness, args.witness)
        if args.svg:
            from .svg import emit_svg
            emit_svg(r.witness, args.svg, p.name)
        _result(qstar=r.q_star, lower_bound=r.lower_bound, candidates=r.candidates)
        return OK
    _result(status=r.status, lower_bound=r.lower_bound, candidates=r.candidates)
    return BUDGET if r.status == EXCEEDED else NEGATIVE


def _region_and_cycle(p: PredrawnGraph, args):
    from .reduction import find_candidate_region

    region, cycle = _csv(args.region), _csv(args.cycle)
    if region and cycle:
        return region, cycle
    if region or cycle:
        raise GraphError("give both --region and --cycle, or neither")
    found = find_candidate_region(p)
    if found is None:
        return None
    return list(found[0]), list(found[1])


def cmd_reduce(args) -> int:
    from .reduction import apply_reduction

    p = read_pdg(args.file)
    rc = _region_and_cycle(p, args)
    if rc is None:
        _result(reducible=False)
        return NEGATIVE
    out = apply_reduction(p, rc[0], rc[1], args.k, _budget(args))
    if out.infeasible:
        _result(infeasible=True, reason=out.reason.replace(" ", "_"))
        return NEGATIVE
    print(out.step.log_line())
    if args.out:
        write_pdg(out.step.reduced, args.out)
    _result(case=out.step.case, vertices=len(out.step.reduced.graph.vertices))
    return OK


def cmd_flip(args) -> int:
    from .reduction import RegionRejected, is_flippable

    p = read_pdg(args.file)
    rc = _region_and_cycle(p, args)
    if rc is None:
        _result(region=False)
        return NEGATIVE
    try:
        f = is_flippable(p, rc[1], rc[0], budget=_budget(args))
    except RegionRejected:
        _result(verdict="rejected")
        return NEGATIVE
    _result(verdict=f.verdict, orientation=f.orientation or 0)
    return OK


def cmd_framing(args) -> int:
    from .framing import build_framing, check_frame_invariants, serialize_framing, treewidth_upper_bound

    p = read_pdg(args.file)
    f = build_framing(p)
    rep = check_frame_invariants(f)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(serialize_framing(f))
    _result(vertices=len(f.graph.vertices), edges=len(f.graph.edges), connectors=len(f.connector_edges),
            applicable=rep.applicable, planar=rep.planar, three_connected=rep.three_connected,
            tw_upper=treewidth_upper_bound(f.graph))
    return OK if rep.ok else NEGATIVE


def cmd_gen(args) -> int:
    from .instances import CriticalFamilyParams, gen_critical, gen_examples

    os.makedirs(args.out, exist_ok=True)
    written = []
    if args.what in ("examples", "all"):
        for name, ex in gen_examples().items():
            path = os.path.join(args.out, f"{name}.pdg")
            note = ex.note + "\nexpected " + " ".join(f"{k}={v}" for k, v in sorted(ex.expected.items()))
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(serialize_pdg(ex.instance, comment=note))
            written.append(path)
            for key in ("partner",):
                if key in ex.extras:
                    path = os.path.join(args.out, f"{name}.{key}.pdg")
                    write_pdg(ex.extras[key], path)
                    written.append(path)
    if args.what in ("critical", "all"):
        fam = gen_critical(CriticalFamilyParams(args.c, args.copies, args.expand))
        base = os.path.join(args.out, f"critical-c{args.c}-m{args.copies}")
        with open(base + ".pdg", "w", encoding="utf-8") as fh:
            fh.write(serialize_pdg(fam.instance, comment=f"k {fam.k}"))
        _write_witness(fam.d1, base + ".d1.pdg")
        _write_witness(fam.d2, base + ".d2.pdg")
        written += [base + ".pdg", base + ".d1.pdg", base + ".d2.pdg"]
    for path in written:
        print(path)
    _result(files=len(written))
    return OK


def cmd_catalog(args) -> int:
    from .obstructions import contains_obstruction, load_catalog

    cat = load_catalog(args.dir, verify=not args.no_verify)
    if not args.file:
        for e in cat.entries:
            print(f"{e.name} base={e.base} vertices={len(e.instance.graph.vertices)}")
        _result(entries=len(cat.entries), complete=cat.complete)
        return OK
    p = read_pdg(args.file)
    hit = contains_obstruction(p, cat)
    if hit is None:
        _result(obstruction="none")
        return OK
    _result(obstruction=hit[0].name)
    return NEGATIVE


def cmd_emit_svg(args) -> int:
    from .svg import emit_svg

    p = read_pdg(args.file)
    target = p.drawing
    if args.solve:
        from .solver import OPTIMAL, SolveOptions, solve_pdcr
        r = solve_pdcr(p, SolveOptions(max_q=args.max_q, budget=_budget(args), max_seconds=args.budget_seconds))
        if r.status != OPTIMAL:
            _result(status=r.status)
            return NEGATIVE
        target = r.witness
    emit_svg(target, args.out, p.name)
    _result(svg=args.out)
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pdcross", description="Partially predrawn crossing numbers.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-nodes", type=int, default=None, help="search node limit")
    common.add_argument("--budget-seconds", type=float, default=None, help="wall clock limit")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="parse and validate an instance")
    s.add_argument("file")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("extend", parents=[common], help="crossing-free extension of the predrawn part")
    s.add_argument("file")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_extend)

    s = sub.add_parser("solve", parents=[common], help="partially predrawn crossing number")
    s.add_argument("file")
    s.add_argument("--max-q", type=int, default=3)
    s.add_argument("--cap", type=int, default=None, help="crossings allowed per edge")
    s.add_argument("--simple", action="store_true", help="only simple drawings")
    s.add_argument("--reduction", action="store_true", help="shrink the instance first")
    s.add_argument("--witness", help="write the optimal drawing here")
    s.add_argument("--svg", help="render the optimal drawing here")
    s.add_argument("--trace", action="store_true")
    s.set_defaults(fn=cmd_solve)

    for name, fn, helptext in (("reduce", cmd_reduce, "one reduction step"),
                               ("flip", cmd_flip, "flippability of a cycle around a region")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("file")
        s.add_argument("--region", help="comma separated vertices")
        s.add_argument("--cycle", help="comma separated edges in cycle order")
        if name == "reduce":
            s.add_argument("--k", type=int, default=0)
            s.add_argument("--out")
        s.set_defaults(fn=fn)

    s = sub.add_parser("framing", parents=[common], help="build a framing and check the frame")
    s.add_argument("file")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_framing)

    s = sub.add_parser("gen", parents=[common], help="write generated instances")
    s.add_argument("what", choices=("examples", "critical", "all"))
    s.add_argument("--out", default="corpus")
    s.add_argument("--c", type=int, default=3)
    s.add_argument("--copies", type=int, default=1)
    s.add_argument("--expand", action="store_true", help="weights as parallel edges")
    s.set_defaults(fn=cmd_gen)

    s = sub.add_parser("catalog", parents=[common], help="list the obstruction catalog or search an instance")
    s.add_argument("file", nargs="?")
    s.add_argument("--dir")
    s.add_argument("--no-verify", action="store_true")
    s.set_defaults(fn=cmd_catalog)

    s = sub.add_parser("emit-svg", parents=[common], help="render an instance or its optimal drawing")
    s.add_argument("file")
    s.add_argument("--out", required=True)
    s.add_argument("--solve", action="store_true")
    s.add_argument("--max-q", type=int, default=3)
    s.set_defaults(fn=cmd_emit_svg)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.fn(args)
    except BudgetExceeded as exc:
        _result(status="budget-exceeded", detail=str(exc).replace(" ", "_"))
        return BUDGET
    except (ParseError, GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
