"""Reader and writer for the line-based ``pdg v1`` instance format.

Layout::

    pdg v1
    v <id>
    e <id> <u> <v> [H] [X] [w=<int>]
    cross <vertex> <e1> <pos1> <e2> <pos2>
    rot <vertex> <edge>.<0|1> ...
    outer <edge> <fwd|rev> <left|right>
    contain <component> <edge> <fwd|rev> <left|right> [mirrored]
    contain <component> none mirrored

``#`` starts a comment.  There is one ``outer`` line per drawn component with
edges.  A vertex counts as drawn when it has a ``rot`` line.
"""
from __future__ import annotations

from typing import Iterable, Optional

from .model import (Crossing, CrossingRecord, DrawingWitness, Edge, GraphError, Multigraph, Placement,
                    PlaneDrawing, PredrawnGraph, validate_drawing)


class ParseError(GraphError):
    pass


BASE_KEYWORDS = {"v", "e", "cross", "rot", "outer", "contain"}
DIRS = {"fwd", "rev"}
SIDES = {"left", "right"}


def _face(tokens, lineno):
    if len(tokens) != 3 or tokens[1] not in DIRS or tokens[2] not in SIDES:
        raise ParseError(f"line {lineno}: bad face reference {' '.join(tokens)}")
    return (tokens[0], tokens[1], tokens[2])


def parse_document(text: str, allow: Iterable[str] = ()) -> tuple:
    """Parse an instance; lines with keywords in ``allow`` are returned untouched."""
    allowed = set(allow)
    verts = []
    edges = []
    cross = []
    rot = {}
    outer_refs = []
    contain = []
    extras = []
    header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if not header:
            if tok != ["pdg", "v1"]:
                raise ParseError(f"line {lineno}: expected header 'pdg v1'")
            header = True
            continue
        kw, args = tok[0], tok[1:]
        if kw == "v":
            if len(args) != 1:
                raise ParseError(f"line {lineno}: 'v' takes one id")
            verts.append(args[0])
        elif kw == "e":
            if len(args) < 3:
                raise ParseError(f"line {lineno}: 'e' needs id and two ends")
            eid, u, v = args[:3]
            predrawn = uncross = False
            weight = 1
            for flag in args[3:]:
                if flag == "H" and not predrawn:
                    predrawn = True
                elif flag == "X" and not uncross:
                    uncross = True
                elif flag.startswith("w="):
                    try:
                        weight = int(flag[2:])
                    except ValueError:
                        raise ParseError(f"line {lineno}: bad weight {flag}") from None
                else:
                    raise ParseError(f"line {lineno}: unknown edge flag {flag}")
            edges.append((lineno, Edge(eid, u, v, predrawn, uncross, weight)))
        elif kw == "cross":
            if len(args) != 5:
                raise ParseError(f"line {lineno}: 'cross' takes 5 fields")
            try:
                cross.append((lineno, args[0], args[1], int(args[2]), args[3], int(args[4])))
            except ValueError:
                raise ParseError(f"line {lineno}: crossing positions must be integers") from None
        elif kw == "rot":
            if not args:
                raise ParseError(f"line {lineno}: 'rot' needs a vertex")
            if args[0] in rot:
                raise ParseError(f"line {lineno}: duplicate rotation for {args[0]}")
            ends = []
            for t in args[1:]:
                eid, _, idx = t.rpartition(".")
                if not eid or idx not in ("0", "1"):
                    raise ParseError(f"line {lineno}: bad edge-end {t}")
                ends.append((eid, int(idx)))
            rot[args[0]] = tuple(ends)
        elif kw == "outer":
            outer_refs.append((lineno, _face(args, lineno)))
        elif kw == "contain":
            if len(args) == 3 and args[1] == "none" and args[2] == "mirrored":
                contain.append((lineno, args[0], None, True))
            elif len(args) in (4, 5):
                mirrored = False
                if len(args) == 5:
                    if args[4] != "mirrored":
                        raise ParseError(f"line {lineno}: unknown containment flag {args[4]}")
                    mirrored = True
                contain.append((lineno, args[0], _face(args[1:4], lineno), mirrored))
            else:
                raise ParseError(f"line {lineno}: bad 'contain' line")
        elif kw in allowed:
            extras.append((kw, args))
        else:
            raise ParseError(f"line {lineno}: unknown keyword {kw}")
    if not header:
        raise ParseError("empty document")
    try:
        g = Multigraph(tuple(verts), tuple(e for _, e in edges))
    except GraphError as exc:
        raise ParseError(str(exc)) from None
    dedges = {}
    for _, e in edges:
        if e.predrawn:
            dedges[e.id] = (e.u, e.v)
    for v in rot:
        if v not in set(verts):
            raise ParseError(f"rotation for undeclared vertex {v}")
    for eid, (u, v) in dedges.items():
        for x in (u, v):
            if x not in rot:
                raise ParseError(f"predrawn edge {eid} ends at {x} which has no rotation")
    tmp = PlaneDrawing(dedges, rot)
    ci = tmp.component_index()
    outer = {}
    for lineno, ref in outer_refs:
        if ref[0] not in dedges:
            raise ParseError(f"line {lineno}: outer face names non-predrawn edge {ref[0]}")
        c = ci[dedges[ref[0]][0]]
        if c in outer:
            raise ParseError(f"line {lineno}: second outer face for component {c}")
        outer[c] = ref
    cont = {}
    for lineno, comp, ref, mirrored in contain:
        if comp not in ci or ci[comp] != comp:
            raise ParseError(f"line {lineno}: {comp} is not a component id (smallest vertex id)")
        if ref is not None and ref[0] not in dedges:
            raise ParseError(f"line {lineno}: host face names non-predrawn edge {ref[0]}")
        cont[comp] = Placement(ref, mirrored)
    drawing = PlaneDrawing(dedges, rot, outer, cont)
    rep = validate_drawing(drawing)
    if not rep.ok:
        raise ParseError("invalid drawing: " + "; ".join(rep.violations[:3]))
    registry = {}
    for lineno, x, e1, p1, e2, p2 in cross:
        ring = rot.get(x)
        if ring is None or len(ring) != 4:
            raise ParseError(f"line {lineno}: crossing {x} needs a rotation of length 4")
        lab0 = {ring[0][0], ring[2][0]}
        if any(p.rpartition("~")[0] == e2 for p in lab0) and not any(p.rpartition("~")[0] == e1 for p in lab0):
            e1, p1, e2, p2 = e2, p2, e1, p1
        labels = {p: (0 if p in lab0 else 1) for p, _ in ring}
        registry[x] = CrossingRecord(e1, p1, e2, p2, labels)
    try:
        p = PredrawnGraph(g, drawing, registry)
    except GraphError as exc:
        raise ParseError(str(exc)) from None
    return p, extras


def parse_pdg(text: str) -> PredrawnGraph:
    return parse_document(text)[0]


def read_pdg(path: str) -> PredrawnGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_pdg(fh.read())


def _fmt_face(ref) -> str:
    return f"{ref[0]} {ref[1]} {ref[2]}"


def serialize_pdg(p: PredrawnGraph, extras: Iterable[str] = (), comment: Optional[str] = None) -> str:
    out = ["pdg v1"]
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    for v in p.graph.vertices:
        out.append(f"v {v}")
    for e in p.graph.edges:
        flags = []
        if e.predrawn:
            flags.append("H")
        if e.uncrossable:
            flags.append("X")
        if e.weight != 1:
            flags.append(f"w={e.weight}")
        out.append(" ".join(["e", e.id, e.u, e.v] + flags))
    d = p.drawing
    for x, rec in p.crossings.items():
        out.append(f"cross {x} {rec.edge_a} {rec.pos_a} {rec.edge_b} {rec.pos_b}")
    for v, ds in d.rotations.items():
        out.append(" ".join(["rot", v] + [f"{e}.{i}" for e, i in ds]))
    for c, ref in sorted(d.outer.items()):
        out.append(f"outer {_fmt_face(ref)}")
    for c, pl in sorted(d.containment.items()):
        if pl.host is None:
            if pl.mirrored:
                out.append(f"contain {c} none mirrored")
            continue
        out.append(f"contain {c} {_fmt_face(pl.host)}" + (" mirrored" if pl.mirrored else ""))
    out.extend(extras)
    return "\n".join(out) + "\n"


def write_pdg(p: PredrawnGraph, path: str, extras: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_pdg(p, extras))


def structurally_equal(a: PredrawnGraph, b: PredrawnGraph) -> bool:
    """Same graph, same stored drawing data and same crossing registry."""
    def norm_d(d):
        cont = {c: pl for c, pl in d.containment.items() if pl.host is not None or pl.mirrored}
        return (dict(d.edges), {v: tuple(r) for v, r in d.rotations.items()}, dict(d.outer), cont)

    def norm_x(xs):
        return {x: (r.edge_a, r.pos_a, r.edge_b, r.pos_b, dict(r.labels)) for x, r in xs.items()}

    return (set(a.graph.vertices) == set(b.graph.vertices)
            and {e.id: e for e in a.graph.edges} == {e.id: e for e in b.graph.edges}
            and norm_d(a.drawing) == norm_d(b.drawing)
            and norm_x(a.crossings) == norm_x(b.crossings))


def serialize_witness(w: DrawingWitness, comment: Optional[str] = None) -> str:
    """The planarised drawing as a fully drawn instance, plus ``chain`` and ``xing`` lines."""
    es = tuple(Edge(e, u, v, True) for e, (u, v) in w.planarised.edges.items())
    flat = PredrawnGraph(Multigraph(tuple(w.planarised.rotations), es), w.planarised)
    extras = [" ".join(["chain", e] + list(ps)) for e, ps in w.chains.items()]
    extras += [f"xing {c.vertex} {c.edge_a} {c.edge_b} {c.cost}" for c in w.crossings]
    return serialize_pdg(flat, extras, comment)


def parse_witness(text: str, graph: Multigraph) -> DrawingWitness:
    flat, extras = parse_document(text, allow=("chain", "xing"))
    chains, xs = {}, []
    for kw, args in extras:
        if kw == "chain" and len(args) >= 2:
            chains[args[0]] = tuple(args[1:])
        elif kw == "xing" and len(args) == 4 and args[3].isdigit():
            xs.append(Crossing(args[0], args[1], args[2], int(args[3])))
        else:
            raise ParseError(f"bad witness line: {kw} {' '.join(args)}")
    return DrawingWitness(graph, flat.drawing, chains, tuple(xs))
