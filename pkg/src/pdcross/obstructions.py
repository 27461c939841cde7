"""Obstruction catalog, splitting/release closure and subdivision containment."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .arrangement import Arrangement
from .extension import BudgetExceeded, SearchBudget, extend_planar
from .formats import parse_pdg, serialize_pdg
from .model import (Edge, GraphError, Multigraph, PlaneDrawing, PredrawnGraph, drawings_equivalent, restrict,
                    trivial_witness)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    instance: PredrawnGraph
    base: str
    splittings: tuple = ()
    releases: tuple = ()
    released_edges: frozenset = frozenset()


@dataclass
class ObstructionCatalog:
    entries: list
    complete: bool = False

    def __len__(self):
        return len(self.entries)

    def names(self) -> list:
        return [e.name for e in self.entries]


@dataclass(frozen=True)
class SubdivisionEmbedding:
    vertex_map: dict
    edge_paths: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# containment

def _h_degree(p: PredrawnGraph, v: str) -> int:
    return sum(1 for e in p.graph.incident(v) if e.predrawn)


def _unsubdivide(d: PlaneDrawing, emb: SubdivisionEmbedding, p1: PredrawnGraph) -> PlaneDrawing:
    arr = Arrangement.from_drawing(d)
    # move image ids out of the way so renaming cannot collide
    arr.rename_edges({e: "\x01" + e for e in arr.edges})
    arr.rename_vertices({v: "\x01" + v for v in arr.rot})
    for e1 in p1.drawing.edges:
        vs, es = emb.edge_paths[e1]
        vs = ["\x01" + v for v in vs]
        cur = "\x01" + es[0]
        for k, x in enumerate(vs[1:-1]):
            tmp = f"{e1}\x00{k}"
            arr.smooth(x, tmp, first=cur)
            cur = tmp
        arr.rename_edges({cur: e1})
        if arr.edges[e1][0] != vs[0]:
            arr.flip_edge(e1)
    inv = {"\x01" + w: v for v, w in emb.vertex_map.items() if v in p1.h_vertices}
    arr.rename_vertices(inv)
    return arr.to_drawing()


def _image_drawing_ok(p1: PredrawnGraph, p2: PredrawnGraph, emb: SubdivisionEmbedding) -> bool:
    hv = {emb.vertex_map[v] for v in p1.h_vertices}
    he = set()
    for e1 in p1.drawing.edges:
        vs, es = emb.edge_paths[e1]
        hv.update(vs)
        he.update(es)
    h2 = p2.graph.subgraph(p2.h_vertices, p2.h_edge_ids())
    sub = restrict(trivial_witness(h2, p2.drawing), hv, he)
    back = _unsubdivide(sub, emb, p1)
    return drawings_equivalent(back, p1.drawing)


def find_subdivision_embedding(p1: PredrawnGraph, p2: PredrawnGraph,
                               max_nodes: int = 2_000_000) -> Optional[SubdivisionEmbedding]:
    """A subdivision of ``p1`` inside ``p2`` as a predrawn subgraph, or None."""
    g1, g2 = p1.graph, p2.graph
    if len(g1.vertices) > len(g2.vertices) or len(g1.edges) > len(g2.edges):
        return None
    h1v, h2v = p1.h_vertices, p2.h_vertices
    if len(h1v) > len(h2v) or len(p1.drawing.edges) > len(p2.drawing.edges):
        return None
    # vertex order: connected, high degree first
    order = []
    left = set(g1.vertices)
    while left:
        root = max(left, key=lambda v: (g1.degree(v), v in h1v, v))
        queue = [root]
        left.discard(root)
        while queue:
            queue.sort(key=lambda v: (-g1.degree(v), v))
            x = queue.pop(0)
            order.append(x)
            for y in sorted(g1.neighbors(x)):
                if y in left:
                    left.discard(y)
                    queue.append(y)
    pos = {v: i for i, v in enumerate(order)}
    back_edges = {v: [] for v in order}
    for e in g1.edges:
        later = e.u if pos[e.u] > pos[e.v] else e.v
        back_edges[later].append(e)
    h2deg = {v: _h_degree(p2, v) for v in g2.vertices}
    adj2 = {v: [] for v in g2.vertices}
    for e in g2.edges:
        adj2[e.u].append((e.id, e.v, e.predrawn))
        adj2[e.v].append((e.id, e.u, e.predrawn))
    vmap = {}
    used_v = set()
    used_e = set()
    paths = {}
    counter = [0]

    def tick():
        counter[0] += 1
        if counter[0] > max_nodes:
            raise BudgetExceeded("subdivision search budget exceeded")

    def routes(a, b, need_h):
        stack = [(a, (a,), ())]
        while stack:
            x, vs, es = stack.pop()
            for eid, y, pd in adj2[x]:
                if eid in used_e or eid in es or (need_h and not pd):
                    continue
                if y == b:
                    yield vs + (y,), es + (eid,)
                elif y not in used_v and y not in vs:
                    stack.append((y, vs + (y,), es + (eid,)))

    def route_edges(edges, k):
        tick()
        if k == len(edges):
            return place(len(vmap))
        e = edges[k]
        a, b = vmap[e.u], vmap[e.v]
        for vs, es in routes(a, b, e.predrawn):
            inner = vs[1:-1]
            used_v.update(inner)
            used_e.update(es)
            paths[e.id] = (vs, es)
            if route_edges(edges, k + 1):
                return True
            del paths[e.id]
            used_v.difference_update(inner)
            used_e.difference_update(es)
        return False

    def place(i):
        tick()
        if i == len(order):
            emb = SubdivisionEmbedding(dict(vmap), dict(paths))
            if _image_drawing_ok(p1, p2, emb):
                found.append(emb)
                return True
            return False
        v = order[i]
        need_h = v in h1v
        hd = _h_degree(p1, v)
        for w in g2.vertices:
            if w in used_v or g2.degree(w) < g1.degree(v):
                continue
            if need_h and (w not in h2v or h2deg[w] < hd):
                continue
            vmap[v] = w
            used_v.add(w)
            if route_edges(back_edges[v], 0):
                return True
            used_v.discard(w)
            del vmap[v]
        return False

    found = []
    place(0)
    return found[0] if found else None


def pd_subgraph_of_subdivision(p1: PredrawnGraph, p2: PredrawnGraph, max_nodes: int = 2_000_000) -> bool:
    """Whether some subdivision of ``p1`` is a predrawn subgraph of ``p2``."""
    return find_subdivision_embedding(p1, p2, max_nodes) is not None


def contains_obstruction(p: PredrawnGraph, cat: ObstructionCatalog, max_nodes: int = 2_000_000):
    """First catalog entry found as a subdivided predrawn subgraph, with its embedding."""
    for entry in cat.entries:
        emb = find_subdivision_embedding(entry.instance, p, max_nodes)
        if emb is not None:
            return entry, emb
    return None


# ---------------------------------------------------------------------------
# splitting and release

def _fresh(existing, stem):
    if stem not in existing and not stem.endswith("_"):
        return stem
    k = 1 if stem.endswith("_") else 2
    while f"{stem}{k}" in existing:
        k += 1
    return f"{stem}{k}"


def split_vertex(p: PredrawnGraph, v: str, part1) -> PredrawnGraph:
    """Replace ``v`` by adjacent ``v_1``, ``v_2``; ``part1`` lists edges moving to ``v_1``."""
    g = p.graph
    if v in p.h_vertices:
        raise GraphError("only vertices outside the predrawn part are split")
    if g.degree(v) <= 3:
        raise GraphError("splitting needs degree > 3")
    inc = {e.id for e in g.incident(v)}
    part1 = set(part1)
    if not part1 <= inc or len(part1) < 2 or len(inc - part1) < 2:
        raise GraphError("each side of a split needs at least two edges")
    names = set(g.vertices)
    v1 = _fresh(names, f"{v}_1")
    names.add(v1)
    v2 = _fresh(names, f"{v}_2")
    link = _fresh({e.id for e in g.edges}, f"{v}_s")
    verts = [x for x in g.vertices if x != v] + [v1, v2]
    edges = []
    for e in g.edges:
        if e.id in inc:
            w = v1 if e.id in part1 else v2
            u2 = w if e.u == v else e.u
            x2 = w if e.v == v else e.v
            edges.append(Edge(e.id, u2, x2, e.predrawn, e.uncrossable, e.weight))
        else:
            edges.append(e)
    edges.append(Edge(link, v1, v2))
    return PredrawnGraph(Multigraph(tuple(verts), tuple(edges)), p.drawing, {}, p.name)


def _h_bridges(p: PredrawnGraph) -> list:
    out = []
    hd = p.drawing.edges
    for f in sorted(hd):
        u, v = hd[f]
        seen = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for e, (a, b) in hd.items():
                if e == f or x not in (a, b):
                    continue
                y = b if a == x else a
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if v not in seen:
            out.append(f)
    return out


def release_edge(p: PredrawnGraph, f: str) -> tuple:
    """Release bridge ``f`` of H; returns the new instance and the names of the created edges."""
    if f not in _h_bridges(p):
        raise GraphError(f"{f} is not a bridge of the predrawn part")
    g = p.graph
    e = g.edge(f)
    big = [x for x in (e.u, e.v) if _h_degree(p, x) > 2]
    arr = Arrangement.from_drawing(p.drawing)
    names = set(g.vertices)
    enames = {x.id for x in g.edges}
    verts = list(g.vertices)
    edges = [x for x in g.edges if x.id != f]
    chain = [e.u]
    if e.u in big:
        m = _fresh(names, f"{f}_m1")
        names.add(m)
        chain.append(m)
    if e.v in big:
        m = _fresh(names, f"{f}_m2")
        names.add(m)
        chain.append(m)
    chain.append(e.v)
    pieces = []
    for k in range(len(chain) - 1):
        pid = _fresh(enames, f"{f}_{'abc'[k]}")
        enames.add(pid)
        pieces.append(pid)
    cur = f
    for k in range(1, len(chain) - 1):
        nxt = f"{f}\x00{k}"
        arr.subdivide(cur, chain[k], pieces[k - 1], nxt)
        cur = nxt
    arr.rename_edges({cur: pieces[-1]})
    verts.extend(chain[1:-1])
    # f' is the piece whose ends both have H-degree at most two afterwards
    if len(chain) == 2:
        fprime = pieces[0]
    elif len(chain) == 4:
        fprime = pieces[1]
    else:
        fprime = pieces[1] if e.u in big else pieces[0]
    for k, pid in enumerate(pieces):
        edges.append(Edge(pid, chain[k], chain[k + 1], pid != fprime, e.uncrossable, e.weight))
    arr.delete_edge(fprime)
    newp = PredrawnGraph(Multigraph(tuple(verts), tuple(edges)), arr.to_drawing(), {}, p.name)
    return newp, tuple(pieces)


# ---------------------------------------------------------------------------
# isomorphism of predrawn graphs

def _nx(p: PredrawnGraph):
    import networkx as nx
    g = nx.MultiGraph()
    hv = p.h_vertices
    for v in p.graph.vertices:
        g.add_node(v, h=v in hv)
    for e in p.graph.edges:
        g.add_edge(e.u, e.v, key=e.id, h=e.predrawn, eid=e.id)
    return g


def predrawn_isomorphic(p1: PredrawnGraph, p2: PredrawnGraph) -> bool:
    """Graph isomorphism respecting the predrawn part, plus equivalence of the drawings."""
    from networkx.algorithms.isomorphism import MultiGraphMatcher, categorical_multiedge_match

    if len(p1.graph.vertices) != len(p2.graph.vertices) or len(p1.graph.edges) != len(p2.graph.edges):
        return False
    g1, g2 = _nx(p1), _nx(p2)
    gm = MultiGraphMatcher(g1, g2, node_match=lambda a, b: a["h"] == b["h"],
                           edge_match=categorical_multiedge_match("h", False))
    for vmap in gm.isomorphisms_iter():
        if _drawing_matches(p1, p2, vmap):
            return True
    return False


def _drawing_matches(p1, p2, vmap) -> bool:
    # pair up predrawn edges between matched ends, trying every assignment of parallels
    groups = {}
    for e in p1.drawing.edges:
        u, v = p1.drawing.edges[e]
        groups.setdefault(frozenset((vmap[u], vmap[v])), []).append(e)
    targets = {}
    for e, (u, v) in p2.drawing.edges.items():
        targets.setdefault(frozenset((u, v)), []).append(e)
    keys = list(groups)
    for k in keys:
        if len(targets.get(k, ())) != len(groups[k]):
            return False
    options = [list(itertools.permutations(targets[k])) for k in keys]
    for choice in itertools.product(*options):
        emap = {}
        for k, perm in zip(keys, choice):
            for a, b in zip(groups[k], perm):
                emap[a] = b
        d1 = p1.drawing.relabel(vmap, emap)
        fixed = {}
        for e, (u, v) in d1.edges.items():
            fixed[e] = p2.drawing.edges[e]
        arr = Arrangement.from_drawing(d1)
        for e in list(arr.edges):
            if arr.edges[e] != fixed[e]:
                arr.flip_edge(e)
        if drawings_equivalent(arr.to_drawing(), p2.drawing):
            return True
    return False


# ---------------------------------------------------------------------------
# catalog

def _splits(p: PredrawnGraph):
    g = p.graph
    for v in g.vertices:
        if v in p.h_vertices or g.degree(v) <= 3:
            continue
        inc = sorted(e.id for e in g.incident(v))
        first = inc[0]
        rest = inc[1:]
        for r in range(1, len(rest) + 1):
            for extra in itertools.combinations(rest, r):
                part1 = {first, *extra}
                if len(part1) >= 2 and len(inc) - len(part1) >= 2:
                    yield v, tuple(sorted(part1))


def build_catalog(bases, budget: Optional[SearchBudget] = None, max_entries: int = 400) -> ObstructionCatalog:
    """Close the bases under splitting and release and keep the non-extendable results.

    ``bases`` is a list of ``(name, PredrawnGraph)`` pairs.
    """
    entries = []

    def known(p):
        return any(predrawn_isomorphic(p, e.instance) for e in entries)

    queue = []
    for name, p in bases:
        if extend_planar(p, budget) is not None:
            raise GraphError(f"base {name} is extendable and cannot be an obstruction")
        if not known(p):
            ent = CatalogEntry(name, p, name)
            entries.append(ent)
            queue.append(ent)
    while queue:
        ent = queue.pop(0)
        p = ent.instance
        results = []
        for v, part in _splits(p):
            results.append((split_vertex(p, v, part), ent.splittings + (f"{v}:{'+'.join(part)}",),
                            ent.releases, ent.released_edges))
        for f in _h_bridges(p):
            if f in ent.released_edges:
                continue
            q, pieces = release_edge(p, f)
            results.append((q, ent.splittings, ent.releases + (f,), ent.released_edges | set(pieces)))
        for q, sp, rl, made in results:
            if known(q):
                continue
            if extend_planar(q, budget) is not None:
                continue
            if len(entries) >= max_entries:
                raise BudgetExceeded("catalog closure exceeds the entry limit")
            nm = _fresh({e.name for e in entries}, f"{ent.base}_s{len(sp)}r{len(rl)}_")
            new = CatalogEntry(nm, PredrawnGraph(q.graph, q.drawing, {}, nm), ent.base, sp, rl, frozenset(made))
            entries.append(new)
            queue.append(new)
    return ObstructionCatalog(entries, complete=False)


def write_catalog(cat: ObstructionCatalog, directory: str) -> None:
    import os
    os.makedirs(directory, exist_ok=True)
    manifest = {"complete": cat.complete, "entries": []}
    for ent in cat.entries:
        fn = f"{ent.name}.pdg"
        with open(os.path.join(directory, fn), "w", encoding="utf-8") as fh:
            fh.write(serialize_pdg(ent.instance))
        manifest["entries"].append({"file": fn, "name": ent.name, "base": ent.base,
                                    "splittings": list(ent.splittings), "releases": list(ent.releases),
                                    "released_edges": sorted(ent.released_edges)})
    with open(os.path.join(directory, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=1)
        fh.write("\n")


def load_catalog(directory: Optional[str] = None, verify: bool = True,
                 budget: Optional[SearchBudget] = None) -> ObstructionCatalog:
    """Read a catalog directory (default: the one shipped with the package)."""
    if directory is None:
        root = resources.files("pdcross") / "catalog"
        read = lambda fn: (root / fn).read_text(encoding="utf-8")  # noqa: E731
    else:
        import os
        read = lambda fn: open(os.path.join(directory, fn), encoding="utf-8").read()  # noqa: E731
    manifest = json.loads(read("manifest.json"))
    entries = []
    for m in manifest["entries"]:
        p = parse_pdg(read(m["file"]))
        p = PredrawnGraph(p.graph, p.drawing, p.crossings, m["name"])
        if verify and extend_planar(p, budget) is not None:
            raise GraphError(f"catalog entry {m['name']} is extendable")
        entries.append(CatalogEntry(m["name"], p, m["base"], tuple(m["splittings"]), tuple(m["releases"]),
                                    frozenset(m.get("released_edges", ()))))
    return ObstructionCatalog(entries, bool(manifest.get("complete", False)))


def default_bases() -> list:
    """The obstructions shipped as catalog seeds."""
    from .geometry import drawing_from_coordinates
    from .model import empty_drawing, make_graph

    out = []
    k5v = ["a", "b", "c", "d", "e"]
    k5 = make_graph(k5v, [(u + v, u, v) for i, u in enumerate(k5v) for v in k5v[i + 1:]])
    out.append(("k5", PredrawnGraph(k5, empty_drawing(), {}, "k5")))
    av, bv = ["a1", "a2", "a3"], ["b1", "b2", "b3"]
    k33 = make_graph(av + bv, [(u + v, u, v) for u in av for v in bv])
    out.append(("k33", PredrawnGraph(k33, empty_drawing(), {}, "k33")))

    cyc = {"h1": ("c1", "c2"), "h2": ("c2", "c3"), "h3": ("c3", "c4"), "h4": ("c4", "c1")}
    square = {"c1": (0, 0), "c2": (4, 0), "c3": (4, 4), "c4": (0, 4)}
    # a=2: s and t in the same face, two alternating paths through them
    pos = dict(square, s=(1, 2), t=(3, 2))
    d = drawing_from_coordinates(cyc, pos)
    es = [(k, u, v, True) for k, (u, v) in cyc.items()]
    es += [("p1", "c1", "s"), ("p2", "s", "c3"), ("q1", "c2", "t"), ("q2", "t", "c4")]
    out.append(("chain2", PredrawnGraph(make_graph(list(pos), es), d, {}, "chain2")))
    # a=3: s inside, t outside, middle path is the chord c2c4
    pos = dict(square, s=(1, 2), t=(9, 9))
    d = drawing_from_coordinates(cyc, pos)
    es = [(k, u, v, True) for k, (u, v) in cyc.items()]
    es += [("p1", "c1", "s"), ("p2", "s", "c3"), ("m", "c2", "c4"), ("q1", "c1", "t"), ("q2", "t", "c3")]
    out.append(("chain3", PredrawnGraph(make_graph(list(pos), es), d, {}, "chain3")))
    # K5 with a predrawn star: every star edge is a releasable bridge
    star = {"ab": ("a", "b"), "ac": ("a", "c"), "ad": ("a", "d")}
    d = drawing_from_coordinates(star, {"a": (0, 0), "b": (1, 0), "c": (-1, 1), "d": (-1, -1)})
    g = make_graph(k5v, [(u + v, u, v, (u + v) in star) for i, u in enumerate(k5v) for v in k5v[i + 1:]])
    out.append(("k5star", PredrawnGraph(g, d, {}, "k5star")))
    return out
