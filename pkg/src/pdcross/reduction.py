"""Region contraction with flippability bookkeeping.

A connected region I enclosed by a cycle C is contracted to one vertex v_I.
Whether a planar drawing of the region can be glued back depends on the
orientation of C, probed with a small gadget attached to one edge of C.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .arrangement import Arrangement
from .extension import SearchBudget, extend_planar, is_extendable
from .model import Edge, GraphError, Multigraph, PredrawnGraph

FLIPPABLE = "flippable"
UNFLIPPABLE = "unflippable"
CASES = ("infeasible-a", "contract-c", "contract-d", "triangle-e")
CASE_LETTER = {"infeasible-a": "a", "contract-c": "c", "contract-d": "d", "triangle-e": "e"}


class RegionRejected(GraphError):
    """The region and cycle do not support the flippability probes."""


@dataclass(frozen=True)
class Flippability:
    verdict: str
    orientation: Optional[int]
    edge: str = ""
    n1: str = ""
    n2: str = ""

    @property
    def flippable(self) -> bool:
        return self.verdict == FLIPPABLE


@dataclass(frozen=True)
class ReductionStep:
    region: tuple
    cycle: tuple
    case: str
    contraction_map: dict
    original: PredrawnGraph
    reduced: PredrawnGraph
    v_i: str
    triangle_data: Optional[dict] = None
    k: int = 0

    def log_line(self) -> str:
        parts = [f"reduce case={CASE_LETTER[self.case]}", "I=" + ",".join(self.region),
                 "C=" + ",".join(self.cycle), f"vI={self.v_i}", f"k={self.k}"]
        if self.triangle_data:
            parts.append("tri=" + ",".join(self.triangle_data["triple"]))
            parts.append("TI=" + ",".join(self.triangle_data["vertices"]))
        parts.append(f"n={len(self.original.graph.vertices)}->{len(self.reduced.graph.vertices)}")
        return " ".join(parts)


@dataclass(frozen=True)
class ReductionOutcome:
    infeasible: bool
    step: Optional[ReductionStep] = None
    reason: str = ""


def parse_log_line(line: str) -> dict:
    """Fields of a ``reduce`` log line."""
    tok = line.split()
    if not tok or tok[0] != "reduce":
        raise GraphError(f"not a reduce line: {line!r}")
    out = {}
    for t in tok[1:]:
        k, _, v = t.partition("=")
        out[k] = v
    for k in ("I", "C", "tri", "TI"):
        if k in out:
            out[k] = tuple(x for x in out[k].split(",") if x)
    return out


# ---------------------------------------------------------------------------
# helpers

def _fresh(taken, stem: str) -> str:
    if stem not in taken:
        return stem
    k = 1
    while f"{stem}{k}" in taken:
        k += 1
    return f"{stem}{k}"


def cycle_order(g: Multigraph, cycle) -> tuple:
    """Vertices and edges of a cycle in traversal order, starting at its smallest vertex."""
    es = [g.edge(e) for e in cycle]
    if len(es) < 2:
        raise GraphError("a cycle needs at least two edges")
    adj = {}
    for e in es:
        for x in e.ends:
            adj.setdefault(x, []).append(e)
    if any(len(v) != 2 for v in adj.values()):
        raise GraphError("edges do not form a cycle")
    start = min(adj)
    first = min(adj[start], key=lambda e: (e.other(start), e.id))
    vs, out = [start], [first.id]
    cur, prev = first.other(start), first
    while cur != start:
        vs.append(cur)
        nxt = adj[cur][0] if adj[cur][1].id == prev.id else adj[cur][1]
        out.append(nxt.id)
        prev, cur = nxt, nxt.other(cur)
    if len(out) != len(es):
        raise GraphError("edges do not form a single cycle")
    return tuple(vs), tuple(out)


def neighbourhood(g: Multigraph, region) -> set:
    rs = set(region)
    return {w for v in rs for w in g.neighbors(v) if w not in rs}


def _connected(g: Multigraph, vs) -> bool:
    vs = set(vs)
    if not vs:
        return False
    start = next(iter(vs))
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for w in g.neighbors(x):
            if w in vs and w not in seen:
                seen.add(w)
                todo.append(w)
    return seen == vs


def host_instance(p: PredrawnGraph, vertices) -> PredrawnGraph:
    """G[vertices] together with all of H, drawn part unchanged."""
    keep = set(vertices) | p.h_vertices
    es = [e for e in p.graph.edges if e.predrawn or (e.u in set(vertices) and e.v in set(vertices))]
    g = Multigraph(tuple(v for v in p.graph.vertices if v in keep), tuple(es))
    return PredrawnGraph(g, p.drawing, p.crossings, p.name)


# ---------------------------------------------------------------------------
# flippability

_G = "~f"


def _gadget_names(taken) -> dict:
    names = {}
    for key in ("T1", "T2", "T3", "t", "i1", "i2", "v1", "v2", "v3", "v4",
                "T12", "T23", "T31", "e0", "e1", "e2", "e3", "e4", "tv2", "tv3", "i1e", "i2e", "n1e", "n2e"):
        names[key] = _fresh(taken, _G + key)
    return names


def _first_in(seq, targets):
    for x in seq:
        if x in targets:
            return x
    return None


def _corner_at(arr: Arrangement, x: str, d) -> int:
    """Insertion index at ``x`` opening into the face left of dart ``d`` (``x`` is an end of ``d``)."""
    if arr.tail(d) == x:
        return arr.rot[x].index(d)
    return arr.rot[x].index(arr.next_dart(d))


def is_flippable(p: PredrawnGraph, cycle, region, host: Optional[Multigraph] = None,
                 budget: Optional[SearchBudget] = None) -> Flippability:
    """Probe both gadget orientations on ``cycle`` with respect to ``region``."""
    region = set(region)
    g = host if host is not None else host_instance(p, region | _cycle_vertices(p.graph, cycle)).graph
    cvs, ces = cycle_order(g, cycle)
    nbr = neighbourhood(g, region)
    if not nbr:
        raise RegionRejected("region has no neighbours on the cycle")
    hset = p.h_edge_ids()
    choices = sorted(e for e in ces if e in hset) or sorted(ces)
    e = choices[0]
    j = ces.index(e)
    n = len(cvs)
    a, b = cvs[j], cvs[(j + 1) % n]
    back = [cvs[(j - s) % n] for s in range(n)]
    fwd = [cvs[(j + 1 + s) % n] for s in range(n)]
    c1, c2 = _first_in(back, nbr), _first_in(fwd, nbr)
    n1 = min(w for w in g.neighbors(c1) if w in region)
    n2 = min(w for w in g.neighbors(c2) if w in region)
    N = _gadget_names(set(g.vertices) | set(g.edge_ids))
    on_h = e in hset
    drawn = {"T12", "T23", "T31", "e1", "e2", "e3", "tv2", "tv3", "i1e"}
    if on_h:
        drawn |= {"e0", "e4"}
    wiring = [("T12", "T1", "T2"), ("T23", "T2", "T3"), ("T31", "T3", "T1"),
              ("e0", a, "v1"), ("e1", "v1", "v2"), ("e2", "v2", "v3"), ("e3", "v3", "v4"), ("e4", "v4", b),
              ("tv2", "t", "v2"), ("tv3", "t", "v3"), ("i1e", "v2", "i1"), ("i2e", "v3", "i2"),
              ("n1e", "i1", n1), ("n2e", "i2", n2)]
    es = [x for x in g.edges if x.id != e]
    for key, x, y in wiring:
        es.append(Edge(N[key], N.get(x, x), N.get(y, y), key in drawn))
    extra = [N[k] for k in ("T1", "T2", "T3", "t", "i1", "i2", "v1", "v2", "v3", "v4")]
    gd = Multigraph(tuple(g.vertices) + tuple(extra), tuple(es))

    base = Arrangement.from_drawing(p.drawing)
    for x in ("T1", "T2", "T3"):
        base.add_point(N[x], base.outer_rid)
    base.add_edge(N["T12"], N["T1"], 0, N["T2"], 0)
    base.add_edge(N["T23"], N["T2"], 0, N["T3"], 0)
    t_in = base.add_edge(N["T31"], N["T3"], 0, N["T1"], 1)
    hosts = [None] if on_h else sorted(r for r in base.regions() if r != t_in)
    v1, v2, v3, v4 = N["v1"], N["v2"], N["v3"], N["v4"]

    def template(kind: int, host_rid):
        arr = base.copy()
        if on_h:
            if arr.edges[e][0] != a:
                arr.flip_edge(e)
            arr.subdivide(e, v1, N["e0"], "~r1")
            arr.subdivide("~r1", v2, N["e1"], "~r2")
            arr.subdivide("~r2", v3, N["e2"], "~r3")
            arr.subdivide("~r3", v4, N["e3"], N["e4"])
        else:
            for x in (v1, v2, v3, v4):
                arr.add_point(x, host_rid)
            arr.add_edge(N["e1"], v1, 0, v2, 0)
            arr.add_edge(N["e2"], v2, 0, v3, 0)
            arr.add_edge(N["e3"], v3, 0, v4, 0)
        # d runs along the path with the apex on its left
        d = (N["e2"], 0) if kind == 1 else (N["e2"], 1)
        tail, head = arr.tail(d), arr.head(d)
        t = N["t"]
        arr.add_point(t, arr.region_of[d])
        e_tail = N["tv2"] if tail == v2 else N["tv3"]
        e_head = N["tv3"] if tail == v2 else N["tv2"]
        arr.add_edge(e_tail, t, 0, tail, _corner_at(arr, tail, d))
        # directed from the apex, the fresh region is the empty triangle
        arr.add_edge(e_head, t, 1, head, _corner_at(arr, head, d))
        opp = (d[0], 1 - d[1])
        arr.add_point(N["i1"], arr.region_of[opp])
        arr.add_edge(N["i1e"], v2, _corner_at(arr, v2, opp), N["i1"], 0)
        return arr.to_drawing()

    ok = {1: False, 2: False}
    for kind in (1, 2):
        for hr in hosts:
            inst = PredrawnGraph(gd, template(kind, hr), {}, "gadget")
            if is_extendable(inst, budget):
                ok[kind] = True
                break
    if ok[1] and ok[2]:
        return Flippability(FLIPPABLE, None, e, n1, n2)
    if ok[1] or ok[2]:
        return Flippability(UNFLIPPABLE, 1 if ok[1] else 2, e, n1, n2)
    raise RegionRejected("neither gadget type extends; the cycle does not frame the region")


def _cycle_vertices(g: Multigraph, cycle) -> set:
    return {x for e in cycle for x in g.edge(e).ends}


# ---------------------------------------------------------------------------
# contraction

def contract_region(p: PredrawnGraph, region, cycle, budget: Optional[SearchBudget] = None,
                    name: Optional[str] = None) -> tuple:
    """Contract the connected region to one vertex and mark the interface uncrossable."""
    g = p.graph
    region = set(region)
    if not region or not _connected(g, region):
        raise GraphError("region must be connected")
    cyc = set(cycle)
    if region & _cycle_vertices(g, cycle):
        raise GraphError("cycle must avoid the region")
    taken = set(g.vertices)
    v_i = name or _fresh(taken - region, "vI")
    cmap = {}
    for v in region:
        cmap[v] = v_i
    edges = []
    for e in g.edges:
        inside = e.u in region and e.v in region
        if inside:
            cmap[e.id] = None
            continue
        u = v_i if e.u in region else e.u
        v = v_i if e.v in region else e.v
        unc = e.uncrossable or e.id in cyc or v_i in (u, v)
        edges.append(Edge(e.id, u, v, e.predrawn, unc, e.weight))
    verts = [v for v in g.vertices if v not in region] + [v_i]
    g2 = Multigraph(tuple(verts), tuple(edges))
    hv = p.h_vertices
    if not (region & hv):
        drawing = p.drawing
    else:
        host = host_instance(p, region | _cycle_vertices(g, cycle))
        w = extend_planar(host, budget)
        if w is None:
            raise GraphError("region cannot be drawn without crossings; contraction undefined")
        arr = Arrangement.from_drawing(w)
        inner = [e for e in host.graph.edges if e.u in region and e.v in region]
        tree, seen = set(), set()
        root = min(region)
        seen.add(root)
        todo = deque([root])
        while todo:
            x = todo.popleft()
            for e in sorted(host.graph.incident(x), key=lambda e: e.id):
                y = e.other(x)
                if y in region and y not in seen:
                    seen.add(y)
                    tree.add(e.id)
                    todo.append(y)
        for e in inner:
            if e.id not in tree:
                arr.delete_edge(e.id)
        for eid in sorted(tree):
            arr.contract_edge(eid)
        merged = [x for x in arr.rot if x in region]
        if len(merged) != 1:
            raise GraphError("internal: contraction left several region vertices")
        arr.rename_vertices({merged[0]: v_i})
        keep_e = {e.id for e in edges if e.predrawn}
        for eid in list(arr.edges):
            if eid not in keep_e:
                arr.delete_edge(eid)
        keep_v = (hv - region) | {v_i}
        for x in list(arr.rot):
            if x not in keep_v:
                arr.delete_point(x)
        drawing = arr.to_drawing()
    cross = {x: r for x, r in p.crossings.items() if x not in region}
    return PredrawnGraph(g2, drawing, cross, p.name), cmap


# ---------------------------------------------------------------------------
# triangle replacement

def _corner_assignment(cvs, triple):
    """Corner index (0, 1, 2) of each cycle vertex, or None when the triple has no cyclic direction."""
    n = len(cvs)
    pos = {v: k for k, v in enumerate(cvs)}
    u1, u2, u3 = triple
    for sign in (1, -1):
        def key(v, sign=sign):
            return ((pos[v] - pos[u1]) * sign) % n
        k2, k3 = key(u2), key(u3)
        if 0 < k2 < k3:
            out = {}
            for v in cvs:
                x = key(v)
                out[v] = 0 if (x == 0 or x > k3) else (1 if x <= k2 else 2)
            return out
    return None


def _replace_by_triangle(p: PredrawnGraph, v_i: str, cycle, triple, host_rid=None) -> Optional[tuple]:
    """Split ``v_i`` into a predrawn uncrossable triangle whose corners take the arcs cut out by ``triple``."""
    g = p.graph
    cvs, _ = cycle_order(g, cycle)
    corner = _corner_assignment(cvs, triple)
    if corner is None:
        return None
    taken = set(g.vertices) | set(g.edge_ids)
    w = [_fresh(taken, f"tI{j}") for j in (1, 2, 3)]
    tri = [_fresh(taken, n) for n in ("tI12", "tI23", "tI31")]
    attach = {}
    edges = []
    for e in g.edges:
        if v_i in e.ends:
            k = corner[e.other(v_i)]
            attach[e.id] = k
            u, v = (w[k], e.v) if e.u == v_i else (e.u, w[k])
            edges.append(Edge(e.id, u, v, e.predrawn, True, e.weight))
        else:
            edges.append(e)
    for j in range(3):
        edges.append(Edge(tri[j], w[j], w[(j + 1) % 3], True, True, 1))
    g2 = Multigraph(tuple(v for v in g.vertices if v != v_i) + tuple(w), tuple(edges))

    arr = Arrangement.from_drawing(p.drawing)
    if v_i not in arr.rot:
        if host_rid is None:
            return None
        arr.add_point(v_i, host_rid)
    ring = arr.rot.pop(v_i)
    blocks = [[], [], []]
    if ring:
        ks = [attach[d[0]] for d in ring]
        start = next((s for s in range(len(ks)) if ks[s] != ks[s - 1]), 0)
        ring = ring[start:] + ring[:start]
        ks = ks[start:] + ks[:start]
        seq = [k for i, k in enumerate(ks) if i == 0 or ks[i - 1] != k]
        if len(seq) != len(set(seq)):
            return None
        if len(seq) == 3 and seq not in ([0, 1, 2], [1, 2, 0], [2, 0, 1]):
            return None
        for d, k in zip(ring, ks):
            blocks[k].append(d)
        outside = {}
        for k in range(3):
            # the face outside the triangle edge w_k w_{k+1} is the corner before the next block
            for s in (1, 2, 3):
                nb = blocks[(k + s) % 3]
                if nb:
                    outside[k] = arr.region_of[nb[0]]
                    break
    else:
        r = arr.point_region.pop(v_i)
        outside = {k: r for k in range(3)}
    for d in ring:
        x, y = arr.edges[d[0]]
        k = attach[d[0]]
        arr.edges[d[0]] = (w[k], y) if d[1] == 0 else (x, w[k])
    inner = arr._fresh()
    for j in range(3):
        arr.edges[tri[j]] = (w[j], w[(j + 1) % 3])
        arr.region_of[(tri[j], 0)] = outside[j]
        arr.region_of[(tri[j], 1)] = inner
    for j in range(3):
        arr.rot[w[j]] = blocks[j] + [(tri[j], 0), (tri[(j - 1) % 3], 1)]
    arr.check()
    return PredrawnGraph(g2, arr.to_drawing(), dict(p.crossings), p.name), w, tri


# ---------------------------------------------------------------------------
# reduction

def _check_structure(p: PredrawnGraph, region, cycle, min_size: int = 6) -> None:
    g = p.graph
    region = set(region)
    if len(region) < min_size:
        raise GraphError(f"region needs at least {min_size} vertices")
    if not _connected(g, region):
        raise GraphError("region must be connected")
    cvs = _cycle_vertices(g, cycle)
    cycle_order(g, cycle)
    if region & cvs:
        raise GraphError("cycle must avoid the region")
    if not neighbourhood(g, region) <= cvs:
        raise GraphError("neighbourhood of the region must lie on the cycle")


def _triangle_region_graph(p: PredrawnGraph, tri_vs, cycle) -> Multigraph:
    return host_instance(p, set(tri_vs) | _cycle_vertices(p.graph, cycle)).graph


def apply_reduction(p: PredrawnGraph, region, cycle, k: int = 0,
                    budget: Optional[SearchBudget] = None) -> ReductionOutcome:
    """Case analysis for one region; returns an infeasibility verdict or a smaller equivalent instance."""
    _check_structure(p, region, cycle)
    region = tuple(sorted(region))
    cycle = tuple(cycle)
    cvs = _cycle_vertices(p.graph, cycle)
    host = host_instance(p, set(region) | cvs)
    if not is_extendable(host, budget):
        return ReductionOutcome(True, None, "region with its cycle has no crossing-free extension")
    reduced, cmap = contract_region(p, region, cycle, budget)
    v_i = cmap[region[0]]
    before = is_flippable(p, cycle, region, host.graph, budget)
    if before.flippable:
        return ReductionOutcome(False, ReductionStep(region, cycle, "contract-c", cmap, p, reduced, v_i, None, k))
    small = host_instance(reduced, {v_i} | cvs)
    after = is_flippable(reduced, cycle, {v_i}, small.graph, budget)
    if not after.flippable:
        return ReductionOutcome(False, ReductionStep(region, cycle, "contract-d", cmap, p, reduced, v_i, None, k))
    nbrs = sorted(neighbourhood(p.graph, region))
    hosts = [None]
    if v_i not in reduced.h_vertices:
        hosts = sorted(Arrangement.from_drawing(reduced.drawing).regions())
    for triple in itertools.permutations(nbrs, 3):
        for hp in hosts:
            res = _replace_by_triangle(reduced, v_i, cycle, triple, hp)
            if res is None:
                continue
            cand, w, tri = res
            probe = _triangle_region_graph(cand, w, cycle)
            try:
                fl = is_flippable(cand, cycle, set(w), probe, budget)
            except GraphError:
                continue
            if not fl.flippable and fl.orientation == before.orientation:
                data = {"triple": tuple(triple), "vertices": tuple(w), "edges": tuple(tri),
                        "orientation": fl.orientation}
                return ReductionOutcome(False, ReductionStep(region, cycle, "triangle-e", cmap, p, cand, v_i,
                                                             data, k))
    raise GraphError("internal inconsistency: no triangle forces the orientation of the cycle")


# ---------------------------------------------------------------------------
# lifting and discovery

def lift_drawing(step: ReductionStep, witness, budget: Optional[SearchBudget] = None):
    """A conforming drawing of the original instance with the same crossings as ``witness``."""
    from .solver import realise_pairs

    pairs = []
    for c in witness.crossings:
        pairs.append((c.edge_a, c.edge_b))
    out = realise_pairs(step.original, pairs, budget)
    if out is None:
        raise GraphError("no drawing of the region fits the reduced drawing")
    if out.cost != witness.cost:
        raise GraphError("internal: lifted drawing changed the crossing total")
    return out


def _cycle_through(g: Multigraph, allowed: set, must: set, max_len: int, max_nodes: int = 20000):
    """A cycle inside ``allowed`` passing through every vertex of ``must`` (depth-first, bounded)."""
    if not must:
        return None
    start = min(must)
    count = [0]
    best = []

    def dfs(x, vs, es, seen_must):
        count[0] += 1
        if count[0] > max_nodes or best:
            return
        if len(es) > max_len:
            return
        for e in sorted(g.incident(x), key=lambda e: e.id):
            y = e.other(x)
            if e.id in es or y not in allowed:
                continue
            if y == start and len(es) >= 2 and seen_must == must:
                best.append(es + (e.id,))
                return
            if y in vs:
                continue
            dfs(y, vs | {y}, es + (e.id,), seen_must | ({y} & must))
            if best:
                return

    dfs(start, {start}, (), {start})
    return best[0] if best else None


def iter_candidate_regions(p: PredrawnGraph, min_size: int = 6, max_nodes: int = 20000, protect=None):
    """Breadth-first balls, one per root, whose neighbourhood lies on a cycle outside the ball.

    ``protect(region, cycle, p)`` may veto a candidate.
    """
    g = p.graph
    avoid = set(p.crossings)
    for root in sorted(g.vertices):
        if root in avoid:
            continue
        ball = {root}
        frontier = [root]
        while frontier:
            nxt = []
            for x in frontier:
                for w in sorted(g.neighbors(x)):
                    if w not in ball and w not in avoid:
                        ball.add(w)
                        nxt.append(w)
            frontier = nxt
            if len(ball) < min_size:
                continue
            nb = neighbourhood(g, ball)
            if not nb or nb & avoid:
                break
            allowed = set(g.vertices) - ball
            if len(allowed) < 3:
                break
            cyc = _cycle_through(g, allowed, nb, max_len=len(allowed), max_nodes=max_nodes)
            if cyc is None:
                continue
            region = tuple(sorted(ball))
            if protect is None or protect(region, cyc, p):
                yield region, cyc
                break


def find_candidate_region(p: PredrawnGraph, min_size: int = 6, max_nodes: int = 20000,
                          protect=None) -> Optional[tuple]:
    return next(iter_candidate_regions(p, min_size, max_nodes, protect), None)
