"""Framings of predrawn graphs and the framing-aware topological minor relation.

A framing turns the drawing of the predrawn part into pure graph structure:
every drawn edge becomes three parallel paths of length three (its triplet)
and every drawn vertex gets a cycle through its neighbours in rotation order
(its framing cycle).  When the predrawn part is disconnected, connector edges
are drawn first to make it connected.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .arrangement import Arrangement
from .extension import BudgetExceeded
from .formats import parse_document, serialize_pdg
from .model import (Edge, GraphError, Multigraph, PlaneDrawing, PredrawnGraph, canonical_face_ref, empty_drawing,
                    face_ref_to_dart, rev)


@dataclass(frozen=True)
class Framing:
    graph: Multigraph
    frame_edges: frozenset
    framing_cycles: dict
    cycle_vertices: dict
    triplets: dict
    triplet_vertices: dict
    connector_edges: tuple
    step1: PlaneDrawing
    source: PredrawnGraph
    base: PredrawnGraph
    connector_vertices: tuple = ()

    def frame_graph(self) -> Multigraph:
        es = [e for e in self.graph.edges if e.id in self.frame_edges]
        vs = sorted({x for e in es for x in e.ends} | set(self.step1.rotations))
        return Multigraph(tuple(vs), tuple(es))


@dataclass(frozen=True)
class ExtendedFramingBase:
    base: PredrawnGraph
    connector_vertices: tuple


@dataclass
class FrameReport:
    applicable: bool
    planar: bool
    three_connected: bool
    separator: Optional[tuple] = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return (not self.applicable) or (self.planar and self.three_connected)


# ---------------------------------------------------------------------------
# step 1

def _region_key(arr: Arrangement, rid: int):
    darts = [d for d, r in arr.region_of.items() if r == rid]
    if darts:
        return (0, canonical_face_ref(darts))
    pts = sorted(v for v, r in arr.point_region.items() if r == rid)
    return (1, pts[0] if pts else "")


def _comp_map(arr: Arrangement) -> dict:
    out = {}
    for comp in arr.components():
        c = min(comp)
        for v in comp:
            out[v] = c
    return out


def _insert(arr: Arrangement, eid: str, u: str, v: str, rid: int) -> None:
    arr.add_edge(eid, u, arr.corners(u, rid)[0], v, arr.corners(v, rid)[0])


def _step1_canonical(p: PredrawnGraph) -> tuple:
    arr = Arrangement.from_drawing(p.drawing)
    hv = set(arr.rot)
    conns = []
    cands = sorted((e for e in p.graph.edges if not e.predrawn and e.u in hv and e.v in hv), key=lambda e: e.id)
    fan = itertools.count(1)
    while len(arr.components()) > 1:
        comp = _comp_map(arr)
        done = False
        for e in cands:
            if e.id in arr.edges or comp[e.u] == comp[e.v]:
                continue
            common = arr.regions_at(e.u) & arr.regions_at(e.v)
            if common:
                rid = min(common, key=lambda r: _region_key(arr, r))
                _insert(arr, e.id, e.u, e.v, rid)
                conns.append((e.id, e.u, e.v))
                done = True
                break
        if done:
            continue
        rich = {}
        for v in sorted(arr.rot):
            for rid in arr.regions_at(v):
                rich.setdefault(rid, set()).add(comp[v])
        rich = {r: cs for r, cs in rich.items() if len(cs) > 1}
        v = min(x for x in arr.rot if arr.regions_at(x) & set(rich))
        rid = min(arr.regions_at(v) & set(rich), key=lambda r: _region_key(arr, r))
        others = sorted(c for c in rich[rid] if c != comp[v])
        for c in others:
            target = min(x for x in arr.rot if comp[x] == c and rid in arr.regions_at(x))
            eid = f"~n{next(fan)}"
            _insert(arr, eid, v, target, rid)
            conns.append((eid, v, target))
    return arr, tuple(conns)


# ---------------------------------------------------------------------------
# steps 2-4

def _frame(base: PredrawnGraph, step1: PlaneDrawing, conns: tuple, source: PredrawnGraph,
           cverts: tuple = ()) -> Framing:
    rot = step1.effective_rotations()
    verts = list(base.graph.vertices)
    edges = list(base.graph.edges)
    frame = set()
    triplets = {}
    tverts = {}
    for f, (u, w) in sorted(step1.edges.items()):
        paths = []
        vpaths = []
        for i in (1, 2, 3):
            a, b = f"{f}|{i}a", f"{f}|{i}b"
            verts += [a, b]
            ids = (f"{f}|{i}:0", f"{f}|{i}:1", f"{f}|{i}:2")
            for eid, x, y in zip(ids, (u, a, b), (a, b, w)):
                edges.append(Edge(eid, x, y))
                frame.add(eid)
            paths.append(ids)
            vpaths.append((u, a, b, w))
        triplets[f] = tuple(paths)
        tverts[f] = tuple(vpaths)
    cycles = {}
    cverts_of = {}
    for v, ds in rot.items():
        ring = []
        for f, i in ds:
            ring += [f"{f}|{k}a" for k in (1, 2, 3)] if i == 0 else [f"{f}|{k}b" for k in (3, 2, 1)]
        cverts_of[v] = tuple(ring)
        ces = []
        if len(ring) >= 3:
            for j in range(len(ring)):
                eid = f"{v}|s{j}"
                edges.append(Edge(eid, ring[j], ring[(j + 1) % len(ring)]))
                frame.add(eid)
                ces.append(eid)
        cycles[v] = tuple(ces)
    g = Multigraph(tuple(verts), tuple(edges))
    return Framing(g, frozenset(frame), cycles, cverts_of, triplets, tverts, tuple(conns), step1, source, base,
                   tuple(cverts))


def build_framing(p: PredrawnGraph) -> Framing:
    """The framing with the canonical Step-1 choice (graph edges first, then vertex fans)."""
    arr, conns = _step1_canonical(p)
    return _frame(p, arr.to_drawing(), conns, p)


def check_frame_invariants(f: Framing) -> FrameReport:
    """Planarity and 3-connectivity of the frame, with a separator when it fails."""
    import networkx as nx

    if not f.step1.edges:
        return FrameReport(False, True, False, None, "not applicable: no drawn edge after connecting")
    fg = f.frame_graph().simple_networkx()
    fg.remove_nodes_from([v for v in list(fg.nodes) if fg.degree(v) == 0])
    planar, _ = nx.check_planarity(fg)
    sep = None
    three = nx.is_connected(fg) and len(fg) > 3
    if three:
        cut = nx.minimum_node_cut(fg)
        if len(cut) < 3:
            three = False
            sep = tuple(sorted(cut))
    else:
        sep = ()
    return FrameReport(True, planar, three, sep)


def treewidth_upper_bound(g: Multigraph) -> int:
    """Width of a greedy minimum-degree elimination order."""
    from networkx.algorithms.approximation import treewidth_min_degree

    sg = g.simple_networkx()
    if sg.number_of_nodes() == 0:
        return 0
    width, _ = treewidth_min_degree(sg)
    return width


# ---------------------------------------------------------------------------
# extended framings

def _components(d: PlaneDrawing) -> int:
    return len(d.components())


def _rich_regions(arr: Arrangement) -> list:
    comp = _comp_map(arr)
    rich = {}
    for v in arr.rot:
        for rid in arr.regions_at(v):
            rich.setdefault(rid, set()).add(comp[v])
    return sorted((r for r, cs in rich.items() if len(cs) > 1), key=lambda r: _region_key(arr, r))


def _placements(arr: Arrangement) -> list:
    opts = []
    for rid in _rich_regions(arr):
        opts.append(("face", rid))
    seen = set()
    for rid in _rich_regions(arr):
        for d, r in sorted(arr.region_of.items()):
            if r == rid and d[0] not in seen:
                seen.add(d[0])
                opts.append(("edge", d[0]))
    return opts


def _state_sig(arr: Arrangement):
    regions = {}
    for d, r in arr.region_of.items():
        regions.setdefault(r, set()).add(d)
    for v, r in arr.point_region.items():
        regions.setdefault(r, set()).add(v)
    rots = []
    for v, ds in arr.rot.items():
        if ds:
            k = min(range(len(ds)), key=lambda i: ds[i])
            rots.append((v, tuple(ds[k:] + ds[:k])))
    return (frozenset(rots), frozenset(frozenset(s) for s in regions.values()))


def _connector_trees(arr: Arrangement, hubs: set, subs: set, limit: int) -> list:
    """Every planar way to join the components with connector edges forming a tree."""
    out = {}

    def rec(a: Arrangement, made: tuple):
        if len(out) > limit:
            raise BudgetExceeded("too many extended framings")
        comp = _comp_map(a)
        deg = {}
        for _, u, v in made:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        left = len(set(comp.values())) - 1
        need = sum(max(0, 3 - deg.get(h, 0)) for h in hubs) + sum(max(0, 1 - deg.get(x, 0)) for x in subs)
        if need > 2 * left:
            return
        if left == 0:
            if any(deg.get(h, 0) < 3 for h in hubs) or any(deg.get(s, 0) < 1 for s in subs):
                return
            key = _state_sig(a)
            if key not in out:
                out[key] = (a, made)
            return
        last = made[-1][1:] if made else None
        for u in sorted(a.rot):
            for v in sorted(a.rot):
                if u >= v or comp[u] == comp[v]:
                    continue
                if last is not None and (u, v) < last:
                    continue
                for rid in sorted(a.regions_at(u) & a.regions_at(v)):
                    for ku in a.corners(u, rid):
                        for kv in a.corners(v, rid):
                            b = a.copy()
                            eid = f"~n:{u}:{v}"
                            b.add_edge(eid, u, ku, v, kv)
                            rec(b, made + ((eid, u, v),))

    rec(arr, ())
    return list(out.values())


def enumerate_extended_framings(p: PredrawnGraph, limit: int = 5000) -> list:
    """All extended framings: up to 2c-2 connector vertices, then every planar connector tree."""
    return list(iter_extended_framings(p, limit))


def iter_extended_framings(p: PredrawnGraph, limit: int = 5000):
    c = _components(p.drawing)
    if c <= 1:
        yield build_framing(p)
        return
    arr0 = Arrangement.from_drawing(p.drawing)
    opts = _placements(arr0)
    count = 0
    seen = set()
    for k in range(0, 2 * c - 1):
        for combo in itertools.combinations_with_replacement(range(len(opts)), k):
            # a hub needs three connector edges, so a tree has at most c-2 of them
            if sum(1 for oi in combo if opts[oi][0] == "face") > c - 2:
                continue
            arr = arr0.copy()
            g = p.graph
            verts = list(g.vertices)
            edges = {e.id: e for e in g.edges}
            hubs, subs, placed = set(), set(), []
            last = {}
            for j, oi in enumerate(combo):
                kind, what = opts[oi]
                x = f"~x{j + 1}"
                verts.append(x)
                if kind == "face":
                    arr.add_point(x, what)
                    hubs.add(x)
                    placed.append((x, ("face", _region_key(arr0, what)[1])))
                    continue
                cur = last.get(what, what)
                e = edges.pop(cur)
                a, b = arr.edges[cur]
                first, second = cur + "<", f"{what}>{j + 1}"
                arr.subdivide(cur, x, first, second)
                edges[first] = Edge(first, a, x, True, e.uncrossable, e.weight)
                edges[second] = Edge(second, x, b, True, e.uncrossable, e.weight)
                last[what] = second
                subs.add(x)
                placed.append((x, ("edge", what)))
            base_g = Multigraph(tuple(verts), tuple(edges.values()))
            base = PredrawnGraph(base_g, arr.to_drawing(), {}, p.name)
            for tree, made in _connector_trees(arr, hubs, subs, limit):
                key = (tuple(sorted(combo)), _state_sig(tree))
                if key in seen:
                    continue
                seen.add(key)
                count += 1
                if count > limit:
                    raise BudgetExceeded("too many extended framings")
                yield _frame(base, tree.to_drawing(), made, p, tuple(placed))


# ---------------------------------------------------------------------------
# framing topological minor

@dataclass(frozen=True)
class FramingEmbedding:
    vertex_map: dict
    edge_paths: dict
    connector_paths: dict
    epsilon: int
    triplet_images: dict = field(default_factory=dict)
    cycle_images: dict = field(default_factory=dict)


def _d2_order(f2: Framing) -> dict:
    """Cyclic order of drawn edge-ends at each vertex, read off its framing cycle."""
    owner = {}
    for f, vps in f2.triplet_vertices.items():
        for (u, a, b, w) in vps:
            owner[a] = (f, 0)
            owner[b] = (f, 1)
    out = {}
    for v, ring in f2.cycle_vertices.items():
        seq = []
        for x in ring:
            d = owner[x]
            if not seq or seq[-1] != d:
                seq.append(d)
        if len(seq) > 1 and seq[0] == seq[-1]:
            seq.pop()
        out[v] = seq
    return out


def _cyclic_sign(positions: list) -> Optional[int]:
    """+1 if the positions increase cyclically, -1 if they decrease, None if neither."""
    n = len(positions)
    if n <= 2:
        return 0
    k = positions.index(min(positions))
    seq = positions[k:] + positions[:k]
    if all(seq[i] < seq[i + 1] for i in range(n - 1)):
        return 1
    seq = [seq[0]] + seq[1:][::-1]
    if all(seq[i] < seq[i + 1] for i in range(n - 1)):
        return -1
    return None


def _base_parts(f1: Framing):
    g1 = f1.base.graph
    h1 = set(f1.base.drawing.edges)
    conn = []
    rename = {}
    for eid, u, v in f1.connector_edges:
        if g1.has_edge(eid):
            cid = f"~v:{eid}"
            rename[eid] = cid
        else:
            cid = eid
        conn.append((cid, u, v))
    return g1, h1, conn, rename


def framing_topological_minor(f1: Framing, f2: Framing, max_nodes: int = 2_000_000,
                              graph_only: bool = False) -> Optional[FramingEmbedding]:
    """Embed the base of ``f1`` into ``f2`` respecting edge types, framing cycles and triplets."""
    g1, h1e, conn, rename = _base_parts(f1)
    h1v = set(f1.base.drawing.rotations)
    g2 = f2.source.graph
    h2v = set(f2.source.drawing.rotations)
    h2e = set(f2.source.drawing.edges)
    if len(h1v) > len(set(f2.step1.rotations)) or len(g1.vertices) - sum(
            1 for x in g1.vertices if g1.degree(x) == 0 and x not in h1v) > len(g2.vertices):
        return None
    if len(h1e) > len(h2e) + len(f2.step1.edges):
        return None
    d2_edges = dict(f2.step1.edges)
    d2_order = _d2_order(f2)
    counter = [0]

    def tick():
        counter[0] += 1
        if counter[0] > max_nodes:
            raise BudgetExceeded("framing embedding budget exceeded")

    # phase 1: the graph part, with predrawn edges on predrawn paths
    hubs = sorted(x for x, (kind, _) in f1.connector_vertices if kind == "face")
    gv = [v for v in g1.vertices if v not in hubs]
    order = sorted(gv, key=lambda v: (-g1.degree(v), v not in h1v, v))
    placed_order = []
    remaining = set(order)
    while remaining:
        nxt = None
        for v in order:
            if v in remaining and any(w in placed_order for w in g1.neighbors(v)):
                nxt = v
                break
        if nxt is None:
            nxt = next(v for v in order if v in remaining)
        placed_order.append(nxt)
        remaining.discard(nxt)
    idx = {v: i for i, v in enumerate(placed_order)}
    back = {v: [] for v in placed_order}
    for e in g1.edges:
        back[max(e.u, e.v, key=lambda x: idx[x])].append(e)
    adj_g = {v: [] for v in g2.vertices}
    for e in g2.edges:
        adj_g[e.u].append((e.id, e.v, e.id in h2e))
        adj_g[e.v].append((e.id, e.u, e.id in h2e))
    adj_d = {}
    for eid, (u, v) in d2_edges.items():
        adj_d.setdefault(u, []).append((eid, v))
        adj_d.setdefault(v, []).append((eid, u))
    h2deg = {v: sum(1 for _, _, h in adj_g[v] if h) for v in g2.vertices}

    vmap, used_v, used_e, epaths = {}, set(), set(), {}
    result = []

    def g_paths(a, b, only_h):
        stack = [(a, (a,), ())]
        while stack:
            x, vs, es = stack.pop()
            for eid, y, h in adj_g[x]:
                if eid in used_e or eid in es or (only_h and not h):
                    continue
                if y == b:
                    yield vs + (y,), es + (eid,)
                elif y not in used_v and y not in vs:
                    stack.append((y, vs + (y,), es + (eid,)))

    def phase1(i):
        tick()
        if i == len(placed_order):
            if graph_only:
                result.append(FramingEmbedding(dict(vmap), dict(epaths), {}, 0))
                return True
            return phase2()
        v = placed_order[i]
        for w in g2.vertices:
            if w in used_v or g2.degree(w) < g1.degree(v):
                continue
            if v in h1v and (w not in h2v or h2deg[w] < sum(1 for e in g1.incident(v) if e.id in h1e)):
                continue
            vmap[v] = w
            used_v.add(w)
            if route(back[v], 0, i):
                return True
            used_v.discard(w)
            del vmap[v]
        return False

    def route(es, k, i):
        if k == len(es):
            return phase1(i + 1)
        e = es[k]
        for vs, path in g_paths(vmap[e.u], vmap[e.v], e.id in h1e):
            used_v.update(vs[1:-1])
            used_e.update(path)
            epaths[e.id] = (vs, path)
            if route(es, k + 1, i):
                return True
            del epaths[e.id]
            used_v.difference_update(vs[1:-1])
            used_e.difference_update(path)
        return False

    # phase 2: hubs and virtual connector paths inside the drawn part plus connectors of f2
    def phase2():
        blocked = {vmap[v] for v in h1v if v in vmap}
        for e in h1e:
            blocked.update(epaths[e][0])
        hmap = {}
        cpaths = {}
        cused_v = set()
        cused_e = set()
        for e in h1e:
            cused_e.update(epaths[e][1])

        def d_paths(a, b):
            stack = [(a, (a,), ())]
            while stack:
                x, vs, es = stack.pop()
                for eid, y in adj_d.get(x, ()):
                    if eid in cused_e or eid in es:
                        continue
                    if y == b:
                        yield vs + (y,), es + (eid,)
                    elif y not in blocked and y not in cused_v and y not in vs and y not in hmap.values():
                        stack.append((y, vs + (y,), es + (eid,)))

        def place_hub(j):
            tick()
            if j == len(hubs):
                return route_conn(0)
            h = hubs[j]
            for w in sorted(h2v):
                if w in blocked or w in cused_v or w in hmap.values() or w in vmap.values():
                    continue
                hmap[h] = w
                if place_hub(j + 1):
                    return True
                del hmap[h]
            return False

        def img(v):
            return vmap[v] if v in vmap else hmap[v]

        def route_conn(k):
            tick()
            if k == len(conn):
                return finish(hmap, cpaths)
            cid, u, v = conn[k]
            for vs, es in d_paths(img(u), img(v)):
                cused_v.update(vs[1:-1])
                cused_e.update(es)
                cpaths[cid] = (vs, es)
                if route_conn(k + 1):
                    return True
                del cpaths[cid]
                cused_v.difference_update(vs[1:-1])
                cused_e.difference_update(es)
            return False

        return place_hub(0)

    def finish(hmap, cpaths):
        full = dict(vmap)
        full.update(hmap)
        dpath = {}
        for e in h1e:
            dpath[e] = epaths[e]
        for cid, pth in cpaths.items():
            dpath[cid] = pth
        eps = _orientation(f1, rename, full, dpath, d2_edges, d2_order)
        if eps is None:
            return False
        for sign in ([eps] if eps else [1, -1]):
            if _outer_ok(f1, rename, full, dpath, f2, sign):
                trip, cyc = _triplet_images(f1, f2, rename, full, dpath, sign)
                result.append(FramingEmbedding(dict(vmap) | dict(hmap), dict(epaths), dict(cpaths), sign, trip, cyc))
                return True
        return False

    phase1(0)
    return result[0] if result else None


def _first_dart(vs, es, d2_edges, reverse=False):
    if reverse:
        vs, es = vs[::-1], es[::-1]
    e = es[0]
    return (e, 0 if d2_edges[e][0] == vs[0] else 1)


def _image_dart(d1_dart, f1, rename, full, dpath, d2_edges):
    e, i = d1_dart
    vs, es = dpath[rename.get(e, e)]
    tail = full[f1.step1.edges[e][i]]
    return _first_dart(vs, es, d2_edges, reverse=vs[0] != tail)


def _orientation(f1, rename, full, dpath, d2_edges, d2_order) -> Optional[int]:
    eps = 0
    rot1 = f1.step1.effective_rotations()
    for v, ds in rot1.items():
        if len(ds) < 3:
            continue
        order2 = d2_order.get(full[v], [])
        pos = {d: k for k, d in enumerate(order2)}
        imgs = [_image_dart(d, f1, rename, full, dpath, d2_edges) for d in ds]
        if any(x not in pos for x in imgs):
            return None
        s = _cyclic_sign([pos[x] for x in imgs])
        if s is None:
            return None
        if eps == 0:
            eps = s
        elif s != eps:
            return None
    return eps


def _outer_ok(f1, rename, full, dpath, f2, sign) -> bool:
    d1 = f1.step1
    if not d1.edges:
        return True
    arr = Arrangement.from_drawing(f2.step1)
    keep_e = set()
    keep_v = set(full.values())
    for vs, es in dpath.values():
        keep_e.update(es)
        keep_v.update(vs)
    for e in list(arr.edges):
        if e not in keep_e:
            arr.delete_edge(e)
    for v in list(arr.rot):
        if v not in keep_v and not arr.rot[v]:
            arr.delete_point(v)
    outer_ref = d1.effective_outer()
    c = next(iter(outer_ref))
    start = face_ref_to_dart(outer_ref[c])
    a1 = Arrangement.from_drawing(d1)
    orbit = a1.orbit(start)
    for d in orbit:
        x = _image_dart(d, f1, rename, full, dpath, dict(f2.step1.edges))
        y = x if sign == 1 else rev(x)
        if arr.region_of.get(y) != arr.outer_rid:
            return False
    return True


def _triplet_images(f1, f2, rename, full, dpath, sign):
    """Explicit images of the triplets and framing cycles of ``f1`` inside ``f2``."""
    d2_edges = dict(f2.step1.edges)
    trip = {}
    for f, (u, w) in f1.step1.edges.items():
        key = rename.get(f, f)
        vs, es = dpath[key]
        if vs[0] != full[u]:
            vs, es = vs[::-1], es[::-1]
        lanes = [[], [], []]
        lanes_end = [None, None, None]
        for j, g in enumerate(es):
            x = vs[j]
            src_end = 0 if d2_edges[g][0] == x else 1
            seq = (0, 1, 2) if src_end == 0 else (2, 1, 0)
            for lane in range(3):
                t = seq[lane]
                path = list(f2.triplets[g][t])
                if src_end == 1:
                    path = path[::-1]
                if lane != 1:
                    # side lanes skip the hub vertices in between and walk around their framing cycles
                    if j > 0:
                        lanes[lane] += _arc(f2, x, lanes_end[lane],
                                            f2.triplet_vertices[g][t][1 if src_end == 0 else 2], lane == 0)
                        path = path[1:]
                    if j < len(es) - 1:
                        path = path[:-1]
                lanes[lane] += path
            lanes_end = [f2.triplet_vertices[g][seq[k]][2 if src_end == 0 else 1] for k in range(3)]
        mapping = [0, 1, 2] if sign == 1 else [2, 1, 0]
        trip[f] = tuple(tuple(lanes[mapping[k]]) for k in range(3))
    for f, lanes in trip.items():
        inner = [set() for _ in range(3)]
        g = f2.graph
        for k, lane in enumerate(lanes):
            for eid in lane:
                inner[k].update(g.edge(eid).ends)
        ends = {full[x] for x in f1.step1.edges[f]}
        for a, b in itertools.combinations(range(3), 2):
            if (inner[a] & inner[b]) - ends:
                raise GraphError(f"internal: triplet image of {f} is not internally disjoint")
    cyc = {}
    for v in f1.step1.rotations:
        cyc[v] = f2.framing_cycles.get(full[v], ())
    return trip, cyc


def _arc(f2, v, start, end, cw_from_start) -> list:
    """Edges of the framing cycle of ``v`` between two of its vertices."""
    ring = list(f2.cycle_vertices[v])
    ces = list(f2.framing_cycles[v])
    n = len(ring)
    i, j = ring.index(start), ring.index(end)
    out = []
    if cw_from_start:
        k = i
        while k != j:
            out.append(ces[k])
            k = (k + 1) % n
    else:
        k = i
        while k != j:
            k = (k - 1) % n
            out.append(ces[k])
    return out


def framing_route(p1: PredrawnGraph, p2: PredrawnGraph, max_nodes: int = 2_000_000) -> bool:
    """Containment decided through extended framings of ``p1`` and the framing of ``p2``."""
    f2 = build_framing(p2)
    if framing_topological_minor(build_framing(p1), f2, max_nodes, graph_only=True) is None:
        return False
    for f1 in iter_extended_framings(p1):
        if framing_topological_minor(f1, f2, max_nodes) is not None:
            return True
    return False


# ---------------------------------------------------------------------------
# serialisation

def serialize_framing(f: Framing) -> str:
    plain = Multigraph(f.graph.vertices, tuple(Edge(e.id, e.u, e.v, False, e.uncrossable, e.weight)
                                               for e in f.graph.edges))
    inst = PredrawnGraph(plain, empty_drawing(), {}, "")
    extra = [f"frame {e}" for e in sorted(f.frame_edges)]
    for e, paths in sorted(f.triplets.items()):
        extra.append(f"triplet {e} " + "|".join(",".join(p) for p in paths))
    for v, es in sorted(f.framing_cycles.items()):
        if es:
            extra.append(f"fcycle {v} " + " ".join(es))
    for eid, u, v in f.connector_edges:
        extra.append(f"connector {eid} {u} {v}")
    return serialize_pdg(inst, extra)


def parse_framing_markers(text: str) -> dict:
    """Graph plus marker data of a serialised framing."""
    p, extras = parse_document(text, allow=("frame", "triplet", "fcycle", "connector"))
    out = {"graph": p.graph, "frame": set(), "triplets": {}, "fcycles": {}, "connectors": []}
    for kw, args in extras:
        if kw == "frame":
            out["frame"].add(args[0])
        elif kw == "triplet":
            out["triplets"][args[0]] = tuple(tuple(x.split(",")) for x in " ".join(args[1:]).split("|"))
        elif kw == "fcycle":
            out["fcycles"][args[0]] = tuple(args[1:])
        else:
            out["connectors"].append(tuple(args))
    return out
