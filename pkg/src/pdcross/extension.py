"""Exact extension planarity and alternating-chain detection.

``extend_planar`` is a backtracking search in the spirit of the classical
path-by-path embedding algorithm.  Starting from the predrawn arrangement it
repeatedly picks the piece of the remaining graph with the fewest admissible
regions, draws one path of that piece and branches over every region, corner
and split of the region's other contents.  Pieces hanging from a single drawn
vertex are set aside and drawn independently at the end.
"""
from __future__ import annotations

import itertools
import time
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .arrangement import Arrangement
from .model import (GraphError, Multigraph, PlaneDrawing, PredrawnGraph, drawings_equivalent, restrict,
                    trivial_witness)

DEFAULT_BUDGET = 30
DEFAULT_MAX_NODES = 500_000


class BudgetExceeded(GraphError):
    """Raised instead of guessing when an exact search would be too large."""


@dataclass
class SearchBudget:
    max_vertices: int = DEFAULT_BUDGET
    max_nodes: int = DEFAULT_MAX_NODES
    max_seconds: Optional[float] = None


class _Ctx:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.dead = set()
        self.free_cache = {}
        self.deadline = None if budget.max_seconds is None else time.monotonic() + budget.max_seconds
        self.fresh = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise BudgetExceeded("search budget exceeded (node limit)")
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("search budget exceeded (time limit)")


# ---------------------------------------------------------------------------
# kernel

def _kernelize(vertices, edges, drawn):
    """Peel off non-drawn vertices of degree at most two.

    Returns the remaining vertices and edges plus an undo stack.
    """
    edges = dict(edges)
    inc = {v: set() for v in vertices}
    for e, (u, v) in edges.items():
        inc[u].add(e)
        inc[v].add(e)
    stack = []
    alive = set(vertices)
    counter = itertools.count(1)
    queue = deque(sorted(v for v in alive if v not in drawn))
    while queue:
        x = queue.popleft()
        if x not in alive or x in drawn:
            continue
        es = sorted(inc[x])
        if len(es) == 0:
            alive.discard(x)
            stack.append(("point", x))
        elif len(es) == 1:
            e = es[0]
            u, v = edges.pop(e)
            y = v if u == x else u
            inc[y].discard(e)
            alive.discard(x)
            stack.append(("pendant", x, e, (u, v)))
            queue.append(y)
        elif len(es) == 2:
            e1, e2 = es
            a = edges[e1][0] if edges[e1][1] == x else edges[e1][1]
            b = edges[e2][0] if edges[e2][1] == x else edges[e2][1]
            if a == b:
                continue
            new = f"~k{next(counter)}"
            while new in edges:
                new = f"~k{next(counter)}"
            stack.append(("suppress", x, e1, edges.pop(e1), e2, edges.pop(e2), new))
            edges[new] = (a, b)
            inc[a].discard(e1)
            inc[b].discard(e2)
            inc[a].add(new)
            inc[b].add(new)
            alive.discard(x)
            queue.append(a)
            queue.append(b)
    return alive, edges, stack


def _undo_kernel(arr: Arrangement, stack) -> None:
    for op in reversed(stack):
        kind = op[0]
        if kind == "point":
            arr.add_point(op[1])
        elif kind == "pendant":
            _, x, e, (u, v) = op
            y = v if u == x else u
            rid = arr.corner_region(y, 0)
            arr.add_point(x, rid)
            arr.add_edge(e, u, 0, v, 0)
        else:
            _, x, e1, ends1, e2, ends2, new = op
            a, b = arr.edges[new]
            first, second = (e1, e2) if x in ends1 and a in ends1 and a != x else (e2, e1)
            arr.subdivide(new, x, first, second)
            ends = {e1: ends1, e2: ends2}
            for piece in (first, second):
                if arr.edges[piece] != ends[piece]:
                    arr.flip_edge(piece)


# ---------------------------------------------------------------------------
# bridges

def _bridges(arr: Arrangement, rem: dict) -> list:
    drawn = arr.rot
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in rem.values():
        for x in (u, v):
            if x not in drawn and x not in parent:
                parent[x] = x
    for u, v in rem.values():
        if u not in drawn and v not in drawn:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    groups = {}
    singles = []
    for e, (u, v) in rem.items():
        if u in drawn and v in drawn:
            singles.append(({e}, set(), {u, v}))
            continue
        r = find(u if u not in drawn else v)
        g = groups.setdefault(r, (set(), set(), set()))
        g[0].add(e)
        for x in (u, v):
            (g[2] if x in drawn else g[1]).add(x)
    return singles + list(groups.values())


def _state_key(arr: Arrangement):
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


def _shortest_path(bridge, rem, start):
    edges, inner, att = bridge
    adj = {}
    for e in edges:
        u, v = rem[e]
        adj.setdefault(u, []).append((e, v))
        adj.setdefault(v, []).append((e, u))
    prev = {start: None}
    q = deque([start])
    while q:
        x = q.popleft()
        for e, y in sorted(adj.get(x, ())):
            if y in prev:
                continue
            if y in att:
                if y == start:
                    continue
                steps = [(e, x, y)]
                while prev[x] is not None:
                    pe, px = prev[x]
                    steps.append((pe, px, x))
                    x = px
                return steps[::-1]
            prev[y] = (e, x)
            q.append(y)
    return None


def _draw_step(arr, rem, e, x, kx, y, ky, to_new=()):
    u, v = rem[e]
    if u == x:
        return arr.add_edge(e, x, kx, y, ky, to_new)
    return arr.add_edge(e, y, ky, x, kx, to_new)


# ---------------------------------------------------------------------------
# search

def _glue(arr: Arrangement, piece: Arrangement, at: Optional[str]) -> None:
    """Insert a separately drawn piece at corner 0 of ``at`` or into the outer region."""
    if at is not None and not piece.rot.get(at):
        return
    if at is None:
        target = arr.outer_rid
        inner = piece.outer_rid
    else:
        target = arr.corner_region(at, 0)
        inner = piece.region_of[piece.rot[at][0]]
    remap = {inner: target}

    def m(r):
        if r not in remap:
            remap[r] = arr._fresh()
        return remap[r]

    for e, uv in piece.edges.items():
        arr.edges[e] = uv
    for d, r in piece.region_of.items():
        arr.region_of[d] = m(r)
    for v, ds in piece.rot.items():
        if v == at:
            if at in arr.point_region:
                del arr.point_region[at]
                arr.rot[at] = list(ds)
            else:
                arr.rot[at][0:0] = list(ds)
        else:
            arr.rot[v] = list(ds)
    for v, r in piece.point_region.items():
        if v != at:
            arr.point_region[v] = m(r)


def _find_cycle(vertices, edges: dict):
    adj = {v: [] for v in vertices}
    for e, (u, v) in sorted(edges.items()):
        adj[u].append((e, v))
        adj[v].append((e, u))
    seen = {}
    for root in sorted(vertices):
        if root in seen:
            continue
        seen[root] = None
        stack = [(root, None, iter(adj[root]))]
        on_path = [root]
        path_edges = []
        while stack:
            x, via, it = stack[-1]
            advanced = False
            for e, y in it:
                if e == via:
                    continue
                if y in on_path:
                    k = on_path.index(y)
                    return on_path[k:], path_edges[k:] + [e]
                if y in seen:
                    continue
                seen[y] = e
                stack.append((y, e, iter(adj[y])))
                on_path.append(y)
                path_edges.append(e)
                advanced = True
                break
            if not advanced:
                stack.pop()
                on_path.pop()
                if path_edges:
                    path_edges.pop()
    return None


def _free_drawing(vertices, edges: dict, ctx: _Ctx) -> Optional[Arrangement]:
    """Some planar drawing of a connected graph, or None."""
    key = (frozenset(vertices), frozenset(edges))
    if key in ctx.free_cache:
        c = ctx.free_cache[key]
        return None if c is None else c.copy()
    arr = Arrangement()
    cyc = _find_cycle(vertices, edges)
    if cyc is None:
        root = min(vertices)
        arr.add_point(root)
        order = deque([root])
        left = dict(edges)
        while order:
            x = order.popleft()
            for e, (u, v) in sorted(left.items()):
                if x in (u, v):
                    y = v if u == x else u
                    if y in arr.rot:
                        continue
                    arr.add_point(y, arr.corner_region(x, 0))
                    arr.add_edge(e, u, 0, v, 0)
                    del left[e]
                    order.append(y)
        result = arr
    else:
        cv, ce = cyc
        for v in cv:
            arr.add_point(v)
        n = len(cv)
        for i in range(n):
            x, y = cv[i], cv[(i + 1) % n]
            e = ce[i]
            u, v = edges[e]
            kx = len(arr.rot[x])
            ky = 0
            if u == x:
                arr.add_edge(e, x, kx, y, ky)
            else:
                arr.add_edge(e, y, ky, x, kx)
        rem = {e: uv for e, uv in edges.items() if e not in set(ce)}
        result = _search(arr, rem, ctx)
    ctx.free_cache[key] = None if result is None else result.copy()
    return result


def _search(arr: Arrangement, rem: dict, ctx: _Ctx) -> Optional[Arrangement]:
    ctx.tick()
    bridges = _bridges(arr, rem)
    deferred = []
    active = []
    for b in bridges:
        (active if len(b[2]) >= 2 else deferred).append(b)
    pieces = []
    for edges, inner, att in deferred:
        vs = set(inner) | set(att)
        sub = {e: rem[e] for e in edges}
        piece = _free_drawing(vs, sub, ctx)
        if piece is None:
            return None
        pieces.append((piece, next(iter(att)) if att else None))
    if not active:
        out = arr.copy()
        for piece, at in pieces:
            _glue(out, piece, at)
        return out
    key = _state_key(arr)
    if key in ctx.dead:
        return None
    best = None
    for b in active:
        regs = None
        for a in b[2]:
            rs = arr.regions_at(a)
            regs = rs if regs is None else regs & rs
        if not regs:
            ctx.dead.add(key)
            return None
        cand = (len(regs), len(b[0]), sorted(b[0]))
        if best is None or cand < best[0]:
            best = (cand, b, sorted(regs))
    _, bridge, regs = best
    start = min(bridge[2])
    steps = _shortest_path(bridge, rem, start)
    if steps is None:
        raise GraphError("internal: bridge without attachment path")
    a = steps[0][1]
    z = steps[-1][2]
    used = {e for e, _, _ in steps}
    rem2 = {e: uv for e, uv in rem.items() if e not in used}
    for rid in regs:
        same = z in arr.component_of(a)
        members = arr.members_in_region(rid, skip=(a,)) if same else []
        for ka in arr.corners(a, rid):
            for kz in arr.corners(z, rid):
                for r in range(len(members) + 1):
                    for chosen in itertools.combinations(members, r):
                        new = arr.copy()
                        kx = ka
                        for i, (e, p, q) in enumerate(steps):
                            last = i == len(steps) - 1
                            if last:
                                _draw_step(new, rem, e, p, kx, q, kz, chosen)
                            else:
                                new.add_point(q, rid)
                                _draw_step(new, rem, e, p, kx, q, 0)
                                kx = 1
                        res = _search(new, rem2, ctx)
                        if res is not None:
                            return res
                    if not same:
                        break
    ctx.dead.add(key)
    return None


def _euler_ok(nv: int, ne_simple: int) -> bool:
    return nv < 3 or ne_simple <= 3 * nv - 6


def extend_arrangement(g: Multigraph, start: Arrangement,
                       budget: Optional[SearchBudget] = None) -> Optional[Arrangement]:
    """Extend a drawn part of ``g`` to a crossing-free drawing of all of ``g``."""
    budget = budget or SearchBudget()
    drawn = set(start.rot)
    rem_all = {e.id: (e.u, e.v) for e in g.edges if e.id not in start.edges}
    alive, rem, stack = _kernelize(g.vertices, rem_all, drawn)
    if len(alive) > budget.max_vertices:
        raise BudgetExceeded(
            f"instance too large for exact oracle ({len(alive)} kernel vertices > {budget.max_vertices})")
    simple = {frozenset(uv) for uv in rem.values()} | {frozenset(uv) for uv in start.edges.values()}
    if not _euler_ok(len(alive), len(simple)):
        return None
    ctx = _Ctx(budget)
    arr = start.copy()
    res = _search(arr, rem, ctx)
    if res is None:
        return None
    _undo_kernel(res, stack)
    return res


def extend_planar(p: PredrawnGraph, budget: Optional[SearchBudget] = None,
                  max_vertices: Optional[int] = None) -> Optional[PlaneDrawing]:
    """A crossing-free drawing of ``p.graph`` whose restriction to H is ℋ, if one exists."""
    if budget is None:
        budget = SearchBudget()
    if max_vertices is not None:
        budget = SearchBudget(max_vertices, budget.max_nodes, budget.max_seconds)
    res = extend_arrangement(p.graph, Arrangement.from_drawing(p.drawing), budget)
    if res is None:
        return None
    d = res.to_drawing()
    sub = restrict(trivial_witness(p.graph, d), p.h_vertices, p.h_edge_ids())
    if not drawings_equivalent(sub, p.drawing):
        raise GraphError("internal: extension does not restrict to the predrawn drawing")
    return d


def is_extendable(p: PredrawnGraph, budget: Optional[SearchBudget] = None) -> bool:
    return extend_planar(p, budget) is not None


def planar_drawing(g: Multigraph, budget: Optional[SearchBudget] = None) -> Optional[PlaneDrawing]:
    res = extend_arrangement(g, Arrangement(), budget)
    return None if res is None else res.to_drawing()


# ---------------------------------------------------------------------------
# alternating chains

@dataclass(frozen=True)
class ChainWitness:
    cycle: tuple
    s: str
    t: str
    paths: tuple
    parity: int


def _h_cycles(p: PredrawnGraph) -> list:
    """Simple cycles of H as (vertex sequence, edge sequence), each listed once."""
    edges = dict(p.drawing.edges)
    adj = {}
    for e, (u, v) in edges.items():
        adj.setdefault(u, []).append((e, v))
        adj.setdefault(v, []).append((e, u))
    out = []
    seen = set()
    for root in sorted(adj):
        stack = [(root, [root], [])]
        while stack:
            x, vs, es = stack.pop()
            for e, y in adj[x]:
                if es and e == es[-1]:
                    continue
                if y == root and len(es) >= 1 and (len(es) >= 2 or e != es[0]):
                    key = frozenset(es + [e])
                    if key not in seen:
                        seen.add(key)
                        out.append((tuple(vs), tuple(es + [e])))
                elif y not in vs and y > root:
                    stack.append((y, vs + [y], es + [e]))
    return out


def _c_paths(g: Multigraph, cyc_vs, cyc_es) -> list:
    """All paths with both ends on C and no other vertex or edge of C."""
    on_c = set(cyc_vs)
    ce = set(cyc_es)
    adj = {v: [] for v in g.vertices}
    for e in g.edges:
        if e.id in ce:
            continue
        adj[e.u].append((e.id, e.v))
        adj[e.v].append((e.id, e.u))
    out = []
    for a in sorted(on_c):
        stack = [(a, (a,), ())]
        while stack:
            x, vs, es = stack.pop()
            for e, y in adj[x]:
                if y in on_c:
                    if y > a and y != x:
                        out.append((vs + (y,), es + (e,)))
                elif y not in vs:
                    stack.append((y, vs + (y,), es + (e,)))
    return out


def _alternate(pos, n, p1, p2) -> bool:
    a, b = sorted((pos[p1[0]], pos[p1[-1]]))
    x, y = pos[p2[0]], pos[p2[-1]]
    if len({a, b, x, y}) < 4:
        return False
    return (a < x < b) != (a < y < b)


def _same_face(p: PredrawnGraph, cyc_vs, cyc_es, s, t) -> bool:
    w = trivial_witness(p.graph.subgraph(p.h_vertices, p.h_edge_ids()), p.drawing)
    sub = restrict(w, set(cyc_vs) | {s, t}, set(cyc_es))
    arr = Arrangement.from_drawing(sub)
    return arr.point_region[s] == arr.point_region[t]


def find_alternating_chain(p: PredrawnGraph, budget: Optional[SearchBudget] = None) -> Optional[ChainWitness]:
    """Search every predrawn cycle for an alternating chain of C-paths."""
    budget = budget or SearchBudget()
    if len(p.graph.vertices) > budget.max_vertices:
        raise BudgetExceeded("instance too large for exact oracle")
    hv = sorted(p.h_vertices)
    for cyc_vs, cyc_es in _h_cycles(p):
        others = [v for v in hv if v not in set(cyc_vs)]
        if len(others) < 2:
            continue
        paths = _c_paths(p.graph, cyc_vs, cyc_es)
        if len(paths) > 20000:
            raise BudgetExceeded("too many C-paths for exact chain search")
        pos = {v: i for i, v in enumerate(cyc_vs)}
        n = len(cyc_vs)
        vsets = [set(vs) for vs, _ in paths]
        nbr = [[] for _ in paths]
        for i in range(len(paths)):
            for j in range(i + 1, len(paths)):
                if vsets[i].isdisjoint(vsets[j]) and _alternate(pos, n, paths[i][0], paths[j][0]):
                    nbr[i].append(j)
                    nbr[j].append(i)
        for s, t in itertools.permutations(others, 2):
            if s > t:
                continue
            want_even = _same_face(p, cyc_vs, cyc_es, s, t)
            found = _chain_bfs(paths, vsets, nbr, s, t, want_even)
            if found is not None:
                seq = tuple(paths[i][0] for i in found)
                return ChainWitness(tuple(cyc_es), s, t, seq, len(seq) % 2)
    return None


def _chain_bfs(paths, vsets, nbr, s, t, want_even):
    target_par = 0 if want_even else 1
    starts = [i for i, vs in enumerate(vsets) if s in vs]
    prev = {}
    q = deque()
    for i in starts:
        prev[(i, 1)] = None
        q.append((i, 1))
    while q:
        i, par = q.popleft()
        for j in nbr[i]:
            npar = 1 - par
            if t in vsets[j] and npar == target_par:
                seq = [j]
                cur = (i, par)
                while cur is not None:
                    seq.append(cur[0])
                    cur = prev[cur]
                return seq[::-1]
            if (j, npar) not in prev:
                prev[(j, npar)] = (i, par)
                q.append((j, npar))
    return None


def validate_chain(p: PredrawnGraph, w: ChainWitness) -> bool:
    """Check every defining property of a chain witness against ``p``."""
    es = set(w.cycle)
    cyc_vs = []
    edges = {e: p.drawing.edges[e] for e in w.cycle if e in p.drawing.edges}
    if len(edges) != len(w.cycle):
        return False
    x = edges[w.cycle[0]][0]
    cur = x
    for e in w.cycle:
        u, v = edges[e]
        if cur not in (u, v):
            return False
        cyc_vs.append(cur)
        cur = v if u == cur else u
    if cur != x or len(set(cyc_vs)) != len(cyc_vs):
        return False
    if len(w.paths) < 2 or w.parity != len(w.paths) % 2:
        return False
    on_c = set(cyc_vs)
    if w.s in on_c or w.t in on_c or w.s not in w.paths[0] or w.t not in w.paths[-1]:
        return False
    g = p.graph
    for path in w.paths:
        if path[0] not in on_c or path[-1] not in on_c or any(v in on_c for v in path[1:-1]):
            return False
        for a, b in zip(path, path[1:]):
            if not any({e.u, e.v} == {a, b} and e.id not in es for e in g.incident(a)):
                return False
    pos = {v: i for i, v in enumerate(cyc_vs)}
    for p1, p2 in zip(w.paths, w.paths[1:]):
        if set(p1) & set(p2) or not _alternate(pos, len(cyc_vs), p1, p2):
            return False
    same = _same_face(p, cyc_vs, w.cycle, w.s, w.t)
    return same == (len(w.paths) % 2 == 0)
