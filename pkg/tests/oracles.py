"""Independent reference computations used to freeze expected values.

Nothing here imports the solver, the extension search or the framing code.
"""
from __future__ import annotations

import itertools
import math
import random

import networkx as nx


def classical_crossing_number(vertices, edges, max_q: int = 3):
    """Crossing number of a simple graph by exhaustive identification.

    ``edges`` maps id -> (u, v, weight). Every set of independent edge pairs,
    each crossed once, is tried with every order of crossings along each edge;
    the planarisation is tested with networkx. Returns the least weighted cost
    or None when it exceeds ``max_q``.
    """
    ids = sorted(edges)
    pairs = [(a, b) for a, b in itertools.combinations(ids, 2)
             if not set(edges[a][:2]) & set(edges[b][:2])]
    cost = {pr: edges[pr[0]][2] * edges[pr[1]][2] for pr in pairs}
    base = nx.Graph()
    base.add_nodes_from(vertices)
    if nx.check_planarity(_plain(vertices, edges))[0]:
        return 0
    best = None
    for r in range(1, max_q + 1):
        for chosen in itertools.combinations(pairs, r):
            c = sum(cost[pr] for pr in chosen)
            if c > max_q or (best is not None and c >= best):
                continue
            if _realisable(vertices, edges, chosen):
                best = c
    return best


def _plain(vertices, edges):
    g = nx.Graph()
    g.add_nodes_from(vertices)
    g.add_edges_from((u, v) for u, v, _ in edges.values())
    return g


def _realisable(vertices, edges, chosen) -> bool:
    on_edge = {}
    for k, (a, b) in enumerate(chosen):
        on_edge.setdefault(a, []).append(f"#x{k}")
        on_edge.setdefault(b, []).append(f"#x{k}")
    crossed = sorted(on_edge)
    for orders in itertools.product(*(itertools.permutations(on_edge[e]) for e in crossed)):
        g = nx.Graph()
        g.add_nodes_from(vertices)
        for e, (u, v, _) in edges.items():
            if e not in on_edge:
                g.add_edge(u, v)
        for e, order in zip(crossed, orders):
            u, v, _ = edges[e]
            path = [u, *order, v]
            g.add_edges_from(zip(path, path[1:]))
        if nx.check_planarity(g)[0]:
            return True
    return False


def complete_edges(n: int, weights=None) -> tuple:
    vs = [f"k{i}" for i in range(1, n + 1)]
    weights = weights or {}
    es = {f"{u}{v}": (u, v, weights.get(f"{u}{v}", 1)) for i, u in enumerate(vs) for v in vs[i + 1:]}
    return vs, es


def bipartite_edges(a: int, b: int) -> tuple:
    left = [f"a{i}" for i in range(1, a + 1)]
    right = [f"b{i}" for i in range(1, b + 1)]
    return left + right, {f"{u}{v}": (u, v, 1) for u in left for v in right}


def segments_cross(p1, p2, p3, p4) -> bool:
    def o(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return o(p1, p2, p3) * o(p1, p2, p4) < 0 and o(p3, p4, p1) * o(p3, p4, p2) < 0


def random_plane_layout(rng: random.Random, n: int, tries: int = 60) -> tuple:
    """Points in general position and a maximal set of non-crossing straight edges."""
    pos = {}
    while len(pos) < n:
        p = (rng.randint(0, 12), rng.randint(0, 12))
        if p in pos.values():
            continue
        if any(abs((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])) < 1e-9
               for a, b in itertools.combinations(pos.values(), 2)):
            continue
        pos[f"p{len(pos) + 1}"] = p
    cand = list(itertools.combinations(sorted(pos), 2))
    rng.shuffle(cand)
    chosen = []
    for u, v in cand[:tries]:
        if all({u, v} & {x, y} or not segments_cross(pos[u], pos[v], pos[x], pos[y]) for x, y in chosen):
            chosen.append((u, v))
    return pos, {f"e{k + 1}": uv for k, uv in enumerate(chosen)}


def straight_crossings(pos, edges) -> int:
    return sum(1 for (a, b), (c, d) in itertools.combinations(edges.values(), 2)
               if not {a, b} & {c, d} and segments_cross(pos[a], pos[b], pos[c], pos[d]))


def euler_faces(n: int, m: int, components: int) -> int:
    return m - n + 1 + components


def angle(p, q) -> float:
    return math.atan2(q[1] - p[1], q[0] - p[0])
