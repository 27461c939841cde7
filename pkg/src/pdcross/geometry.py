"""Build combinatorial drawings from straight-line coordinates.

Only used to author fixtures and reference drawings; the toolkit itself never
relies on geometry.
"""
from __future__ import annotations

import math
from typing import Mapping

from .arrangement import Arrangement
from .model import (Crossing, DrawingWitness, GraphError, Multigraph, PlaneDrawing, crossing_cost,
                    trace_orbits)


def _signed_area(pts) -> float:
    s = 0.0
    for i in range(len(pts)):
        x1, y1 = pts[i]
        x2, y2 = pts[(i + 1) % len(pts)]
        s += x1 * y2 - x2 * y1
    return s / 2


def _inside(pt, poly) -> bool:
    x, y = pt
    inside = False
    for i in range(len(poly)):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % len(poly)]
        if (y1 > y) != (y2 > y):
            xc = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if xc > x:
                inside = not inside
    return inside


def drawing_from_coordinates(edges: Mapping[str, tuple], pos: Mapping[str, tuple]) -> PlaneDrawing:
    """Plane drawing of a crossing-free straight-line layout (y axis pointing up)."""
    rot = {v: [] for v in pos}
    for e, (u, v) in edges.items():
        rot[u].append((e, 0))
        rot[v].append((e, 1))
    for v, ds in rot.items():
        x0, y0 = pos[v]

        def ang(d):
            w = edges[d[0]][1 - d[1]]
            return -math.atan2(pos[w][1] - y0, pos[w][0] - x0)

        ds.sort(key=ang)
    a = Arrangement()
    a.edges = {e: tuple(uv) for e, uv in edges.items()}
    a.rot = rot
    orbits = trace_orbits(a.edges, rot)
    comp_of = {}
    for comp in a.components():
        for v in comp:
            comp_of[v] = min(comp)
    polys = []
    outer_of = {}
    for orb in orbits:
        pts = [pos[a.tail(d)] for d in orb]
        area = _signed_area(pts)
        c = comp_of[a.tail(orb[0])]
        if area <= 1e-12 and (c not in outer_of or area < outer_of[c][1]):
            outer_of[c] = (orb, area)
        polys.append((orb, pts, area))
    rid = {}
    bounded = []
    for orb, pts, area in polys:
        c = comp_of[a.tail(orb[0])]
        if outer_of.get(c, (None,))[0] is orb:
            continue
        r = a._fresh()
        rid[id(orb)] = r
        bounded.append((orb, pts, abs(area), r, c))

    def host_region(c, probe):
        best = None
        for orb, pts, area, r, c2 in bounded:
            if c2 != c and _inside(probe, pts) and (best is None or area < best[0]):
                best = (area, r)
        return a.outer_rid if best is None else best[1]

    for orb, pts, area in polys:
        c = comp_of[a.tail(orb[0])]
        if id(orb) in rid:
            r = rid[id(orb)]
        else:
            r = host_region(c, pos[c])
        for d in orb:
            a.region_of[d] = r
    for v, ds in rot.items():
        if not ds:
            a.point_region[v] = host_region(v, pos[v])
    return a.to_drawing()


def _seg_cross(p1, p2, p3, p4):
    d = (p2[0] - p1[0]) * (p4[1] - p3[1]) - (p2[1] - p1[1]) * (p4[0] - p3[0])
    if abs(d) < 1e-12:
        return None
    t = ((p3[0] - p1[0]) * (p4[1] - p3[1]) - (p3[1] - p1[1]) * (p4[0] - p3[0])) / d
    s = ((p3[0] - p1[0]) * (p2[1] - p1[1]) - (p3[1] - p1[1]) * (p2[0] - p1[0])) / d
    eps = 1e-9
    if eps < t < 1 - eps and eps < s < 1 - eps:
        return t, s
    return None


def witness_from_coordinates(g: Multigraph, pos: Mapping[str, tuple]) -> DrawingWitness:
    """Straight-line witness; every proper crossing of two segments becomes a vertex."""
    es = list(g.edges)
    hits = {e.id: [] for e in es}
    crossings = []
    k = 0
    for i in range(len(es)):
        for j in range(i + 1, len(es)):
            a, b = es[i], es[j]
            if set(a.ends) & set(b.ends):
                continue
            r = _seg_cross(pos[a.u], pos[a.v], pos[b.u], pos[b.v])
            if r is None:
                continue
            k += 1
            x = f"~c{k}"
            t, s = r
            pos = dict(pos)
            pos[x] = (pos[a.u][0] + t * (pos[a.v][0] - pos[a.u][0]),
                      pos[a.u][1] + t * (pos[a.v][1] - pos[a.u][1]))
            hits[a.id].append((t, x))
            hits[b.id].append((s, x))
            crossings.append(Crossing(x, a.id, b.id, crossing_cost(g, a.id, b.id)))
    pedges = {}
    chains = {}
    for e in es:
        pts = [e.u] + [x for _, x in sorted(hits[e.id])] + [e.v]
        if len(pts) == 2:
            pedges[e.id] = (e.u, e.v)
            chains[e.id] = (e.id,)
            continue
        ps = []
        for m in range(len(pts) - 1):
            p = f"{e.id}~{m + 1}"
            pedges[p] = (pts[m], pts[m + 1])
            ps.append(p)
        chains[e.id] = tuple(ps)
    for x in pos:
        if x not in g._inc and not x.startswith("~c"):
            raise GraphError(f"position for unknown vertex {x}")
    d = drawing_from_coordinates(pedges, {v: pos[v] for v in list(g.vertices) + [c.vertex for c in crossings]})
    return DrawingWitness(g, d, chains, tuple(crossings))
