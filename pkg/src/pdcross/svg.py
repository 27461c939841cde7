"""SVG rendering of plane drawings and drawing witnesses.

Each component gets a Tutte (barycentric) layout with its outer face pinned to
a circle; components nested in a face are shrunk into that face. The picture
is for humans only; nothing reads coordinates back.
"""
from __future__ import annotations

import math
from typing import Optional, Union
from xml.sax.saxutils import escape

import numpy as np

from .model import DrawingWitness, PlaneDrawing, face_ref_to_dart

_R = 100.0


def _face_of(d: PlaneDrawing, ref, orbits) -> Optional[tuple]:
    dart = face_ref_to_dart(ref)
    for orb in orbits:
        if dart in orb:
            return orb
    return None


def _walk(d: PlaneDrawing, orb) -> list:
    out = []
    for dart in orb:
        v = d.edge_ends(dart)[0]
        if v not in out:
            out.append(v)
    return out


def _tutte(vs: list, adj: dict, fixed: dict) -> dict:
    free = [v for v in vs if v not in fixed]
    pos = dict(fixed)
    if not free:
        return pos
    idx = {v: i for i, v in enumerate(free)}
    a = np.zeros((len(free), len(free)))
    b = np.zeros((len(free), 2))
    for v in free:
        i = idx[v]
        nbrs = adj.get(v, [])
        if not nbrs:
            a[i, i] = 1.0
            continue
        a[i, i] = len(nbrs)
        for w in nbrs:
            if w in idx:
                a[i, idx[w]] -= 1.0
            else:
                b[i] += fixed[w]
    sol = np.linalg.lstsq(a, b, rcond=None)[0]
    for v in free:
        pos[v] = (float(sol[idx[v], 0]), float(sol[idx[v], 1]))
    return pos


def _layout_component(d: PlaneDrawing, comp: str, verts: list, orbits, centre, radius) -> dict:
    eff_outer = d.effective_outer()
    cverts = set(verts)
    edges = {e: uv for e, uv in d.edges.items() if uv[0] in cverts}
    if not edges:
        return {v: centre for v in verts}
    outer = _face_of(d, eff_outer[comp], orbits) if comp in eff_outer else None
    if outer is None:
        own = [o for o in orbits if d.edge_ends(o[0])[0] in cverts]
        outer = max(own, key=lambda o: (len(o), sorted(o)))
    ring = _walk(d, outer)
    fixed = {}
    for k, v in enumerate(ring):
        # the outer face lies left of its darts, so the boundary runs clockwise
        t = -2 * math.pi * k / len(ring) + math.pi / 2
        fixed[v] = (centre[0] + radius * math.cos(t), centre[1] + radius * math.sin(t))
    adj = {v: [] for v in verts}
    for u, v in edges.values():
        if u != v:
            adj[u].append(v)
            adj[v].append(u)
    return _tutte(sorted(verts), adj, fixed)


def layout(d: PlaneDrawing) -> dict:
    """Coordinates for every vertex, host components before nested ones."""
    comps = d.components()
    orbits = d.faces()
    pos = {}
    top = sorted(c for c in comps if d.containment.get(c) is None or d.containment[c].host is None)
    x = 0.0
    for c in top:
        r = _R if len(comps[c]) > 1 else 0.0
        pos.update(_layout_component(d, c, comps[c], orbits, (x + r, 0.0), r))
        x += 2 * r + 40
    pending = sorted(c for c in comps if c not in top)
    while pending:
        progress = False
        for c in list(pending):
            host = _face_of(d, d.containment[c].host, orbits)
            if host is None:
                pending.remove(c)
                continue
            hv = _walk(d, host)
            if not all(v in pos for v in hv):
                continue
            cx = sum(pos[v][0] for v in hv) / len(hv)
            cy = sum(pos[v][1] for v in hv) / len(hv)
            near = min(math.dist((cx, cy), pos[v]) for v in hv) or 1.0
            siblings = [s for s in pending if d.containment[s].host == d.containment[c].host]
            r = near * 0.35 / max(1, len(siblings))
            slot = siblings.index(c)
            centre = (cx + (slot - (len(siblings) - 1) / 2) * 2.2 * r, cy)
            pos.update(_layout_component(d, c, comps[c], orbits, centre, r))
            pending.remove(c)
            progress = True
        if not progress:
            for c in pending:
                pos.update(_layout_component(d, c, comps[c], orbits, (x + _R, 0.0), _R))
                x += 2 * _R + 40
            break
    return pos


def render_svg(d: Union[DrawingWitness, PlaneDrawing], title: str = "") -> str:
    crossing_vs = set()
    owner = {}
    if isinstance(d, DrawingWitness):
        crossing_vs = {c.vertex for c in d.crossings}
        owner = d.piece_owner()
        d = d.planarised
    pos = layout(d)
    if pos:
        xs = [p[0] for p in pos.values()]
        ys = [p[1] for p in pos.values()]
        x0, y0, x1, y1 = min(xs) - 30, min(ys) - 30, max(xs) + 30, max(ys) + 30
    else:
        x0, y0, x1, y1 = 0, 0, 60, 60

    def pt(v):
        # mirror y so the picture reads as in a y-up plane
        return pos[v][0] - x0, y1 - pos[v][1]

    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{x1 - x0:.1f}" '
             f'height="{y1 - y0:.1f}">']
    if title:
        lines.append(f"<title>{escape(title)}</title>")
    bundles = {}
    for e in sorted(d.edges):
        u, v = d.edges[e]
        bundles.setdefault(tuple(sorted((u, v))), []).append(e)
    for (u, v), es in sorted(bundles.items()):
        (ax, ay), (bx, by) = pt(u), pt(v)
        for k, e in enumerate(es):
            label = escape(owner.get(e, e))
            if u == v:
                lines.append(f'<path class="edge" data-edge="{label}" d="M {ax:.1f} {ay:.1f} '
                             f'c 25 -35 -25 -35 0 0" fill="none" stroke="black"/>')
                continue
            off = (k - (len(es) - 1) / 2) * 14
            if off == 0:
                lines.append(f'<line class="edge" data-edge="{label}" x1="{ax:.1f}" y1="{ay:.1f}" '
                             f'x2="{bx:.1f}" y2="{by:.1f}" stroke="black"/>')
            else:
                ln = math.hypot(bx - ax, by - ay) or 1.0
                mx = (ax + bx) / 2 - off * (by - ay) / ln
                my = (ay + by) / 2 + off * (bx - ax) / ln
                lines.append(f'<path class="edge" data-edge="{label}" d="M {ax:.1f} {ay:.1f} '
                             f'Q {mx:.1f} {my:.1f} {bx:.1f} {by:.1f}" fill="none" stroke="black"/>')
    for v in sorted(pos):
        x, y = pt(v)
        if v in crossing_vs:
            lines.append(f'<g class="crossing" data-vertex="{escape(v)}">'
                         f'<line x1="{x - 5:.1f}" y1="{y - 5:.1f}" x2="{x + 5:.1f}" y2="{y + 5:.1f}" stroke="red"/>'
                         f'<line x1="{x - 5:.1f}" y1="{y + 5:.1f}" x2="{x + 5:.1f}" y2="{y - 5:.1f}" stroke="red"/>'
                         f"</g>")
        else:
            lines.append(f'<circle class="vertex" data-vertex="{escape(v)}" cx="{x:.1f}" cy="{y:.1f}" r="4" '
                         f'fill="white" stroke="black"/>')
            lines.append(f'<text x="{x + 6:.1f}" y="{y - 6:.1f}" font-size="10">{escape(v)}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_svg(d: Union[DrawingWitness, PlaneDrawing], path: str, title: str = "") -> str:
    text = render_svg(d, title)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text
