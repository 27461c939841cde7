"""Mutable sphere arrangement used internally by the extension search and surgery.

Every dart carries the id of the region (face of the whole drawing) lying to
its left.  Isolated vertices are points with a region of their own record.
One region holds the point at infinity.  Regions are refined when an edge
closes a cycle and merged when an edge separating two regions is deleted.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Optional

from .model import (GraphError, Placement, PlaneDrawing, canonical_face_ref, rev,
                    trace_orbits, _sphere_form)


class Arrangement:
    def __init__(self):
        self.edges = {}
        self.rot = {}
        self.region_of = {}
        self.point_region = {}
        self.outer_rid = 0
        self._next = 1

    # -- construction -----------------------------------------------------
    @classmethod
    def empty(cls) -> "Arrangement":
        return cls()

    @classmethod
    def from_drawing(cls, d: PlaneDrawing) -> "Arrangement":
        a = cls()
        rot, orbits, comps, outer_orbit, host = _sphere_form(d)
        a.edges = {e: tuple(uv) for e, uv in d.edges.items()}
        a.rot = {v: list(ds) for v, ds in rot.items()}
        ci = d.component_index()
        # one region per inner face; outer orbits join the region hosting their component
        region_of_orbit = {}
        for orb in orbits:
            fs = frozenset(orb)
            c = ci[d.edges[orb[0][0]][orb[0][1]]]
            if outer_orbit.get(c) == fs:
                continue
            region_of_orbit[fs] = a._fresh()
        for orb in orbits:
            fs = frozenset(orb)
            if fs in region_of_orbit:
                rid = region_of_orbit[fs]
            else:
                c = ci[d.edges[orb[0][0]][orb[0][1]]]
                h = host[c]
                rid = a.outer_rid if h is None else region_of_orbit[h]
            for x in orb:
                a.region_of[x] = rid
        for c, members in comps.items():
            if len(members) == 1 and not rot[members[0]]:
                h = host[c]
                a.point_region[members[0]] = a.outer_rid if h is None else region_of_orbit[h]
        return a

    def copy(self) -> "Arrangement":
        b = Arrangement.__new__(Arrangement)
        b.edges = dict(self.edges)
        b.rot = {v: list(ds) for v, ds in self.rot.items()}
        b.region_of = dict(self.region_of)
        b.point_region = dict(self.point_region)
        b.outer_rid = self.outer_rid
        b._next = self._next
        return b

    def _fresh(self) -> int:
        r = self._next
        self._next += 1
        return r

    # -- queries ----------------------------------------------------------
    def tail(self, d) -> str:
        return self.edges[d[0]][d[1]]

    def head(self, d) -> str:
        return self.edges[d[0]][1 - d[1]]

    def regions_at(self, v: str) -> set:
        if v in self.point_region:
            return {self.point_region[v]}
        return {self.region_of[d] for d in self.rot[v]}

    def corners(self, v: str, rid: int) -> list:
        """Insertion positions at ``v`` that open into region ``rid``."""
        if v in self.point_region:
            return [0] if self.point_region[v] == rid else []
        ring = self.rot[v]
        n = len(ring)
        return [k for k in range(n) if self.region_of[ring[k]] == rid]

    def corner_region(self, v: str, k: int) -> int:
        if v in self.point_region:
            return self.point_region[v]
        ring = self.rot[v]
        return self.region_of[ring[k % len(ring)]]

    def regions(self) -> set:
        out = set(self.region_of.values()) | set(self.point_region.values())
        out.add(self.outer_rid)
        return out

    def next_dart(self, d):
        r = rev(d)
        ring = self.rot[self.tail(r)]
        return ring[(ring.index(r) + 1) % len(ring)]

    def orbit(self, d) -> list:
        out = [d]
        x = self.next_dart(d)
        while x != d:
            out.append(x)
            x = self.next_dart(x)
        return out

    def components(self) -> list:
        parent = {v: v for v in self.rot}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges.values():
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        groups = {}
        for v in self.rot:
            groups.setdefault(find(v), set()).add(v)
        return list(groups.values())

    def component_of(self, v: str) -> set:
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for d in self.rot[x]:
                y = self.head(d)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def members_in_region(self, rid: int, skip: Iterable[str] = ()) -> list:
        """Components and points touching region ``rid`` other than those containing ``skip``."""
        skipset = set(skip)
        seen = set(skipset)
        out = []
        cand = [v for v, r in self.point_region.items() if r == rid]
        cand += [self.tail(d) for d, r in self.region_of.items() if r == rid]
        for v in sorted(set(cand)):
            if v in seen:
                continue
            comp = self.component_of(v)
            seen |= comp
            if comp & skipset:
                continue
            out.append(min(comp))
        return out

    # -- edits ------------------------------------------------------------
    def add_point(self, v: str, rid: Optional[int] = None) -> None:
        if v in self.rot:
            raise GraphError(f"vertex {v} already drawn")
        self.rot[v] = []
        self.point_region[v] = self.outer_rid if rid is None else rid

    def delete_point(self, v: str) -> None:
        if self.rot.get(v):
            raise GraphError(f"vertex {v} still has edges")
        del self.rot[v]
        self.point_region.pop(v, None)

    def _move_member(self, rep: str, src: int, dst: int) -> None:
        comp = self.component_of(rep)
        for x in comp:
            if x in self.point_region:
                self.point_region[x] = dst
            for d in self.rot[x]:
                if self.region_of[d] == src:
                    self.region_of[d] = dst

    def add_edge(self, eid: str, u: str, ku: int, v: str, kv: int,
                 to_new: Iterable[str] = (), outer_to_new: bool = False) -> Optional[int]:
        """Draw edge ``eid`` from corner ``ku`` at ``u`` to corner ``kv`` at ``v``.

        When the edge closes a cycle, the region left of ``(eid, 0)`` keeps
        its id, the other side gets a fresh id which is returned, and the
        members named in ``to_new`` are moved there.
        """
        if eid in self.edges:
            raise GraphError(f"edge {eid} already drawn")
        if u == v:
            raise GraphError("self-loop")
        ru = self.corner_region(u, ku)
        rv = self.corner_region(v, kv)
        if ru != rv:
            raise GraphError("corners lie in different regions")
        rid = ru
        same = v in self.component_of(u)
        self.edges[eid] = (u, v)
        d0, d1 = (eid, 0), (eid, 1)
        for x, k, d in ((u, ku, d0), (v, kv, d1)):
            if x in self.point_region:
                del self.point_region[x]
                self.rot[x] = [d]
            else:
                self.rot[x].insert(k, d)
        if not same:
            self.region_of[d0] = rid
            self.region_of[d1] = rid
            return None
        new = self._fresh()
        for x in self.orbit(d0):
            self.region_of[x] = rid
        for x in self.orbit(d1):
            self.region_of[x] = new
        for rep in to_new:
            self._move_member(rep, rid, new)
        if outer_to_new and self.outer_rid == rid:
            self.outer_rid = new
        return new

    def delete_edge(self, eid: str) -> None:
        d0, d1 = (eid, 0), (eid, 1)
        r0, r1 = self.region_of.pop(d0), self.region_of.pop(d1)
        u, v = self.edges.pop(eid)
        self.rot[u].remove(d0)
        self.rot[v].remove(d1)
        if r0 != r1:
            for d, r in self.region_of.items():
                if r == r1:
                    self.region_of[d] = r0
            for x, r in self.point_region.items():
                if r == r1:
                    self.point_region[x] = r0
            if self.outer_rid == r1:
                self.outer_rid = r0
        for x in (u, v):
            if not self.rot[x]:
                self.point_region[x] = r0

    def smooth(self, x: str, new: str, first: Optional[str] = None) -> None:
        """Replace the two edges at degree-2 vertex ``x`` by one edge ``new``."""
        ring = self.rot[x]
        if len(ring) != 2:
            raise GraphError(f"cannot smooth {x}: degree {len(ring)}")
        p, q = ring
        if first is not None and q[0] == first:
            p, q = q, p
        fa, fb = rev(p), rev(q)
        a, b = self.tail(fa), self.tail(fb)
        if a == b:
            raise GraphError("smoothing would create a self-loop")
        ra, rb = self.region_of[fa], self.region_of[fb]
        for d in (p, q, fa, fb):
            del self.region_of[d]
        del self.edges[p[0]]
        del self.edges[q[0]]
        del self.rot[x]
        self.edges[new] = (a, b)
        ia = self.rot[a].index(fa)
        self.rot[a][ia] = (new, 0)
        ib = self.rot[b].index(fb)
        self.rot[b][ib] = (new, 1)
        self.region_of[(new, 0)] = ra
        self.region_of[(new, 1)] = rb

    def subdivide(self, eid: str, x: str, first: str, second: str) -> None:
        """Put new vertex ``x`` on ``eid``; ``first`` runs from ends[0] to x."""
        u, v = self.edges.pop(eid)
        r0, r1 = self.region_of.pop((eid, 0)), self.region_of.pop((eid, 1))
        self.edges[first] = (u, x)
        self.edges[second] = (x, v)
        iu = self.rot[u].index((eid, 0))
        self.rot[u][iu] = (first, 0)
        iv = self.rot[v].index((eid, 1))
        self.rot[v][iv] = (second, 1)
        self.rot[x] = [(first, 1), (second, 0)]
        self.region_of[(first, 0)] = r0
        self.region_of[(second, 0)] = r0
        self.region_of[(first, 1)] = r1
        self.region_of[(second, 1)] = r1

    def contract_edge(self, eid: str) -> str:
        """Contract ``eid`` into its first end; parallel copies are deleted first."""
        u, v = self.edges[eid]
        for f, (a, b) in list(self.edges.items()):
            if f != eid and {a, b} == {u, v}:
                self.delete_edge(f)
        ru = self.rot[u]
        rv = self.rot[v]
        iu = ru.index((eid, 0))
        iv = rv.index((eid, 1))
        merged = ru[iu + 1:] + ru[:iu] + rv[iv + 1:] + rv[:iv]
        del self.region_of[(eid, 0)]
        del self.region_of[(eid, 1)]
        del self.edges[eid]
        del self.rot[v]
        self.rot[u] = merged
        for f, (a, b) in list(self.edges.items()):
            if a == v or b == v:
                self.edges[f] = (u if a == v else a, u if b == v else b)
        if not merged:
            self.point_region[u] = self.outer_rid
        return u

    def rename_edges(self, ren: Mapping[str, str]) -> None:
        if not ren:
            return
        self.edges = {ren.get(e, e): uv for e, uv in self.edges.items()}
        self.rot = {v: [(ren.get(e, e), i) for e, i in ds] for v, ds in self.rot.items()}
        self.region_of = {(ren.get(e, e), i): r for (e, i), r in self.region_of.items()}

    def rename_vertices(self, ren: Mapping[str, str]) -> None:
        if not ren:
            return
        self.edges = {e: (ren.get(u, u), ren.get(v, v)) for e, (u, v) in self.edges.items()}
        self.rot = {ren.get(v, v): ds for v, ds in self.rot.items()}
        self.point_region = {ren.get(v, v): r for v, r in self.point_region.items()}

    def flip_edge(self, eid: str) -> None:
        u, v = self.edges[eid]
        self.edges[eid] = (v, u)
        sw = {(eid, 0): (eid, 1), (eid, 1): (eid, 0)}
        for x in (u, v):
            self.rot[x] = [sw.get(d, d) for d in self.rot[x]]
        r0, r1 = self.region_of[(eid, 0)], self.region_of[(eid, 1)]
        self.region_of[(eid, 0)], self.region_of[(eid, 1)] = r1, r0

    def mirror(self) -> None:
        """Reflect the whole drawing in place."""
        self.rot = {v: ds[::-1] for v, ds in self.rot.items()}
        # a region left of d lies right of d in the reflection, i.e. left of rev(d)
        self.region_of = {rev(d): r for d, r in self.region_of.items()}

    # -- export -----------------------------------------------------------
    def to_drawing(self) -> PlaneDrawing:
        comps = self.components()
        comp_id = {}
        for comp in comps:
            c = min(comp)
            for v in comp:
                comp_id[v] = c
        # bipartite tree of regions and components
        touch = {}
        for d, r in self.region_of.items():
            touch.setdefault(comp_id[self.tail(d)], {}).setdefault(r, d)
        for v, r in self.point_region.items():
            touch.setdefault(comp_id[v], {})[r] = None
        by_region = {}
        for c, rs in touch.items():
            for r in rs:
                by_region.setdefault(r, []).append(c)
        outer = {}
        cont = {}
        parent_comp = {self.outer_rid: None}
        queue = [self.outer_rid]
        seen_c = set()
        while queue:
            r = queue.pop(0)
            for c in sorted(by_region.get(r, [])):
                if c in seen_c:
                    continue
                seen_c.add(c)
                d = touch[c][r]
                pc = parent_comp[r]
                if d is not None:
                    outer[c] = canonical_face_ref(self.orbit(d))
                if pc is not None:
                    cont[c] = Placement(canonical_face_ref(self.orbit(touch[pc][r])), False)
                for r2 in sorted(touch[c]):
                    if r2 != r and r2 not in parent_comp:
                        parent_comp[r2] = c
                        queue.append(r2)
        if len(seen_c) != len(touch):
            raise GraphError("arrangement regions are not a tree")
        rot = {v: tuple(ds) for v, ds in self.rot.items()}
        return PlaneDrawing(dict(self.edges), rot, outer, cont)

    def check(self) -> None:
        """Consistency of region labels: each orbit carries a single region id."""
        for orb in trace_orbits(self.edges, self.rot):
            rs = {self.region_of[d] for d in orb}
            if len(rs) != 1:
                raise GraphError("inconsistent region labels")


def drawing_from_rotations(edges: Mapping[str, tuple], rot: Mapping[str, Iterable]) -> PlaneDrawing:
    """Connected-or-not drawing where every component sits side by side in the plane."""
    a = Arrangement()
    a.edges = {e: tuple(uv) for e, uv in edges.items()}
    a.rot = {v: list(ds) for v, ds in rot.items()}
    orbits = trace_orbits(a.edges, a.rot)
    seen_comp = set()
    comps = {}
    for comp in a.components():
        for v in comp:
            comps[v] = min(comp)
    for orb in orbits:
        c = comps[a.tail(orb[0])]
        if c not in seen_comp:
            seen_comp.add(c)
            rid = a.outer_rid
        else:
            rid = a._fresh()
        for x in orb:
            a.region_of[x] = rid
    for v, ds in a.rot.items():
        if not ds:
            a.point_region[v] = a.outer_rid
    return a.to_drawing()
