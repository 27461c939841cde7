"""Multigraphs, combinatorial plane drawings, witnesses and graph surgery.

A drawing is stored purely combinatorially.  Every vertex carries a clockwise
cyclic list of edge-ends.  An edge-end ``(e, i)`` is the dart that leaves the
vertex ``ends[i]`` of edge ``e``.  Faces are traced so that each face lies to
the left of its darts.  Disconnected drawings record, per component, its own
outer face and the face of another component that hosts it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence

Dart = tuple  # (edge id, end index 0|1)
FaceRef = tuple  # (edge id, "fwd"|"rev", "left"|"right")


class GraphError(ValueError):
    """Malformed graph, drawing or surgery request."""


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    predrawn: bool = False
    uncrossable: bool = False
    weight: int = 1

    @property
    def ends(self) -> tuple[str, str]:
        return (self.u, self.v)

    def other(self, x: str) -> str:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise GraphError(f"vertex {x} is not an end of edge {self.id}")

    def end_index(self, x: str) -> int:
        return 0 if x == self.u else 1


@dataclass(frozen=True)
class Multigraph:
    vertices: tuple
    edges: tuple

    def __post_init__(self):
        verts = tuple(self.vertices)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(self.edges))
        vset = set(verts)
        if len(vset) != len(verts):
            raise GraphError("duplicate vertex id")
        index = {}
        inc = {v: [] for v in verts}
        for e in self.edges:
            if e.id in index:
                raise GraphError(f"duplicate edge id {e.id}")
            if e.u not in vset or e.v not in vset:
                raise GraphError(f"edge {e.id} has an undeclared end")
            if e.u == e.v:
                raise GraphError(f"self-loop {e.id} rejected")
            if not isinstance(e.weight, int) or e.weight < 1:
                raise GraphError(f"edge {e.id} has weight < 1")
            index[e.id] = e
            inc[e.u].append(e)
            inc[e.v].append(e)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_inc", inc)

    def edge(self, eid: str) -> Edge:
        try:
            return self._index[eid]
        except KeyError:
            raise GraphError(f"unknown edge {eid}") from None

    def has_edge(self, eid: str) -> bool:
        return eid in self._index

    def incident(self, v: str) -> list:
        return self._inc[v]

    def degree(self, v: str) -> int:
        return len(self._inc[v])

    def neighbors(self, v: str) -> set:
        return {e.other(v) for e in self._inc[v]}

    @property
    def edge_ids(self) -> list:
        return [e.id for e in self.edges]

    def predrawn_edges(self) -> list:
        return [e for e in self.edges if e.predrawn]

    def replace(self, vertices=None, edges=None) -> "Multigraph":
        return Multigraph(self.vertices if vertices is None else vertices,
                          self.edges if edges is None else edges)

    def subgraph(self, vertices: Iterable[str], edge_ids: Optional[Iterable[str]] = None) -> "Multigraph":
        vs = set(vertices)
        if edge_ids is None:
            es = [e for e in self.edges if e.u in vs and e.v in vs]
        else:
            keep = set(edge_ids)
            es = [e for e in self.edges if e.id in keep]
            for e in es:
                if e.u not in vs or e.v not in vs:
                    raise GraphError(f"edge {e.id} leaves the vertex subset")
        return Multigraph(tuple(v for v in self.vertices if v in vs), tuple(es))

    def components(self) -> list:
        seen = set()
        out = []
        for s in self.vertices:
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            seen.add(s)
            while stack:
                x = stack.pop()
                for e in self._inc[x]:
                    y = e.other(x)
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        stack.append(y)
            out.append(comp)
        return out

    def to_networkx(self):
        import networkx as nx
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            g.add_edge(e.u, e.v, key=e.id)
        return g

    def simple_networkx(self):
        import networkx as nx
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from((e.u, e.v) for e in self.edges)
        return g


def make_graph(vertices: Iterable[str], edges: Iterable) -> Multigraph:
    """Build a multigraph from ``(id, u, v)`` triples or :class:`Edge` records."""
    es = []
    for item in edges:
        if isinstance(item, Edge):
            es.append(item)
        else:
            eid, u, v, *rest = item
            es.append(Edge(eid, u, v, *rest))
    return Multigraph(tuple(vertices), tuple(es))


# ---------------------------------------------------------------------------
# darts and faces

def rev(d: Dart) -> Dart:
    return (d[0], 1 - d[1])


def face_ref_to_dart(ref: FaceRef) -> Dart:
    eid, direction, side = ref
    i = 0 if direction == "fwd" else 1
    return (eid, i) if side == "left" else (eid, 1 - i)


def dart_face_refs(d: Dart) -> tuple:
    eid, i = d
    return ((eid, "fwd" if i == 0 else "rev", "left"),
            (eid, "rev" if i == 0 else "fwd", "right"))


def canonical_face_ref(orbit: Iterable[Dart]) -> FaceRef:
    return min(r for d in orbit for r in dart_face_refs(d))


def mirror_face_ref(ref: FaceRef) -> FaceRef:
    return (ref[0], ref[1], "right" if ref[2] == "left" else "left")


def trace_orbits(edges: Mapping[str, tuple], rot: Mapping[str, Sequence[Dart]]) -> list:
    """Face boundaries of a rotation system; each face lies left of its darts."""
    pos = {}
    for v, ds in rot.items():
        for k, d in enumerate(ds):
            pos[d] = (v, k)
    seen = set()
    orbits = []
    for v in rot:
        for d in rot[v]:
            if d in seen:
                continue
            orb = []
            x = d
            while x not in seen:
                seen.add(x)
                orb.append(x)
                r = rev(x)
                w, k = pos[r]
                ring = rot[w]
                x = ring[(k + 1) % len(ring)]
            orbits.append(tuple(orb))
    return orbits


def normalize_cycle(seq: Sequence) -> tuple:
    if not seq:
        return ()
    k = min(range(len(seq)), key=lambda i: seq[i])
    return tuple(seq[k:]) + tuple(seq[:k])


# ---------------------------------------------------------------------------
# plane drawings

@dataclass(frozen=True)
class Placement:
    host: Optional[FaceRef]
    mirrored: bool = False


@dataclass(frozen=True)
class PlaneDrawing:
    """Combinatorial drawing of a multigraph.

    ``rotations`` maps each vertex to its clockwise edge-end list as stored.
    A component with ``mirrored`` set is drawn reflected, so its effective
    rotations are reversed and its own outer face is read in the reflected
    frame.  ``outer`` gives, per component with edges, the face that points
    away from everything enclosing it.  ``containment`` gives the face of an
    earlier component hosting the component; components without a record sit
    in the unbounded region.
    """
    edges: Mapping[str, tuple]
    rotations: Mapping[str, tuple]
    outer: Mapping[str, FaceRef] = field(default_factory=dict)
    containment: Mapping[str, Placement] = field(default_factory=dict)

    @property
    def vertices(self) -> list:
        return list(self.rotations)

    def component_index(self) -> dict:
        parent = {v: v for v in self.rotations}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges.values():
            if u in parent and v in parent:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
        groups = {}
        for v in self.rotations:
            groups.setdefault(find(v), []).append(v)
        out = {}
        for members in groups.values():
            cid = min(members)
            for v in members:
                out[v] = cid
        return out

    def components(self) -> dict:
        out = {}
        for v, c in self.component_index().items():
            out.setdefault(c, []).append(v)
        return out

    def mirrored(self, comp: str) -> bool:
        pl = self.containment.get(comp)
        return bool(pl and pl.mirrored)

    def effective_rotations(self) -> dict:
        ci = self.component_index()
        out = {}
        for v, ds in self.rotations.items():
            out[v] = tuple(reversed(ds)) if self.mirrored(ci[v]) else tuple(ds)
        return out

    def effective_outer(self) -> dict:
        out = {}
        for c, ref in self.outer.items():
            out[c] = mirror_face_ref(ref) if self.mirrored(c) else ref
        return out

    def faces(self) -> list:
        return trace_orbits(self.edges, self.effective_rotations())

    @property
    def outer_face(self) -> Optional[FaceRef]:
        eff = self.effective_outer()
        comps = self.components()
        for c in sorted(comps):
            if c in eff and self.containment.get(c, Placement(None)).host is None:
                return eff[c]
        return None

    def edge_ends(self, d: Dart) -> tuple:
        u, v = self.edges[d[0]]
        return (u, v) if d[1] == 0 else (v, u)

    def global_mirror(self) -> "PlaneDrawing":
        """The same drawing seen in a mirror."""
        comps = self.components()
        cont = dict(self.containment)
        new = {}
        for c in comps:
            pl = cont.get(c, Placement(None, False))
            host = mirror_face_ref(pl.host) if pl.host is not None else None
            new[c] = Placement(host, not pl.mirrored)
        return PlaneDrawing(dict(self.edges), dict(self.rotations), dict(self.outer), new)

    def relabel(self, vmap: Mapping[str, str], emap: Mapping[str, str]) -> "PlaneDrawing":
        """Rename vertices and edges; component keys follow the new names."""
        edges = {emap.get(e, e): (vmap.get(u, u), vmap.get(v, v)) for e, (u, v) in self.edges.items()}
        rot = {vmap.get(v, v): tuple((emap.get(e, e), i) for e, i in ds) for v, ds in self.rotations.items()}
        old_ci = self.component_index()
        tmp = PlaneDrawing(edges, rot)
        new_ci = tmp.component_index()
        cmap = {c: new_ci[vmap.get(v, v)] for v, c in old_ci.items()}

        def fr(ref):
            return None if ref is None else (emap.get(ref[0], ref[0]), ref[1], ref[2])

        outer = {cmap[c]: fr(r) for c, r in self.outer.items()}
        cont = {cmap[c]: Placement(fr(p.host), p.mirrored) for c, p in self.containment.items()}
        return PlaneDrawing(edges, rot, outer, cont)


@dataclass
class ValidationReport:
    ok: bool
    violations: list

    def __bool__(self):
        return self.ok


def validate_drawing(d: PlaneDrawing) -> ValidationReport:
    bad = []
    rot = d.rotations
    seen = {}
    for v, ds in rot.items():
        for dart in ds:
            eid, i = dart
            if eid not in d.edges:
                bad.append(f"unknown edge in rotation of {v}: {eid}")
                continue
            if dart in seen:
                bad.append(f"duplicate edge-end {eid}.{i}")
                continue
            seen[dart] = v
            if d.edges[eid][i] != v:
                bad.append(f"edge-end {eid}.{i} listed at wrong vertex {v}")
    for eid, (u, v) in d.edges.items():
        if u == v:
            bad.append(f"self-loop {eid}")
        for i, x in enumerate((u, v)):
            if x not in rot:
                bad.append(f"edge {eid} end {x} is not a drawn vertex")
            elif (eid, i) not in seen:
                bad.append(f"missing edge-end {eid}.{i}")
    if bad:
        return ValidationReport(False, bad)
    comps = d.components()
    eff = d.effective_rotations()
    orbits = trace_orbits(d.edges, eff)
    orbit_of = {}
    for k, orb in enumerate(orbits):
        for x in orb:
            orbit_of[x] = k
    ci = d.component_index()
    faces_per = {}
    for k, orb in enumerate(orbits):
        faces_per.setdefault(ci[d.edges[orb[0][0]][orb[0][1]]], set()).add(k)
    edges_per = {}
    for eid, (u, v) in d.edges.items():
        edges_per[ci[u]] = edges_per.get(ci[u], 0) + 1
    for c, members in comps.items():
        nv, ne = len(members), edges_per.get(c, 0)
        nf = len(faces_per.get(c, ())) if ne else 1
        if nv - ne + nf != 2:
            bad.append(f"component {c} fails Euler check ({nv}-{ne}+{nf}!=2)")
    eff_outer = d.effective_outer()
    for c in comps:
        if edges_per.get(c, 0) and c not in d.outer:
            bad.append(f"component {c} lacks an outer face")
    for c, ref in eff_outer.items():
        if c not in comps:
            bad.append(f"outer face given for unknown component {c}")
            continue
        if ref[0] not in d.edges or ci[d.edges[ref[0]][0]] != c:
            bad.append(f"outer face of {c} is not a face of that component")
    host_comp = {}
    for c, pl in d.containment.items():
        if c not in comps:
            bad.append(f"containment for unknown component {c}")
            continue
        if pl.host is None:
            continue
        eid = pl.host[0]
        if eid not in d.edges:
            bad.append(f"host face of {c} names unknown edge {eid}")
            continue
        hc = ci[d.edges[eid][0]]
        if hc == c:
            bad.append(f"component {c} hosted in its own face")
            continue
        host_comp[c] = hc
    for c in host_comp:
        walk, x = set(), c
        while x in host_comp:
            if x in walk:
                bad.append("containment not a forest")
                break
            walk.add(x)
            x = host_comp[x]
        if bad and bad[-1] == "containment not a forest":
            break
    return ValidationReport(not bad, bad)


def _sphere_form(d: PlaneDrawing) -> tuple:
    """Effective rotations, orbits and normalised containment of a drawing."""
    rot = d.effective_rotations()
    orbits = trace_orbits(d.edges, rot)
    orbit_of = {}
    for orb in orbits:
        fs = frozenset(orb)
        for x in orb:
            orbit_of[x] = fs
    ci = d.component_index()
    comps = d.components()
    outer_orbit = {c: orbit_of[face_ref_to_dart(r)] for c, r in d.effective_outer().items()}
    host_orbit = {}
    host_comp = {}
    for c, pl in d.containment.items():
        if pl.host is not None:
            o = orbit_of[face_ref_to_dart(pl.host)]
            host_orbit[c] = o
            host_comp[c] = ci[d.edges[pl.host[0]][0]]

    def norm_host(c, depth=0):
        if c not in host_orbit or depth > len(comps):
            return None
        o = host_orbit[c]
        hc = host_comp[c]
        if outer_orbit.get(hc) == o:
            return norm_host(hc, depth + 1)
        return o

    return rot, orbits, comps, outer_orbit, {c: norm_host(c) for c in comps}


def _tail(d: PlaneDrawing, dart: Dart) -> str:
    return d.edges[dart[0]][dart[1]]


def _canon(d: PlaneDrawing, reflect: bool) -> tuple:
    rot, orbits, comps, outer_orbit, host = _sphere_form(d)

    def key(dart):
        eid, i = dart
        return (eid, d.edges[eid][i])

    def okey(orb):
        if orb is None:
            return None
        if reflect:
            return frozenset(key(rev(x)) for x in orb)
        return frozenset(key(x) for x in orb)

    rkey = {}
    for v, ds in rot.items():
        seq = [key(x) for x in ds]
        if reflect:
            seq = seq[::-1]
        rkey[v] = normalize_cycle(seq)
    ckey = {}
    for c, members in comps.items():
        ckey[frozenset(members)] = (okey(outer_orbit.get(c)), okey(host[c]))
    return (frozenset(rkey.items()), frozenset(ckey.items()))


def _abstract(d: PlaneDrawing) -> tuple:
    return (frozenset(d.rotations), frozenset((e, frozenset(uv)) for e, uv in d.edges.items()))


def drawings_equivalent(d1: PlaneDrawing, d2: PlaneDrawing) -> bool:
    """True iff some homeomorphism of the plane maps one drawing onto the other.

    Rotations must agree up to one reflection applied to the whole plane,
    outer faces must correspond, and so must the face hosting every
    component together with its orientation.
    """
    if _abstract(d1) != _abstract(d2):
        raise GraphError("graph mismatch")
    base = _canon(d1, False)
    return base == _canon(d2, False) or base == _canon(d2, True)


# ---------------------------------------------------------------------------
# predrawn graphs and witnesses

@dataclass(frozen=True)
class CrossingRecord:
    edge_a: str
    pos_a: int
    edge_b: str
    pos_b: int
    labels: Mapping[str, int]


@dataclass(frozen=True)
class PredrawnGraph:
    graph: Multigraph
    drawing: PlaneDrawing
    crossings: Mapping[str, CrossingRecord] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        g = self.graph
        pd = {e.id for e in g.edges if e.predrawn}
        if set(self.drawing.edges) != pd:
            raise GraphError("predrawn drawing must cover exactly the predrawn edges")
        for eid, (u, v) in self.drawing.edges.items():
            e = g.edge(eid)
            if {u, v} != {e.u, e.v}:
                raise GraphError(f"drawing edge {eid} has wrong ends")
        for v in self.drawing.rotations:
            if v not in g._inc:
                raise GraphError(f"drawn vertex {v} not in graph")
        for x, rec in self.crossings.items():
            if x not in self.drawing.rotations or len(self.drawing.rotations[x]) != 4:
                raise GraphError(f"crossing vertex {x} must be a drawn degree-4 vertex")
            labs = sorted(rec.labels.values())
            if labs != [0, 0, 1, 1]:
                raise GraphError(f"crossing {x} needs labels 0,0,1,1")
            ring = self.drawing.rotations[x]
            lab = [rec.labels[e] for e, _ in ring]
            if lab[0] != lab[2] or lab[1] != lab[3]:
                raise GraphError(f"crossing {x}: equal labels must sit opposite")

    @property
    def h_vertices(self) -> set:
        return set(self.drawing.rotations)

    def h_edge_ids(self) -> set:
        return set(self.drawing.edges)

    def with_graph(self, graph: Multigraph) -> "PredrawnGraph":
        return PredrawnGraph(graph, self.drawing, self.crossings, self.name)

    def original_edge_map(self) -> dict:
        """Map every edge id to the id of the edge it came from before ℋ was planarised."""
        out = {e.id: e.id for e in self.graph.edges}
        if not self.crossings:
            return out
        for x, rec in self.crossings.items():
            for piece, lab in rec.labels.items():
                name = rec.edge_a if lab == 0 else rec.edge_b
                out[piece] = name
        # propagate names along chains through crossing vertices
        changed = True
        while changed:
            changed = False
            for x, rec in self.crossings.items():
                ring = self.drawing.rotations[x]
                for k in range(4):
                    a = ring[k][0]
                    b = ring[(k + 2) % 4][0]
                    if out[a] != out[b]:
                        na = out[a] if out[a] != a else out[b]
                        out[a] = out[b] = na
                        changed = True
        return out

    def original_ends(self) -> dict:
        """Ends of every original edge, following chains through crossing vertices."""
        omap = self.original_edge_map()
        ends = {}
        xs = set(self.crossings)
        for e in self.graph.edges:
            o = omap[e.id]
            for x in e.ends:
                if x not in xs:
                    ends.setdefault(o, set()).add(x)
        return ends


def empty_drawing() -> PlaneDrawing:
    return PlaneDrawing({}, {}, {}, {})


@dataclass(frozen=True)
class Crossing:
    vertex: str
    edge_a: str
    edge_b: str
    cost: int


@dataclass(frozen=True)
class DrawingWitness:
    """A drawing of ``graph`` given as a plane drawing of its planarisation.

    ``chains`` lists for every edge the ids of its pieces in order from
    ``ends[0]`` to ``ends[1]``; consecutive pieces meet at crossing vertices.
    """
    graph: Multigraph
    planarised: PlaneDrawing
    chains: Mapping[str, tuple]
    crossings: tuple

    @property
    def cost(self) -> int:
        return sum(c.cost for c in self.crossings)

    def piece_owner(self) -> dict:
        return {p: e for e, ps in self.chains.items() for p in ps}


def crossing_cost(g: Multigraph, a: str, b: str) -> int:
    return g.edge(a).weight * g.edge(b).weight


def validate_witness(w: DrawingWitness) -> ValidationReport:
    bad = list(validate_drawing(w.planarised).violations)
    owner = w.piece_owner()
    xverts = {c.vertex for c in w.crossings}
    for e in w.graph.edges:
        if e.id not in w.chains:
            bad.append(f"edge {e.id} missing from chains")
            continue
        ps = w.chains[e.id]
        cur = e.u
        for p in ps:
            if p not in w.planarised.edges:
                bad.append(f"piece {p} not drawn")
                break
            a, b = w.planarised.edges[p]
            if a == cur:
                cur = b
            elif b == cur:
                cur = a
            else:
                bad.append(f"chain of {e.id} broken at {p}")
                break
        else:
            if cur != e.v:
                bad.append(f"chain of {e.id} does not end at {e.v}")
    for c in w.crossings:
        ring = w.planarised.rotations.get(c.vertex, ())
        if len(ring) != 4:
            bad.append(f"crossing {c.vertex} is not of degree 4")
            continue
        if c.edge_a == c.edge_b:
            bad.append(f"crossing {c.vertex} pairs an edge with itself")
        own = [owner.get(x[0]) for x in ring]
        if not (own[0] == own[2] and own[1] == own[3] and {own[0], own[1]} == {c.edge_a, c.edge_b}):
            bad.append(f"crossing {c.vertex} does not alternate its two edges")
        if c.cost != crossing_cost(w.graph, c.edge_a, c.edge_b):
            bad.append(f"crossing {c.vertex} has wrong cost")
    for v in w.planarised.rotations:
        if v not in w.graph._inc and v not in xverts:
            bad.append(f"vertex {v} is neither a graph vertex nor a crossing")
    return ValidationReport(not bad, bad)


def trivial_witness(g: Multigraph, drawing: PlaneDrawing) -> DrawingWitness:
    """Wrap a crossing-free drawing of ``g`` as a witness."""
    return DrawingWitness(g, drawing, {e.id: (e.id,) for e in g.edges}, ())


# ---------------------------------------------------------------------------
# planarisation and restriction

def planarise(w: DrawingWitness) -> tuple:
    """Turn each crossing into a vertex and label the four pieces around it.

    Returns ``(graph, registry)``.  The graph is the planarised multigraph;
    pieces inherit the flags and weight of their edge.  In the registry the
    two pieces of one edge at a crossing get label 0 and the other two get 1.
    """
    rep = validate_witness(w)
    if not rep.ok:
        raise GraphError("invalid witness: " + "; ".join(rep.violations))
    if not w.crossings:
        return w.graph, {}
    owner = w.piece_owner()
    verts = list(w.graph.vertices) + [c.vertex for c in w.crossings]
    edges = []
    for e in w.graph.edges:
        for p in w.chains[e.id]:
            a, b = w.planarised.edges[p]
            edges.append(Edge(p, a, b, e.predrawn, e.uncrossable, e.weight))
    pos = {}
    for e, ps in w.chains.items():
        cur = w.graph.edge(e).u
        for k, p in enumerate(ps[:-1]):
            a, b = w.planarised.edges[p]
            cur = b if a == cur else a
            pos[(cur, e)] = k + 1
    registry = {}
    for c in w.crossings:
        ring = w.planarised.rotations[c.vertex]
        first = owner[ring[0][0]]
        labels = {x[0]: (0 if owner[x[0]] == first else 1) for x in ring}
        a, b = (c.edge_a, c.edge_b) if first == c.edge_a else (c.edge_b, c.edge_a)
        registry[c.vertex] = CrossingRecord(a, pos[(c.vertex, a)], b, pos[(c.vertex, b)], labels)
    return Multigraph(tuple(verts), tuple(edges)), registry


def restrict(w: DrawingWitness, vertices: Optional[Iterable[str]] = None,
             edges: Optional[Iterable[str]] = None) -> PlaneDrawing:
    """Drawing of the subgraph given by ``vertices`` and ``edges``.

    Other elements are deleted, crossing vertices that no longer join two
    kept edges are smoothed away and pieces are renamed; an edge left without
    crossings gets back its own id.
    """
    from .arrangement import Arrangement

    g = w.graph
    vs = set(g.vertices) if vertices is None else set(vertices)
    es = set(g.edge_ids) if edges is None else set(edges)
    for e in es:
        if not g.has_edge(e):
            raise GraphError(f"edge {e} is not in the graph")
        ed = g.edge(e)
        if ed.u not in vs or ed.v not in vs:
            raise GraphError(f"edge {e} leaves the vertex subset")
    for v in vs:
        if v not in g._inc:
            raise GraphError(f"vertex {v} is not in the graph")
    arr = Arrangement.from_drawing(w.planarised)
    owner = w.piece_owner()
    order = {p: (e, k) for e, ps in w.chains.items() for k, p in enumerate(ps)}
    for p in list(arr.edges):
        if owner[p] not in es:
            arr.delete_edge(p)
    xverts = {c.vertex for c in w.crossings}
    for v in list(arr.rot):
        if v not in vs and v not in xverts:
            if arr.rot[v]:
                raise GraphError(f"vertex {v} still has edges")
            arr.delete_point(v)
    for c in w.crossings:
        x = c.vertex
        n = len(arr.rot[x])
        if n == 0:
            arr.delete_point(x)
        elif n == 2:
            (p, _), (q, _) = arr.rot[x]
            first, second = sorted((p, q), key=lambda z: order[z][1])
            new = first + "+"
            arr.smooth(x, new)
            order[new] = order[first]
            owner[new] = owner[first]
    return _rename_pieces(arr, owner, order, g).to_drawing()


def _rename_pieces(arr, owner, order, g):
    by_edge = {}
    for p in arr.edges:
        by_edge.setdefault(owner[p], []).append(p)
    ren = {}
    for e, ps in by_edge.items():
        ps.sort(key=lambda z: order[z][1])
        if len(ps) == 1:
            ren[ps[0]] = e
        else:
            for k, p in enumerate(ps):
                ren[p] = f"{e}~{k + 1}"
    arr.rename_edges(ren)
    # orient single pieces like the original edge
    for e in by_edge:
        if e in arr.edges and g.has_edge(e):
            ed = g.edge(e)
            if arr.edges[e] != (ed.u, ed.v):
                arr.flip_edge(e)
    return arr


def witness_restricted_to_h(w: DrawingWitness, p: PredrawnGraph) -> PlaneDrawing:
    return restrict(w, p.h_vertices, p.h_edge_ids())


def is_conforming(w: DrawingWitness, p: PredrawnGraph, k: int) -> bool:
    """Cost at most ``k``, ℋ respected and no uncrossable edge crossed."""
    if not validate_witness(w).ok:
        return False
    if w.cost > k:
        return False
    g = p.graph
    for c in w.crossings:
        if g.edge(c.edge_a).uncrossable or g.edge(c.edge_b).uncrossable:
            return False
        if g.edge(c.edge_a).predrawn and g.edge(c.edge_b).predrawn:
            return False
    sub = witness_restricted_to_h(w, p)
    return drawings_equivalent(sub, p.drawing)


# ---------------------------------------------------------------------------
# surgery

@dataclass(frozen=True)
class AuxVertex:
    edge: str
    ordinal: int
    predrawn: bool


@dataclass(frozen=True)
class Subdivided:
    graph: Multigraph
    registry: Mapping[str, AuxVertex]
    pieces: Mapping[str, tuple]


def aux_name(eid: str, k: int) -> str:
    return f"{eid}@{k}"


def surgery_subdivide(g: Multigraph, plan: Mapping[str, int]) -> Subdivided:
    """Replace each edge by a path through ``plan[e]`` new auxiliary vertices."""
    verts = list(g.vertices)
    edges = []
    registry = {}
    pieces = {}
    for e in g.edges:
        n = plan.get(e.id, 0)
        if n < 0:
            raise GraphError("negative subdivision count")
        if n and e.uncrossable:
            raise GraphError(f"cannot subdivide uncrossable edge {e.id}")
        if n == 0:
            edges.append(e)
            pieces[e.id] = (e.id,)
            continue
        chain = [e.u] + [aux_name(e.id, k) for k in range(1, n + 1)] + [e.v]
        for k in range(1, n + 1):
            registry[chain[k]] = AuxVertex(e.id, k, e.predrawn)
            verts.append(chain[k])
        ps = []
        for k in range(n + 1):
            pid = f"{e.id}/{k}"
            edges.append(Edge(pid, chain[k], chain[k + 1], e.predrawn, e.uncrossable, e.weight))
            ps.append(pid)
        pieces[e.id] = tuple(ps)
    return Subdivided(Multigraph(tuple(verts), tuple(edges)), registry, pieces)


def surgery_identify(g: Multigraph, registry: Mapping[str, AuxVertex], pairs: Sequence) -> Multigraph:
    """Merge each pair of auxiliary vertices into one vertex of degree 4."""
    used = set()
    ren = {}
    for pair in pairs:
        a, b = pair
        for x in (a, b):
            if x not in registry:
                raise GraphError(f"{x} is not an auxiliary vertex")
            if x in used:
                raise GraphError(f"overlapping pairs at {x}")
            used.add(x)
        if a == b:
            raise GraphError("overlapping pairs: a vertex paired with itself")
        if registry[a].predrawn and registry[b].predrawn:
            raise GraphError("H×H identification forbidden")
        merged = "x:" + "|".join(sorted((a, b)))
        ren[a] = merged
        ren[b] = merged
    verts = []
    for v in g.vertices:
        nv = ren.get(v, v)
        if nv not in verts:
            verts.append(nv)
    edges = []
    for e in g.edges:
        u, v = ren.get(e.u, e.u), ren.get(e.v, e.v)
        if u == v:
            raise GraphError(f"identification creates a loop on {e.id}")
        edges.append(Edge(e.id, u, v, e.predrawn, e.uncrossable, e.weight))
    return Multigraph(tuple(verts), tuple(edges))


def iter_pairs(seq: Sequence) -> Iterator:
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            yield seq[i], seq[j]
