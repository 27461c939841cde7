"""Instance generators: the illustrative examples, the critical family and random pairs."""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

from .geometry import drawing_from_coordinates
from .model import Edge, Multigraph, PredrawnGraph, empty_drawing


# ---------------------------------------------------------------------------
# random sketches

def _orient(a, b, c) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(p, a, b) -> bool:
    if abs(_orient(a, b, p)) > 1e-9:
        return False
    return min(a[0], b[0]) - 1e-9 <= p[0] <= max(a[0], b[0]) + 1e-9 and \
        min(a[1], b[1]) - 1e-9 <= p[1] <= max(a[1], b[1]) + 1e-9


def _proper_cross(a, b, c, d) -> bool:
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


@dataclass
class Sketch:
    """Straight-line picture of a predrawn graph: drawn vertices have coordinates."""
    vertices: list
    pos: dict
    h: dict = field(default_factory=dict)
    g: dict = field(default_factory=dict)

    def copy(self) -> "Sketch":
        return Sketch(list(self.vertices), dict(self.pos), dict(self.h), dict(self.g))

    def segment_ok(self, u, v) -> bool:
        a, b = self.pos[u], self.pos[v]
        for x, p in self.pos.items():
            if x not in (u, v) and _on_segment(p, a, b):
                return False
        for (x, y) in self.h.values():
            if {x, y} & {u, v}:
                if {x, y} == {u, v}:
                    return False
                continue
            if _proper_cross(a, b, self.pos[x], self.pos[y]):
                return False
        return True

    def point_ok(self, p) -> bool:
        if any(abs(p[0] - q[0]) < 1e-9 and abs(p[1] - q[1]) < 1e-9 for q in self.pos.values()):
            return False
        return not any(_on_segment(p, self.pos[x], self.pos[y]) for x, y in self.h.values())

    def fresh(self, stem: str, used) -> str:
        k = 1
        while f"{stem}{k}" in used:
            k += 1
        return f"{stem}{k}"

    def instance(self, name: str = "") -> PredrawnGraph:
        es = [Edge(k, u, v, True) for k, (u, v) in sorted(self.h.items())]
        es += [Edge(k, u, v) for k, (u, v) in sorted(self.g.items())]
        g = Multigraph(tuple(self.vertices), tuple(es))
        return PredrawnGraph(g, drawing_from_coordinates(self.h, self.pos), {}, name)


def random_sketch(rng: random.Random, n: int, n_drawn: int, p_h: float = 0.5, p_g: float = 0.3,
                  grid: int = 4) -> Sketch:
    vs = [f"v{i + 1}" for i in range(n)]
    s = Sketch(vs, {})
    for v in vs[:n_drawn]:
        while True:
            p = (rng.randint(0, grid), rng.randint(0, grid))
            if s.point_ok(p):
                break
        s.pos[v] = p
    pairs = [(u, v) for i, u in enumerate(vs) for v in vs[i + 1:]]
    rng.shuffle(pairs)
    k = 0
    for u, v in pairs:
        if u in s.pos and v in s.pos and rng.random() < p_h and s.segment_ok(u, v):
            k += 1
            s.h[f"h{k}"] = (u, v)
    k = 0
    hp = {frozenset(x) for x in s.h.values()}
    for u, v in pairs:
        if frozenset((u, v)) not in hp and rng.random() < p_g:
            k += 1
            s.g[f"g{k}"] = (u, v)
    return s


def _grow(rng: random.Random, s: Sketch, max_vertices: int) -> Sketch:
    """A random supergraph: subdivisions, new vertices and new edges."""
    t = s.copy()
    used = set(t.vertices) | set(t.h) | set(t.g)
    for _ in range(rng.randint(0, 3)):
        if len(t.vertices) >= max_vertices:
            break
        choice = rng.random()
        if choice < 0.4 and t.h:
            e = rng.choice(sorted(t.h))
            u, v = t.h.pop(e)
            x = t.fresh("s", used)
            used.add(x)
            t.vertices.append(x)
            t.pos[x] = ((t.pos[u][0] + t.pos[v][0]) / 2, (t.pos[u][1] + t.pos[v][1]) / 2)
            t.h[e] = (u, x)
            e2 = t.fresh("h", used)
            used.add(e2)
            t.h[e2] = (x, v)
        elif choice < 0.4 and t.g:
            e = rng.choice(sorted(t.g))
            u, v = t.g.pop(e)
            x = t.fresh("s", used)
            used.add(x)
            t.vertices.append(x)
            t.g[e] = (u, x)
            e2 = t.fresh("g", used)
            used.add(e2)
            t.g[e2] = (x, v)
        else:
            x = t.fresh("n", used)
            used.add(x)
            t.vertices.append(x)
            if rng.random() < 0.5:
                for _ in range(20):
                    p = (rng.randint(0, 4) + 0.5 * rng.randint(0, 1), rng.randint(0, 4) + 0.5 * rng.randint(0, 1))
                    if t.point_ok(p):
                        t.pos[x] = p
                        break
            others = [y for y in t.vertices if y != x]
            for y in rng.sample(others, min(len(others), rng.randint(1, 2))):
                if x in t.pos and y in t.pos and rng.random() < 0.5 and t.segment_ok(x, y):
                    e = t.fresh("h", used)
                    t.h[e] = (x, y)
                else:
                    e = t.fresh("g", used)
                    t.g[e] = (x, y)
                used.add(e)
    return t


def _shake(rng: random.Random, s: Sketch) -> Sketch:
    """Move one drawn vertex without edges, or drop one edge."""
    t = s.copy()
    loose = [v for v in t.pos if not any(v in ends for ends in t.h.values())]
    if loose and rng.random() < 0.6:
        v = rng.choice(loose)
        for _ in range(30):
            p = (rng.randint(-1, 5), rng.randint(-1, 5))
            del t.pos[v]
            if t.point_ok(p):
                t.pos[v] = p
                break
            t.pos[v] = s.pos[v]
    elif t.g:
        del t.g[rng.choice(sorted(t.g))]
    return t


def _redraw(rng: random.Random, s: Sketch) -> Sketch:
    """Same graph, fresh coordinates for the drawn vertices when a valid picture turns up."""
    for _ in range(200):
        t = Sketch(list(s.vertices), {}, {}, dict(s.g))
        ok = True
        for v in s.pos:
            p = (rng.randint(0, 4), rng.randint(0, 4))
            if not t.point_ok(p):
                ok = False
                break
            t.pos[v] = p
        if not ok:
            continue
        for k, (u, v) in s.h.items():
            if not t.segment_ok(u, v):
                ok = False
                break
            t.h[k] = (u, v)
        if ok:
            return t
    return s.copy()


def _relabel(rng: random.Random, s: Sketch) -> Sketch:
    perm = list(s.vertices)
    rng.shuffle(perm)
    ren = {v: f"w{i + 1}" for i, v in enumerate(perm)}
    return Sketch([ren[v] for v in s.vertices], {ren[v]: p for v, p in s.pos.items()},
                  {k: (ren[u], ren[v]) for k, (u, v) in s.h.items()},
                  {k: (ren[u], ren[v]) for k, (u, v) in s.g.items()})


def random_pair(rng: random.Random, max_vertices: int = 7) -> tuple:
    """Two small instances where the first is often, but not always, contained in the second."""
    n1 = rng.randint(2, 5)
    mode = rng.random()
    if mode < 0.25:
        # same graph drawn twice, often inequivalently
        s1 = random_sketch(rng, n1 + 1, n1 + 1, p_h=0.8, p_g=0.2)
        s2 = _redraw(rng, s1)
        return s1.instance("p1"), _relabel(rng, s2).instance("p2")
    s1 = random_sketch(rng, n1, rng.randint(max(1, n1 - 2), n1), p_h=rng.choice((0.4, 0.7)))
    if mode < 0.45:
        s2 = _grow(rng, s1, max_vertices)
    elif mode < 0.6:
        s2 = _grow(rng, _redraw(rng, s1), max_vertices)
    elif mode < 0.85:
        s2 = _grow(rng, _shake(rng, s1), max_vertices)
    else:
        n2 = rng.randint(n1, max_vertices)
        s2 = random_sketch(rng, n2, rng.randint(1, n2))
    return s1.instance("p1"), _relabel(rng, s2).instance("p2")


# ---------------------------------------------------------------------------
# the crossing-critical family

@dataclass(frozen=True)
class CriticalFamilyParams:
    c: int = 3
    copies: int = 1
    expand_parallel: bool = False

    def __post_init__(self):
        if self.c < 3:
            raise ValueError("c must be at least 3")
        if self.copies < 1:
            raise ValueError("copies must be at least 1")

    @property
    def k(self) -> int:
        return 2 * self.c + 2


@dataclass
class CriticalFamily:
    params: CriticalFamilyParams
    instance: PredrawnGraph
    gadget_straight: PredrawnGraph
    gadget_flipped: PredrawnGraph
    d1: object
    d2: object

    @property
    def k(self) -> int:
        return self.params.k


# ring positions of u_i (radius 2) and v_i (radius 1); the flipped picture swaps v1 and v3
_GADGET_POS = {"u1": (-2, 0), "u2": (0, -2), "u3": (2, 0), "u4": (0, 2),
               "v1": (-1, 0), "v2": (0, -1), "v3": (1, 0), "v4": (0, 1)}
# crossings of the flipped reference drawing, read off its picture
_D2_PAIRS = (("u1v1", "v3u2"), ("u1v1", "u2v2"), ("u3v3", "u1v4"), ("u3v3", "u4v4"))


def _gadget_edges(c: int) -> list:
    heavy = 2 * c + 3
    es = [(f"u{i}u{i % 4 + 1}", f"u{i}", f"u{i % 4 + 1}", heavy) for i in range(1, 5)]
    es += [(f"v{i}v{i % 4 + 1}", f"v{i}", f"v{i % 4 + 1}", heavy) for i in range(1, 5)]
    # the spokes carry weight c; together with the two rings they form G0
    es += [("u2v2", "u2", "v2", c), ("u4v4", "u4", "v4", c)]
    es += [("u1v1", "u1", "v1", 1), ("u3v3", "u3", "v3", 1),
           ("u1v4", "u1", "v4", 1), ("v4u3", "v4", "u3", 1),
           ("v3u2", "v3", "u2", 1), ("u2v1", "u2", "v1", 1)]
    return es


GADGET_G0 = ("u1u2", "u2u3", "u3u4", "u4u1", "v1v2", "v2v3", "v3v4", "v4v1", "u2v2", "u4v4")


def gadget(c: int = 3, flipped: bool = False) -> PredrawnGraph:
    """G1 with G0 predrawn, either straight or flipped."""
    pos = dict(_GADGET_POS)
    if flipped:
        pos["v1"], pos["v3"] = pos["v3"], pos["v1"]
    es = _gadget_edges(c)
    h = {e: (u, v) for e, u, v, _ in es if e in GADGET_G0}
    edges = [Edge(e, u, v, e in GADGET_G0, False, w) for e, u, v, w in es]
    g = Multigraph(tuple(sorted(pos)), tuple(edges))
    return PredrawnGraph(g, drawing_from_coordinates(h, pos), {}, "gadget-flipped" if flipped else "gadget")


def gen_critical(params: CriticalFamilyParams = CriticalFamilyParams()) -> CriticalFamily:
    """Stack ``copies`` gadgets ring to ring and anchor the ends with two oppositely drawn triangles.

    Ring 0 holds v^1, ring j holds u^j (= v^(j+1)). Gadget edges are prefixed
    ``g<j>:``; a shared ring edge keeps the name of the lower copy.
    """
    from .solver import realise_pairs

    c, m = params.c, params.copies
    heavy = 2 * c + 3

    def ring(j, i):
        return f"r{j}.{i}"

    es, vertices = [], [ring(j, i) for j in range(m + 1) for i in range(1, 5)]
    for j in range(1, m + 1):
        for e, u, v, w in _gadget_edges(c):
            if e[0] == "v" and e[2] == "v" and j > 1:
                continue  # this ring is the previous copy's u-ring
            name = lambda x: ring(j if x[0] == "u" else j - 1, x[1])  # noqa: E731
            es.append((f"g{j}:{e}", name(u), name(v), w, False))
    tri = {"t1a": (-5, 0), "t1b": (2, -5), "t1c": (2, 5), "t2a": (32, 0), "t2b": (25, -5), "t2c": (25, 5)}
    vertices += sorted(tri)
    h = {"T1ab": ("t1a", "t1b"), "T1bc": ("t1b", "t1c"), "T1ca": ("t1c", "t1a"),
         "T2ab": ("t2a", "t2b"), "T2bc": ("t2b", "t2c"), "T2ca": ("t2c", "t2a")}
    es += [(k, u, v, 1, True) for k, (u, v) in h.items()]
    es += [("a1a", "t1a", ring(0, 1), heavy, False), ("a1b", "t1b", ring(0, 2), heavy, False),
           ("a1c", "t1c", ring(0, 4), heavy, False),
           ("a2a", "t2a", ring(m, 3), heavy, False), ("a2b", "t2b", ring(m, 2), heavy, False),
           ("a2c", "t2c", ring(m, 4), heavy, False)]
    g = Multigraph(tuple(vertices), tuple(Edge(e, u, v, d, False, w) for e, u, v, w, d in es))
    inst = PredrawnGraph(g, drawing_from_coordinates(h, tri), {}, f"critical-c{c}-m{m}")
    if params.expand_parallel:
        inst = expand_weights(inst)

    straight, flipped = gadget(c), gadget(c, True)
    d1 = realise_pairs(straight, [])
    d2 = realise_pairs(flipped, list(_D2_PAIRS))
    return CriticalFamily(params, inst, straight, flipped, d1, d2)


# ---------------------------------------------------------------------------
# illustrative examples

@dataclass
class Example:
    """A named instance with the verdicts it is expected to produce."""
    name: str
    instance: PredrawnGraph
    expected: dict = field(default_factory=dict)
    note: str = ""
    extras: dict = field(default_factory=dict)


def _sketch(vertices, pos, h, g, name) -> PredrawnGraph:
    return Sketch(list(vertices), dict(pos), dict(h), dict(g)).instance(name)


def _complete(n: int, name: str, weights=None) -> PredrawnGraph:
    vs = [f"k{i}" for i in range(1, n + 1)]
    weights = weights or {}
    es = [Edge(f"{u}{v}", u, v, False, False, weights.get(f"{u}{v}", 1))
          for i, u in enumerate(vs) for v in vs[i + 1:]]
    return PredrawnGraph(Multigraph(tuple(vs), tuple(es)), empty_drawing(), {}, name)


def _bipartite(a: int, b: int, name: str) -> PredrawnGraph:
    left = [f"a{i}" for i in range(1, a + 1)]
    right = [f"b{i}" for i in range(1, b + 1)]
    es = [Edge(f"{u}{v}", u, v) for u in left for v in right]
    return PredrawnGraph(Multigraph(tuple(left + right), tuple(es)), empty_drawing(), {}, name)


def fig1_pair() -> tuple:
    """Two triangles side by side; the second one is drawn with the opposite orientation on the right."""
    h = {"a12": ("a1", "a2"), "a23": ("a2", "a3"), "a31": ("a3", "a1"),
         "b12": ("b1", "b2"), "b23": ("b2", "b3"), "b31": ("b3", "b1")}
    vs = ["a1", "a2", "a3", "b1", "b2", "b3"]
    left = {"a1": (0, 0), "a2": (2, 0), "a3": (1, 2), "b1": (4, 0), "b2": (6, 0), "b3": (5, 2)}
    right = dict(left, b1=(6, 0), b2=(4, 0))
    return _sketch(vs, left, h, {}, "fig1-left"), _sketch(vs, right, h, {}, "fig1-right")


FIG3_REGION = ("x1", "x2", "x3", "z1", "z2", "z3")
FIG3_CYCLE = ("c12", "c23", "c34", "c45", "c56", "c61")


def fig3_instance(flipped: bool = False) -> PredrawnGraph:
    """The running reduction example.

    A predrawn triangle X with predrawn pendants z_i forms the region I; a
    hexagon C touches I at c1, c3, c5 and a second predrawn triangle Y at
    c2, c4, c6. One edge of C is predrawn far above so C cannot hide inside
    either triangle. With Y drawn as X the orientations clash and one crossing
    is unavoidable; ``flipped`` mirrors Y and removes the clash.
    """
    pos = {"x1": (0, 0), "x2": (2, 0), "x3": (1, 2), "z1": (-1, -1), "z2": (3, -1), "z3": (1, 3),
           "y1": (5, 0), "y2": (7, 0), "y3": (6, 2), "c1": (2, 6), "c2": (4, 6)}
    if flipped:
        pos.update(y1=(7, 0), y2=(5, 0))
    h = {"hx12": ("x1", "x2"), "hx23": ("x2", "x3"), "hx31": ("x3", "x1"),
         "xz1": ("x1", "z1"), "xz2": ("x2", "z2"), "xz3": ("x3", "z3"), "c12": ("c1", "c2"),
         "hy12": ("y1", "y2"), "hy23": ("y2", "y3"), "hy31": ("y3", "y1")}
    g = {f"c{i}{i % 6 + 1}": (f"c{i}", f"c{i % 6 + 1}") for i in range(2, 7)}
    g.update(zc1=("z1", "c1"), zc3=("z2", "c3"), zc5=("z3", "c5"),
             yc2=("y1", "c2"), yc4=("y2", "c4"), yc6=("y3", "c6"))
    vs = [f"c{i}" for i in range(1, 7)] + ["x1", "x2", "x3", "z1", "z2", "z3", "y1", "y2", "y3"]
    return _sketch(vs, pos, h, g, "fig3-flipped" if flipped else "fig3")


def fig4_framing() -> PredrawnGraph:
    """A predrawn square and a predrawn triangle beside it, joined by free edges."""
    pos = {"a1": (0, 0), "a2": (2, 0), "a3": (2, 2), "a4": (0, 2),
           "b1": (4, 0), "b2": (6, 1), "b3": (4, 2)}
    h = {"sa12": ("a1", "a2"), "sa23": ("a2", "a3"), "sa34": ("a3", "a4"), "sa41": ("a4", "a1"),
         "tb12": ("b1", "b2"), "tb23": ("b2", "b3"), "tb31": ("b3", "b1")}
    g = {"f1": ("a2", "b1"), "f2": ("a3", "b3"), "f3": ("a1", "a3"), "f4": ("b2", "w"), "f5": ("a4", "w")}
    return _sketch(list(pos) + ["w"], pos, h, g, "fig4-framing")


def fig9_pair() -> tuple:
    """A 5-vertex instance and a 7-vertex one containing a subdivision of it."""
    pos1 = {"p1": (0, 0), "p2": (2, 0), "p3": (1, 2), "p4": (1, 0.7)}
    h1 = {"e12": ("p1", "p2"), "e23": ("p2", "p3"), "e31": ("p3", "p1")}
    g1 = {"f14": ("p1", "p4"), "f24": ("p2", "p4"), "f45": ("p4", "p5"), "f35": ("p3", "p5")}
    small = _sketch(list(pos1) + ["p5"], pos1, h1, g1, "fig9-small")
    pos2 = {"q1": (0, 0), "q2": (2, 0), "q3": (1, 2), "q4": (1, 0.7), "q6": (1.5, 1)}
    h2 = {"e12": ("q1", "q2"), "e26": ("q2", "q6"), "e63": ("q6", "q3"), "e31": ("q3", "q1")}
    g2 = {"f14": ("q1", "q4"), "f24": ("q2", "q4"), "f47": ("q4", "q7"), "f75": ("q7", "q5"),
          "f35": ("q3", "q5"), "f16": ("q1", "q6")}
    big = _sketch(list(pos2) + ["q5", "q7"], pos2, h2, g2, "fig9-big")
    return small, big


def gen_examples() -> dict:
    """The example corpus, keyed by name. Expected verdicts live in ``Example.expected``."""
    from .reduction import apply_reduction, contract_region, host_instance, _cycle_vertices

    out = {}

    def put(ex: Example):
        out[ex.name] = ex

    left, right = fig1_pair()
    put(Example("fig1-pair", left, {"equivalent_to_partner": False, "extendable": True, "qstar": 0},
                "same rotations, the second triangle mirrored on the right", {"partner": right}))

    p3 = fig3_instance()
    host = host_instance(p3, set(FIG3_REGION) | _cycle_vertices(p3.graph, FIG3_CYCLE))
    host = replace(host, name="fig3-middle")
    contracted, _ = contract_region(p3, list(FIG3_REGION), list(FIG3_CYCLE), name="fig5-contracted")
    put(Example("fig3-instance", p3, {"extendable": False, "qstar": 1},
                "orientations of the two triangles clash along the hexagon",
                {"region": FIG3_REGION, "cycle": FIG3_CYCLE, "subinstances": (host, contracted)}))
    put(Example("fig3-flipped", fig3_instance(True), {"extendable": True, "qstar": 0},
                "the second triangle mirrored, so the clash disappears"))
    put(Example("fig4-framing", fig4_framing(), {"extendable": True, "qstar": 0},
                "two predrawn components and a free vertex"))
    put(Example("fig5-contracted", contracted, {"extendable": True, "qstar": 0},
                "the region of fig3 contracted to one vertex"))
    put(Example("fig6-flip", p3, {"flippable_before": False, "flippable_after": True, "case": "e"},
                "flippability of the hexagon before and after contracting the region",
                {"region": FIG3_REGION, "cycle": FIG3_CYCLE}))
    step = apply_reduction(p3, list(FIG3_REGION), list(FIG3_CYCLE)).step
    reduced = replace(step.reduced, name="fig10-triangle")
    put(Example("fig10-triangle", reduced, {"extendable": False, "qstar": 1},
                "the contracted vertex replaced by a predrawn triangle"))
    small, big = fig9_pair()
    put(Example("fig9-pair", small, {"contained_in_partner": True, "extendable": True, "qstar": 0},
                "the small instance sits in the big one after subdividing a triangle side",
                {"partner": big}))
    put(Example("fig9-big", big, {"extendable": True, "qstar": 0}, "partner of fig9-pair"))

    put(Example("k4", _complete(4, "k4"), {"extendable": True, "qstar": 0}, "planar"))
    put(Example("k5", _complete(5, "k5"), {"extendable": False, "qstar": 1}, "classical"))
    put(Example("k33", _bipartite(3, 3, "k33"), {"extendable": False, "qstar": 1}, "classical"))
    put(Example("k5-weighted", _complete(5, "k5-weighted", {"k1k2": 2, "k3k4": 3}),
                {"extendable": False, "qstar": 1}, "a crossing can avoid the heavy edges"))
    tri = _sketch(["t1", "t2", "t3", "s", "o"], {"t1": (0, 0), "t2": (4, 0), "t3": (2, 4), "s": (2, 1)},
                  {"t12": ("t1", "t2"), "t23": ("t2", "t3"), "t31": ("t3", "t1")},
                  {"o1": ("s", "o")}, "triangle-point")
    put(Example("triangle-point", tri, {"extendable": True, "qstar": 0},
                "a drawn vertex inside a drawn triangle with a free pendant edge"))
    return out


def expand_weights(p: PredrawnGraph) -> PredrawnGraph:
    """Replace every free edge of weight w > 1 by w parallel unit edges.

    Predrawn edges keep their weight since their drawing is fixed.
    """
    es = []
    for e in p.graph.edges:
        if e.predrawn or e.weight == 1:
            es.append(e)
        else:
            es += [Edge(f"{e.id}.{i}", e.u, e.v, False, e.uncrossable) for i in range(1, e.weight + 1)]
    return PredrawnGraph(Multigraph(p.graph.vertices, tuple(es)), p.drawing, dict(p.crossings), p.name)
