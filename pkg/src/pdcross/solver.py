"""Exact predrawn crossing number by identification of subdivision vertices.

Every crossable edge is subdivided, chosen pairs of subdivision vertices are
merged into degree-4 vertices and the result is tested for a crossing-free
extension of the predrawn part.  Levels q = 0, 1, ... are searched in order,
so the first feasible level is optimal.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Optional

from .arrangement import Arrangement
from .extension import BudgetExceeded, SearchBudget, extend_arrangement
from .model import (Crossing, DrawingWitness, Edge, GraphError, Multigraph, PlaneDrawing, PredrawnGraph,
                    aux_name, is_conforming, iter_pairs, surgery_identify, surgery_subdivide)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible-within-budget"
EXCEEDED = "budget-exceeded"


@dataclass
class SolveOptions:
    max_q: int = 3
    per_edge_cap: Optional[int] = None
    simple: bool = False
    use_reduction: bool = False
    budget: SearchBudget = field(default_factory=SearchBudget)
    max_candidates: Optional[int] = None
    max_seconds: Optional[float] = None

    def __post_init__(self):
        if self.max_q < 0:
            raise GraphError("max_q must be non-negative")
        if self.per_edge_cap is not None and self.per_edge_cap < 1:
            raise GraphError("per-edge cap must be at least 1")


@dataclass
class SolveResult:
    status: str
    q_star: Optional[int] = None
    witness: Optional[DrawingWitness] = None
    trace: list = field(default_factory=list)
    lower_bound: int = 0
    candidates: int = 0
    note: str = ""

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Clock:
    def __init__(self, opts: SolveOptions):
        self.opts = opts
        self.count = 0
        self.deadline = None if opts.max_seconds is None else time.monotonic() + opts.max_seconds

    def tick(self):
        self.count += 1
        if self.opts.max_candidates is not None and self.count > self.opts.max_candidates:
            raise BudgetExceeded("candidate limit reached")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("time limit reached")


# ---------------------------------------------------------------------------
# candidate enumeration

def _identity(p: PredrawnGraph):
    omap = p.original_edge_map()
    oends = p.original_ends()
    return omap, oends


def crossable_pairs(p: PredrawnGraph, simple: bool = False) -> list:
    """Edge pairs that may cross: not both predrawn, none uncrossable, distinct."""
    g = p.graph
    ids = sorted(e.id for e in g.edges if not e.uncrossable)
    omap, oends = _identity(p)
    out = []
    for a, b in iter_pairs(ids):
        ea, eb = g.edge(a), g.edge(b)
        if ea.predrawn and eb.predrawn:
            continue
        if omap[a] == omap[b]:
            continue
        if simple and oends.get(omap[a], set()) & oends.get(omap[b], set()):
            continue
        out.append((a, b))
    return out


def _multisets(p: PredrawnGraph, pairs: list, q: int, cap: Optional[int], simple: bool):
    """Pair multisets of weighted cost exactly ``q`` respecting the per-edge cap."""
    g = p.graph
    omap = p.original_edge_map()
    cost = [g.edge(a).weight * g.edge(b).weight for a, b in pairs]
    limit = {}
    for e in g.edges:
        limit[e.id] = q if (cap is None or e.predrawn) else min(cap, q)
    used = {}
    chosen = []
    seen_orig = set()

    def rec(i, left):
        if left == 0:
            yield list(chosen)
            return
        for j in range(i, len(pairs)):
            c = cost[j]
            if c > left:
                continue
            a, b = pairs[j]
            if used.get(a, 0) >= limit[a] or used.get(b, 0) >= limit[b]:
                continue
            key = frozenset((omap[a], omap[b]))
            if simple and key in seen_orig:
                continue
            used[a] = used.get(a, 0) + 1
            used[b] = used.get(b, 0) + 1
            chosen.append(pairs[j])
            if simple:
                seen_orig.add(key)
            # in simple mode one original pair crosses at most once, so no repeats
            yield from rec(j + 1 if simple else j, left - c)
            chosen.pop()
            if simple:
                seen_orig.discard(key)
            used[a] -= 1
            used[b] -= 1

    yield from rec(0, q)


def configurations(instances: list):
    """All matchings of subdivision slots realising the given crossing instances.

    Each edge carries its crossings on consecutive slots 1..n from its first
    end; every distinct assignment of instances to slots is produced once.
    """
    by_edge = {}
    for i, (a, b) in enumerate(instances):
        by_edge.setdefault(a, []).append(i)
        by_edge.setdefault(b, []).append(i)
    edges = sorted(by_edge)
    perms = [list(itertools.permutations(by_edge[e])) for e in edges]
    seen = set()
    for combo in itertools.product(*perms):
        slot = {}
        for e, order in zip(edges, combo):
            for k, i in enumerate(order):
                slot[(i, e)] = aux_name(e, k + 1)
        pairs = tuple(sorted(tuple(sorted((slot[(i, a)], slot[(i, b)]))) for i, (a, b) in enumerate(instances)))
        if pairs in seen:
            continue
        seen.add(pairs)
        yield {e: len(by_edge[e]) for e in edges}, pairs


def _merged(a: str, b: str) -> str:
    return "x:" + "|".join(sorted((a, b)))


def identified_instance(p: PredrawnGraph, counts: dict, pairs) -> tuple:
    """Subdivided and identified graph with the matching start arrangement."""
    sub = surgery_subdivide(p.graph, counts)
    ig = surgery_identify(sub.graph, sub.registry, pairs)
    arr = Arrangement.from_drawing(p.drawing)
    g = p.graph
    for e, n in counts.items():
        ed = g.edge(e)
        if not n or not ed.predrawn:
            continue
        if arr.edges[e][0] != ed.u:
            arr.flip_edge(e)
        cur = e
        for k in range(1, n + 1):
            nxt = f"{e}/{k}"
            arr.subdivide(cur, aux_name(e, k), f"{e}/{k - 1}", nxt)
            cur = nxt
    ren = {}
    for a, b in pairs:
        m = _merged(a, b)
        for x in (a, b):
            if x in arr.rot:
                ren[x] = m
    arr.rename_vertices(ren)
    return ig, arr, sub


def lower_bound(p: PredrawnGraph) -> int:
    """Euler bound on the number of crossings of the simple underlying graph."""
    n = len(p.graph.vertices)
    if n < 3:
        return 0
    simple = {frozenset(e.ends) for e in p.graph.edges if e.u != e.v}
    return max(0, len(simple) - 3 * n + 6)


# ---------------------------------------------------------------------------
# witnesses

def reconstruct_witness(extension, registry, pairs, graph: Multigraph) -> DrawingWitness:
    """Turn a drawing of the identified graph into a witness for ``graph``.

    Merged vertices whose rotation alternates the two edges become crossings.
    Touching merges are pulled apart; afterwards unused subdivision vertices
    are smoothed away.
    """
    arr = Arrangement.from_drawing(extension) if isinstance(extension, PlaneDrawing) else extension.copy()
    merged = {}
    for a, b in pairs:
        if a not in registry or b not in registry:
            raise GraphError("pair names a vertex missing from the registry")
        merged[_merged(a, b)] = (registry[a].edge, registry[b].edge)
    for v in arr.rot:
        if "@" in v and v not in registry and v not in merged:
            raise GraphError(f"vertex {v} looks auxiliary but is not registered")

    def owner(piece: str) -> str:
        return piece if graph.has_edge(piece) else piece.rsplit("/", 1)[0]

    def ordinal(piece: str) -> int:
        return 0 if graph.has_edge(piece) else int(piece.rsplit("/", 1)[1])

    crossings = []
    for m, (ea, eb) in sorted(merged.items()):
        if m not in arr.rot:
            raise GraphError(f"merged vertex {m} missing from the drawing")
        ring = arr.rot[m]
        own = [owner(d[0]) for d in ring]
        if own[0] == own[2] and own[1] == own[3] and own[0] != own[1]:
            crossings.append((m, ea, eb))
            continue
        s = next(k for k in range(4) if own[k] == own[(k + 1) % 4])
        a_block = [ring[s], ring[(s + 1) % 4]]
        b_block = [ring[(s + 2) % 4], ring[(s + 3) % 4]]
        r1 = arr.region_of[b_block[0]]
        r2 = arr.region_of[a_block[0]]
        y = m + "'"
        arr.rot[m] = a_block
        arr.rot[y] = b_block
        for d in b_block:
            u, v = arr.edges[d[0]]
            arr.edges[d[0]] = (y, v) if d[1] == 0 else (u, y)
        if r1 != r2:
            for d, r in arr.region_of.items():
                if r == r2:
                    arr.region_of[d] = r1
            for x, r in arr.point_region.items():
                if r == r2:
                    arr.point_region[x] = r1
            if arr.outer_rid == r2:
                arr.outer_rid = r1
    crossing_names = {m for m, _, _ in crossings}
    # smooth every remaining degree-2 subdivision vertex into the piece nearer the first end
    for v in list(arr.rot):
        if v in crossing_names or v in graph._inc:
            continue
        ring = arr.rot[v]
        if len(ring) != 2:
            raise GraphError(f"internal: subdivision vertex {v} has degree {len(ring)}")
        p0, p1 = ring[0][0], ring[1][0]
        first = min((p0, p1), key=ordinal)
        arr.smooth(v, first, first)
    # name pieces and crossing vertices
    by_edge = {}
    for piece in arr.edges:
        by_edge.setdefault(owner(piece), []).append(piece)
    xnames = {}
    k = 0
    for m, _, _ in crossings:
        k += 1
        name = f"X{k}"
        while name in graph._inc:
            name += "'"
        xnames[m] = name
    arr.rename_vertices(xnames)
    ren = {}
    chains = {}
    for e in graph.edges:
        ps = sorted(by_edge.get(e.id, []), key=ordinal)
        if not ps:
            raise GraphError(f"edge {e.id} missing from the drawing")
        if len(ps) == 1:
            ren[ps[0]] = e.id
            chains[e.id] = (e.id,)
        else:
            names = tuple(f"{e.id}~{i + 1}" for i in range(len(ps)))
            for old, new in zip(ps, names):
                ren[old] = new
            chains[e.id] = names
    arr.rename_edges(ren)
    for e in graph.edges:
        if chains[e.id] == (e.id,) and arr.edges[e.id] != (e.u, e.v):
            arr.flip_edge(e.id)
    xs = tuple(Crossing(xnames[m], a, b, graph.edge(a).weight * graph.edge(b).weight) for m, a, b in crossings)
    return DrawingWitness(graph, arr.to_drawing(), chains, xs)


def _original_owner(w: DrawingWitness, registry) -> dict:
    """Original edge of every edge of the witness graph, following ℋ's crossing labels."""
    out = {e.id: e.id for e in w.graph.edges}
    if not registry:
        return out
    owner = w.piece_owner()
    for x, rec in registry.items():
        for piece, lab in rec.labels.items():
            out[piece] = rec.edge_a if lab == 0 else rec.edge_b
    changed = True
    while changed:
        changed = False
        for x in registry:
            ring = w.planarised.rotations.get(x)
            if ring is None or len(ring) != 4:
                raise GraphError("identity untraceable")
            es = [owner.get(d[0], d[0]) for d in ring]
            for k in range(2):
                a, b = es[k], es[k + 2]
                if out[a] != out[b]:
                    name = out[a] if out[a] != a else out[b]
                    out[a] = out[b] = name
                    changed = True
    return out


def check_simplicity(w: DrawingWitness, registry=None, crossing_vertices=()) -> bool:
    """No two original edges cross twice and no adjacent original edges cross."""
    missing = [x for x in crossing_vertices if not registry or x not in registry]
    if missing:
        raise GraphError("identity untraceable")
    orig = _original_owner(w, registry)
    xs = set(registry or {})
    ends = {}
    for e in w.graph.edges:
        for x in e.ends:
            if x not in xs:
                ends.setdefault(orig[e.id], set()).add(x)
    seen = set()
    for c in w.crossings:
        a, b = orig[c.edge_a], orig[c.edge_b]
        if a == b:
            return False
        key = frozenset((a, b))
        if key in seen:
            return False
        seen.add(key)
        if ends.get(a, set()) & ends.get(b, set()):
            return False
    return True


# ---------------------------------------------------------------------------
# search

def _try(p: PredrawnGraph, counts, pairs, budget: SearchBudget) -> Optional[DrawingWitness]:
    ig, arr, sub = identified_instance(p, counts, pairs)
    res = extend_arrangement(ig, arr, budget)
    if res is None:
        return None
    return reconstruct_witness(res, sub.registry, pairs, p.graph)


def realise_pairs(p: PredrawnGraph, instances, budget: Optional[SearchBudget] = None,
                  clock: Optional[_Clock] = None) -> Optional[DrawingWitness]:
    """A drawing whose crossings are exactly the given edge pairs (as a multiset), if any."""
    budget = budget or SearchBudget()
    instances = [tuple(sorted(x)) for x in instances]
    if not instances:
        return _try(p, {}, (), budget)
    for counts, pairs in configurations(instances):
        if clock is not None:
            clock.tick()
        w = _try(p, counts, pairs, budget)
        if w is not None:
            return w
    return None


def solve_pdcr(p: PredrawnGraph, opts: Optional[SolveOptions] = None) -> SolveResult:
    """Smallest q admitting a conforming drawing, searched level by level up to ``opts.max_q``."""
    opts = opts or SolveOptions()
    if opts.use_reduction:
        return pipeline_solve(p, opts.max_q, opts)
    clock = _Clock(opts)
    lb = lower_bound(p)
    proven = min(lb, opts.max_q + 1)
    pairs = crossable_pairs(p, opts.simple)
    try:
        for q in range(lb, opts.max_q + 1):
            for inst in _multisets(p, pairs, q, opts.per_edge_cap, opts.simple):
                w = realise_pairs(p, inst, opts.budget, clock)
                if w is None:
                    continue
                if w.cost != q:
                    # touching merges only arise when a cheaper level was feasible
                    raise GraphError("internal: witness cost differs from the search level")
                if not is_conforming(w, p, q):
                    raise GraphError("internal: reconstructed witness is not conforming")
                return SolveResult(OPTIMAL, q, w, [], q, clock.count)
            proven = q + 1
    except BudgetExceeded as ex:
        return SolveResult(EXCEEDED, None, None, [], proven, clock.count, str(ex))
    return SolveResult(INFEASIBLE, None, None, [], proven, clock.count)


# ---------------------------------------------------------------------------
# pipeline

def _protected(p: PredrawnGraph, region, cycle, q: int) -> bool:
    """Whether no conforming drawing at level ``q`` can cross G[I ∪ C]."""
    if q == 0:
        return True
    vs = set(region) | {x for e in cycle for x in p.graph.edge(e).ends}
    return all(e.uncrossable for e in p.graph.edges if e.u in vs and e.v in vs)


def reduce_instance(p: PredrawnGraph, q: int, budget: Optional[SearchBudget] = None,
                    max_steps: int = 50, max_tries: int = 20, log: Optional[list] = None) -> tuple:
    """Apply certified reductions at level ``q`` until none fires.

    Returns ``(instance, steps, infeasible)``.  Candidates the flippability
    probes cannot handle are skipped.  ``log`` collects one line per verdict.
    """
    from .reduction import RegionRejected, apply_reduction, iter_candidate_regions

    steps = []
    cur = p
    for _ in range(max_steps):
        fired = False
        cands = iter_candidate_regions(cur, protect=lambda i, c, pp: _protected(pp, i, c, q))
        for region, cycle in itertools.islice(cands, max_tries):
            try:
                out = apply_reduction(cur, region, cycle, q, budget)
            except RegionRejected:
                continue
            if out.infeasible:
                if log is not None:
                    log.append(f"reduce case=a I={','.join(region)} C={','.join(cycle)} k={q}")
                return cur, steps, True
            if len(out.step.reduced.graph.vertices) >= len(cur.graph.vertices):
                raise GraphError("internal: reduction did not shrink the instance")
            steps.append(out.step)
            if log is not None:
                log.append(out.step.log_line())
            cur = out.step.reduced
            fired = True
            break
        if not fired:
            break
    return cur, steps, False


def pipeline_solve(p: PredrawnGraph, k: int, opts: Optional[SolveOptions] = None) -> SolveResult:
    """Reduce, solve and lift back, deciding each level q = 0..k separately."""
    from .reduction import lift_drawing

    base = opts or SolveOptions()
    trace = []
    count = 0
    proven = 0
    for q in range(0, k + 1):
        try:
            red, steps, infeasible = reduce_instance(p, q, base.budget, log=trace)
        except BudgetExceeded as ex:
            return SolveResult(EXCEEDED, None, None, trace, proven, count, f"reduction: {ex}")
        if infeasible:
            proven = q + 1
            continue
        sub = SolveOptions(q, base.per_edge_cap, base.simple, False, base.budget, base.max_candidates,
                           base.max_seconds)
        r = solve_pdcr(red, sub)
        count += r.candidates
        if r.status == EXCEEDED:
            return SolveResult(EXCEEDED, None, None, trace, max(proven, r.lower_bound), count, "solver: " + r.note)
        if r.status == INFEASIBLE:
            proven = q + 1
            continue
        w = r.witness
        try:
            for step in reversed(steps):
                w = lift_drawing(step, w, base.budget)
        except BudgetExceeded as ex:
            return SolveResult(EXCEEDED, None, None, trace, proven, count, f"lift: {ex}")
        if not is_conforming(w, p, r.q_star):
            raise GraphError("lift: lifted witness is not conforming")
        return SolveResult(OPTIMAL, r.q_star, w, trace, r.q_star, count)
    return SolveResult(INFEASIBLE, None, None, trace, proven, count)


def subdivide_once(p: PredrawnGraph) -> PredrawnGraph:
    """Every crossable edge split in two; predrawn edges are split in the drawing as well."""
    g = p.graph
    taken = set(g.vertices) | set(g.edge_ids)
    arr = Arrangement.from_drawing(p.drawing)
    verts = list(g.vertices)
    edges = []
    for e in g.edges:
        if e.uncrossable:
            edges.append(e)
            continue
        x, e1, e2 = f"{e.id}#s", f"{e.id}#1", f"{e.id}#2"
        if {x, e1, e2} & taken:
            raise GraphError(f"name clash while subdividing {e.id}")
        verts.append(x)
        edges.append(Edge(e1, e.u, x, e.predrawn, False, e.weight))
        edges.append(Edge(e2, x, e.v, e.predrawn, False, e.weight))
        if e.predrawn:
            if arr.edges[e.id][0] != e.u:
                arr.flip_edge(e.id)
            arr.subdivide(e.id, x, e1, e2)
    return PredrawnGraph(Multigraph(tuple(verts), tuple(edges)), arr.to_drawing(), dict(p.crossings), p.name)


def subdivision_invariance_check(p: PredrawnGraph, opts: Optional[SolveOptions] = None) -> bool:
    opts = opts or SolveOptions()
    a = solve_pdcr(p, opts)
    b = solve_pdcr(subdivide_once(p), opts)
    if EXCEEDED in (a.status, b.status):
        raise BudgetExceeded("subdivision check ran out of budget")
    return (a.status, a.q_star) == (b.status, b.q_star)
