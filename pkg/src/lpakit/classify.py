"""Structural classification of finite directed graphs.

The questions answered here are the graph-side counterparts of algebraic
facts about the associated path algebra:

* hereditary/saturated vertex subsets (they index the two-sided ideals),
* simplicity of the graph: no proper hereditary-saturated subset and no
  cycle without an exit,
* the almost-simple decomposition: after detaching fiber units, the
  remaining vertices split into a simple core and a set of balloons
  (a balloon is a vertex carrying a loop, whose only other edges point
  into the core and whose only incoming edge is its own loop).

classify() reports that decomposition when it exists; its verdict predicts
whether the commutator algebra of skew-symmetric elements is simple.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .graph import Cycle, Edge, Graph, exitless_cycles, weak_components

HS_ENUM_LIMIT = 12


class ClassifyError(Exception):
    pass


class GraphTooLarge(ClassifyError):
    """Subset enumeration is gated to small vertex counts."""


class EmptyBaseSet(ClassifyError):
    """Balloons are only defined over a nonempty vertex set."""


class NotHereditarySaturated(ClassifyError):
    """Quotients exist only by hereditary and saturated subsets."""


class QuotientEmpty(ClassifyError):
    """Removing every vertex leaves no graph to quotient onto."""


# -- hereditary / saturated subsets -----------------------------------------


def _ordered(g: Graph, vs: Iterable[str]) -> list[str]:
    vset = set(vs)
    return [v for v in g.vertices if v in vset]


def is_hereditary(g: Graph, ws: Iterable[str]) -> bool:
    """Closed under moving along edges: source in W forces range in W."""
    wset = set(ws)
    return all(e.target in wset for e in g.edges if e.source in wset)


def is_saturated(g: Graph, ws: Iterable[str]) -> bool:
    """Every non-sink all of whose edge ranges lie in W already lies in W."""
    wset = set(ws)
    for v in g.vertices:
        if v in wset or g.is_sink(v):
            continue
        if all(e.target in wset for e in g.out_edges(v)):
            return False
    return True


def hereditary_closure(g: Graph, xs: Iterable[str]) -> list[str]:
    """Smallest hereditary superset: the union of descendant sets."""
    wset: set[str] = set()
    frontier = list(xs)
    for v in frontier:
        g._check_vertex(v)
    wset.update(frontier)
    while frontier:
        u = frontier.pop()
        for e in g.out_edges(u):
            if e.target not in wset:
                wset.add(e.target)
                frontier.append(e.target)
    return _ordered(g, wset)


def saturated_closure(g: Graph, xs: Iterable[str]) -> list[str]:
    """Least fixpoint of the saturation rule alone (no hereditary step)."""
    wset = set(xs)
    for v in wset:
        g._check_vertex(v)
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            if v in wset or g.is_sink(v):
                continue
            if all(e.target in wset for e in g.out_edges(v)):
                wset.add(v)
                changed = True
    return _ordered(g, wset)


def hs_closure(g: Graph, xs: Iterable[str]) -> list[str]:
    """Smallest hereditary and saturated superset of xs.

    Alternates the two closure rules until nothing changes.  The result is
    the intersection of all hereditary-saturated supersets, because both
    rules are forced for any such superset.
    """
    cur = set(xs)
    for v in cur:
        g._check_vertex(v)
    while True:
        nxt = set(saturated_closure(g, hereditary_closure(g, cur)))
        if nxt == cur:
            return _ordered(g, cur)
        cur = nxt


def smallest_hs_subset(g: Graph) -> list[str] | None:
    """The least nonempty hereditary-saturated subset, or None.

    Every nonempty hereditary-saturated W contains hs_closure({v}) for each
    v in W, so the candidate is the intersection of the singleton closures;
    it qualifies exactly when it is nonempty and itself closed.
    """
    common: set[str] | None = None
    for v in g.vertices:
        cl = set(hs_closure(g, [v]))
        common = cl if common is None else common & cl
        if not common:
            return None
    assert common is not None
    if is_hereditary(g, common) and is_saturated(g, common):
        return _ordered(g, common)
    return None


@dataclass(frozen=True)
class HSSubset:
    vertices: tuple[str, ...]
    is_hereditary: bool
    is_saturated: bool


def enumerate_hs_subsets(g: Graph, limit: int = HS_ENUM_LIMIT) -> list[HSSubset]:
    """All nonempty proper-or-full subsets that are hereditary and saturated.

    Exponential by nature, so gated: graphs with more than `limit` vertices
    raise GraphTooLarge.  Results are ordered by size, then by declaration
    order of their members.
    """
    n = len(g.vertices)
    if n > limit:
        raise GraphTooLarge(f"{n} vertices exceeds the enumeration limit {limit}")
    out = []
    for k in range(1, n + 1):
        for combo in combinations(g.vertices, k):
            if is_hereditary(g, combo) and is_saturated(g, combo):
                out.append(HSSubset(combo, True, True))
    return out


# -- simplicity ---------------------------------------------------------------


@dataclass(frozen=True)
class SimplicityResult:
    simple: bool
    proper_hs_subset: tuple[str, ...] | None = None
    exitless_cycle: Cycle | None = None


def is_simple(g: Graph) -> SimplicityResult:
    """Simplicity test with certificate.

    Simple means: no proper nonempty hereditary-saturated subset, and every
    cycle has an exit.  The first condition is equivalent to every singleton
    closure hs_closure({v}) being all of V, which avoids subset enumeration.
    On failure the certificate is the offending subset or cycle.
    """
    all_v = set(g.vertices)
    for v in g.vertices:
        cl = hs_closure(g, [v])
        if set(cl) != all_v:
            return SimplicityResult(False, proper_hs_subset=tuple(cl))
    bad = exitless_cycles(g)
    if bad:
        return SimplicityResult(False, exitless_cycle=bad[0])
    return SimplicityResult(True)


# -- fibers, forks, balloons --------------------------------------------------


def find_fibers(g: Graph) -> list[Edge]:
    """Edges e whose source receives nothing, whose range emits nothing,
    and whose range receives no edge other than e itself."""
    out = []
    for e in g.edges:
        if not g.is_source(e.source) or not g.is_sink(e.target):
            continue
        if len(g.in_edges(e.target)) == 1:
            out.append(e)
    return out


def is_fork(g: Graph) -> bool:
    """One connected component in which a single vertex emits everything:
    exactly one source vertex, every other vertex a sink, at least two
    vertices in total."""
    if len(g.vertices) < 2 or len(weak_components(g)) != 1:
        return False
    srcs = [v for v in g.vertices if g.is_source(v)]
    if len(srcs) != 1:
        return False
    hub = srcs[0]
    return all(g.is_sink(v) for v in g.vertices if v != hub)


def _balloon_clauses(g: Graph, v: str, wset: set[str]) -> bool:
    loops = [e for e in g.out_edges(v) if e.target == v]
    if len(loops) != 1:
        return False
    loop = loops[0]
    into_w = [e for e in g.out_edges(v) if e.target in wset]
    if not into_w:
        return False
    if len(g.out_edges(v)) != 1 + len(into_w):
        return False
    ins = g.in_edges(v)
    return len(ins) == 1 and ins[0] == loop


def find_balloons(g: Graph, ws: Iterable[str]) -> list[str]:
    """Vertices outside ws that are balloons over ws: a single loop, at
    least one edge into ws, no other outgoing edges, and no incoming edge
    except the loop."""
    wlist = list(ws)
    if not wlist:
        raise EmptyBaseSet("balloons need a nonempty base set")
    for v in wlist:
        g._check_vertex(v)
    wset = set(wlist)
    return [v for v in g.vertices if v not in wset and _balloon_clauses(g, v, wset)]


def quotient_graph(g: Graph, ws: Iterable[str]) -> Graph:
    """Remove a hereditary-saturated subset and every edge pointing into it.

    Because ws is hereditary, the surviving edges have both endpoints
    outside ws, so the result is an honest graph on the remaining vertices.
    """
    wlist = list(ws)
    for v in wlist:
        g._check_vertex(v)
    wset = set(wlist)
    if not (is_hereditary(g, wset) and is_saturated(g, wset)):
        raise NotHereditarySaturated(f"{sorted(wset)} is not hereditary and saturated")
    keep = [v for v in g.vertices if v not in wset]
    if not keep:
        raise QuotientEmpty("subset is the whole vertex set")
    es = [(e.name, e.source, e.target) for e in g.edges if e.target not in wset]
    return Graph(keep, es)


# -- fiber stripping ----------------------------------------------------------


@dataclass(frozen=True)
class FiberUnit:
    source: str
    edge: str
    target: str


def fiber_units(g: Graph) -> list[FiberUnit]:
    """Fibers whose source emits nothing else.

    Such a unit {source, edge, target} touches no other edge: the source
    receives nothing and emits only the fiber, the target emits nothing and
    receives only the fiber.  Detaching units therefore never creates new
    fibers, and one pass is enough.
    """
    return [
        FiberUnit(e.source, e.name, e.target)
        for e in find_fibers(g)
        if len(g.out_edges(e.source)) == 1
    ]


def detach_fiber_units(g: Graph) -> tuple[Graph | None, list[FiberUnit]]:
    """Remove every fiber unit (source, edge and target all go).

    Returns (remainder, units); the remainder is None when the units cover
    the whole graph.
    """
    units = fiber_units(g)
    drop = {u.source for u in units} | {u.target for u in units}
    keep = [v for v in g.vertices if v not in drop]
    if not keep:
        return None, units
    return g.subgraph(keep), units


def remove_fiber_targets(g: Graph) -> tuple[Graph | None, list[Edge]]:
    """Gentler stripping that keeps fiber sources: drop each fiber edge and
    its target only.  Splits off one 2x2 matrix block per fiber without
    touching the rest of the algebra, provided each source keeps another
    edge."""
    fibers = find_fibers(g)
    drop_v = {e.target for e in fibers}
    drop_e = {e.name for e in fibers}
    keep = [v for v in g.vertices if v not in drop_v]
    if not keep:
        return None, fibers
    es = [(e.name, e.source, e.target) for e in g.edges if e.name not in drop_e]
    return Graph(keep, es), fibers


# -- the classifier -----------------------------------------------------------


@dataclass(frozen=True)
class FailureReason:
    kind: str
    detail: str


@dataclass(frozen=True)
class Classification:
    simple: bool
    almost_simple: bool
    core: tuple[str, ...]
    balloons: tuple[str, ...]
    fiber_units: tuple[FiberUnit, ...]
    failure_reason: FailureReason | None
    predicted_kk_simple: bool
    simplicity: SimplicityResult
    components: tuple[tuple[str, ...], ...]
    warnings: tuple[str, ...] = field(default=())


def _local_balloon_candidates(g: Graph) -> list[str]:
    out = []
    for v in g.vertices:
        loops = [e for e in g.out_edges(v) if e.target == v]
        if len(loops) != 1:
            continue
        ins = g.in_edges(v)
        if len(ins) != 1 or ins[0] != loops[0]:
            continue
        if len(g.out_edges(v)) >= 2:
            out.append(v)
    return out


def classify(g: Graph) -> Classification:
    """Decide the almost-simple decomposition.

    Pipeline: (1) detach fiber units; (2) collect balloon candidates by the
    local test (one loop, no other incoming edge, at least one other
    outgoing edge) and evict any candidate with a non-loop edge into the
    candidate set until stable; (3) the rest of the remainder is the core:
    check it is simple and re-check every balloon clause over it.  The
    verdict is also negative when nothing remains after stripping, or when
    the remainder is one isolated vertex (its skew-symmetric part is zero,
    so the commutator algebra cannot be simple).
    """
    comps = tuple(tuple(c) for c in weak_components(g))
    warnings: list[str] = []
    if len(comps) > 1:
        warnings.append(
            "graph is disconnected; the decomposition is applied to the whole "
            "graph, component by component effects are not modelled"
        )
    simplicity = is_simple(g)

    remainder, units = detach_fiber_units(g)
    units_t = tuple(units)
    if units:
        warnings.append(
            "fiber units are detached before decomposition; each contributes a "
            "2x2 matrix block with zero commutators of skew elements"
        )

    def verdict(core, balloons, ok, reason=None):
        return Classification(
            simple=simplicity.simple,
            almost_simple=ok,
            core=tuple(core),
            balloons=tuple(balloons),
            fiber_units=units_t,
            failure_reason=reason,
            predicted_kk_simple=ok,
            simplicity=simplicity,
            components=comps,
            warnings=tuple(warnings),
        )

    if remainder is None:
        warnings.append("every vertex lies in a fiber unit; skew commutators all vanish")
        return verdict((), (), False, FailureReason(
            "empty_after_fiber_stripping",
            "detaching fiber units removed every vertex",
        ))

    candidates = _local_balloon_candidates(remainder)
    cand_set = set(candidates)
    changed = True
    while changed:  # evict candidates pointing at candidates
        changed = False
        for v in list(candidates):
            if v not in cand_set:
                continue
            for e in remainder.out_edges(v):
                if e.target != v and e.target in cand_set:
                    cand_set.remove(v)
                    changed = True
                    break
    balloons = [v for v in candidates if v in cand_set]
    core = [v for v in remainder.vertices if v not in cand_set]

    if len(remainder.vertices) == 1 and not remainder.edges:
        warnings.append(
            "remainder is a single isolated vertex; its skew-symmetric part is "
            "zero, so the verdict is negative despite the trivially simple core"
        )
        return verdict(core, balloons, False, FailureReason(
            "trivial_remainder",
            "a single isolated vertex has no skew elements to generate anything",
        ))

    # core is never empty here: a balloon candidate needs a non-loop edge,
    # and whatever that edge hits has an incoming edge besides any loop.
    core_graph = remainder.subgraph(core)
    core_result = is_simple(core_graph)
    if not core_result.simple:
        what = (
            f"proper hereditary-saturated subset {list(core_result.proper_hs_subset)}"
            if core_result.proper_hs_subset is not None
            else f"cycle without exit ({core_result.exitless_cycle})"
        )
        return verdict(core, balloons, False, FailureReason("core_not_simple", what))

    ok_balloons = set(find_balloons(remainder, core)) if core else set()
    bad = [v for v in balloons if v not in ok_balloons]
    if bad:
        return verdict(core, balloons, False, FailureReason(
            "balloon_check_failed",
            f"vertices {bad} fail the balloon clauses over the core",
        ))

    return verdict(core, balloons, True)


def validate_classification(g: Graph, cls: Classification) -> bool:
    """Re-derive a positive verdict from scratch, clause by clause.

    Used as a self-check by the command line tool: the decomposition parts
    must partition the vertices, each fiber unit must still satisfy the
    fiber clauses, each balloon the balloon clauses over the core, and the
    core subgraph must be simple.
    """
    if not cls.almost_simple:
        return True
    parts: list[str] = list(cls.core) + list(cls.balloons)
    for u in cls.fiber_units:
        parts += [u.source, u.target]
    if sorted(parts) != sorted(g.vertices):
        return False
    fibers = {e.name for e in find_fibers(g)}
    for u in cls.fiber_units:
        if u.edge not in fibers or len(g.out_edges(u.source)) != 1:
            return False
    keep = set(cls.core) | set(cls.balloons)
    if not keep or not cls.core:
        return False
    rem = g.subgraph(keep)
    if not is_simple(rem.subgraph(cls.core)).simple:
        return False
    return set(find_balloons(rem, cls.core)) == set(cls.balloons)


# -- the vanishing family -----------------------------------------------------


def is_vanishing_family(g: Graph) -> bool:
    """True when every component is an isolated vertex, a single loop, or a
    fork whose sinks each receive exactly one edge.

    These are exactly the shapes on which every commutator of skew-symmetric
    elements vanishes: no two distinct edges are consecutive or share a
    range, so there is nothing to bracket.
    """
    for comp in weak_components(g):
        sub = g.subgraph(comp)
        if len(sub.vertices) == 1:
            v = sub.vertices[0]
            es = sub.out_edges(v)
            if len(es) > 1:
                return False
            continue  # isolated vertex or one loop
        if not is_fork(sub):
            return False
        if any(len(sub.in_edges(v)) > 1 for v in sub.vertices):
            return False
    return True
