"""Brute-force oracles and builders shared by the test modules.

Everything here recomputes graph facts from first principles in the
plainest way available (powerset scans, exhaustive walks, counting
formulas), so the package code can be checked against independent
implementations on small inputs.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from lpakit.algebra import Element, basis_monomials, zero
from lpakit.graph import Graph, parse_graph

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def corpus_names() -> list[str]:
    return sorted(p.stem for p in CORPUS.glob("*.graph"))


def load(name: str) -> Graph:
    return parse_graph((CORPUS / f"{name}.graph").read_text())


def build(vertices, edges=()) -> Graph:
    return Graph(list(vertices), [tuple(e) for e in edges])


# -- hereditary-saturated subsets, by powerset scan ---------------------------


def hs_oracle(g: Graph, subset) -> bool:
    s = set(subset)
    for e in g.edges:
        if e.source in s and e.target not in s:
            return False  # not hereditary
    for v in g.vertices:
        outs = g.out_edges(v)
        if outs and v not in s and all(e.target in s for e in outs):
            return False  # not saturated
    return True


def all_hs_subsets(g: Graph) -> list[frozenset]:
    """Every hereditary and saturated subset, empty set and V included."""
    vs = list(g.vertices)
    out = []
    for k in range(len(vs) + 1):
        for combo in combinations(vs, k):
            if hs_oracle(g, combo):
                out.append(frozenset(combo))
    return out


def hs_closure_oracle(g: Graph, xs) -> frozenset:
    """Intersection of all hereditary-saturated supersets (V always is one)."""
    base = set(xs)
    acc = frozenset(g.vertices)
    for s in all_hs_subsets(g):
        if base <= s:
            acc &= s
    return acc


# -- cycles, by exhaustive walks ----------------------------------------------


def _min_rotation(names) -> tuple:
    names = list(names)
    return min(tuple(names[i:] + names[:i]) for i in range(len(names)))


def cycles_oracle(g: Graph) -> set[tuple]:
    """All cycles with pairwise distinct vertices, as rotation-canonical
    edge-name tuples.  Each cycle is found once per vertex on it; the
    min-rotation form collapses the duplicates."""
    found: set[tuple] = set()

    def walk(start, here, visited, trail):
        for e in g.out_edges(here):
            if e.target == start:
                found.add(_min_rotation(trail + [e.name]))
            elif e.target not in visited:
                walk(start, e.target, visited | {e.target}, trail + [e.name])

    for v in g.vertices:
        walk(v, v, {v}, [])
    return found


def canon_cycles(cycles) -> set[tuple]:
    """Package cycles mapped to the oracle's min-rotation form."""
    return {_min_rotation(c.edges) for c in cycles}


def exitless_cycle_exists_oracle(g: Graph) -> bool:
    for cyc in cycles_oracle(g):
        if all(len(g.out_edges(g.edge_map[e].source)) == 1 for e in cyc):
            return True
    return False


def simple_oracle(g: Graph) -> bool:
    n = len(g.vertices)
    if any(0 < len(s) < n for s in all_hs_subsets(g)):
        return False
    return not exitless_cycle_exists_oracle(g)


# -- the decomposition, by definition chasing ----------------------------------


def balloon_oracle(g: Graph, v: str, wset) -> bool:
    outs = list(g.out_edges(v))
    loops = [e for e in outs if e.target == v]
    others = [e for e in outs if e.target != v]
    return (
        len(loops) == 1
        and len(others) >= 1
        and all(e.target in set(wset) for e in others)
        and list(g.in_edges(v)) == loops
    )


def fiber_unit_edges_oracle(g: Graph):
    out = []
    for e in g.edges:
        if (
            not g.in_edges(e.source)
            and len(g.out_edges(e.source)) == 1
            and not g.out_edges(e.target)
            and [x.name for x in g.in_edges(e.target)] == [e.name]
        ):
            out.append(e)
    return out


def almost_simple_oracle(g: Graph) -> bool:
    """Definition-chasing decision: strip the detached two-vertex units,
    then search every split of what is left into balloons plus a simple
    core.  A remainder that is empty or one bare vertex carries no skew
    elements, so those cases are negative outright."""
    units = fiber_unit_edges_oracle(g)
    drop = {e.source for e in units} | {e.target for e in units}
    keep = [v for v in g.vertices if v not in drop]
    if not keep:
        return False
    rem = g.subgraph(keep)
    if len(rem.vertices) == 1 and not rem.edges:
        return False
    vs = list(rem.vertices)
    for k in range(len(vs)):
        for balloons in combinations(vs, k):
            bset = set(balloons)
            core = [v for v in vs if v not in bset]
            if not core:
                continue
            if not all(balloon_oracle(rem, b, core) for b in balloons):
                continue
            if simple_oracle(rem.subgraph(core)):
                return True
    return False


# -- dimension, by path counting ------------------------------------------------


def dimension_oracle(g: Graph) -> int:
    """Count basis monomials by the path-pair formula.

    Monomials with range v pair off the P(v) paths ending at v, so they
    number P(v)^2.  Each non-sink v contributes exactly P(v)^2 excluded
    pairs: those whose two paths both continue through v's rewrite edge.
    Hence dim = sum_v P(v)^2 - sum_{v non-sink} P(v)^2, acyclic case only.
    """
    memo: dict[str, int] = {}

    def paths_to(v: str) -> int:
        if v not in memo:
            memo[v] = 1 + sum(paths_to(e.source) for e in g.in_edges(v))
        return memo[v]

    total = sum(paths_to(v) ** 2 for v in g.vertices)
    excluded = sum(paths_to(v) ** 2 for v in g.vertices if g.out_edges(v))
    return total - excluded


# -- random instances ------------------------------------------------------------


def random_graph(rng: random.Random, max_vertices: int = 8, max_edges: int | None = None) -> Graph:
    n = rng.randint(1, max_vertices)
    vs = [f"v{i}" for i in range(1, n + 1)]
    m = rng.randint(0, n + 2 if max_edges is None else max_edges)
    es = [
        (f"e{j}", rng.choice(vs), rng.choice(vs))
        for j in range(1, m + 1)
    ]
    return Graph(vs, es)


def random_acyclic_graph(rng: random.Random, max_vertices: int = 5, max_edges: int = 6) -> Graph:
    n = rng.randint(1, max_vertices)
    vs = [f"v{i}" for i in range(1, n + 1)]
    es = []
    if n > 1:
        for j in range(1, rng.randint(0, max_edges) + 1):
            a, b = sorted(rng.sample(range(n), 2))
            es.append((f"e{j}", vs[a], vs[b]))
    return Graph(vs, es)


def random_element(g: Graph, rng: random.Random, degree: int = 2, terms: int = 3) -> Element:
    pool = basis_monomials(g, degree)
    x = zero(g)
    for _ in range(terms):
        m = pool[rng.randrange(len(pool))]
        x = x + Element.from_terms(g, [(m, Fraction(rng.randint(-3, 3)))])
    return x
