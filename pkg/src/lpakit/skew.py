"""The Lie algebra of skew-symmetric elements.

The involution fixes vertices and swaps e with e^*.  An element x is skew
when star(x) = -x; the skew elements form a Lie algebra under the
commutator [a, b] = ab - ba, and the objects of interest are truncated
pictures of the commutator space [K, K]:

* skew_basis: the degree-bounded slice of K has basis {m - m^* : m a basis
  monomial with p != q}, one per star-orbit,
* bracket_space: the row-reduced span of all pairwise commutators of that
  slice,
* containment of the bracket space in the ideal generated by the core of
  an almost-simple decomposition,
* the 2x2 matrix-unit model carried by a fiber.

Everything is exact and finite; no function here claims to verify a
statement about the full infinite-dimensional algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    Element,
    RowSpace,
    basis_monomials,
    dimension,
    edge_element,
    edge_star_element,
    ideal_span,
    monomial_key,
    vertex_element,
    zero,
    _is_acyclic,
)
from .classify import (
    Classification,
    classify,
    find_fibers,
    hereditary_closure,
    is_vanishing_family,
)
from .graph import Graph


class SkewError(Exception):
    pass


class NotAFiber(SkewError):
    """The 2x2 model is only available for a fiber edge."""


class TableMismatch(SkewError):
    """A product or star image disagreed with the matrix-unit table."""


class NotAlmostSimple(SkewError):
    """Ideal containment is stated against an almost-simple decomposition."""


def skew_part(x: Element) -> Element:
    """x - star(x), the canonical skew-symmetric part (up to the factor 2)."""
    return x - x.star()


def is_skew(x: Element) -> bool:
    return x.star() == -x


def bracket(a: Element, b: Element) -> Element:
    return a * b - b * a


def skew_basis(g: Graph, n: int) -> list[Element]:
    """Basis of the degree-<=n slice of the skew elements.

    star permutes the basis monomials, so the -1 eigenspace is spanned by
    m - m^* over the orbits {m, m^*} with m != m^*; each orbit is keyed by
    its canonically smaller member and listed in canonical order.
    """
    out = []
    for m in basis_monomials(g, n):
        ms = m.star()
        if m.p == m.q or monomial_key(ms) < monomial_key(m):
            continue
        out.append(Element(g, {m: Fraction(1), ms: Fraction(-1)}))
    return out


@dataclass(frozen=True)
class BracketSpace:
    truncation: int
    basis: tuple[Element, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def bracket_space(g: Graph, n: int) -> BracketSpace:
    """Row-reduced span of all pairwise brackets of the skew slice."""
    gens = skew_basis(g, n)
    space = RowSpace()
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            space.add(bracket(gens[i], gens[j]).terms)
    rows = tuple(Element(g, row) for row in space.reduced_rows())
    return BracketSpace(n, rows)


@dataclass(frozen=True)
class BracketWitness:
    left: Element
    right: Element
    value: Element


def first_nonzero_bracket(g: Graph, n: int) -> BracketWitness | None:
    """The first nonvanishing commutator of skew generators, trying pairs of
    lowest total degree first."""
    gens = skew_basis(g, n)
    pairs = [
        (gens[i].degree() + gens[j].degree(), i, j)
        for i in range(len(gens))
        for j in range(i + 1, len(gens))
    ]
    pairs.sort()
    for _, i, j in pairs:
        val = bracket(gens[i], gens[j])
        if not val.is_zero():
            return BracketWitness(gens[i], gens[j], val)
    return None


# -- the 2x2 model on a fiber ---------------------------------------------------


@dataclass(frozen=True)
class M2Check:
    edge: str
    images: dict[str, Element]
    products_checked: int
    star_checked: int


def fiber_m2_iso(g: Graph, edge_name: str) -> M2Check:
    """Verify that a fiber e spans a copy of the 2x2 matrices.

    The table is E11 -> ee^*, E12 -> e, E21 -> e^*, E22 -> r(e); all sixteen
    unit products and the star-transpose correspondence are checked as
    exact identities (TableMismatch on any failure).  Note ee^* is taken in
    normal form, so when e is its source's only edge E11 is the source
    vertex itself.
    """
    if edge_name not in {e.name for e in find_fibers(g)}:
        raise NotAFiber(f"{edge_name!r} is not a fiber edge")
    e = g.edge_map[edge_name]
    images = {
        "E11": edge_element(g, edge_name) * edge_star_element(g, edge_name),
        "E12": edge_element(g, edge_name),
        "E21": edge_star_element(g, edge_name),
        "E22": vertex_element(g, e.target),
    }
    units = ["E11", "E12", "E21", "E22"]
    products = 0
    for x in units:
        a, b = x[1], x[2]
        for y in units:
            c, d = y[1], y[2]
            want = images[f"E{a}{d}"] if b == c else zero(g)
            got = images[x] * images[y]
            if got != want:
                raise TableMismatch(f"{x} * {y}: got {got}, want {want}")
            products += 1
    stars = 0
    for x in units:
        transposed = f"E{x[2]}{x[1]}"
        if images[x].star() != images[transposed]:
            raise TableMismatch(f"star({x}) is not {transposed}")
        stars += 1
    return M2Check(edge_name, images, products, stars)


# -- ideal containment and the evidence bundle ----------------------------------


@dataclass(frozen=True)
class ContainmentReport:
    contained: bool
    bracket_dimension: int
    ideal_rank: int
    truncation: int
    slack: int


def bracket_in_ideal(g: Graph, ws, n: int, slack: int = 2) -> ContainmentReport:
    """Check that the truncated bracket space lies in the ideal generated by
    the core of the almost-simple decomposition.

    The bracket space is taken at degree n, the ideal slice at n + slack;
    brackets of degree-n skews reach degree 2n, so callers should keep
    slack >= n for a conclusive check (the defaults n=2, slack=2 do).
    """
    wlist = list(ws)
    cls = classify(g)
    if not cls.almost_simple:
        raise NotAlmostSimple("the graph has no almost-simple decomposition")
    if set(wlist) != set(cls.core):
        raise NotAlmostSimple(f"core is {list(cls.core)}, not {sorted(set(wlist))}")
    ideal_rows = ideal_span(g, hereditary_closure(g, wlist), n + slack)
    space = RowSpace()
    for row in ideal_rows:
        space.add(row.terms)
    bs = bracket_space(g, n)
    ok = all(space.contains(x.terms) for x in bs.basis)
    return ContainmentReport(ok, bs.dimension, space.rank, n, slack)


@dataclass(frozen=True)
class EvidenceBundle:
    classification: Classification
    truncation: int
    algebra_dimension: int | None
    bracket_space_dimension: int
    vanishing_family: bool
    witness: BracketWitness | None
    ideal_containment: ContainmentReport | None


def lie_simplicity_evidence(g: Graph, n: int) -> EvidenceBundle:
    """Finite evidence for or against simplicity of the commutator algebra.

    Bundles the classifier verdict with the degree-<=n bracket-space
    dimension, the first nonzero bracket witness (when one exists), and,
    for a positive verdict, the standard ideal-containment probe at degree
    2 with slack 2.  For graphs in the vanishing family the bracket-space
    dimension being 0 is the whole story at this truncation.
    """
    cls = classify(g)
    dim = dimension(g) if _is_acyclic(g) else None
    bs = bracket_space(g, n)
    witness = first_nonzero_bracket(g, n)
    containment = None
    if cls.almost_simple:
        containment = bracket_in_ideal(g, list(cls.core), 2, 2)
    return EvidenceBundle(
        classification=cls,
        truncation=n,
        algebra_dimension=dim,
        bracket_space_dimension=bs.dimension,
        vanishing_family=is_vanishing_family(g),
        witness=witness,
        ideal_containment=containment,
    )
