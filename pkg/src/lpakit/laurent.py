"""Laurent polynomials, matrices over them, and the cycle model.

The path algebra of a single cycle with d vertices is the d x d matrix
algebra over rational Laurent polynomials: vertex i maps to E_ii, the i-th
edge to E_{i,i+1} for i < d, and the closing edge to t * E_{d,1}.  Under
this map the involution of the path algebra becomes transpose combined
with t -> 1/t.  verify_cycle_iso checks all of this by direct computation
on generators and on small monomials.

The same matrix involution makes sense in dimension 2, where commutators
of skew matrices [[0, f], [-f(1/t), 0]] are diagonal; skew_commutator_diag
computes those diagonals and cross-checks them against the literal matrix
bracket.  vanish_order_at_1 measures divisibility by powers of (1 - t),
which filters the resulting ideals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .graph import Graph


class LaurentError(Exception):
    pass


class InvalidDimension(LaurentError):
    pass


class RelationFailure(LaurentError):
    """An identity that should hold by construction failed to verify."""


class LaurentPoly:
    """A rational Laurent polynomial as a sparse exponent -> coefficient map."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, Fraction] | None = None):
        self.coeffs: dict[int, Fraction] = {}
        if coeffs:
            for k, c in coeffs.items():
                c = Fraction(c)
                if c:
                    self.coeffs[int(k)] = c

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: Fraction(1)})

    @classmethod
    def t(cls, k: int = 1) -> "LaurentPoly":
        return cls({k: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def subs_inverse(self) -> "LaurentPoly":
        """f(t) -> f(1/t)."""
        return LaurentPoly({-k: c for k, c in self.coeffs.items()})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            acc = out.get(k, 0) + c
            if acc:
                out[k] = acc
            else:
                out.pop(k, None)
        return LaurentPoly(out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return LaurentPoly({k: c * x for k, x in self.coeffs.items()})
        out: dict[int, Fraction] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                acc = out.get(k, 0) + c1 * c2
                if acc:
                    out[k] = acc
                else:
                    out.pop(k, None)
        return LaurentPoly(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("only nonnegative powers")
        acc = LaurentPoly.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        raise TypeError("Laurent polynomials are not hashable")

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{self.coeffs[k]}*t^{k}" for k in sorted(self.coeffs))

    def __repr__(self) -> str:
        return f"<LaurentPoly {self}>"


ONE_MINUS_T = LaurentPoly({0: Fraction(1), 1: Fraction(-1)})


def vanish_order_at_1(f: LaurentPoly):
    """The largest n such that (1 - t)^n divides f (t itself is a unit, so
    shifting exponents changes nothing).  The zero polynomial gets
    math.inf."""
    if f.is_zero():
        return math.inf
    lo, hi = min(f.coeffs), max(f.coeffs)
    coeffs = [f.coeffs.get(k, Fraction(0)) for k in range(lo, hi + 1)]
    order = 0
    while sum(coeffs) == 0:
        # exact synthetic division by (t - 1), ascending coefficients
        n = len(coeffs) - 1
        q = [Fraction(0)] * n
        b = Fraction(0)
        for k in range(n, 0, -1):
            b = coeffs[k] + b
            q[k - 1] = b
        coeffs = q
        order += 1
    return order


@dataclass(frozen=True)
class VanishingOrderIdeal:
    """The ideal of Laurent polynomials divisible by (1 - t)^order.

    These ideals are star-closed, nest downward as the order grows, and
    intersect to zero on polynomials of bounded support width.
    """

    order: int

    def contains(self, f: LaurentPoly) -> bool:
        return vanish_order_at_1(f) >= self.order

    def generator(self) -> LaurentPoly:
        return ONE_MINUS_T ** self.order


class LaurentMatrix:
    """A square matrix of Laurent polynomials."""

    __slots__ = ("dim", "rows")

    def __init__(self, rows: Iterable[Iterable[LaurentPoly]]):
        self.rows: tuple[tuple[LaurentPoly, ...], ...] = tuple(tuple(r) for r in rows)
        self.dim = len(self.rows)
        if any(len(r) != self.dim for r in self.rows):
            raise InvalidDimension("matrix is not square")

    @classmethod
    def zero(cls, d: int) -> "LaurentMatrix":
        return cls([[LaurentPoly.zero()] * d for _ in range(d)])

    @classmethod
    def identity(cls, d: int) -> "LaurentMatrix":
        return cls(
            [[LaurentPoly.one() if i == j else LaurentPoly.zero() for j in range(d)]
             for i in range(d)]
        )

    @classmethod
    def unit(cls, d: int, i: int, j: int, poly: LaurentPoly | None = None) -> "LaurentMatrix":
        """poly * E_ij with 0-based indices (poly defaults to 1)."""
        rows = [[LaurentPoly.zero() for _ in range(d)] for _ in range(d)]
        rows[i][j] = poly if poly is not None else LaurentPoly.one()
        return cls(rows)

    def _same_dim(self, other: "LaurentMatrix") -> None:
        if self.dim != other.dim:
            raise InvalidDimension("dimension mismatch")

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        self._same_dim(other)
        return LaurentMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        self._same_dim(other)
        return LaurentMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    def __neg__(self) -> "LaurentMatrix":
        return LaurentMatrix([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentMatrix([[a * other for a in r] for r in self.rows])
        self._same_dim(other)
        d = self.dim
        out = [[LaurentPoly.zero() for _ in range(d)] for _ in range(d)]
        for i in range(d):
            for k in range(d):
                a = self.rows[i][k]
                if a.is_zero():
                    continue
                for j in range(d):
                    b = other.rows[k][j]
                    if b.is_zero():
                        continue
                    out[i][j] = out[i][j] + a * b
        return LaurentMatrix(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def star(self) -> "LaurentMatrix":
        """Transpose combined with t -> 1/t in every entry: the involution
        matching the path-algebra star under the cycle model."""
        d = self.dim
        return LaurentMatrix(
            [[self.rows[j][i].subs_inverse() for j in range(d)] for i in range(d)]
        )

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.dim == other.dim and self.rows == other.rows

    def __hash__(self):
        raise TypeError("matrices are not hashable")

    def __repr__(self) -> str:
        body = "; ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows)
        return f"<LaurentMatrix {body}>"


def matrix_star(m: LaurentMatrix) -> LaurentMatrix:
    return m.star()


def skew_commutator_diag(f: LaurentPoly, g: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Diagonal of the commutator of the skew 2x2 matrices built from f and g.

    Returns (g(t)f(1/t) - f(t)g(1/t), f(t)g(1/t) - f(1/t)g(t)) and verifies
    the pair against the literal matrix bracket before returning it.
    """
    finv, ginv = f.subs_inverse(), g.subs_inverse()
    d11 = g * finv - f * ginv
    d22 = f * ginv - finv * g
    z = LaurentPoly.zero()
    a = LaurentMatrix([[z, f], [-finv, z]])
    b = LaurentMatrix([[z, g], [-ginv, z]])
    c = a * b - b * a
    expect = LaurentMatrix([[d11, z], [z, d22]])
    if c != expect:
        raise RelationFailure("skew commutator diagonal formula failed its cross-check")
    return d11, d22


# -- the cycle model --------------------------------------------------------------


@dataclass(frozen=True)
class CycleModel:
    d: int
    graph: Graph
    images: dict[str, LaurentMatrix]


def cycle_graph(d: int) -> Graph:
    """The standard cycle: vertices v1..vd, edge ei from vi to v(i+1 mod d)."""
    if d < 1:
        raise InvalidDimension("a cycle needs at least one vertex")
    vs = [f"v{i}" for i in range(1, d + 1)]
    es = [(f"e{i}", f"v{i}", f"v{i % d + 1}") for i in range(1, d + 1)]
    return Graph(vs, es)


def cycle_iso(d: int) -> CycleModel:
    """Generator assignment for the cycle: vi -> E_ii, ei -> E_{i,i+1}
    (i < d), and the closing edge ed -> t * E_{d,1}."""
    g = cycle_graph(d)
    images: dict[str, LaurentMatrix] = {}
    for i in range(1, d + 1):
        images[f"v{i}"] = LaurentMatrix.unit(d, i - 1, i - 1)
    for i in range(1, d):
        images[f"e{i}"] = LaurentMatrix.unit(d, i - 1, i)
    images[f"e{d}"] = LaurentMatrix.unit(d, d - 1, 0, LaurentPoly.t())
    return CycleModel(d, g, images)


def image_of_element(model: CycleModel, x) -> LaurentMatrix:
    """Extend the generator assignment to an algebra element: a monomial
    p q^* maps to (the product over p) times the star of (the product
    over q)."""
    d = model.d

    def path_image(path) -> LaurentMatrix:
        if not path.edges:
            return model.images[path.source]
        acc = model.images[path.edges[0]]
        for name in path.edges[1:]:
            acc = acc * model.images[name]
        return acc

    total = LaurentMatrix.zero(d)
    for m, c in x.terms.items():
        total = total + (path_image(m.p) * path_image(m.q).star()) * c
    return total


@dataclass(frozen=True)
class CycleIsoReport:
    d: int
    relation_checks: int
    product_checks: int


def verify_cycle_iso(d: int, product_degree: int = 3) -> CycleIsoReport:
    """Verify that the cycle assignment is a star-homomorphism.

    Checks the four defining relations on generators, the star
    correspondence, and multiplicativity on every pair of basis monomials
    of degree at most product_degree.  Raises RelationFailure on any
    mismatch.  Gated to 1 <= d <= 6; beyond that nothing new happens and
    the product table gets large.
    """
    if not 1 <= d <= 6:
        raise InvalidDimension("verification is gated to cycles of size 1..6")
    from .algebra import Element, basis_monomials, monomial_mul

    model = cycle_iso(d)
    g = model.graph
    checks = 0

    def want(cond: bool, what: str) -> None:
        nonlocal checks
        if not cond:
            raise RelationFailure(f"cycle model d={d}: {what}")
        checks += 1

    vs = [f"v{i}" for i in range(1, d + 1)]
    es = [f"e{i}" for i in range(1, d + 1)]
    for a in vs:
        for b in vs:
            prod = model.images[a] * model.images[b]
            expect = model.images[a] if a == b else LaurentMatrix.zero(d)
            want(prod == expect, f"vertex product {a}*{b}")
    for name in es:
        e = g.edge_map[name]
        img = model.images[name]
        want(model.images[e.source] * img == img, f"s(e)e for {name}")
        want(img * model.images[e.target] == img, f"er(e) for {name}")
    for a in es:
        for b in es:
            prod = model.images[a].star() * model.images[b]
            expect = model.images[g.edge_map[a].target] if a == b else LaurentMatrix.zero(d)
            want(prod == expect, f"e^*f for {a},{b}")
    for v in vs:
        total = LaurentMatrix.zero(d)
        for e in g.out_edges(v):
            total = total + model.images[e.name] * model.images[e.name].star()
        want(total == model.images[v], f"vertex sum rule at {v}")

    monos = basis_monomials(g, product_degree)
    images = {}
    for m in monos:
        images[str(m)] = image_of_element(model, Element(g, {m: Fraction(1)}))
    for m in monos:
        x = Element(g, {m: Fraction(1)})
        want(image_of_element(model, x.star()) == images[str(m)].star(),
             f"star image of {m}")
    products = 0
    for m1 in monos:
        for m2 in monos:
            lhs = image_of_element(model, monomial_mul(g, m1, m2))
            rhs = images[str(m1)] * images[str(m2)]
            if lhs != rhs:
                raise RelationFailure(f"cycle model d={d}: product {m1} | {m2}")
            products += 1
    return CycleIsoReport(d, checks, products)
