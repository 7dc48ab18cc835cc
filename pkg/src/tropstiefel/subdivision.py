"""Regular transversal matroid subdivisions D(A).

Selected matroids M_y, facet enumeration via containment-maximal covectors,
the transversal matroid polytope inequalities, interiority tests and
subdivision equality.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .core import INF, DomainError, TropMatrix, TropVector
from .geom import INFEASIBLE, LinearConstraintSystem, Polyhedron, strict_feasible
from .bipartite import BipartiteGraph, Matroid, transversal_matroid
from .plucker import PluckerVector
from .arrangement import enumerate_covectors

ZERO = Fraction(0)
ONE = Fraction(1)


class SelectedMatroid:
    """The matroid M_y selected by y: argmin of p_J − Σ_{j∈J} y_j."""

    __slots__ = ("matroid", "y", "minimum")

    def __init__(self, matroid, y, minimum):
        self.matroid = matroid
        self.y = y
        self.minimum = minimum

    def __repr__(self):
        return "SelectedMatroid(%r, min=%s)" % (self.matroid, self.minimum)


def select_matroid(p: PluckerVector, y: TropVector) -> SelectedMatroid:
    if len(y) != p.n or not y.is_finite():
        raise DomainError("BAD_POINT", "y must be finite of length n")
    best = None
    bases = []
    for J, v in p.values.items():
        if v is INF:
            continue
        val = v - sum(y.entry(j) for j in J)
        if best is None or val < best:
            best = val
            bases = [J]
        elif val == best:
            bases.append(J)
    return SelectedMatroid(Matroid(p.n, p.d, bases), y, best)


def facets_of_D(A: TropMatrix) -> frozenset:
    """The facet matroids of D(A): the containment-maximal transversal
    matroids over all covectors of TC(A).

    Maximality is taken over basis sets, not covector edge sets: distinct
    maximal covectors can induce nested matroids once their cells are
    intersected with the hypersimplex.
    """
    tc = enumerate_covectors(A)
    matroids = set()
    for c in tc.cells:
        M = transversal_matroid(c.covector.graph)
        if not M.is_empty():
            matroids.add(M)
    if not matroids:
        raise DomainError("NO_MATCHING_IN_SUPPORT", "support contains no matching")
    facets = {
        M
        for M in matroids
        if not any(set(M.bases) < set(N.bases) for N in matroids)
    }
    return frozenset(facets)


def transversal_polytope_ineqs(G: BipartiteGraph) -> Polyhedron:
    """H-representation of the transversal matroid polytope of G:
    Σ x_j = d, 0 <= x_j <= 1, and Σ_{j∈J_I} x_j >= |I| for every I."""
    n, d = G.n, G.d
    eqs = [((ONE,) * n, Fraction(d))]
    ineqs = []
    for j in range(n):
        lo = [ZERO] * n
        lo[j] = ONE
        ineqs.append((tuple(lo), ZERO))
        hi = [ZERO] * n
        hi[j] = -ONE
        ineqs.append((tuple(hi), -ONE))
    for r in range(1, d + 1):
        for I in itertools.combinations(range(1, d + 1), r):
            cols = G.J_of(I)
            co = [ZERO] * n
            for j in cols:
                co[j - 1] = ONE
            ineqs.append((tuple(co), Fraction(r)))
    return Polyhedron(n, eqs=eqs, ineqs=ineqs)


def is_interior_cell(M: Matroid) -> bool:
    """Loop-free and coloop-free: the cell misses the hypersimplex boundary."""
    if M.is_empty():
        raise DomainError("EMPTY_MATROID", "interiority is undefined for no bases")
    return not M.loops() and not M.coloops()


def subdivisions_equal(A: TropMatrix, B: TropMatrix) -> bool:
    if (A.d, A.n) != (B.d, B.n):
        return False
    key = lambda facets: frozenset(M.canonical() for M in facets)
    return key(facets_of_D(A)) == key(facets_of_D(B))


def cell_exists(p: PluckerVector, bases) -> bool:
    """Is there a y selecting exactly this basis set as its argmin?"""
    bases = [frozenset(b) for b in bases]
    if not bases:
        return False
    finite = [(J, v) for J, v in p.values.items() if v is not INF]
    if any(p[b] is INF for b in bases):
        return False

    def row(J):
        co = [ZERO] * p.n
        for j in J:
            co[j - 1] = -ONE
        return tuple(co)

    ref = bases[0]
    refrow = row(ref)
    refval = p[ref]
    eqs, gts = [], []
    for b in bases[1:]:
        eqs.append((tuple(x - y for x, y in zip(row(b), refrow)), refval - p[b]))
    chosen = set(bases)
    for J, v in finite:
        if J in chosen:
            continue
        gts.append((tuple(x - y for x, y in zip(row(J), refrow)), refval - v))
    return strict_feasible(LinearConstraintSystem(p.n, eqs=eqs, gts=gts)) is not INFEASIBLE


def facets_to_json(facets) -> list:
    return sorted([list(b) for b in M.canonical()] for M in facets)
