"""Tropical hyperplane arrangements of a matrix A.

Covectors of points, the full covector complex TC(A), the subcomplexes
B(A) (all rows covered) and K(A) (dragon marriage condition), transpose
covectors, and the tropical singularity predicate.

The arrangement lives in the torus of x-coordinates; cell polyhedra are
gauge-fixed by x_1 = 0.  TC(A) is computed exactly: the closed cells of all
column choice functions seed the complex, every candidate covector is
canonicalized to the covector of a relative-interior point of its cell, and
the face set is closed under pairwise unions of covectors (intersections of
closed cells).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .core import INF, DomainError, TropMatrix, TropVector, require_column_supports, require_row_supports, trop_sum
from .geom import INFEASIBLE, LinearConstraintSystem, Polyhedron, strict_feasible
from .bipartite import BipartiteGraph, dragon_condition

ZERO = Fraction(0)


class Covector:
    """A covector: a bipartite graph on [d] ⊔ [n] with every column hit."""

    __slots__ = ("graph",)

    def __init__(self, graph: BipartiteGraph):
        for j in range(1, graph.n + 1):
            if not graph.I(j):
                raise DomainError("BAD_COVECTOR", f"column {j} uncovered")
        self.graph = graph

    @property
    def edges(self):
        return self.graph.edges

    def tuple_view(self):
        """(I_1, ..., I_n) as a tuple of sorted row lists."""
        return tuple(
            tuple(sorted(self.graph.I(j))) for j in range(1, self.graph.n + 1)
        )

    def key(self):
        return tuple(sorted(self.edges))

    def __eq__(self, other):
        return isinstance(other, Covector) and self.graph == other.graph

    def __hash__(self):
        return hash(self.graph)

    def __repr__(self):
        return "Covector(%s)" % (self.tuple_view(),)


def covector_of_point(A: TropMatrix, x: TropVector) -> Covector:
    """tc(x): per column, the finite-entry rows attaining min_i (x_i + a_ij)."""
    require_column_supports(A)
    if len(x) != A.d or not x.is_finite():
        raise DomainError("BAD_POINT", "x must be a finite vector of length d")
    edges = []
    for j in range(1, A.n + 1):
        best = trop_sum(x.entry(i) + A.entry(i, j) for i in range(1, A.d + 1))
        for i in range(1, A.d + 1):
            if A.entry(i, j) is not INF and x.entry(i) + A.entry(i, j) == best:
                edges.append((i, j))
    return Covector(BipartiteGraph(A.d, A.n, edges))


def transpose_covector(A: TropMatrix, y: TropVector) -> BipartiteGraph:
    """Per row, the columns attaining min_j (a_ij + y_j)."""
    require_row_supports(A)
    if len(y) != A.n or not y.is_finite():
        raise DomainError("BAD_POINT", "y must be a finite vector of length n")
    edges = []
    for i in range(1, A.d + 1):
        best = trop_sum(A.entry(i, j) + y.entry(j) for j in range(1, A.n + 1))
        for j in range(1, A.n + 1):
            if A.entry(i, j) is not INF and A.entry(i, j) + y.entry(j) == best:
                edges.append((i, j))
    return BipartiteGraph(A.d, A.n, edges)


# ---------------------------------------------------------------------------
# Cell systems and canonicalization
# ---------------------------------------------------------------------------

def _cell_constraints(A: TropMatrix, tau):
    """Equalities tying the tau rows of each column, and the weak 'other
    rows lose' inequalities (as (coeffs, rhs, edge) triples)."""
    d = A.d
    eqs = []
    others = []
    by_col = {}
    for i, j in tau:
        by_col.setdefault(j, []).append(i)
    for j in range(1, A.n + 1):
        rows_in = sorted(by_col.get(j, ()))
        if not rows_in:
            raise DomainError("BAD_COVECTOR", f"column {j} uncovered")
        i0 = rows_in[0]
        a0 = A.entry(i0, j)
        for i in rows_in[1:]:
            co = [ZERO] * d
            co[i0 - 1] += 1
            co[i - 1] -= 1
            eqs.append((tuple(co), A.entry(i, j) - a0))
        for i in sorted(A.col_support(j)):
            if i in rows_in:
                continue
            co = [ZERO] * d
            co[i - 1] += 1
            co[i0 - 1] -= 1
            others.append((tuple(co), a0 - A.entry(i, j), (i, j)))
    return eqs, others


def _canonical_covector(A: TropMatrix, tau):
    """The covector of a relative-interior point of the closed cell of tau.

    Returns (edge frozenset, witness point) or None if the cell is empty.
    """
    tau = frozenset(tau)
    eqs, others = _cell_constraints(A, tau)
    strict_all = LinearConstraintSystem(
        A.d, eqs=eqs, gts=[(c, b) for c, b, _ in others]
    )
    x = strict_feasible(strict_all)
    if x is not INFEASIBLE:
        return tau, x
    weak = LinearConstraintSystem(A.d, eqs=eqs, ges=[(c, b) for c, b, _ in others])
    if strict_feasible(weak) is INFEASIBLE:
        return None
    forced = set()
    for k, (c, b, edge) in enumerate(others):
        sys = LinearConstraintSystem(
            A.d,
            eqs=eqs,
            ges=[(cc, bb) for kk, (cc, bb, _) in enumerate(others) if kk != k],
            gts=[(c, b)],
        )
        if strict_feasible(sys) is INFEASIBLE:
            forced.add(edge)
    tau2 = tau | forced
    eqs2, others2 = _cell_constraints(A, tau2)
    x = strict_feasible(
        LinearConstraintSystem(A.d, eqs=eqs2, gts=[(c, b) for c, b, _ in others2])
    )
    assert x is not INFEASIBLE
    return frozenset(tau2), x


class Cell:
    """One face of TC(A): its covector and gauge-fixed polyhedron."""

    __slots__ = ("covector", "polyhedron", "dim", "point")

    def __init__(self, covector, polyhedron, point):
        self.covector = covector
        self.polyhedron = polyhedron
        self.dim = polyhedron.affine_dimension()
        self.point = point  # gauge-fixed relative-interior point

    def __repr__(self):
        return "Cell(dim=%d, %s)" % (self.dim, self.covector.tuple_view())


class ArrangementComplex:
    """TC(A): every covector of the arrangement with its exact cell."""

    __slots__ = ("matrix", "cells", "_by_key")

    def __init__(self, matrix, cells):
        self.matrix = matrix
        self.cells = sorted(cells, key=lambda c: c.covector.key())
        self._by_key = {c.covector.key(): c for c in self.cells}

    def covectors(self):
        return [c.covector for c in self.cells]

    def __contains__(self, covector):
        return covector.key() in self._by_key

    def cell_of(self, covector):
        return self._by_key.get(covector.key())

    def __len__(self):
        return len(self.cells)

    def __repr__(self):
        return "ArrangementComplex(%d cells)" % len(self.cells)


_TC_CACHE = {}


def enumerate_covectors(A: TropMatrix, budget=5000) -> ArrangementComplex:
    """TC(A), exactly.  Results are cached per matrix."""
    if A in _TC_CACHE:
        return _TC_CACHE[A]
    require_column_supports(A)
    if A.d > 4 or A.n > 8:
        raise DomainError("BUDGET_EXCEEDED", "arrangement limited to d <= 4, n <= 8")

    col_rows = [sorted(A.col_support(j)) for j in range(1, A.n + 1)]
    found = {}
    for choice in itertools.product(*[
        [(i, j + 1) for i in rows] for j, rows in enumerate(col_rows)
    ]):
        res = _canonical_covector(A, choice)
        if res is not None and res[0] not in found:
            found[res[0]] = res[1]

    # close under pairwise unions (intersections of closed cells)
    seen_candidates = set(found)
    queue = [(t1, t2) for t1 in found for t2 in found if t1 != t2]
    while queue:
        t1, t2 = queue.pop()
        u = t1 | t2
        if u in seen_candidates:
            continue
        seen_candidates.add(u)
        res = _canonical_covector(A, u)
        if res is None:
            continue
        tau, x = res
        seen_candidates.add(tau)
        if tau not in found:
            found[tau] = x
            if len(found) > budget:
                raise DomainError("BUDGET_EXCEEDED", "too many covectors")
            queue.extend((tau, t) for t in found if t != tau)

    cells = []
    for tau, x in found.items():
        eqs, others = _cell_constraints(A, tau)
        gauge = [ZERO] * A.d
        gauge[0] = Fraction(1)
        poly = Polyhedron(
            A.d,
            eqs=[(tuple(gauge), ZERO)] + eqs,
            ineqs=[(c, b) for c, b, _ in others],
        )
        shift = x[0]
        point = tuple(v - shift for v in x)
        cells.append(Cell(Covector(BipartiteGraph(A.d, A.n, tau)), poly, point))
    complex_ = ArrangementComplex(A, cells)
    _TC_CACHE[A] = complex_
    return complex_


def in_B(A: TropMatrix, covector: Covector) -> bool:
    """Every row of the covector has degree >= 1."""
    return all(covector.graph.J(i) for i in range(1, A.d + 1))


def in_K(A: TropMatrix, covector: Covector) -> bool:
    """The dragon marriage condition |J_I| >= |I| + 1 for nonempty I."""
    return dragon_condition(covector.graph)


def is_trop_singular(B: TropMatrix) -> bool:
    """Minimum of the tropical permutation expansion is ∞ or attained twice."""
    if B.d != B.n:
        raise DomainError("BAD_SHAPE", "tropical singularity requires a square matrix")
    best, count = INF, 0
    for perm in itertools.permutations(range(1, B.n + 1)):
        w = ZERO
        for i, j in enumerate(perm, start=1):
            w = w + B.entry(i, j)
        if w is INF:
            continue
        if w < best:
            best, count = w, 1
        elif w == best:
            count += 1
    return best is INF or count >= 2


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def covector_to_json(covector: Covector):
    return [list(I) for I in covector.tuple_view()]


def complex_to_json(tc: ArrangementComplex):
    return [
        {"covector": covector_to_json(c.covector), "dim": c.dim} for c in tc.cells
    ]
