"""Stiefel tropical linear spaces L(A).

Membership by circuit minima, by selected matroids, and by an explicit
covector decomposition with certificates; boundedness tests; the bounded
complex (the image of the dragon-condition subcomplex K(A)); and the rank-2
caterpillar predicate.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .core import (
    INF,
    DomainError,
    TropMatrix,
    TropVector,
    trop_sum,
    vec_mat_mul,
)
from .geom import INFEASIBLE, LinearConstraintSystem, Polyhedron, eliminate_vars, strict_feasible
from .bipartite import colwise_dragon_condition, transversal_matroid, uniform_matroid
from .bipartite import BipartiteGraph
from .plucker import PluckerVector, stiefel_map, underlying_matroid
from .arrangement import Covector, enumerate_covectors, in_B, in_K
from .subdivision import select_matroid

ZERO = Fraction(0)
ONE = Fraction(1)


def contains(p: PluckerVector, y: TropVector) -> bool:
    """Circuit membership: for every (d+1)-subset J the minimum of
    p_{J−j} + y_j over j ∈ J is ∞ or attained at least twice."""
    if len(y) != p.n:
        raise DomainError("LENGTH_MISMATCH", "y must have length n")
    for J in itertools.combinations(range(1, p.n + 1), p.d + 1):
        Jset = frozenset(J)
        terms = [p[Jset - {j}] + y.entry(j) for j in J]
        best = trop_sum(terms)
        if best is not INF and sum(1 for t in terms if t == best) < 2:
            return False
    return True


def contains_via_matroid(p: PluckerVector, y: TropVector) -> bool:
    """Membership via the selected matroid: M_y must be loopless."""
    return not select_matroid(p, y).matroid.loops()


class DecompositionCertificate:
    """A witness y ∈ (F ⊙ A) + R_{>=0}{e_j : j ∈ J} with positive J-slack."""

    __slots__ = ("covector", "x", "J", "slack")

    def __init__(self, covector: Covector, x: TropVector, J, slack: TropVector):
        self.covector = covector
        self.x = x
        self.J = frozenset(J)
        self.slack = slack

    def __repr__(self):
        return "DecompositionCertificate(J=%s, x=%r)" % (sorted(self.J), self.x)


def _subsets_upto(n, maxsize):
    out = []
    for r in range(0, maxsize + 1):
        out.extend(itertools.combinations(range(1, n + 1), r))
    out.sort()
    return out


def decompose(A: TropMatrix, y: TropVector):
    """The lexicographically first covector certificate for y ∈ L(A), or
    None when y is not in the linear space.

    Searches covectors F of TC(A) covering every row, and column subsets J
    satisfying the column-wise dragon condition, for exact feasibility of
    y ∈ (F ⊙ A) + R_{>=0}{e_j : j ∈ J} with zero slack off J.
    """
    if len(y) != A.n or not y.is_finite():
        raise DomainError("BAD_POINT", "y must be finite of length n")
    tc = enumerate_covectors(A)
    stiefel_map(A)  # raises when the support has no matching at all
    subsets = _subsets_upto(A.n, max(A.d - 1, 0))
    for cell in tc.cells:
        F = cell.covector
        if not in_B(A, F):
            continue
        eqs, others = _cell_system_parts(A, F.edges)
        reps = _reps_with_entries(A, F.edges)
        # prune: some x in the closed cell must satisfy x ⊙ A <= y at all
        relaxed = list(others)
        for j, (i0, a0) in reps.items():
            co = [ZERO] * A.d
            co[i0 - 1] = -ONE
            relaxed.append((tuple(co), a0 - y.entry(j)))
        if strict_feasible(LinearConstraintSystem(A.d, eqs=eqs, ges=relaxed)) is INFEASIBLE:
            continue
        for J in subsets:
            Jset = frozenset(J)
            if not colwise_dragon_condition(F.graph, Jset):
                continue
            ges = list(others)
            sys_eqs = list(eqs)
            gts = []
            ok = True
            for j, (i0, a0) in reps.items():
                co = [ZERO] * A.d
                co[i0 - 1] = -ONE
                if j in Jset:
                    gts.append((tuple(co), a0 - y.entry(j)))  # y_j > x_{i0} + a0
                else:
                    sys_eqs.append((tuple(co), a0 - y.entry(j)))
            x = strict_feasible(
                LinearConstraintSystem(A.d, eqs=sys_eqs, ges=ges, gts=gts)
            )
            if x is INFEASIBLE:
                continue
            xv = TropVector(x)
            image = vec_mat_mul(xv, A)
            slack = TropVector(
                [y.entry(j) - image.entry(j) for j in range(1, A.n + 1)]
            )
            return DecompositionCertificate(F, xv, Jset, slack)
    return None


def _column_reps(tau):
    """One representative row per column of a covector edge set."""
    reps = {}
    for i, j in sorted(tau):
        if j not in reps:
            reps[j] = i
    return reps


def _cell_system_parts(A: TropMatrix, tau):
    """Cell equalities and weak inequalities over x, as coefficient rows."""
    from .arrangement import _cell_constraints

    eqs, others = _cell_constraints(A, tau)
    return eqs, [(c, b) for c, b, _ in others]


def _reps_with_entries(A, tau):
    return {j: (i, A.entry(i, j)) for j, i in _column_reps(tau).items()}


def bounded_membership(p: PluckerVector, y: TropVector) -> bool:
    """Is y in the bounded part of L(p)?  Requires a uniform underlying
    matroid; equivalent to membership plus a coloop-free selected matroid."""
    if underlying_matroid(p) != uniform_matroid(p.d, p.n):
        raise DomainError("NOT_UNIFORM", "underlying matroid must be uniform")
    if len(y) != p.n or not y.is_finite():
        raise DomainError("BAD_POINT", "y must be finite of length n")
    M = select_matroid(p, y).matroid
    return not M.loops() and not M.coloops()


def decomposition_cone(A: TropMatrix, tau, J) -> Polyhedron:
    """(F ⊙ A) + R_{>=0}{e_j : j ∈ J} as a polyhedron in the y-coordinates.

    F is the cell with covector edge set tau.  Built by eliminating the
    x-coordinates from the graph of the tropical map restricted to the cell.
    """
    tau = frozenset(tau)
    Jset = frozenset(J)
    d, n = A.d, A.n
    total = d + n
    eqs_x, others_x = _cell_system_parts(A, tau)
    eqs = [(a + (ZERO,) * n, b) for a, b in eqs_x]
    ineqs = [(a + (ZERO,) * n, b) for a, b in others_x]
    for i, j in sorted(tau):
        co = [ZERO] * total
        co[i - 1] = -ONE
        co[d + j - 1] = ONE
        row = (tuple(co), A.entry(i, j))  # y_j - x_i (cmp) a_ij
        if j in Jset:
            ineqs.append(row)
        else:
            eqs.append(row)
    res = eliminate_vars(total, eqs, ineqs, range(d))
    if res is None:
        return Polyhedron(n, eqs=[((ZERO,) * n, ONE)])
    return Polyhedron(n, *res)


def bounded_complex(A: TropMatrix):
    """The cells of K(A) with the exact image polyhedra of ⊙A in R^n.

    Image cells are gauge-fixed consistently with the arrangement cells
    (they are the images of cells with x_1 = 0)."""
    if transversal_matroid(BipartiteGraph.from_support(A)) != uniform_matroid(A.d, A.n):
        raise DomainError("NO_SUPPORT_SET", "support must contain a support set")
    tc = enumerate_covectors(A)
    out = []
    for cell in tc.cells:
        if not in_K(A, cell.covector):
            continue
        poly = _image_polyhedron(A, cell.covector.edges)
        out.append((cell.covector, poly))
    return out


def _image_polyhedron(A: TropMatrix, tau) -> Polyhedron:
    """Image of the gauge-fixed cell of tau under ⊙A, in y-coordinates.

    Every row is covered by tau (dragon condition), so each x_i substitutes
    as y_{j(i)} − a_{i,j(i)} exactly."""
    d, n = A.d, A.n
    anchor = {}
    for i, j in sorted(tau):
        if i not in anchor:
            anchor[i] = j
    if len(anchor) != d:
        raise DomainError("BAD_COVECTOR", "covector must cover every row")

    def to_y(coeffs_x, rhs):
        co = [ZERO] * n
        b = Fraction(rhs)
        for i, c in enumerate(coeffs_x, start=1):
            if c:
                j = anchor[i]
                co[j - 1] += c
                b += c * A.entry(i, j)  # x_i = y_j - a_ij
        return tuple(co), b

    eqs_x, others_x = _cell_system_parts(A, tau)
    eqs = [to_y(a, b) for a, b in eqs_x]
    ineqs = [to_y(a, b) for a, b in others_x]
    # defining relations y_j = x_i + a_ij for every covector edge
    for i, j in sorted(tau):
        co = [ZERO] * n
        b = A.entry(i, j) - A.entry(i, anchor[i])
        co[j - 1] += ONE
        co[anchor[i] - 1] -= ONE
        if any(c != 0 for c in co) or b != 0:
            eqs.append((tuple(co), b))
    # gauge x_1 = 0
    co = [ZERO] * n
    co[anchor[1] - 1] = ONE
    eqs.append((tuple(co), A.entry(1, anchor[1])))
    return Polyhedron(n, eqs=eqs, ineqs=ineqs)


def bounded_point_in_complex(A: TropMatrix, y: TropVector, complex_=None) -> bool:
    """Does y, suitably gauge-shifted, land in some bounded image cell?"""
    from .core import residuation

    if complex_ is None:
        complex_ = bounded_complex(A)
    x = residuation(y, A)
    shifted = y.shift(-x.entry(1))
    return any(poly.contains(shifted.entries) for _, poly in complex_)


def caterpillar_check(A: TropMatrix) -> bool:
    """For d = 2: is the bounded part of L(A) a point or a path?"""
    if A.d != 2:
        raise DomainError("BAD_SHAPE", "caterpillar check requires d = 2")
    cells = bounded_complex(A)
    tc = enumerate_covectors(A)
    dims = {cov.key(): tc.cell_of(cov).dim for cov, _ in cells}
    vertices = [cov for cov, _ in cells if dims[cov.key()] == 0]
    segments = [cov for cov, _ in cells if dims[cov.key()] == 1]
    if len(vertices) == 1 and not segments:
        return True  # single projective point
    if not vertices:
        # n = d: the bounded part is empty, vacuously a caterpillar
        return not segments
    degree = {v.key(): 0 for v in vertices}
    for e in segments:
        ends = [v for v in vertices if v.edges > e.edges]
        if len(ends) != 2:
            return False
        for v in ends:
            degree[v.key()] += 1
    if len(segments) != len(vertices) - 1:
        return False
    if any(deg > 2 for deg in degree.values()):
        return False
    # connectivity: a cycle-free graph with |V|-1 edges and max degree 2
    # on these counts is automatically a path if connected; check it.
    adj = {v.key(): set() for v in vertices}
    for e in segments:
        ends = [v.key() for v in vertices if v.edges > e.edges]
        adj[ends[0]].add(ends[1])
        adj[ends[1]].add(ends[0])
    start = vertices[0].key()
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vertices)


def certificate_to_json(cert: DecompositionCertificate):
    from .core import scalar_str

    return {
        "covector": [list(I) for I in cert.covector.tuple_view()],
        "x": [scalar_str(v) for v in cert.x.entries],
        "J": sorted(cert.J),
        "slack": [scalar_str(v) for v in cert.slack.entries],
    }
