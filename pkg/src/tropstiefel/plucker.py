"""Tropical Plücker vectors.

The Stiefel map (vectors of tropical maximal minors), the three-term
Plücker relations, duality, stable intersection and union, underlying
matroids, cocircuits and matrix recovery from a support set.
"""

from __future__ import annotations

import itertools

from .core import INF, DomainError, TropMatrix, TropVector, scalar, scalar_str, trop_sum
from .bipartite import (
    BipartiteGraph,
    Matroid,
    is_support_set,
    min_matchings,
    uniform_matroid,
)


def _subsets(n, d):
    return itertools.combinations(range(1, n + 1), d)


class PluckerVector:
    """A map from d-subsets of [n] to scalars, not identically infinite."""

    __slots__ = ("n", "d", "values")

    def __init__(self, n, d, values):
        self.n = n
        self.d = d
        vals = {}
        for J in _subsets(n, d):
            key = frozenset(J)
            if key not in values:
                raise DomainError("MISSING_COORDINATE", f"no value for {list(J)}")
            vals[key] = scalar(values[key])
        self.values = vals
        if all(v is INF for v in vals.values()):
            raise DomainError("ALL_INF", "Plücker vectors may not be identically ∞")

    def __getitem__(self, J):
        return self.values[frozenset(J)]

    def support(self):
        return frozenset(J for J, v in self.values.items() if v is not INF)

    def canonical(self):
        """Subtract the value at the lexicographically least finite coordinate."""
        least = min(
            (tuple(sorted(J)) for J, v in self.values.items() if v is not INF)
        )
        base = self.values[frozenset(least)]
        return PluckerVector(
            self.n,
            self.d,
            {J: (v - base if v is not INF else INF) for J, v in self.values.items()},
        )

    def proj_eq(self, other) -> bool:
        if (self.n, self.d) != (other.n, other.d):
            return False
        return self.canonical().values == other.canonical().values

    def __eq__(self, other):
        return (
            isinstance(other, PluckerVector)
            and (self.n, self.d) == (other.n, other.d)
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.n, self.d, tuple(sorted(
            (tuple(sorted(J)), v) for J, v in self.values.items()
        ))))

    def __repr__(self):
        return "PluckerVector(n=%d, d=%d)" % (self.n, self.d)


def stiefel_map(A: TropMatrix) -> PluckerVector:
    """π(A): the optimal-assignment value on every column d-subset."""
    values = {}
    for J in _subsets(A.n, A.d):
        values[frozenset(J)] = min_matchings(A, J)[0]
    if all(v is INF for v in values.values()):
        raise DomainError("NO_MATCHING_IN_SUPPORT", "support contains no matching")
    return PluckerVector(A.n, A.d, values)


def check_plucker(p: PluckerVector) -> bool:
    """Three-term relations: for all S (size d−1) and T (size d+1) the
    minimum of p_{S∪i} + p_{T−i} over i ∈ T∖S is ∞ or attained twice."""
    if p.d == 0:
        return True  # no relations in rank 0
    ground = range(1, p.n + 1)
    for S in itertools.combinations(ground, p.d - 1):
        Sset = frozenset(S)
        for T in itertools.combinations(ground, p.d + 1):
            Tset = frozenset(T)
            terms = [
                p[Sset | {i}] + p[Tset - {i}]
                for i in sorted(Tset - Sset)
            ]
            best = trop_sum(terms)
            if best is not INF and sum(1 for t in terms if t == best) < 2:
                return False
    return True


def dual(p: PluckerVector) -> PluckerVector:
    """p*_S = p_{[n]∖S}, a vector of rank n − d."""
    ground = frozenset(range(1, p.n + 1))
    values = {frozenset(S): p[ground - frozenset(S)] for S in _subsets(p.n, p.n - p.d)}
    return PluckerVector(p.n, p.n - p.d, values)


def stable_intersection(p: PluckerVector, q: PluckerVector) -> PluckerVector:
    """r_T = min over R ∩ S = T of p_R + q_S, of rank d + e − n."""
    if p.n != q.n or p.d + q.d < p.n:
        raise DomainError("RANK_CONDITION", "requires d + e >= n on a common [n]")
    n = p.n
    rank = p.d + q.d - n
    ground = frozenset(range(1, n + 1))
    values = {}
    for T in _subsets(n, rank):
        Tset = frozenset(T)
        rest = sorted(ground - Tset)
        terms = []
        for extra in itertools.combinations(rest, p.d - rank):
            R = Tset | frozenset(extra)
            S = Tset | (ground - R)
            terms.append(p[R] + q[S])
        values[Tset] = trop_sum(terms)
    return PluckerVector(n, rank, values)


def stable_union(p: PluckerVector, q: PluckerVector) -> PluckerVector:
    """r_T = min over R ⊔ S = T of p_R + q_S, of rank d + e."""
    if p.n != q.n or p.d + q.d > p.n:
        raise DomainError("RANK_CONDITION", "requires d + e <= n on a common [n]")
    n = p.n
    rank = p.d + q.d
    values = {}
    for T in _subsets(n, rank):
        Tset = frozenset(T)
        terms = []
        for R in itertools.combinations(sorted(Tset), p.d):
            Rset = frozenset(R)
            terms.append(p[Rset] + q[Tset - Rset])
        values[Tset] = trop_sum(terms)
    return PluckerVector(n, rank, values)


def row_vector(x: TropVector) -> PluckerVector:
    """A point of the torus as a rank-1 Plücker vector."""
    return PluckerVector(len(x), 1, {frozenset({j}): x.entry(j) for j in range(1, len(x) + 1)})


def rank_zero(n) -> PluckerVector:
    return PluckerVector(n, 0, {frozenset(): 0})


def underlying_matroid(p: PluckerVector) -> Matroid:
    return Matroid(p.n, p.d, [J for J in p.support()])


def cocircuit(p: PluckerVector, S) -> TropVector:
    """c_j = p_{S∪j} off S and ∞ on S; a minimal-support vector of L(p)."""
    S = frozenset(S)
    if len(S) != p.d - 1:
        raise DomainError("BAD_SUBSET", "S must have size d-1")
    entries = []
    for j in range(1, p.n + 1):
        entries.append(INF if j in S else p[S | {j}])
    if all(v is INF for v in entries):
        raise DomainError("ALL_INF", "every extension of S is infinite")
    return TropVector(entries)


def recover_matrix(p: PluckerVector, support: BipartiteGraph) -> TropMatrix:
    """Rebuild a matrix from π(A) and a support set: rows are cocircuits.

    Row i is cocircuit(p, [n] ∖ J_i); when p = stiefel_map(A) for A supported
    on the support set, the result equals A up to one constant per row.
    """
    if not is_support_set(support):
        raise DomainError("NOT_SUPPORT_SET", "second argument must be a support set")
    if underlying_matroid(p) != uniform_matroid(p.d, p.n):
        raise DomainError("NOT_UNIFORM", "underlying matroid must be uniform")
    ground = frozenset(range(1, p.n + 1))
    rows = []
    for i in range(1, support.d + 1):
        c = cocircuit(p, ground - support.J(i))
        rows.append(c.entries)
    return TropMatrix(rows)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def plucker_to_json(p: PluckerVector):
    values = {
        ",".join(str(j) for j in sorted(J)): scalar_str(v)
        for J, v in p.values.items()
    }
    return {"d": p.d, "n": p.n, "values": values}


def plucker_from_json(obj) -> PluckerVector:
    if not isinstance(obj, dict) or not {"d", "n", "values"} <= set(obj):
        raise DomainError("BAD_PLUCKER_JSON", "expected {'d','n','values'}")
    values = {}
    for key, v in obj["values"].items():
        J = frozenset(int(t) for t in key.split(",")) if key else frozenset()
        values[J] = scalar(v)
    return PluckerVector(obj["n"], obj["d"], values)
