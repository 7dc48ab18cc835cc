"""Bipartite combinatorics on [d] ⊔ [n].

Graphs, matchings, optimal matchings under exact min-plus weights, matching
multifields and their coherence, support-set predicates, transversal
matroids, and the first-Betti-number dimension formula.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .core import INF, DomainError, TropMatrix
from .geom import INFEASIBLE, LinearConstraintSystem, strict_feasible

ZERO = Fraction(0)


class BipartiteGraph:
    """A bipartite graph with left vertices [d] and right vertices [n]."""

    __slots__ = ("d", "n", "edges")

    def __init__(self, d, n, edges):
        edges = frozenset((int(i), int(j)) for i, j in edges)
        for i, j in edges:
            if not (1 <= i <= d and 1 <= j <= n):
                raise DomainError("BAD_EDGE", f"edge ({i},{j}) outside [{d}]x[{n}]")
        self.d = d
        self.n = n
        self.edges = edges

    @classmethod
    def from_support(cls, A: TropMatrix):
        return cls(A.d, A.n, A.support())

    def J(self, i):
        """Right neighbors of left vertex i."""
        return frozenset(j for a, j in self.edges if a == i)

    def I(self, j):
        """Left neighbors of right vertex j."""
        return frozenset(a for a, b in self.edges if b == j)

    def J_of(self, I):
        """Joint right neighborhood of a set of left vertices."""
        return frozenset(j for a, j in self.edges if a in I)

    def I_of(self, Js):
        return frozenset(a for a, j in self.edges if j in Js)

    def sorted_edges(self):
        return tuple(sorted(self.edges))

    def is_connected(self):
        """Connected over all d + n vertices (isolated vertices disconnect)."""
        verts = [("L", i) for i in range(1, self.d + 1)] + [
            ("R", j) for j in range(1, self.n + 1)
        ]
        if not verts:
            return True
        adj = {v: set() for v in verts}
        for i, j in self.edges:
            adj[("L", i)].add(("R", j))
            adj[("R", j)].add(("L", i))
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(verts)

    def is_tree(self):
        nonisolated = {("L", i) for i, _ in self.edges} | {("R", j) for _, j in self.edges}
        return self.is_connected() and len(self.edges) == self.d + self.n - 1 and len(
            nonisolated
        ) == self.d + self.n

    def __eq__(self, other):
        return (
            isinstance(other, BipartiteGraph)
            and (self.d, self.n, self.edges) == (other.d, other.n, other.edges)
        )

    def __hash__(self):
        return hash((self.d, self.n, self.edges))

    def __repr__(self):
        return "BipartiteGraph(%d, %d, %s)" % (self.d, self.n, sorted(self.edges))


class Matching:
    """A matching covering every left vertex: edges {(1,j_1),...,(d,j_d)}."""

    __slots__ = ("cols",)

    def __init__(self, cols):
        cols = tuple(int(c) for c in cols)
        if len(set(cols)) != len(cols):
            raise DomainError("BAD_MATCHING", "repeated right endpoint")
        self.cols = cols

    @property
    def edges(self):
        return frozenset((i + 1, j) for i, j in enumerate(self.cols))

    @property
    def columns(self):
        return frozenset(self.cols)

    def weight(self, A: TropMatrix):
        total = ZERO
        for i, j in enumerate(self.cols):
            total = total + A.entry(i + 1, j)
        return total

    def key(self):
        return tuple(sorted(self.edges))

    def __eq__(self, other):
        return isinstance(other, Matching) and self.cols == other.cols

    def __hash__(self):
        return hash(self.cols)

    def __repr__(self):
        return "Matching(%s)" % (self.cols,)


class MatchingMultifield:
    """A choice of a nonempty set of matchings for each column d-subset."""

    __slots__ = ("d", "n", "choices")

    def __init__(self, d, n, choices):
        self.d = d
        self.n = n
        self.choices = {}
        for J in itertools.combinations(range(1, n + 1), d):
            key = frozenset(J)
            ms = frozenset(choices[key])
            if not ms:
                raise DomainError("EMPTY_CHOICE", f"no matching chosen on {sorted(J)}")
            for m in ms:
                if m.columns != key:
                    raise DomainError(
                        "BAD_CHOICE", f"matching {m} does not cover {sorted(J)}"
                    )
            self.choices[key] = ms

    def __getitem__(self, J):
        return self.choices[frozenset(J)]

    def support(self):
        """Union of the edges of all chosen matchings."""
        out = set()
        for ms in self.choices.values():
            for m in ms:
                out |= m.edges
        return frozenset(out)

    def __eq__(self, other):
        return (
            isinstance(other, MatchingMultifield)
            and (self.d, self.n) == (other.d, other.n)
            and self.choices == other.choices
        )

    def __hash__(self):
        return hash((self.d, self.n, tuple(sorted(
            (tuple(sorted(J)), tuple(sorted(m.cols for m in ms)))
            for J, ms in self.choices.items()
        ))))

    def __repr__(self):
        return "MatchingMultifield(d=%d, n=%d)" % (self.d, self.n)


class Matroid:
    """A matroid on [n] given by its explicit (possibly empty) basis list."""

    __slots__ = ("n", "rank_value", "bases")

    def __init__(self, n, rank, bases):
        self.n = n
        self.rank_value = rank
        self.bases = frozenset(frozenset(b) for b in bases)
        for b in self.bases:
            if len(b) != rank or not all(1 <= e <= n for e in b):
                raise DomainError("BAD_BASIS", f"{sorted(b)} is not a {rank}-subset of [{n}]")

    def is_empty(self):
        return not self.bases

    def loops(self):
        """Elements lying in no basis."""
        if self.is_empty():
            return frozenset(range(1, self.n + 1))
        used = frozenset().union(*self.bases)
        return frozenset(range(1, self.n + 1)) - used

    def coloops(self):
        """Elements lying in every basis."""
        if self.is_empty():
            return frozenset()
        return frozenset.intersection(*self.bases)

    def rank(self, S):
        S = frozenset(S)
        if self.is_empty():
            return 0
        return max(len(b & S) for b in self.bases)

    def is_connected(self):
        """No separation [n] = S ⊔ T with rank(S) + rank(T) = rank([n])."""
        if self.is_empty():
            return False
        ground = list(range(1, self.n + 1))
        full = self.rank(ground)
        for r in range(1, self.n // 2 + 1):
            for S in itertools.combinations(ground, r):
                S = frozenset(S)
                T = frozenset(ground) - S
                if self.rank(S) + self.rank(T) == full:
                    return False
        return True

    def canonical(self):
        return tuple(sorted(tuple(sorted(b)) for b in self.bases))

    def __eq__(self, other):
        return isinstance(other, Matroid) and (self.n, self.bases) == (other.n, other.bases)

    def __hash__(self):
        return hash((self.n, self.bases))

    def __repr__(self):
        return "Matroid(n=%d, rank=%d, %d bases)" % (self.n, self.rank_value, len(self.bases))


def uniform_matroid(d, n):
    return Matroid(n, d, itertools.combinations(range(1, n + 1), d))


# ---------------------------------------------------------------------------
# Optimal matchings and multifields
# ---------------------------------------------------------------------------

def min_matchings(A: TropMatrix, J):
    """Optimal-assignment value and all optimal matchings on column set J.

    Returns (value, argmins); value is INF and argmins empty when the
    support of A admits no matching on J.  Subset dynamic programming over
    the 2^d column subsets.
    """
    Jt = tuple(sorted(set(J)))
    if len(Jt) != A.d:
        raise DomainError("BAD_SUBSET", "J must be a d-subset of [n]")
    d = A.d
    full = (1 << d) - 1
    dp = {0: ZERO}
    for mask in range(1, full + 1):
        k = bin(mask).count("1")  # rows 1..k are matched
        best = None
        for t in range(d):
            if mask >> t & 1:
                a = A.entry(k, Jt[t])
                if a is INF:
                    continue
                sub = dp.get(mask ^ (1 << t))
                if sub is None:
                    continue
                v = sub + a
                if best is None or v < best:
                    best = v
        if best is not None:
            dp[mask] = best
    if full not in dp:
        return INF, frozenset()

    def collect(mask, k):
        if k == 0:
            return [()]
        out = []
        for t in range(d):
            if mask >> t & 1:
                a = A.entry(k, Jt[t])
                sub = mask ^ (1 << t)
                if a is not INF and sub in dp and dp[sub] + a == dp[mask]:
                    for tail in collect(sub, k - 1):
                        out.append(tail + (Jt[t],))
        return out

    argmins = frozenset(Matching(cols) for cols in collect(full, d))
    return dp[full], argmins


def matching_multifield(A: TropMatrix) -> MatchingMultifield:
    """Λ(A): the optimal matchings on every column d-subset."""
    choices = {}
    for J in itertools.combinations(range(1, A.n + 1), A.d):
        value, argmins = min_matchings(A, J)
        if value is INF:
            raise DomainError(
                "NO_MATCHING_ON_SUBSET", f"support admits no matching on {list(J)}"
            )
        choices[frozenset(J)] = argmins
    return MatchingMultifield(A.d, A.n, choices)


def _all_matchings(G: BipartiteGraph, J):
    """Every matching on column set J supported on G."""
    Jt = tuple(sorted(J))
    out = []

    def rec(i, used, cols):
        if i > G.d:
            out.append(Matching(cols))
            return
        for j in Jt:
            if j not in used and (i, j) in G.edges:
                rec(i + 1, used | {j}, cols + (j,))

    rec(1, frozenset(), ())
    return out


def is_coherent(multifield: MatchingMultifield):
    """A witness matrix A with matching_multifield(A) = Λ, or None.

    Feasibility over one unknown weight per support edge: chosen matchings
    on each J tie, and beat every other supported matching on J strictly.
    """
    support = sorted(multifield.support())
    index = {e: k for k, e in enumerate(support)}
    G = BipartiteGraph(multifield.d, multifield.n, support)
    dim = len(support)

    def weight_vec(m: Matching):
        v = [ZERO] * dim
        for e in m.edges:
            v[index[e]] += 1
        return v

    eqs, gts = [], []
    for J in sorted(multifield.choices, key=lambda s: tuple(sorted(s))):
        chosen = sorted(multifield[J], key=lambda m: m.key())
        ref = weight_vec(chosen[0])
        for m in chosen[1:]:
            eqs.append((tuple(a - b for a, b in zip(weight_vec(m), ref)), ZERO))
        for m in _all_matchings(G, J):
            if m not in multifield[J]:
                gts.append((tuple(a - b for a, b in zip(weight_vec(m), ref)), ZERO))

    witness = strict_feasible(LinearConstraintSystem(dim, eqs=eqs, gts=gts))
    if witness is INFEASIBLE:
        return None

    entries = [[INF] * multifield.n for _ in range(multifield.d)]
    for (i, j), k in index.items():
        entries[i - 1][j - 1] = witness[k]
    # gauge: subtract row minima for a reproducible witness
    for row in entries:
        finite = [v for v in row if v is not INF]
        m = min(finite)
        for j, v in enumerate(row):
            if v is not INF:
                row[j] = v - m
    A = TropMatrix(entries)
    if matching_multifield(A) != multifield:  # pragma: no cover - sanity
        raise AssertionError("coherence witness failed to reproduce the multifield")
    return A


# ---------------------------------------------------------------------------
# Support sets
# ---------------------------------------------------------------------------

def _nonempty_left_subsets(d):
    for r in range(1, d + 1):
        yield from itertools.combinations(range(1, d + 1), r)


def hall_surplus_check(G: BipartiteGraph) -> bool:
    """|J_I| >= n - d + |I| for every nonempty I ⊆ [d]."""
    for I in _nonempty_left_subsets(G.d):
        if len(G.J_of(I)) < G.n - G.d + len(I):
            return False
    return True


def is_support_set(G: BipartiteGraph) -> bool:
    """Surplus Hall condition plus |J_i| = n - d + 1 for every row."""
    if not hall_surplus_check(G):
        return False
    return all(len(G.J(i)) == G.n - G.d + 1 for i in range(1, G.d + 1))


def enumerate_support_sets(d, n, budget=10 ** 6):
    """All support sets on [d] ⊔ [n], lexicographically ordered by edge list."""
    row_choices = list(itertools.combinations(range(1, n + 1), n - d + 1))
    if len(row_choices) ** d > budget:
        raise DomainError("BUDGET_EXCEEDED", "support-set enumeration too large")
    out = []
    for rows in itertools.product(row_choices, repeat=d):
        edges = [(i + 1, j) for i, cols in enumerate(rows) for j in cols]
        G = BipartiteGraph(d, n, edges)
        if hall_surplus_check(G):
            out.append(G)
    out.sort(key=lambda g: g.sorted_edges())
    return out


# ---------------------------------------------------------------------------
# Transversal matroids
# ---------------------------------------------------------------------------

def _max_matching_size(G: BipartiteGraph, cols):
    """Maximum matching between [d] and ``cols`` inside G (augmenting paths)."""
    cols = frozenset(cols)
    owner = {}

    def augment(i, seen):
        for j in sorted(G.J(i) & cols):
            if j in seen:
                continue
            seen.add(j)
            if j not in owner or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    size = 0
    for i in range(1, G.d + 1):
        if augment(i, set()):
            size += 1
    return size


def transversal_matroid(G: BipartiteGraph) -> Matroid:
    """Bases are the column d-subsets fully matchable to [d] inside G."""
    bases = [
        J
        for J in itertools.combinations(range(1, G.n + 1), G.d)
        if _max_matching_size(G, J) == G.d
    ]
    return Matroid(G.n, G.d, bases)


def transversal_rank(G: BipartiteGraph, S) -> int:
    """min over I ⊆ [d] of |S ∩ J_I| + d − |I| (the deficiency formula)."""
    S = frozenset(S)
    best = G.d  # I = ∅
    for I in _nonempty_left_subsets(G.d):
        v = len(S & G.J_of(I)) + G.d - len(I)
        if v < best:
            best = v
    return best


# ---------------------------------------------------------------------------
# Dragon marriage conditions
# ---------------------------------------------------------------------------

def dragon_condition(G: BipartiteGraph) -> bool:
    """|J_I| >= |I| + 1 for every nonempty I ⊆ [d] (row-wise)."""
    for I in _nonempty_left_subsets(G.d):
        if len(G.J_of(I)) < len(I) + 1:
            return False
    return True


def colwise_dragon_condition(G: BipartiteGraph, J) -> bool:
    """|I_{J'}| >= |J'| + 1 for every nonempty J' ⊆ J (column-wise)."""
    J = sorted(set(J))
    for r in range(1, len(J) + 1):
        for Jp in itertools.combinations(J, r):
            if len(G.I_of(Jp)) < r + 1:
                return False
    return True


# ---------------------------------------------------------------------------
# Spanning trees and the Betti-number dimension formula
# ---------------------------------------------------------------------------

def _edge_in_some_matching(G: BipartiteGraph, edge):
    i, j = edge
    rest_rows = [r for r in range(1, G.d + 1) if r != i]
    sub = BipartiteGraph(
        G.d, G.n, [(a, b) for a, b in G.edges if a != i and b != j]
    )
    # match the remaining d-1 rows avoiding column j
    owner = {}

    def augment(row, seen):
        for col in sorted(sub.J(row)):
            if col in seen:
                continue
            seen.add(col)
            if col not in owner or augment(owner[col], seen):
                owner[col] = row
                return True
        return False

    return all(augment(r, set()) for r in rest_rows)


def spanning_tree_no_left_leaves(G: BipartiteGraph, budget=10 ** 5) -> BipartiteGraph:
    """A spanning tree of G whose left vertices all have degree >= 2.

    Exists whenever d < n, G is connected and every edge lies in a matching;
    found here by bounded exhaustive search over edge subsets.
    """
    if not G.d < G.n:
        raise DomainError("BAD_SHAPE", "requires d < n")
    if not G.is_connected():
        raise DomainError("NOT_CONNECTED", "graph must be connected")
    for e in sorted(G.edges):
        if not _edge_in_some_matching(G, e):
            raise DomainError("EDGE_NOT_MATCHABLE", f"edge {e} lies in no matching")
    edges = sorted(G.edges)
    need = G.d + G.n - 1
    import math

    if math.comb(len(edges), need) > budget:
        raise DomainError("BUDGET_EXCEEDED", "spanning-tree search too large")
    for subset in itertools.combinations(edges, need):
        T = BipartiteGraph(G.d, G.n, subset)
        if not T.is_connected():
            continue
        if all(len(T.J(i)) >= 2 for i in range(1, G.d + 1)):
            return T
    raise DomainError("NO_SUCH_TREE", "no spanning tree without left leaves")


def support_face_dimension(G: BipartiteGraph) -> int:
    """First Betti number h_1 = E − V + C over the non-isolated vertices."""
    verts = {("L", i) for i, _ in G.edges} | {("R", j) for _, j in G.edges}
    adj = {v: set() for v in verts}
    for i, j in G.edges:
        adj[("L", i)].add(("R", j))
        adj[("R", j)].add(("L", i))
    seen = set()
    components = 0
    for v in verts:
        if v in seen:
            continue
        components += 1
        stack = [v]
        seen.add(v)
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return len(G.edges) - len(verts) + components


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def graph_to_json(G: BipartiteGraph):
    return {"d": G.d, "n": G.n, "edges": [list(e) for e in G.sorted_edges()]}


def graph_from_json(obj) -> BipartiteGraph:
    if not isinstance(obj, dict) or not {"d", "n", "edges"} <= set(obj):
        raise DomainError("BAD_GRAPH_JSON", "expected {'d','n','edges'}")
    return BipartiteGraph(obj["d"], obj["n"], [tuple(e) for e in obj["edges"]])


def matroid_to_json(M: Matroid):
    return {"n": M.n, "rank": M.rank_value, "bases": [list(b) for b in M.canonical()]}


def multifield_to_json(mf: MatchingMultifield):
    out = {}
    for J, ms in mf.choices.items():
        key = ",".join(str(j) for j in sorted(J))
        out[key] = sorted([list(e) for e in m.key()] for m in ms)
    return {"d": mf.d, "n": mf.n, "choices": out}


def multifield_from_json(obj) -> MatchingMultifield:
    if not isinstance(obj, dict) or not {"d", "n", "choices"} <= set(obj):
        raise DomainError("BAD_MULTIFIELD_JSON", "expected {'d','n','choices'}")
    d, n = obj["d"], obj["n"]
    choices = {}
    for key, matchings in obj["choices"].items():
        J = frozenset(int(t) for t in key.split(","))
        ms = set()
        for edge_list in matchings:
            cols = [0] * d
            for i, j in edge_list:
                cols[i - 1] = j
            ms.add(Matching(cols))
        choices[J] = frozenset(ms)
    return MatchingMultifield(d, n, choices)
