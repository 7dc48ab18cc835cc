"""Exact rational linear algebra and small-scale polyhedral computation.

Feasibility of systems mixing equalities, weak and strict inequalities;
relative-interior points; affine dimension; face enumeration; variable
elimination.  Two engines sit underneath:

* a Bellman-Ford solver for difference-constraint systems (every constraint
  of the form x_i - x_j >= b, x_i >= b or -x_i >= b), which covers covector
  cells and tropical image membership systems and is fast;
* a two-phase exact simplex with Bland's rule over Fractions for everything
  else.

Strict inequalities are handled by one auxiliary slack ε: each strict
constraint a·x > b is relaxed to a·x >= b + ε and ε is maximized; the system
is strictly feasible iff the optimum has ε > 0.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class _Infeasible:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infeasible"

    def __bool__(self):
        return False


INFEASIBLE = _Infeasible()


def _vec(coeffs, dim):
    v = [ZERO] * dim
    for k, c in enumerate(coeffs):
        v[k] = Fraction(c)
    return tuple(v)


class LinearConstraintSystem:
    """Equalities a·x = b, weak inequalities a·x >= b, strict a·x > b."""

    __slots__ = ("dim", "eqs", "ges", "gts")

    def __init__(self, dim, eqs=(), ges=(), gts=()):
        self.dim = dim
        self.eqs = tuple((_vec(a, dim), Fraction(b)) for a, b in eqs)
        self.ges = tuple((_vec(a, dim), Fraction(b)) for a, b in ges)
        self.gts = tuple((_vec(a, dim), Fraction(b)) for a, b in gts)

    def satisfied_by(self, x):
        dot = lambda a: sum(c * v for c, v in zip(a, x))
        return (
            all(dot(a) == b for a, b in self.eqs)
            and all(dot(a) >= b for a, b in self.ges)
            and all(dot(a) > b for a, b in self.gts)
        )


# ---------------------------------------------------------------------------
# Exact Gaussian elimination helpers
# ---------------------------------------------------------------------------

def row_reduce(rows):
    """Reduced row echelon form.  Returns (nonzero rows, pivot column list)."""
    mat = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = ONE / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def matrix_rank(rows):
    if not rows:
        return 0
    return len(row_reduce(rows)[0])


def solve_affine(eqs, dim):
    """Solve a·x = b exactly.

    Returns None if inconsistent, else (particular point, nullspace basis).
    """
    if not eqs:
        return tuple([ZERO] * dim), [tuple(ONE if i == j else ZERO for j in range(dim)) for i in range(dim)]
    aug = [list(a) + [b] for a, b in eqs]
    red, pivots = row_reduce(aug)
    if dim in pivots:
        return None
    point = [ZERO] * dim
    for row, c in zip(red, pivots):
        point[c] = row[dim]
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * dim
        v[f] = ONE
        for row, c in zip(red, pivots):
            v[c] = -row[f]
        basis.append(tuple(v))
    return tuple(point), basis


# ---------------------------------------------------------------------------
# Exact two-phase simplex (maximization), Bland's rule
# ---------------------------------------------------------------------------

def _pivot(tab, basis, r, c):
    piv = tab[r][c]
    inv = ONE / piv
    tab[r] = [v * inv for v in tab[r]]
    prow = tab[r]
    for i in range(len(tab)):
        if i != r and tab[i][c] != 0:
            f = tab[i][c]
            tab[i] = [v - f * w for v, w in zip(tab[i], prow)]
    basis[r] = c


def _set_objective(tab, basis, c):
    """Install the reduced-cost row for maximizing c·x given the basis."""
    ncols = len(tab[0])
    obj = [(-c[j] if j < len(c) else ZERO) for j in range(ncols)]
    m = len(tab) - 1
    for i in range(m):
        cb = c[basis[i]] if basis[i] < len(c) else ZERO
        if cb:
            row = tab[i]
            for j in range(ncols):
                obj[j] += cb * row[j]
    tab[-1] = obj


def _run_simplex(tab, basis, nvars):
    """Iterate to optimality.  Returns 'optimal' or 'unbounded'."""
    m = len(tab) - 1
    rhs = len(tab[0]) - 1
    while True:
        obj = tab[-1]
        col = next((j for j in range(nvars) if obj[j] < 0), None)
        if col is None:
            return "optimal"
        best = None
        for i in range(m):
            a = tab[i][col]
            if a > 0:
                ratio = tab[i][rhs] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded"
        _pivot(tab, basis, best[1], col)


def lp_solve(dim, eqs, ges, objective):
    """Maximize objective·x subject to eqs and ges over free variables.

    Returns (status, point, value) with status in
    {'optimal', 'unbounded', 'infeasible'}; point/value are None unless
    optimal.
    """
    ges = list(ges)
    nreal = 2 * dim + len(ges)  # x_k = u_k - v_k, one surplus var per >=

    rows = []
    for a, b in eqs:
        rows.append(([Fraction(v) for v in a] + [-Fraction(v) for v in a] + [ZERO] * len(ges), Fraction(b)))
    for idx, (a, b) in enumerate(ges):
        s = [ZERO] * len(ges)
        s[idx] = -ONE
        rows.append(([Fraction(v) for v in a] + [-Fraction(v) for v in a] + s, Fraction(b)))

    m = len(rows)
    if m == 0:
        return "optimal" if all(v == 0 for v in objective) else "unbounded", tuple([ZERO] * dim), ZERO

    # Phase 1 tableau with one artificial variable per row.
    tab = []
    for i, (a, b) in enumerate(rows):
        if b < 0:
            a = [-v for v in a]
            b = -b
        art = [ZERO] * m
        art[i] = ONE
        tab.append(a + art + [b])
    basis = [nreal + i for i in range(m)]
    tab.append([ZERO] * (nreal + m + 1))
    c1 = [ZERO] * nreal + [-ONE] * m
    _set_objective(tab, basis, c1)
    _run_simplex(tab, basis, nreal + m)
    if tab[-1][-1] < 0:
        return "infeasible", None, None

    # Drive remaining artificials out of the basis, then drop their columns.
    drop_rows = []
    for i in range(m):
        if basis[i] >= nreal:
            col = next((j for j in range(nreal) if tab[i][j] != 0), None)
            if col is None:
                drop_rows.append(i)
            else:
                _pivot(tab, basis, i, col)
    for i in sorted(drop_rows, reverse=True):
        del tab[i]
        del basis[i]
    tab = [row[:nreal] + [row[-1]] for row in tab]

    c2 = [Fraction(v) for v in objective] + [-Fraction(v) for v in objective] + [ZERO] * len(ges)
    _set_objective(tab, basis, c2)
    status = _run_simplex(tab, basis, nreal)
    if status == "unbounded":
        return "unbounded", None, None
    vals = [ZERO] * nreal
    for i, b in enumerate(basis):
        vals[b] = tab[i][-1]
    point = tuple(vals[k] - vals[dim + k] for k in range(dim))
    return "optimal", point, tab[-1][-1]


# ---------------------------------------------------------------------------
# Difference-constraint fast path (Bellman-Ford with symbolic ε)
# ---------------------------------------------------------------------------

def _difference_edges(sys: LinearConstraintSystem):
    """Translate the system to edges (u, v, w, k): x_v <= x_u + w + k·ε.

    Node 0 is a fixed origin with value 0; variable i is node i+1.
    Returns None if some constraint is not of difference form.
    """
    edges = []

    def add_le(a, b, k):
        # a·x <= b + k·ε
        supp = [(i, c) for i, c in enumerate(a) if c != 0]
        if len(supp) == 0:
            edges.append((0, 0, b, k))
            return True
        if len(supp) == 1:
            i, c = supp[0]
            if c == ONE:
                edges.append((0, i + 1, b, k))
                return True
            if c == -ONE:
                edges.append((i + 1, 0, b, k))
                return True
            return False
        if len(supp) == 2:
            (i, ci), (j, cj) = supp
            if ci == ONE and cj == -ONE:
                edges.append((j + 1, i + 1, b, k))
                return True
            if ci == -ONE and cj == ONE:
                edges.append((i + 1, j + 1, b, k))
                return True
        return False

    for a, b in sys.eqs:
        if not add_le(a, b, 0) or not add_le(tuple(-v for v in a), -b, 0):
            return None
    for a, b in sys.ges:
        if not add_le(tuple(-v for v in a), -b, 0):
            return None
    for a, b in sys.gts:
        # a·x > b  ⇒  -a·x <= -b - ε
        if not add_le(tuple(-v for v in a), -b, -1):
            return None
    return edges


def _difference_feasible(sys: LinearConstraintSystem, edges):
    nv = sys.dim + 1
    dist = [(ZERO, 0)] * nv  # (rational part, ε multiplicity), lexicographic
    for round_ in range(nv):
        changed = False
        for u, v, w, k in edges:
            du = dist[u]
            cand = (du[0] + w, du[1] + k)
            if cand < dist[v]:
                dist[v] = cand
                changed = True
        if not changed:
            break
    else:
        for u, v, w, k in edges:
            du = dist[u]
            if (du[0] + w, du[1] + k) < dist[v]:
                return INFEASIBLE  # negative cycle

    q0, k0 = dist[0]
    parts = [(dist[i + 1][0] - q0, dist[i + 1][1] - k0) for i in range(sys.dim)]
    if all(k == 0 for _, k in parts) and not sys.gts:
        x = tuple(q for q, _ in parts)
        return x if sys.satisfied_by(x) else INFEASIBLE
    eps = ONE
    while True:
        x = tuple(q + k * eps for q, k in parts)
        if sys.satisfied_by(x):
            return x
        eps /= 2
        if eps.denominator > 1 << 64:  # pragma: no cover - safety valve
            return INFEASIBLE


def strict_feasible(sys: LinearConstraintSystem):
    """An exact point satisfying the system (strict constraints strictly),
    or INFEASIBLE."""
    edges = _difference_edges(sys)
    if edges is not None:
        return _difference_feasible(sys, edges)

    # General path: maximize ε with strict constraints relaxed to >= b + ε.
    dim = sys.dim + 1
    eqs = [(a + (ZERO,), b) for a, b in sys.eqs]
    ges = [(a + (ZERO,), b) for a, b in sys.ges]
    for a, b in sys.gts:
        ges.append((a + (-ONE,), b))
    ges.append((tuple([ZERO] * sys.dim) + (-ONE,), -ONE))  # ε <= 1
    obj = [ZERO] * sys.dim + [ONE]
    status, point, value = lp_solve(dim, eqs, ges, obj)
    if status == "infeasible" or (status == "optimal" and value <= 0):
        return INFEASIBLE
    x = point[: sys.dim]
    assert sys.satisfied_by(x)
    return x


def feasible_point(dim, eqs=(), ges=()):
    return strict_feasible(LinearConstraintSystem(dim, eqs=eqs, ges=ges))


# ---------------------------------------------------------------------------
# Polyhedra
# ---------------------------------------------------------------------------

class Polyhedron:
    """H-representation: equalities a·x = b and weak inequalities a·x >= b."""

    __slots__ = ("dim", "eqs", "ineqs", "_point", "_implicit", "_relint", "_dim")

    def __init__(self, dim, eqs=(), ineqs=()):
        self.dim = dim
        self.eqs = tuple((_vec(a, dim), Fraction(b)) for a, b in eqs)
        self.ineqs = tuple((_vec(a, dim), Fraction(b)) for a, b in ineqs)
        self._point = None
        self._implicit = None
        self._relint = None
        self._dim = None

    def system(self, tight=(), strict=()):
        tight = set(tight)
        strict = set(strict)
        eqs = list(self.eqs) + [self.ineqs[i] for i in tight]
        ges = [c for i, c in enumerate(self.ineqs) if i not in tight and i not in strict]
        gts = [self.ineqs[i] for i in strict]
        return LinearConstraintSystem(self.dim, eqs=eqs, ges=ges, gts=gts)

    def feasible_point(self):
        if self._point is None:
            self._point = strict_feasible(self.system())
        return self._point

    def is_empty(self):
        return self.feasible_point() is INFEASIBLE

    def contains(self, x):
        return self.system().satisfied_by(x)

    def implicit_equalities(self):
        """Indices of inequalities tight on all of the polyhedron."""
        if self._implicit is None:
            if self.is_empty():
                self._implicit = frozenset(range(len(self.ineqs)))
            else:
                out = set()
                for i in range(len(self.ineqs)):
                    if strict_feasible(self.system(strict=(i,))) is INFEASIBLE:
                        out.add(i)
                self._implicit = frozenset(out)
        return self._implicit

    def relative_interior_point(self):
        if self._relint is None:
            if self.is_empty():
                self._relint = INFEASIBLE
            else:
                imp = self.implicit_equalities()
                loose = [i for i in range(len(self.ineqs)) if i not in imp]
                self._relint = strict_feasible(self.system(tight=imp, strict=loose))
                assert self._relint is not INFEASIBLE
        return self._relint

    def affine_dimension(self):
        if self._dim is None:
            if self.is_empty():
                self._dim = -1
            else:
                rows = [a for a, _ in self.eqs]
                rows += [self.ineqs[i][0] for i in self.implicit_equalities()]
                self._dim = self.dim - matrix_rank(rows)
        return self._dim

    def intersect(self, other):
        assert self.dim == other.dim
        return Polyhedron(self.dim, self.eqs + other.eqs, self.ineqs + other.ineqs)

    def vertices(self):
        """All vertices (0-dimensional faces), by basic-solution enumeration.

        Intended for bounded desk-scale polyhedra.
        """
        base = [a for a, _ in self.eqs]
        need = self.dim - matrix_rank(base) if base else self.dim
        seen = set()
        out = []
        for combo in itertools.combinations(range(len(self.ineqs)), need):
            eqs = list(self.eqs) + [self.ineqs[i] for i in combo]
            if matrix_rank([a for a, _ in eqs]) != self.dim:
                continue
            sol = solve_affine(eqs, self.dim)
            if sol is None:
                continue
            point, null = sol
            if null:
                continue
            if point not in seen and self.contains(point):
                seen.add(point)
                out.append(point)
        return sorted(out)


class Face:
    """A nonempty face of a polyhedron, keyed by its full tight index set."""

    __slots__ = ("polyhedron", "tight", "dim", "point")

    def __init__(self, polyhedron, tight):
        self.polyhedron = polyhedron
        self.tight = frozenset(tight)
        self.dim = polyhedron.affine_dimension()
        self.point = polyhedron.relative_interior_point()

    def __repr__(self):
        return "Face(dim=%d, tight=%s)" % (self.dim, sorted(self.tight))


def enumerate_faces(P: Polyhedron, budget=100000):
    """All nonempty faces of P, each with an exact relative-interior point.

    Faces are keyed by the set of inequality indices tight on them, so the
    output is closed under intersection and ordered by reverse containment
    of tight sets.
    """
    if P.is_empty():
        return []

    def canonical(tight):
        # Close a tight set: indices implicitly forced to equality.
        Q = Polyhedron(P.dim, list(P.eqs) + [P.ineqs[i] for i in tight], P.ineqs)
        if Q.is_empty():
            return None, None
        return frozenset(Q.implicit_equalities()) | frozenset(tight), Q

    key0, Q0 = canonical(frozenset())
    faces = {key0: Face(Q0, key0)}
    queue = [key0]
    while queue:
        key = queue.pop()
        for i in range(len(P.ineqs)):
            if i in key:
                continue
            newkey, Q = canonical(key | {i})
            if newkey is None or newkey in faces:
                continue
            faces[newkey] = Face(Q, newkey)
            if len(faces) > budget:
                raise DomainBudgetError("face enumeration budget exceeded")
            queue.append(newkey)
    return sorted(faces.values(), key=lambda f: (-f.dim, sorted(f.tight)))


class DomainBudgetError(Exception):
    pass


# ---------------------------------------------------------------------------
# Variable elimination (Gauss substitution + Fourier-Motzkin)
# ---------------------------------------------------------------------------

def _normalize_ineq(a, b):
    lead = next((c for c in a if c != 0), None)
    if lead is None:
        return a, b
    s = ONE / abs(lead)
    return tuple(c * s for c in a), b * s


def eliminate_vars(dim, eqs, ineqs, drop):
    """Project {x : eqs, ineqs} onto the coordinates not in ``drop``.

    Returns (eqs', ineqs') over the remaining coordinates in their original
    order, or None if the system is detected infeasible along the way.
    """
    eqs = [(list(map(Fraction, a)), Fraction(b)) for a, b in eqs]
    ineqs = [(list(map(Fraction, a)), Fraction(b)) for a, b in ineqs]
    alive = [k for k in range(dim) if k not in set(drop)]

    for v in sorted(drop):
        pivot = next((row for row in eqs if row[0][v] != 0), None)
        if pivot is not None:
            pa, pb = pivot
            inv = ONE / pa[v]
            pa = [c * inv for c in pa]
            pb = pb * inv
            new_eqs = []
            for a, b in eqs:
                if a is pivot[0]:
                    continue
                f = a[v]
                if f != 0:
                    a = [c - f * p for c, p in zip(a, pa)]
                    b = b - f * pb
                new_eqs.append((a, b))
            eqs = new_eqs
            new_ineqs = []
            for a, b in ineqs:
                f = a[v]
                if f != 0:
                    a = [c - f * p for c, p in zip(a, pa)]
                    b = b - f * pb
                new_ineqs.append((a, b))
            ineqs = new_ineqs
        else:
            pos = [(a, b) for a, b in ineqs if a[v] > 0]
            neg = [(a, b) for a, b in ineqs if a[v] < 0]
            rest = [(a, b) for a, b in ineqs if a[v] == 0]
            for (ap, bp) in pos:
                for (an, bn) in neg:
                    # scale to cancel v: (ap/ap[v]) + (an/(-an[v]))
                    sp = ONE / ap[v]
                    sn = ONE / (-an[v])
                    a = [cp * sp + cn * sn for cp, cn in zip(ap, an)]
                    b = bp * sp + bn * sn
                    rest.append((a, b))
            ineqs = rest

        # prune trivial and duplicate inequalities
        seen = set()
        pruned = []
        for a, b in ineqs:
            if all(c == 0 for c in a):
                if b > 0:
                    return None
                continue
            na, nb = _normalize_ineq(tuple(a), b)
            if (na, nb) in seen:
                continue
            seen.add((na, nb))
            pruned.append((list(a), b))
        ineqs = pruned
        for a, b in eqs:
            if all(c == 0 for c in a) and b != 0:
                return None

    out_eqs = [(tuple(a[k] for k in alive), b) for a, b in eqs if any(a[k] != 0 for k in alive) or b != 0]
    out_ineqs = [(tuple(a[k] for k in alive), b) for a, b in ineqs]
    return out_eqs, out_ineqs


def affine_image(P: Polyhedron, M, c):
    """The image {Mx + c : x in P} as a Polyhedron (M: k rows of length dim)."""
    k = len(M)
    dim = P.dim
    total = dim + k
    eqs = [(a + (ZERO,) * k, b) for a, b in P.eqs]
    ineqs = [(a + (ZERO,) * k, b) for a, b in P.ineqs]
    for t in range(k):
        row = [-Fraction(v) for v in M[t]] + [ZERO] * k
        row[dim + t] = ONE
        eqs.append((tuple(row), Fraction(c[t])))
    res = eliminate_vars(total, eqs, ineqs, range(dim))
    if res is None:
        return Polyhedron(k, eqs=[((ZERO,) * k, ONE)])  # empty
    return Polyhedron(k, *res)
