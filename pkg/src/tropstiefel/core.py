"""Exact min-plus (tropical) arithmetic: scalars, vectors, matrices.

The semiring carrier is Q ∪ {∞} with ⊕ = min and ⊙ = +.  Finite values are
`fractions.Fraction`; the absorbing element is the module singleton ``INF``.
Everything is immutable and exact -- no floats anywhere.

Row and column indices are 1-based throughout the public API, matching the
usual conventions for [d] x [n] bipartite objects.  Vector entries are
addressed 1-based via ``entry``; the underlying tuples are 0-based.
"""

from __future__ import annotations

import json
from fractions import Fraction


class DomainError(Exception):
    """A violated mathematical precondition, with a machine-readable code."""

    def __init__(self, code: str, message: str = ""):
        super().__init__(message or code)
        self.code = code


class _Infinity:
    """The tropical additive identity +∞ (absorbing for ⊙, identity for ⊕)."""

    _instance = None
    __slots__ = ()

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    # ∞ is strictly greater than every rational.
    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    def __radd__(self, other):
        return self

    def __neg__(self):
        raise DomainError("NEGATE_INF", "cannot negate infinity")


INF = _Infinity()


def is_finite(v) -> bool:
    return v is not INF


def scalar(x):
    """Coerce ``x`` (int, Fraction, 'p/q' string, 'inf', INF) to a scalar."""
    if x is INF:
        return INF
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise DomainError("BAD_SCALAR", "booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if x.strip().lower() == "inf":
            return INF
        return Fraction(x)
    if isinstance(x, float):
        raise DomainError("BAD_SCALAR", "floating point is not allowed")
    raise DomainError("BAD_SCALAR", f"cannot interpret {x!r} as a scalar")


def scalar_str(v) -> str:
    """Serialize a scalar as 'inf' or a reduced 'p/q' / integer string."""
    return "inf" if v is INF else str(v)


def trop_sum(values):
    """⊕ over an iterable: the minimum, ∞ if empty."""
    best = INF
    for v in values:
        if v < best:
            best = v
    return best


class TropVector:
    """An exact vector over the min-plus semiring."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(scalar(e) for e in entries)
        if not self.entries:
            raise DomainError("EMPTY_VECTOR", "vectors must have length >= 1")

    def __len__(self):
        return len(self.entries)

    def entry(self, j):
        """1-based coordinate access."""
        return self.entries[j - 1]

    def support(self):
        """1-based indices of finite entries."""
        return frozenset(j + 1 for j, v in enumerate(self.entries) if v is not INF)

    def is_finite(self):
        return all(v is not INF for v in self.entries)

    def shift(self, c):
        c = scalar(c)
        return TropVector(tuple(v + c for v in self.entries))

    def __eq__(self, other):
        return isinstance(other, TropVector) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "TropVector(%s)" % (", ".join(scalar_str(v) for v in self.entries))


def proj_eq(x: TropVector, y: TropVector) -> bool:
    """Projective equality: same support, entries differ by one constant."""
    if len(x) != len(y) or x.support() != y.support():
        return False
    diff = None
    for a, b in zip(x.entries, y.entries):
        if a is INF:
            continue
        d = a - b
        if diff is None:
            diff = d
        elif d != diff:
            return False
    return True


def proj_normalize(x: TropVector) -> TropVector:
    """Subtract the value at the first finite coordinate (canonical form)."""
    for v in x.entries:
        if v is not INF:
            return TropVector(tuple(w - v if w is not INF else INF for w in x.entries))
    raise DomainError("ALL_INF", "cannot normalize the all-infinity vector")


class TropMatrix:
    """An exact d x n matrix over the min-plus semiring.

    This raw constructor accepts arbitrary entries (including all-∞ rows or
    columns); operations that require nonempty row/column supports validate
    at the call site.
    """

    __slots__ = ("d", "n", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(scalar(e) for e in row) for row in entries)
        if not rows or not rows[0]:
            raise DomainError("BAD_SHAPE", "matrices must be at least 1x1")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DomainError("BAD_SHAPE", "ragged rows")
        self.entries = rows
        self.d = len(rows)
        self.n = len(rows[0])

    def entry(self, i, j):
        """1-based entry access."""
        return self.entries[i - 1][j - 1]

    def support(self):
        """All (i,j), 1-based, with finite entry."""
        return frozenset(
            (i + 1, j + 1)
            for i, row in enumerate(self.entries)
            for j, v in enumerate(row)
            if v is not INF
        )

    def row_support(self, i):
        """J_i: columns with finite entry in row i."""
        return frozenset(j + 1 for j, v in enumerate(self.entries[i - 1]) if v is not INF)

    def col_support(self, j):
        """I_j: rows with finite entry in column j."""
        return frozenset(i for i in range(1, self.d + 1) if self.entry(i, j) is not INF)

    def row(self, i) -> TropVector:
        return TropVector(self.entries[i - 1])

    def transpose(self) -> "TropMatrix":
        return TropMatrix(tuple(zip(*self.entries)))

    def __eq__(self, other):
        return isinstance(other, TropMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "TropMatrix(%d x %d)" % (self.d, self.n)


def require_column_supports(A: TropMatrix):
    """Reject matrices with an all-∞ column (arrangement / linear-space uses)."""
    for j in range(1, A.n + 1):
        if not A.col_support(j):
            raise DomainError("EMPTY_COLUMN", f"column {j} has empty support")


def require_row_supports(A: TropMatrix):
    for i in range(1, A.d + 1):
        if not A.row_support(i):
            raise DomainError("EMPTY_ROW", f"row {i} has empty support")


def vec_mat_mul(x: TropVector, A: TropMatrix) -> TropVector:
    """Tropical right multiplication: (x ⊙ A)_j = min_i (x_i + a_ij)."""
    if len(x) != A.d:
        raise DomainError("LENGTH_MISMATCH", "vector length must equal row count")
    out = []
    for j in range(A.n):
        out.append(trop_sum(x.entries[i] + A.entries[i][j] for i in range(A.d)))
    return TropVector(out)


def residuation(y: TropVector, A: TropMatrix) -> TropVector:
    """The residual x with x_i = max_{j in J_i} (y_j - a_ij).

    If y lies in the image of ⊙A this is its unique preimage meeting every
    row; in general vec_mat_mul(residuation(y, A), A) >= y componentwise.
    """
    if len(y) != A.n:
        raise DomainError("LENGTH_MISMATCH", "vector length must equal column count")
    if not y.is_finite():
        raise DomainError("INF_ENTRY", "residuation requires a finite vector")
    require_row_supports(A)
    out = []
    for i in range(1, A.d + 1):
        out.append(max(y.entry(j) - A.entry(i, j) for j in A.row_support(i)))
    return TropVector(out)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def matrix_to_json(A: TropMatrix) -> dict:
    return {
        "d": A.d,
        "n": A.n,
        "entries": [[scalar_str(v) for v in row] for row in A.entries],
    }


def matrix_from_json(obj) -> TropMatrix:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise DomainError("BAD_MATRIX_JSON", "expected {'d','n','entries'}")
    A = TropMatrix(obj["entries"])
    if "d" in obj and obj["d"] != A.d:
        raise DomainError("BAD_MATRIX_JSON", "declared d does not match entries")
    if "n" in obj and obj["n"] != A.n:
        raise DomainError("BAD_MATRIX_JSON", "declared n does not match entries")
    return A


def vector_to_json(x: TropVector) -> dict:
    return {"entries": [scalar_str(v) for v in x.entries]}


def vector_from_json(obj) -> TropVector:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise DomainError("BAD_VECTOR_JSON", "expected {'entries': [...]}")
    return TropVector(obj["entries"])


def dumps(obj) -> str:
    """Deterministic JSON emission used by the CLI."""
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "))
