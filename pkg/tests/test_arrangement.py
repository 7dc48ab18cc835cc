import itertools
import random
from fractions import Fraction

import pytest

from tropstiefel.arrangement import (
    ArrangementComplex,
    Covector,
    complex_to_json,
    covector_of_point,
    enumerate_covectors,
    in_B,
    in_K,
    is_trop_singular,
    transpose_covector,
)
from tropstiefel.bipartite import BipartiteGraph, matching_multifield, Matching
from tropstiefel.core import DomainError, INF, TropMatrix, TropVector

FIG = TropMatrix([[0, 3, 0, "inf", "inf"], ["inf", 0, 0, 2, "inf"], ["inf", "inf", 0, 0, 0]])
STAIR = TropMatrix([[0, 0, "inf", "inf"], ["inf", 0, 0, "inf"], ["inf", "inf", 0, 0]])
TWO_ROW = TropMatrix([[0, 0, 0, 0], [0, 0, 1, 1]])


def A_of_t(t):
    return TropMatrix(
        [
            ["inf", 0, 0, 0, "inf", "inf"],
            [0, "inf", 0, "inf", 0, "inf"],
            [t, 0, "inf", "inf", "inf", 0],
            [0, 1, 2, "inf", "inf", "inf"],
        ]
    )


def cov(d, n, tuples):
    edges = [(i, j + 1) for j, I in enumerate(tuples) for i in I]
    return Covector(BipartiteGraph(d, n, edges))


def test_covector_of_point_examples():
    c = covector_of_point(FIG, TropVector([0, 0, 0]))
    assert c.tuple_view() == ((1,), (2,), (1, 2, 3), (3,), (3,))
    c2 = covector_of_point(STAIR, TropVector([0, 0, 0]))
    assert c2.tuple_view() == ((1,), (1, 2), (2, 3), (3,))
    z = TropMatrix([[0, 0], [0, 0]])
    assert covector_of_point(z, TropVector([5, 5])).edges == frozenset(
        [(1, 1), (1, 2), (2, 1), (2, 2)]
    )


def test_transpose_covector_examples():
    G = transpose_covector(STAIR, TropVector([0, 0, 0, 0]))
    assert G.edges == STAIR.support()
    G2 = transpose_covector(TWO_ROW, TropVector([0, 0, 0, 0]))
    assert G2.edges == frozenset([(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2)])
    y = TropVector([1, -2, 0, 3])
    assert transpose_covector(TWO_ROW, y).edges == transpose_covector(
        TWO_ROW, y.shift(Fraction(7, 3))
    ).edges


def test_enumerate_covectors_two_row():
    tc = enumerate_covectors(TWO_ROW)
    expected = {
        cov(2, 4, [(1,), (1,), (1,), (1,)]).key(): 1,
        cov(2, 4, [(2,), (2,), (2,), (2,)]).key(): 1,
        cov(2, 4, [(1, 2), (1, 2), (1,), (1,)]).key(): 0,
        cov(2, 4, [(2,), (2,), (1, 2), (1, 2)]).key(): 0,
        cov(2, 4, [(2,), (2,), (1,), (1,)]).key(): 1,
    }
    assert {c.covector.key(): c.dim for c in tc.cells} == expected


def test_enumerate_covectors_single_row():
    tc = enumerate_covectors(TropMatrix([[0, 0, 0]]))
    assert len(tc) == 1
    assert tc.cells[0].covector.tuple_view() == ((1,), (1,), (1,))


def test_example_t_dependence():
    half = Fraction(1, 2)
    tc_pos = enumerate_covectors(A_of_t(half))
    tc_neg = enumerate_covectors(A_of_t(-half))
    pos_only = cov(4, 6, [(2,), (3,), (1,), (1,), (2,), (3,)])
    neg_only = cov(4, 6, [(3,), (1,), (2,), (1,), (2,), (3,)])
    assert pos_only in tc_pos and pos_only not in tc_neg
    assert neg_only in tc_neg and neg_only not in tc_pos


def test_covering_and_disjointness():
    rng = random.Random(41)
    for A in (FIG, STAIR, TWO_ROW):
        tc = enumerate_covectors(A)
        hits = {c.covector.key(): 0 for c in tc.cells}
        for _ in range(200):
            x = TropVector(
                [0] + [Fraction(rng.randint(-40, 40), rng.randint(1, 7)) for _ in range(A.d - 1)]
            )
            c = covector_of_point(A, x)
            assert c in tc
            cell = tc.cell_of(c)
            # x is in the relative interior of exactly its own cell
            assert cell.polyhedron.contains(x.entries)
            hits[c.key()] += 1


def test_order_reversal():
    for A in (STAIR, TWO_ROW):
        tc = enumerate_covectors(A)
        for c1 in tc.cells:
            for c2 in tc.cells:
                if c1.covector.edges > c2.covector.edges:
                    # bigger covector = smaller face, contained in the closure
                    assert c2.polyhedron.contains(c1.point)
                    assert c1.dim < c2.dim


def test_multifield_from_covectors():
    rng = random.Random(6)
    for _ in range(20):
        d = rng.randint(1, 3)
        n = rng.randint(d, 5)
        A = TropMatrix([[rng.randint(0, 3) for _ in range(n)] for _ in range(d)])
        mf = matching_multifield(A)
        tc = enumerate_covectors(A)
        seen = {J: set() for J in mf.choices}
        for cell in tc.cells:
            edges = cell.covector.edges
            for J in itertools.combinations(range(1, n + 1), d):
                for cols in itertools.permutations(J):
                    m = Matching(cols)
                    if m.edges <= edges:
                        seen[frozenset(J)].add(m)
        assert {J: frozenset(ms) for J, ms in seen.items()} == mf.choices


def test_transpose_duality():
    rng = random.Random(8)
    for _ in range(10):
        d, n = rng.randint(2, 3), rng.randint(2, 4)
        A = TropMatrix([[rng.randint(0, 2) for _ in range(n)] for _ in range(d)])
        tc = enumerate_covectors(A)
        tct = enumerate_covectors(A.transpose())
        def two_sided(complex_, dd, nn):
            out = set()
            for c in complex_.cells:
                g = c.covector.graph
                if all(g.J(i) for i in range(1, dd + 1)) and all(
                    g.I(j) for j in range(1, nn + 1)
                ):
                    out.add(g.edges)
            return out
        left = two_sided(tc, d, n)
        right = {
            frozenset((i, j) for j, i in edges) for edges in two_sided(tct, n, d)
        }
        assert left == right


def test_in_B_and_in_K():
    tc = enumerate_covectors(STAIR)
    vertex = cov(3, 4, [(1,), (1, 2), (2, 3), (3,)])
    assert vertex in tc
    assert in_B(STAIR, vertex) and in_K(STAIR, vertex)
    tc2 = enumerate_covectors(TWO_ROW)
    ray = cov(2, 4, [(1,), (1,), (1,), (1,)])
    middle = cov(2, 4, [(2,), (2,), (1,), (1,)])
    assert ray in tc2 and middle in tc2
    assert not in_B(TWO_ROW, ray) and not in_K(TWO_ROW, ray)
    assert in_B(TWO_ROW, middle) and in_K(TWO_ROW, middle)


def test_is_trop_singular():
    assert is_trop_singular(TropMatrix([[0, 0], [0, 0]]))
    assert not is_trop_singular(TropMatrix([[0, 1], [1, 0]]))
    A0 = A_of_t(0)
    minor = TropMatrix([row[:3] for row in A0.entries[:3]])
    assert is_trop_singular(minor)
    assert is_trop_singular(TropMatrix([["inf", "inf"], [0, 0]]))
    with pytest.raises(DomainError):
        is_trop_singular(TWO_ROW)


def test_budget_and_column_check():
    with pytest.raises(DomainError):
        enumerate_covectors(TropMatrix([[0] * 9]))
    with pytest.raises(DomainError):
        covector_of_point(TropMatrix([[0, "inf"], [0, "inf"]]), TropVector([0, 0]))


def test_complex_json():
    tc = enumerate_covectors(TWO_ROW)
    obj = complex_to_json(tc)
    assert len(obj) == 5
    assert all(set(entry) == {"covector", "dim"} for entry in obj)
