import itertools
import random
from fractions import Fraction
from functools import reduce

import pytest

from tropstiefel.bipartite import BipartiteGraph, uniform_matroid
from tropstiefel.core import INF, DomainError, TropMatrix, TropVector, proj_eq
from tropstiefel.plucker import (
    PluckerVector,
    check_plucker,
    cocircuit,
    dual,
    plucker_from_json,
    plucker_to_json,
    rank_zero,
    recover_matrix,
    row_vector,
    stable_intersection,
    stable_union,
    stiefel_map,
    underlying_matroid,
)

STAIR = TropMatrix([[0, 0, "inf", "inf"], ["inf", 0, 0, "inf"], ["inf", "inf", 0, 0]])
TWO_ROW = TropMatrix([[0, 0, 0, 0], [0, 0, 1, 1]])
APRIME = TropMatrix([[0, "inf", 0, 0], ["inf", 0, 1, 1]])


def zero_plucker(d, n):
    return PluckerVector(
        n, d, {frozenset(J): 0 for J in itertools.combinations(range(1, n + 1), d)}
    )


def random_matrix(rng, d, n, inf_prob=0.0):
    return TropMatrix(
        [
            [INF if rng.random() < inf_prob else rng.randint(-4, 4) for _ in range(n)]
            for _ in range(d)
        ]
    )


def test_stiefel_map_examples():
    p = stiefel_map(STAIR)
    assert all(v == 0 for v in p.values.values())
    q = stiefel_map(TWO_ROW)
    assert q[{3, 4}] == 1
    assert all(q[J] == 0 for J in itertools.combinations(range(1, 5), 2) if set(J) != {3, 4})
    r = stiefel_map(APRIME)
    expected = {(1, 2): 0, (1, 3): 1, (1, 4): 1, (2, 3): 0, (2, 4): 0, (3, 4): 1}
    for J, v in expected.items():
        assert r[J] == v


def test_stiefel_map_requires_matching():
    with pytest.raises(DomainError):
        stiefel_map(TropMatrix([[0, "inf"], [0, "inf"]]))


def test_check_plucker():
    assert check_plucker(zero_plucker(2, 4))
    bad = PluckerVector(
        4,
        2,
        {
            frozenset({1, 2}): -1,
            frozenset({3, 4}): -1,
            frozenset({1, 3}): 0,
            frozenset({1, 4}): 0,
            frozenset({2, 3}): 0,
            frozenset({2, 4}): 0,
        },
    )
    assert not check_plucker(bad)


def test_stiefel_image_in_grassmannian():
    rng = random.Random(5)
    for _ in range(60):
        d = rng.randint(1, 3)
        n = rng.randint(d, 6)
        A = random_matrix(rng, d, n, inf_prob=0.2)
        try:
            p = stiefel_map(A)
        except DomainError:
            continue
        assert check_plucker(p)


def test_dual():
    assert dual(zero_plucker(2, 4)).values == zero_plucker(2, 4).values
    p = stiefel_map(APRIME)
    ps = dual(p)
    assert ps[{3, 4}] == p[{1, 2}]
    assert ps[{2, 4}] == p[{1, 3}]
    assert dual(ps).values == p.values


def test_stable_intersection():
    r = stable_intersection(zero_plucker(2, 3), zero_plucker(2, 3))
    assert r.d == 1 and all(v == 0 for v in r.values.values())
    rng = random.Random(17)
    for _ in range(40):
        n = rng.randint(2, 5)
        d = rng.randint(1, n)
        e = rng.randint(n - d, n)
        try:
            p = stiefel_map(random_matrix(rng, d, n))
            q = stiefel_map(random_matrix(rng, e, n))
        except DomainError:
            continue
        r = stable_intersection(p, q)
        assert check_plucker(r)


def test_stable_intersection_associative():
    rng = random.Random(23)
    count = 0
    while count < 20:
        n = rng.randint(3, 5)
        ranks = [rng.randint(1, n) for _ in range(3)]
        if ranks[0] + ranks[1] < n or ranks[0] + ranks[1] - n + ranks[2] < n:
            continue
        ps = [stiefel_map(random_matrix(rng, r, n)) for r in ranks]
        left = stable_intersection(stable_intersection(ps[0], ps[1]), ps[2])
        right = stable_intersection(ps[0], stable_intersection(ps[1], ps[2]))
        assert left.values == right.values
        count += 1


def test_stable_union_factorization():
    for A in (STAIR, TWO_ROW, APRIME):
        rows = [row_vector(A.row(i)) for i in range(1, A.d + 1)]
        folded = reduce(stable_union, rows)
        assert folded.proj_eq(stiefel_map(A))


def test_stable_union_rank_zero_identity():
    p = stiefel_map(APRIME)
    assert stable_union(p, rank_zero(4)).values == p.values
    assert stable_union(rank_zero(4), p).values == p.values


def test_underlying_matroid():
    assert underlying_matroid(zero_plucker(2, 4)) == uniform_matroid(2, 4)
    assert underlying_matroid(stiefel_map(APRIME)) == uniform_matroid(2, 4)
    single = PluckerVector(
        3, 2, {frozenset({1, 2}): 0, frozenset({1, 3}): INF, frozenset({2, 3}): INF}
    )
    assert underlying_matroid(single).bases == frozenset([frozenset({1, 2})])


def test_cocircuit():
    c = cocircuit(zero_plucker(3, 4), {1, 2})
    assert c == TropVector([INF, INF, 0, 0])
    p = stiefel_map(APRIME)
    assert cocircuit(p, {2}) == TropVector([0, INF, 0, 0])
    assert cocircuit(p, {1}) == TropVector([INF, 0, 1, 1])


def test_cocircuit_projective_invariance():
    p = stiefel_map(APRIME)
    shifted = PluckerVector(
        4, 2, {J: v + Fraction(3) for J, v in p.values.items()}
    )
    for S in itertools.combinations(range(1, 5), 1):
        a = cocircuit(p, S)
        b = cocircuit(shifted, S)
        assert proj_eq(a, b)


def test_recover_matrix_examples():
    sigma = BipartiteGraph.from_support(APRIME)
    assert recover_matrix(stiefel_map(APRIME), sigma) == APRIME
    p0 = zero_plucker(2, 3)
    sig = BipartiteGraph(2, 3, [(1, 1), (1, 3), (2, 2), (2, 3)])
    assert recover_matrix(p0, sig) == TropMatrix([[0, "inf", 0], ["inf", 0, 0]])


def test_recover_matrix_row_constants():
    rng = random.Random(9)
    from tropstiefel.bipartite import enumerate_support_sets

    sets = enumerate_support_sets(2, 4)
    for _ in range(25):
        G = rng.choice(sets)
        entries = [
            [rng.randint(-3, 3) if (i, j) in G.edges else INF for j in range(1, 5)]
            for i in range(1, 3)
        ]
        A = TropMatrix(entries)
        B = recover_matrix(stiefel_map(A), G)
        for i in range(1, 3):
            assert proj_eq(A.row(i), B.row(i))


def test_json_roundtrip():
    p = stiefel_map(APRIME)
    assert plucker_from_json(plucker_to_json(p)) == p
