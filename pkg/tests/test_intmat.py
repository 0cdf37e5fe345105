"""Exact integer matrix helpers."""

import random
from itertools import permutations

import pytest

from freenil.errors import NotUnimodular
from freenil.intmat import (
    RowMove,
    det,
    factor_unimodular,
    identity_matrix,
    inverse_unimodular,
    matmul,
    move_matrix,
    reduce_to_identity,
)


def _det_leibniz(m):
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):  # count inversions
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total


def test_det_against_leibniz():
    rng = random.Random(2718)
    for _ in range(300):
        n = rng.randrange(1, 5)
        m = tuple(tuple(rng.randrange(-6, 7) for _ in range(n)) for _ in range(n))
        assert det(m) == _det_leibniz(m)


def test_det_edges():
    assert det(()) == 1
    assert det(((7,),)) == 7
    assert det(identity_matrix(4)) == 1


def _random_unimodular(rng, n, moves=12):
    m = identity_matrix(n)
    for _ in range(moves):
        kind = rng.randrange(3)
        i = rng.randrange(n)
        j = rng.randrange(n - 1)
        j = j if j < i else j + 1
        if kind == 0:
            mv = RowMove("add", i, j, rng.choice((-3, -2, -1, 1, 2, 3)))
        elif kind == 1:
            mv = RowMove("swap", i, j)
        else:
            mv = RowMove("negate", i)
        m = matmul(move_matrix(mv, n), m)
    return m


def test_factor_unimodular_reconstructs_product():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randrange(2, 6)
        m = _random_unimodular(rng, n)
        moves = factor_unimodular(m)
        acc = identity_matrix(n)
        for mv in moves:
            acc = matmul(acc, move_matrix(mv, n))
        assert acc == m
        assert sum(1 for mv in moves if mv.kind == "negate") <= 1


def test_factor_examples():
    assert factor_unimodular(identity_matrix(3)) == []
    moves = factor_unimodular(((1, 1), (0, 1)))
    assert moves == [RowMove("add", 0, 1, 1)]
    # 2x2 with det 1 but needing a euclidean step
    m = ((2, 1), (1, 1))
    acc = identity_matrix(2)
    for mv in factor_unimodular(m):
        acc = matmul(acc, move_matrix(mv, 2))
    assert acc == m


def test_factor_single_negate():
    assert factor_unimodular(((-1,),)) == [RowMove("negate", 0)]
    assert factor_unimodular(((1,),)) == []


def test_reduce_moves_invert_factorization():
    rng = random.Random(12)
    for _ in range(50):
        n = rng.randrange(2, 5)
        m = _random_unimodular(rng, n)
        rows = [list(r) for r in m]
        acc = tuple(tuple(r) for r in rows)
        for mv in reduce_to_identity(m):
            acc = matmul(move_matrix(mv, n), acc)
        assert acc == identity_matrix(n)


def test_inverse_unimodular():
    rng = random.Random(13)
    for _ in range(100):
        n = rng.randrange(2, 6)
        m = _random_unimodular(rng, n)
        assert matmul(m, inverse_unimodular(m)) == identity_matrix(n)
        assert matmul(inverse_unimodular(m), m) == identity_matrix(n)
    assert inverse_unimodular(((-1,),)) == ((-1,),)


def test_not_unimodular_rejected():
    with pytest.raises(NotUnimodular):
        factor_unimodular(((2, 0), (0, 1)))
    with pytest.raises(NotUnimodular):
        inverse_unimodular(((1, 1), (1, 1)))
