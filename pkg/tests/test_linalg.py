from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

import oracle
from blocktype.linalg import Echelon, nullspace, rank, rref, solve

small = st.integers(-3, 3)
matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=0, max_size=6))


def test_nullspace_examples():
    assert nullspace([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == []
    assert len(nullspace([[0] * 4, [0] * 4])) == 4
    assert nullspace([[1, 2], [2, 4]]) == [[-2, 1]]


def test_rref_example():
    assert rref([[2, 4], [1, 3]]) == [[1, 0], [0, 1]]
    assert rref([[2, 4], [1, 2]]) == [[1, 2]]


@given(matrices)
def test_rank_matches_oracle(m):
    assert rank(m) == oracle.rank(m)


@given(matrices)
def test_kernel_vectors_annihilate(m):
    if not m:
        return
    for v in nullspace(m):
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)
    assert len(nullspace(m)) == len(m[0]) - oracle.rank(m)


@given(matrices, st.randoms(use_true_random=False))
def test_kernel_independent_of_row_order(m, rnd):
    shuffled = list(m)
    rnd.shuffle(shuffled)
    if m:
        assert nullspace(m) == nullspace(shuffled)
        assert rref(m) == rref(shuffled)


def test_sparse_echelon_kernel_and_reduce():
    e = Echelon(["x", "y", "z"])
    assert e.add({"x": 1, "y": 1})
    assert e.add({"y": 1, "z": -1})
    assert not e.add({"x": 1, "z": 1})     # row1 - row2
    assert e.rank == 2
    (k,) = e.kernel(["x", "y", "z"])
    assert k == {"z": 1, "x": -1, "y": 1}
    assert e.contains({"x": 2, "y": 1, "z": 1})
    assert e.reduce({"z": 1}) == {"z": 1}


def test_solve():
    rows = [{"a": 1, "b": 1}, {"a": 1, "b": -1}]
    assert solve(rows, [3, 1], ["a", "b"]) == {"a": 2, "b": 1}
    assert solve([{"a": 1}, {"a": 1}], [1, 2], ["a"]) is None
    assert solve([{"a": 0}], [0], ["a"]) == {}


def test_solve_random_consistent_systems():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(1, 5)
        x = {j: Fraction(rng.randint(-4, 4)) for j in range(n)}
        rows = [{j: Fraction(rng.randint(-3, 3)) for j in range(n)} for _ in range(rng.randint(1, 6))]
        rhs = [sum(r[j] * x[j] for j in range(n)) for r in rows]
        sol = solve(rows, rhs, range(n))
        assert sol is not None
        assert all(sum(r[j] * sol.get(j, 0) for j in range(n)) == b for r, b in zip(rows, rhs))
