from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from blocktype import (AlgebraCfg, Window, b1_embedding_check, constrained_iso_search,
                       divisibility_obstruction, virasoro_embedding_check)
from blocktype.errors import WindowTooSmallError
from blocktype.isomorphism import virasoro_central_coefficient

W = Window(4, 2)


def test_divisibility():
    assert divisibility_obstruction(1, 2)
    assert not divisibility_obstruction(2, 3)
    for q in range(1, 6):
        assert divisibility_obstruction(q, q)
    with pytest.raises(ValueError):
        divisibility_obstruction(0, 1)


@pytest.mark.parametrize("q", [1, 2, 3])
def test_diagonal_gives_automorphism_family(q):
    r = constrained_iso_search(q, q, W)
    assert r.outcome == "Family"
    assert r.matches_automorphisms
    assert sorted(f["s"] for f in r.family) == [-1, 1]


@pytest.mark.parametrize("q1,q2", [p for p in itertools.product(range(1, 4), repeat=2)
                                   if p[0] != p[1]])
def test_off_diagonal_is_empty(q1, q2):
    r = constrained_iso_search(q1, q2, W)
    assert r.empty
    if q2 % q1:
        assert "does not divide" in r.reason


def test_divisible_but_not_isomorphic():
    r = constrained_iso_search(2, 4, W)
    assert r.empty
    assert "not surjective" in r.reason
    r = constrained_iso_search(1, 2, W)
    assert r.empty


def test_iso_window_too_small():
    with pytest.raises(WindowTooSmallError):
        constrained_iso_search(1, 1, Window(2, 2))


def test_iso_report_forms():
    r = constrained_iso_search(1, 1, W)
    d = r.to_dict()
    assert d["schema_version"] == 1 and d["outcome"] == "Family"
    assert "constrained ansatz" in r.to_text()


@pytest.mark.parametrize("q", [1, 2, 3])
def test_virasoro_embedding(q):
    w = Window(4, 2)
    assert virasoro_embedding_check(AlgebraCfg(q), w).ok
    assert virasoro_embedding_check(AlgebraCfg(q, True), w).ok


def test_virasoro_central_coefficient():
    assert virasoro_central_coefficient(AlgebraCfg(2, True), 2) == Fraction(1, 8)
    for q in (1, 2, 3):
        for a in range(-4, 5):
            assert virasoro_central_coefficient(AlgebraCfg(q), a) == \
                Fraction(a ** 3 - a, 12 * q * q)


@pytest.mark.parametrize("q", [1, 2, 3])
def test_b1_embedding(q):
    assert b1_embedding_check(AlgebraCfg(q), Window(3, 2 * q)).ok


def test_b1_embedding_wrong_scale_fails():
    assert not b1_embedding_check(AlgebraCfg(2), Window(3, 4), scale=1).ok
    # for q = 1 the default scale is 1 and the embedding is the identity
    assert b1_embedding_check(AlgebraCfg(1), Window(3, 3), scale=1).ok
