from __future__ import annotations

from fractions import Fraction

import pytest

import oracle
from blocktype import (AlgebraCfg, L, LinearFunctional, Window, WindowForm, canonical_cocycle,
                       coboundary_from_functional, cocycle_residuals, normalize_cocycle,
                       solve_h1, solve_h2)
from blocktype.errors import PreconditionError, WindowTooSmallError
from blocktype.morphisms import d0_map

B1, B2, B3 = AlgebraCfg(1), AlgebraCfg(2), AlgebraCfg(3)


# -- forms --------------------------------------------------------------

def test_window_form_is_antisymmetric():
    f = WindowForm(Window(2, 1), {((1, 0), (-1, 0)): 3})
    assert f.value((-1, 0), (1, 0)) == -3
    assert f.value((1, 0), (-1, 0)) == 3
    assert f(L(1, 0), L(-1, 0)) == 3
    assert f(L(1, 0) + L(-1, 0), L(1, 0) + L(-1, 0)) == 0
    with pytest.raises(ValueError):
        WindowForm(Window(1, 1), {((1, 0), (1, 0)): 1})


def test_canonical_cocycle_values():
    phi = canonical_cocycle(B1, Window(5, 3))
    assert phi.value((2, 0), (-2, 0)) == Fraction(1, 2)
    assert phi.value((1, 0), (-1, 0)) == 0
    assert phi.value((3, 0), (-3, 0)) == 2
    assert phi.value((3, 0), (-3, 0)) == Fraction(3 ** 3 - 3, 6) * phi.value((2, 0), (-2, 0))


@pytest.mark.parametrize("q", [1, 2, 3])
def test_canonical_cocycle_is_a_cocycle(q):
    w = Window(6, 3)
    assert cocycle_residuals(AlgebraCfg(q), canonical_cocycle(AlgebraCfg(q), w), w).ok


def test_zero_form_is_a_cocycle():
    assert cocycle_residuals(B1, WindowForm(Window(4, 2)), Window(4, 2)).ok


def test_single_value_form_is_not_a_cocycle():
    w = Window(5, 3)
    psi = WindowForm(w, {((1, 0), (-1, 0)): 1})
    assert not cocycle_residuals(B1, psi, w).ok


def test_coboundary_examples():
    w = Window(3, 2)
    for q in (1, 2, 3):
        f = LinearFunctional(w, {(0, 0): 1})
        psi = coboundary_from_functional(AlgebraCfg(q), f, w)
        assert psi.value((1, 0), (-1, 0)) == -2 * q
        assert psi.value((0, 1), (0, 2)) == 0
    assert coboundary_from_functional(B1, LinearFunctional(w), w).is_zero()


def test_coboundaries_are_cocycles():
    w = Window(4, 2)
    f = LinearFunctional(w, {(0, 0): 2, (1, 1): -1, (-2, 2): 5, (0, 2): 3})
    assert cocycle_residuals(B2, coboundary_from_functional(B2, f, w), w).ok


# -- normalization ------------------------------------------------------

def test_normalize_canonical_is_fixed():
    w = Window(4, 2)
    phi = canonical_cocycle(B1, w)
    normal, f = normalize_cocycle(B1, phi, w)
    assert f.is_zero()
    assert normal.values == phi.values


def test_normalize_coboundary_is_zero():
    w = Window(4, 2)
    g = LinearFunctional(w, {(0, 0): 2, (1, 1): -1, (-2, 2): 5, (0, 2): 3, (3, 0): 1})
    normal, f = normalize_cocycle(B1, coboundary_from_functional(B1, g, w), w)
    assert normal.is_zero()
    assert f.values == g.values


def test_normalize_cocycle_plus_coboundary():
    w = Window(4, 2)
    g = LinearFunctional(w, {(0, 1): 4, (-1, 2): Fraction(1, 3)})
    phi = canonical_cocycle(B2, w)
    normal, _ = normalize_cocycle(B2, 3 * phi + coboundary_from_functional(B2, g, w), w)
    assert normal.values == (3 * phi).values


def test_normalize_rejects_non_cocycle():
    w = Window(4, 2)
    with pytest.raises(PreconditionError):
        normalize_cocycle(B1, WindowForm(w, {((1, 0), (-1, 0)): 1}), w)


# -- H^1 ----------------------------------------------------------------

@pytest.mark.parametrize("q", [1, 2])
def test_h1_degree_zero_is_d0(q):
    r = solve_h1(AlgebraCfg(q), 0)
    assert r.dimension == 1
    assert r.proportional and r.lam == 1
    assert r.representatives[0] == d0_map(Window(3, 2))


@pytest.mark.parametrize("degree", [-2, -1, 1, 2])
def test_h1_other_degrees_vanish(degree):
    assert solve_h1(B1, degree).dimension == 0


@pytest.mark.parametrize("q,degree", [(1, -1), (1, 0), (1, 2), (2, 0), (2, 1), (3, 0)])
def test_h1_matches_oracle(q, degree):
    mine = solve_h1(AlgebraCfg(q), degree, Window(4, 3), Window(2, 2)).dimension
    assert mine == oracle.h1_dimension(q, degree, 4, 3, 2, 2)


def test_h1_stable_across_windows():
    small = [solve_h1(B2, d, Window(5, 4), Window(3, 2)).dimension for d in range(-2, 3)]
    large = [solve_h1(B2, d, Window(6, 5), Window(4, 3)).dimension for d in range(-2, 3)]
    assert small == large == [0, 0, 1, 0, 0]


def test_h1_window_too_small():
    with pytest.raises(WindowTooSmallError):
        solve_h1(B1, 0, Window(4, 3), Window(3, 2))


def test_h1_report_text():
    text = solve_h1(B1, 0).to_text()
    assert text.startswith("cohomology-report v1")
    assert "pattern: L[b,j] -> j*L[b,j]" in text
    assert "dimension: 1" in text


# -- H^2 ----------------------------------------------------------------

@pytest.mark.parametrize("q", [1, 2, 3])
def test_h2_dimension_one_with_lambda_one(q):
    r = solve_h2(AlgebraCfg(q))
    assert r.dimension == 1
    assert r.proportional and r.lam == 1
    assert r.representatives[0].values == canonical_cocycle(AlgebraCfg(q), Window(3, 1)).values


@pytest.mark.parametrize("q,w,c", [(1, (4, 1), (2, 0)), (2, (4, 1), (2, 0)), (1, (4, 2), (2, 1))])
def test_h2_matches_oracle(q, w, c):
    mine = solve_h2(AlgebraCfg(q), Window(*w), Window(*c)).dimension
    assert mine == oracle.h2_dimension(q, *w, *c) == 1


def test_h2_representative_vanishing_and_ratios():
    rep = solve_h2(B2, Window(6, 4), Window(4, 2)).representatives[0]
    for i in range(1, 3):
        assert rep.value((-2, i), (2, 0)) == 0
    for (a, b), v in rep.values.items():
        assert a[0] + b[0] == 0
    for alpha in (3, 4):
        ratio = rep.value((-alpha, 0), (alpha, 0)) / rep.value((-2, 0), (2, 0))
        assert ratio == Fraction(alpha ** 3 - alpha, 6)


def test_h2_needs_core_with_l20():
    with pytest.raises(WindowTooSmallError):
        solve_h2(B1, Window(3, 2), Window(1, 1))


def test_h2_report_schema():
    d = solve_h2(B1).to_dict()
    assert d["schema_version"] == 1
    assert d["kind"] == "h2"
    assert d["dimension"] == 1
    assert d["lambda"] == "1"
    assert d["proportional_to_phi"] is True
