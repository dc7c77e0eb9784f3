"""The nine acceptance criteria, each at its stated tolerance (exact) and
runtime budget.  Every criterion prints one PASS/FAIL line; the lines are
also repeated in the pytest terminal summary."""

from __future__ import annotations

import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations_with_replacement
from pathlib import Path

from blocktype import (AlgebraCfg, AutParams, Element, L, Window, ZERO, bracket,
                       canonical_cocycle, cocycle_residuals, compose_aut, constrained_iso_search,
                       divisibility_obstruction, format_element, hom_residuals, inner_solution,
                       invert_aut, leibniz_residuals, local_finiteness, local_nilpotency,
                       parse_element, solve_h1, solve_h2, virasoro_embedding_check,
                       b1_embedding_check)
from blocktype import cli
from blocktype.core import jacobi_residual
from blocktype.isomorphism import virasoro_central_coefficient
from blocktype.morphisms import IDENTITY, aut_map, d0_map
from blocktype.order import Finiteness, orbit_independent
from blocktype.core import ad_orbit

RESULTS: list = []
GOLDEN = Path(__file__).parent / "golden"


@contextmanager
def criterion(n: int, title: str, budget: float):
    t0 = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - t0
        assert elapsed < budget, "runtime %.2fs exceeds the %.0fs budget" % (elapsed, budget)
    except BaseException as exc:
        line = "criterion %d [%s]: FAIL (%.2fs) %s" % (n, title, time.perf_counter() - t0,
                                                      str(exc).splitlines()[0] if str(exc) else
                                                      type(exc).__name__)
        RESULTS.append(line)
        print(line)
        raise
    line = "criterion %d [%s]: PASS (%.2fs, budget %.0fs)" % (n, title, elapsed, budget)
    RESULTS.append(line)
    print(line)


def test_criterion_1_bracket_fidelity():
    with criterion(1, "bracket fidelity", 1.0):
        for q in (1, 2, 3):
            cfg = AlgebraCfg(q)
            for i in range(5):
                assert bracket(cfg, L(-1, i), L(1, 0)) == L(0, i, i + 2 * q)
                assert bracket(cfg, L(0, 1), L(1, i)) == L(1, i + 1, 1 + q)
                for a in range(-4, 5):
                    assert bracket(cfg, L(a, i), L(0, 0)) == L(a, i, -a * q)
                    assert bracket(cfg, L(a, 0), L(0, i)) == L(a, i, -a * (i + q))
            nested = bracket(cfg, L(-2, 0), bracket(cfg, L(2, 0), L(3, 0)))
            assert nested == L(3, 0, 7 * q * q)


def test_criterion_2_lie_axioms():
    with criterion(2, "antisymmetry and Jacobi on Window(4,4)", 10.0):
        basis = [L(*idx) for idx in Window(4, 4)]
        for q in (1, 2, 3):
            for extended in (False, True):
                cfg = AlgebraCfg(q, extended)
                for x in basis:
                    for y in basis:
                        assert bracket(cfg, x, y) + bracket(cfg, y, x) == ZERO
                # alternating, so unordered triples with repetition cover all triples
                for x, y, z in combinations_with_replacement(basis, 3):
                    assert jacobi_residual(cfg, x, y, z) == ZERO


def _random_aut(rng):
    def rat():
        return Fraction(rng.choice((1, -1)) * rng.randint(1, 9), rng.randint(1, 9))
    return AutParams(rng.choice((1, -1)), rat(), rat())


def test_criterion_3_automorphisms():
    with criterion(3, "automorphism group", 10.0):
        rng = random.Random(3)
        params = [_random_aut(rng) for _ in range(20)]
        w = Window(4, 3)
        cfg = AlgebraCfg(2)
        for p in params:
            assert hom_residuals(cfg, aut_map(cfg, p, w), w).ok
            assert compose_aut(p, invert_aut(p)) == IDENTITY
            assert compose_aut(invert_aut(p), p) == IDENTITY
        plus = [p for p in params if p.s == 1] + [AutParams(1, 2, 3)]
        for a in plus:
            for b in plus:
                assert compose_aut(a, b).s == 1
        for g in params + [AutParams(-1, 1, 1)]:
            for p in plus:
                assert compose_aut(compose_aut(g, p), invert_aut(g)).s == 1


def test_criterion_4_derivations():
    with criterion(4, "derivations and H^1", 60.0):
        assert leibniz_residuals(AlgebraCfg(1), d0_map(Window(4, 4)), Window(4, 4)).ok
        assert inner_solution(AlgebraCfg(1), d0_map(Window(4, 3)), Window(4, 3)) is None
        pairs = [(Window(5, 4), Window(3, 2)), (Window(6, 5), Window(4, 3))]
        for q in (1, 2):
            for w, core in pairs:
                dims = {d: solve_h1(AlgebraCfg(q), d, w, core).dimension
                        for d in (-2, -1, 0, 1, 2)}
                assert dims == {-2: 0, -1: 0, 0: 1, 1: 0, 2: 0}


def test_criterion_5_second_cohomology():
    with criterion(5, "second cohomology", 120.0):
        w6 = Window(6, 3)
        for q in (1, 2):
            cfg = AlgebraCfg(q)
            assert cocycle_residuals(cfg, canonical_cocycle(cfg, w6), w6).ok
            for w, core in ((Window(5, 3), Window(3, 1)), (Window(6, 4), Window(4, 2))):
                r = solve_h2(cfg, w, core)
                assert r.dimension == 1
                assert r.proportional and r.lam != 0
                rep = r.representatives[0]
                phi = canonical_cocycle(cfg, core)
                assert rep.values == (r.lam * phi).values
                for i in range(1, core.I + 1):
                    assert rep.value((-2, i), (2, 0)) == 0
                for a in core:
                    for b in core:
                        if a[0] + b[0] != 0:
                            assert rep.value(a, b) == 0
                for alpha in (3, 4):
                    if alpha <= core.A:
                        assert (rep.value((-alpha, 0), (alpha, 0))
                                == Fraction(alpha ** 3 - alpha, 6) * rep.value((-2, 0), (2, 0)))
            # alpha = 4 is inside the larger core, checked above


def test_criterion_6_isomorphism_classes():
    with criterion(6, "isomorphism search", 60.0):
        w = Window(4, 2)
        for q1 in (1, 2, 3):
            for q2 in (1, 2, 3):
                r = constrained_iso_search(q1, q2, w)
                assert divisibility_obstruction(q1, q2) == (q2 % q1 == 0)
                if q1 == q2:
                    assert r.outcome == "Family" and r.matches_automorphisms
                else:
                    assert r.empty, "B(%d) -> B(%d): %s" % (q1, q2, r.outcome)


def test_criterion_7_embeddings():
    with criterion(7, "embeddings", 5.0):
        for q in (1, 2, 3):
            w = Window(4, 2 * q)
            assert virasoro_embedding_check(AlgebraCfg(q), w).ok
            assert virasoro_embedding_check(AlgebraCfg(q, True), w).ok
            assert b1_embedding_check(AlgebraCfg(q), w).ok
            for a in range(-4, 5):
                assert virasoro_central_coefficient(AlgebraCfg(q, True), a) == \
                    Fraction(a ** 3 - a, 12) / (q * q)


def test_criterion_8_finiteness():
    with criterion(8, "finiteness certificates", 10.0):
        for q in (1, 2, 3):
            cfg = AlgebraCfg(q)
            for lam in (1, -3, Fraction(2, 5)):
                assert local_finiteness(cfg, L(0, 0, lam)).kind is Finiteness.LOCALLY_FINITE
            assert local_nilpotency(cfg, L(0, 0), K=8).certificate == L(1, 0, q ** 8)
        rng = random.Random(8)
        found = 0
        while found < 20:
            terms = {(rng.randint(-4, 4), rng.randint(0, 4)): Fraction(rng.randint(-5, 5),
                                                                        rng.randint(1, 3))
                     for _ in range(rng.randint(1, 4))}
            f = Element(terms)
            if not len(f) or f.support() == [(0, 0)]:
                continue
            cfg = AlgebraCfg(rng.randint(1, 3))
            v = local_finiteness(cfg, f, K=8)
            assert v.kind is Finiteness.NOT_LOCALLY_FINITE
            vec, K = v.witness
            assert K == 8 and orbit_independent(ad_orbit(cfg, f, vec, K))
            found += 1


GOLDEN_CASES = {
    "bracket_lower_raise": ["bracket", "--q", "1", "L[-1,2]", "L[1,0]"],
    "bracket_level_zero": ["bracket", "L[0,1]", "L[0,5]"],
    "bracket_degree_five": ["bracket", "--q", "2", "L[2,0]", "L[3,0]"],
    "h2_q1": ["h2", "--q", "1"],
    "h2_q2": ["h2", "--q", "2"],
    "h2_q2_large": ["h2", "--q", "2", "--window", "6,4", "--core", "4,2"],
}


def test_criterion_9_cli_contract(capsys):
    with criterion(9, "CLI round-trip and goldens", 60.0):
        rng = random.Random(9)
        for _ in range(100):
            terms = {(rng.randint(-9, 9), rng.randint(0, 9)): Fraction(rng.randint(-30, 30),
                                                                        rng.randint(1, 8))
                     for _ in range(rng.randint(0, 6))}
            x = Element(terms, Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
            text = format_element(x)
            assert parse_element(text) == x
            assert format_element(parse_element(text)) == text
        for name, argv in GOLDEN_CASES.items():
            for mode, suffix in (("plain", ".plain.txt"), ("json", ".json")):
                code = cli.main(argv + ["--output", mode], environ={})
                out = capsys.readouterr().out
                assert code == 0
                assert out == (GOLDEN / (name + suffix)).read_text(), name + suffix
