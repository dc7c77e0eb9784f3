"""Desk-scale verification suites: each returns a list of :class:`Check`."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .cohomology import (H1_CORE, H1_WINDOW, H2_CORE, H2_WINDOW, canonical_cocycle,
                         cocycle_residuals, solve_h1, solve_h2)
from .core import AlgebraCfg, L, Window, bracket, jacobi_residual
from .isomorphism import (b1_embedding_check, constrained_iso_search, divisibility_obstruction,
                          virasoro_central_coefficient, virasoro_embedding_check)
from .morphisms import (IDENTITY, AutParams, GeneratorAssignment, apply_aut, aut_map, compose_aut,
                        d0_apply, d0_map, extend_derivation, hom_residuals, inner_derivation,
                        inner_solution, invert_aut, leibniz_residuals)

SUITES = ("jacobi", "aut", "der", "h1", "h2", "iso", "embed")
SCHEMA_VERSION = 1


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "suite": self.suite, "check": self.name,
                "passed": self.passed, "seconds": round(self.seconds, 3), **self.detail}

    def to_text(self) -> str:
        extra = ", ".join("%s=%s" % kv for kv in self.detail.items())
        return "%s %s/%s%s" % ("PASS" if self.passed else "FAIL", self.suite, self.name,
                               " (%s)" % extra if extra else "")


class _Timer:
    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t


def random_aut(rng: random.Random) -> AutParams:
    def rat():
        return Fraction(rng.choice((1, -1)) * rng.randint(1, 9), rng.randint(1, 9))
    return AutParams(rng.choice((1, -1)), rat(), rat())


# -- suites ---------------------------------------------------------------

def suite_jacobi(cfg: AlgebraCfg, w: Window = Window(4, 4)) -> list:
    basis = w.indices()
    with _Timer() as t:
        anti = 0
        for x in basis:
            for y in basis:
                if bracket(cfg, L(*x), L(*y)) + bracket(cfg, L(*y), L(*x)):
                    anti += 1
    checks = [Check("jacobi", "antisymmetry", anti == 0,
                    {"q": cfg.q, "extended": cfg.extended, "pairs": len(basis) ** 2,
                     "failed": anti}, t.seconds)]
    with _Timer() as t:
        bad = n = 0
        # the cyclic sum is alternating, so unordered triples cover all of them
        for x, y, z in combinations_with_replacement(basis, 3):
            n += 1
            if jacobi_residual(cfg, L(*x), L(*y), L(*z)):
                bad += 1
    checks.append(Check("jacobi", "jacobi", bad == 0,
                        {"q": cfg.q, "extended": cfg.extended, "triples": n, "failed": bad},
                        t.seconds))
    return checks


def suite_aut(cfg: AlgebraCfg, w: Window = Window(4, 3), n: int = 20, seed: int = 0) -> list:
    rng = random.Random(seed)
    params = [random_aut(rng) for _ in range(n)]
    checks = []
    with _Timer() as t:
        failed = [str(p) for p in params if hom_residuals(cfg, aut_map(cfg, p, w), w, limit=1)]
    checks.append(Check("aut", "homomorphism", not failed,
                        {"q": cfg.q, "instances": n, "window": str(w), "failed": len(failed)},
                        t.seconds))
    with _Timer() as t:
        ok = all(compose_aut(p, invert_aut(p)) == IDENTITY and compose_aut(invert_aut(p), p)
                 == IDENTITY for p in params)
        # composition law agrees with composing the maps
        basis = Window(3, 2).indices()
        for p1, p2 in zip(params, params[1:]):
            p3 = compose_aut(p1, p2)
            m2, m3 = (aut_map(cfg, p, Window(3, 2)) for p in (p2, p3))
            for idx in basis:
                ok = ok and m3.image(idx) == apply_aut(cfg, p1, m2.image(idx))
        assoc = all(compose_aut(compose_aut(a, b), c) == compose_aut(a, compose_aut(b, c))
                    for a, b, c in zip(params, params[1:], params[2:]))
    checks.append(Check("aut", "group-law", ok and assoc, {"instances": n}, t.seconds))
    with _Timer() as t:
        plus = [p for p in params if p.s == 1]
        flip = AutParams(-1, 1, 1)
        closed = all(compose_aut(a, b).s == 1 for a in plus for b in plus)
        normal = all(compose_aut(compose_aut(flip, p), invert_aut(flip)).s == 1
                     for p in plus) and all(
            compose_aut(compose_aut(g, p), invert_aut(g)).s == 1 for g in params for p in plus)
    checks.append(Check("aut", "semidirect", closed and normal,
                        {"closed": closed, "normal": normal}, t.seconds))
    return checks


def suite_der(cfg: AlgebraCfg) -> list:
    pcfg = cfg.plain
    checks = []
    with _Timer() as t:
        w = Window(4, 4)
        rep = leibniz_residuals(pcfg, d0_map(w), w)
    checks.append(Check("der", "d0-leibniz", rep.ok, {"pairs": rep.checked}, t.seconds))
    with _Timer() as t:
        u = inner_solution(pcfg, d0_map(Window(4, 3)), Window(4, 3))
    checks.append(Check("der", "d0-outer", u is None, {"window": "4,3"}, t.seconds))
    with _Timer() as t:
        w = Window(3, 3)
        m, rep = extend_derivation(pcfg, GeneratorAssignment.from_map(d0_apply), w)
        ok = rep.ok and m == d0_map(w)
        ad = inner_derivation(pcfg, L(0, 0))
        m2, rep2 = extend_derivation(pcfg, GeneratorAssignment.from_map(ad), w)
        ok = ok and rep2.ok and m2 == ad.tabulate(w)
    checks.append(Check("der", "extension", ok, {"window": str(w)}, t.seconds))
    return checks


def _grow(w: Window, core: Window) -> tuple:
    return Window(w.A + 1, w.I + 1), Window(core.A + 1, core.I + 1)


def suite_h1(cfg: AlgebraCfg, w: Window = H1_WINDOW, core: Window = H1_CORE) -> list:
    checks = []
    expected = {-2: 0, -1: 0, 0: 1, 1: 0, 2: 0}
    dims = {}
    with _Timer() as t:
        for ww, cc in ((w, core), _grow(w, core)):
            for deg in expected:
                r = solve_h1(cfg.plain, deg, ww, cc)
                dims[(str(ww), deg)] = r.dimension
                if deg == 0:
                    prop = r.proportional
    ok = all(dims[(str(ww), d)] == e for ww in (w, _grow(w, core)[0])
             for d, e in expected.items())
    checks.append(Check("h1", "dimension", ok and bool(prop),
                        {"q": cfg.q, "dims": {"%s/deg%d" % k: v for k, v in dims.items()},
                         "d0_representative": bool(prop)}, t.seconds))
    return checks


def suite_h2(cfg: AlgebraCfg, w: Window = H2_WINDOW, core: Window = H2_CORE) -> list:
    pcfg = cfg.plain
    checks = []
    with _Timer() as t:
        rep = cocycle_residuals(pcfg, canonical_cocycle(pcfg, Window(6, 3)), Window(6, 3))
    checks.append(Check("h2", "canonical-cocycle", rep.ok, {"triples": rep.checked}, t.seconds))
    with _Timer() as t:
        results = [solve_h2(pcfg, ww, cc) for ww, cc in ((w, core), _grow(w, core))]
    ok = all(r.dimension == 1 and r.proportional for r in results)
    checks.append(Check("h2", "dimension", ok,
                        {"q": cfg.q, "dimension": [r.dimension for r in results],
                         "lambda": [str(r.lam) for r in results]}, t.seconds))
    return checks


def suite_iso(cfg: AlgebraCfg, grid: int = 3, w: Window = Window(4, 2)) -> list:
    checks = []
    with _Timer() as t:
        bad = []
        for q1 in range(1, grid + 1):
            for q2 in range(1, grid + 1):
                r = constrained_iso_search(q1, q2, w)
                if q1 == q2:
                    good = (r.outcome == "Family" and r.matches_automorphisms)
                else:
                    good = r.empty
                good = good and divisibility_obstruction(q1, q2) == (q2 % q1 == 0)
                if not good:
                    bad.append("%d,%d" % (q1, q2))
    checks.append(Check("iso", "grid", not bad, {"grid": grid, "window": str(w),
                                                 "failed": bad}, t.seconds))
    return checks


def suite_embed(cfg: AlgebraCfg) -> list:
    q = cfg.q
    checks = []
    with _Timer() as t:
        w = Window(3, 2 * q)
        ok = (virasoro_embedding_check(AlgebraCfg(q), w).ok
              and virasoro_embedding_check(AlgebraCfg(q, True), w).ok
              and b1_embedding_check(AlgebraCfg(q), w).ok)
        central_ok = all(virasoro_central_coefficient(cfg, a)
                         == Fraction(a ** 3 - a, 12 * q * q) for a in range(-4, 5))
    checks.append(Check("embed", "embeddings", ok and central_ok,
                        {"q": q, "window": str(w)}, t.seconds))
    return checks


def run_suite(name: str, cfg: AlgebraCfg, window: Window | None = None,
              core: Window | None = None) -> list:
    if name == "all":
        return [c for s in SUITES for c in run_suite(s, cfg, window, core)]
    if name not in SUITES:
        raise ValueError("unknown suite %r" % name)
    if name == "jacobi":
        return suite_jacobi(cfg)
    if name == "aut":
        return suite_aut(cfg)
    if name == "der":
        return suite_der(cfg)
    if name == "h1":
        return suite_h1(cfg, window or H1_WINDOW, core or H1_CORE)
    if name == "h2":
        return suite_h2(cfg, window or H2_WINDOW, core or H2_CORE)
    if name == "iso":
        return suite_iso(cfg)
    return suite_embed(cfg)
