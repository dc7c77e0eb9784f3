"""Automorphisms, window-tabulated linear maps, and derivations of B(q).

The automorphisms are sigma(L[a,i]) = s mu^a nu^i L[s a, i] with s = +-1 and
mu, nu nonzero; on the central extension they act on c by c -> s c.
Derivations are built from their values on the generators L[+-1,0], L[+-2,0],
L[0,1] along a fixed generation tree (see :func:`extend_derivation`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable

from .core import (ZERO, AlgebraCfg, Element, L, Window, bracket, bracket_basis, central,
                   check_element)
from .errors import ElementParseError, PreconditionError
from .linalg import solve
from .report import DEFAULT_LIMIT, ResidualReport


# -- automorphisms ------------------------------------------------------

@dataclass(frozen=True)
class AutParams:
    s: int = 1
    mu: Fraction = Fraction(1)
    nu: Fraction = Fraction(1)

    def __post_init__(self):
        if self.s not in (1, -1):
            raise ValueError("s must be +1 or -1, got %r" % (self.s,))
        object.__setattr__(self, "mu", Fraction(self.mu))
        object.__setattr__(self, "nu", Fraction(self.nu))
        if not self.mu or not self.nu:
            raise ValueError("mu and nu must be nonzero")

    def __str__(self):
        from .grammar import format_scalar
        return "s=%d,mu=%s,nu=%s" % (self.s, format_scalar(self.mu), format_scalar(self.nu))

    @classmethod
    def parse(cls, text: str) -> "AutParams":
        m = re.fullmatch(r"\s*s\s*=\s*([+-]?1)\s*,\s*mu\s*=\s*([^,]+?)\s*,"
                         r"\s*nu\s*=\s*([^,]+?)\s*", text)
        if not m:
            raise ElementParseError("expected 's=+-1,mu=<rational>,nu=<rational>'", text, 0)
        try:
            return cls(int(m.group(1)), Fraction(m.group(2)), Fraction(m.group(3)))
        except (ValueError, ZeroDivisionError) as exc:
            raise ElementParseError(str(exc), text, m.start(2)) from None


IDENTITY = AutParams()


def aut_image(cfg: AlgebraCfg, p: AutParams, idx) -> Element:
    a, i = idx
    return L(p.s * a, i, p.s * p.mu ** a * p.nu ** i)


def apply_aut(cfg: AlgebraCfg, p: AutParams, x: Element) -> Element:
    check_element(cfg, x)
    out = {}
    for (a, i), v in x._terms.items():
        out[(p.s * a, i)] = p.s * p.mu ** a * p.nu ** i * v
    return Element._raw(out, p.s * x.central)


def compose_aut(p1: AutParams, p2: AutParams) -> AutParams:
    """Parameters of ``sigma_{p1} o sigma_{p2}``."""
    return AutParams(p1.s * p2.s, p1.mu ** p2.s * p2.mu, p1.nu * p2.nu)


def invert_aut(p: AutParams) -> AutParams:
    return AutParams(p.s, p.mu ** (-p.s), 1 / p.nu)


# -- window maps --------------------------------------------------------

@dataclass
class WindowMap:
    """A linear map known by its images of the basis vectors of a window.

    ``central`` is the image of c, for maps on the extended algebra.
    """

    window: Window
    images: dict
    degree: int | None = None
    central: Element | None = None

    def image(self, idx) -> Element:
        idx = tuple(idx)
        if idx not in self.images:
            raise PreconditionError("L[%d,%d] is outside the window %s" % (idx + (self.window,)))
        return self.images[idx]

    def __call__(self, x: Element) -> Element:
        out = ZERO
        for idx, v in x.items():
            out = out + v * self.image(idx)
        if x.central:
            if self.central is None:
                raise PreconditionError("map has no prescribed image for c")
            out = out + x.central * self.central
        return out

    def __add__(self, other: "WindowMap") -> "WindowMap":
        keys = set(self.images) | set(other.images)
        return WindowMap(self.window, {k: self.images.get(k, ZERO) + other.images.get(k, ZERO)
                                       for k in sorted(keys)},
                         self.degree if self.degree == other.degree else None)

    def __rmul__(self, lam) -> "WindowMap":
        return WindowMap(self.window, {k: lam * v for k, v in self.images.items()},
                         self.degree)

    def __sub__(self, other):
        return self + (-1) * other

    def __eq__(self, other):
        if not isinstance(other, WindowMap):
            return NotImplemented
        keys = set(self.images) | set(other.images)
        return self.window == other.window and all(
            self.images.get(k, ZERO) == other.images.get(k, ZERO) for k in keys)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.images.values())

    def restrict(self, w: Window) -> "WindowMap":
        return WindowMap(w, {k: v for k, v in self.images.items() if k in w},
                         self.degree, self.central)


def tabulate(fn: Callable[[Element], Element], w: Window, degree=None, central=None) -> WindowMap:
    return WindowMap(w, {idx: fn(Element._raw({tuple(idx): Fraction(1)})) for idx in w},
                     degree, central)


def aut_map(cfg: AlgebraCfg, p: AutParams, w: Window) -> WindowMap:
    return tabulate(lambda x: apply_aut(cfg, p, x), w,
                    central=central(p.s) if cfg.extended else None)


def _closed_pairs(w: Window):
    """Unordered pairs of distinct window indices whose bracket index lies in w."""
    for x, y in combinations(w.indices(), 2):
        if (x[0] + y[0], x[1] + y[1]) in w:
            yield x, y


def hom_residuals(cfg: AlgebraCfg, m: WindowMap, w: Window, target_cfg: AlgebraCfg | None = None,
                  limit: int | None = DEFAULT_LIMIT) -> ResidualReport:
    """Residuals m([x,y]) - [m x, m y] over basis pairs of ``w`` whose bracket
    stays in ``w``.  ``target_cfg`` is the codomain (defaults to ``cfg``)."""
    tcfg = target_cfg or cfg
    report = ResidualReport("homomorphism", limit=limit)
    for x, y in _closed_pairs(w):
        b = bracket_basis(cfg, x, y)
        if b.central and m.central is None:
            continue
        res = m(b) - bracket(tcfg, m.image(x), m.image(y))
        report.record((x, y), res)
    return report


# -- derivations --------------------------------------------------------

def d0_apply(x: Element) -> Element:
    """L[b,j] -> j L[b,j]; c -> 0."""
    return Element._raw({k: k[1] * v for k, v in x._terms.items()})


def d0_map(w: Window) -> WindowMap:
    return tabulate(d0_apply, w, degree=0)


class InnerDerivation:
    """ad_u : x -> [u, x]."""

    def __init__(self, cfg: AlgebraCfg, u: Element):
        check_element(cfg, u)
        self.cfg = cfg.plain
        self.u = u.without_central()

    def __call__(self, x: Element) -> Element:
        return bracket(self.cfg, self.u, x.without_central())

    @property
    def degree(self):
        ds = {idx.alpha for idx in self.u.support()}
        return ds.pop() if len(ds) == 1 else None

    def tabulate(self, w: Window) -> WindowMap:
        return tabulate(self, w, degree=self.degree)


def inner_derivation(cfg: AlgebraCfg, u: Element) -> InnerDerivation:
    return InnerDerivation(cfg, u)


GENERATORS = ((1, 0), (-1, 0), (2, 0), (-2, 0), (0, 1))


@dataclass(frozen=True)
class GeneratorAssignment:
    """Images of L[1,0], L[-1,0], L[2,0], L[-2,0], L[0,1]."""

    l1: Element = ZERO
    lm1: Element = ZERO
    l2: Element = ZERO
    lm2: Element = ZERO
    l01: Element = ZERO

    @classmethod
    def from_map(cls, fn: Callable[[Element], Element]) -> "GeneratorAssignment":
        return cls(*(fn(L(*g)) for g in GENERATORS))

    def values(self) -> tuple:
        return (self.l1, self.lm1, self.l2, self.lm2, self.l01)

    def as_dict(self) -> dict:
        return dict(zip(GENERATORS, self.values()))

    def __add__(self, other):
        return GeneratorAssignment(*(a + b for a, b in zip(self.values(), other.values())))

    def __rmul__(self, lam):
        return GeneratorAssignment(*(lam * a for a in self.values()))


def generation_step(q: int, idx):
    """How the tree builds L[idx]: (scale, left, right) with
    L[idx] = scale * [L[left], L[right]], or None for a generator."""
    a, j = idx
    if idx in GENERATORS:
        return None
    if j == 0:
        if a == 0:
            return Fraction(1, 2 * q), (-1, 0), (1, 0)
        if a >= 3:
            return Fraction(1, (a - 2) * q), (1, 0), (a - 1, 0)
        return Fraction(1, (a + 2) * q), (-1, 0), (a + 1, 0)
    if a == 1:
        return Fraction(1, 1 + q), (0, 1), (1, j - 1)
    if a == 0:
        return Fraction(1, j + 2 * q), (-1, 0), (1, j)
    return Fraction(1, -a * (j + q)), (a, 0), (0, j)


def extend_derivation(cfg: AlgebraCfg, g: GeneratorAssignment, w: Window,
                      limit: int | None = DEFAULT_LIMIT):
    """Extend generator values to a linear map on ``w`` via the generation
    tree, then check Leibniz on the window.  Returns (map, residual report)."""
    pcfg = cfg.plain
    q = pcfg.q
    values = {k: v for k, v in g.as_dict().items()}

    @lru_cache(maxsize=None)
    def d(idx):
        if idx in values:
            return values[idx]
        scale, left, right = generation_step(q, idx)
        return scale * (bracket(pcfg, d(left), L(*right)) + bracket(pcfg, L(*left), d(right)))

    m = WindowMap(w, {idx: d(tuple(idx)) for idx in w})
    return m, leibniz_residuals(pcfg, m, w, limit)


def leibniz_residuals(cfg: AlgebraCfg, m: WindowMap, w: Window,
                      limit: int | None = DEFAULT_LIMIT) -> ResidualReport:
    """Residuals d([x,y]) - [d x, y] - [x, d y] over closed basis pairs of w."""
    pcfg = cfg.plain
    report = ResidualReport("leibniz", limit=limit)
    for x, y in _closed_pairs(w):
        res = (m(bracket_basis(pcfg, x, y)) - bracket(pcfg, m.image(x), L(*y))
               - bracket(pcfg, L(*x), m.image(y)))
        report.record((x, y), res)
    return report


def inner_solution(cfg: AlgebraCfg, m: WindowMap, w: Window):
    """Some u supported in ``w`` with ad_u = m on every basis vector of ``w``,
    or None when the exact system is infeasible."""
    pcfg = cfg.plain
    unknowns = w.indices()
    rows: dict = {}
    rhs: dict = {}
    for x in w:
        for u in unknowns:
            for t, c in bracket_basis(pcfg, u, x).items():
                rows.setdefault((x, t), {})[u] = c
        for t, c in m.image(x).items():
            rows.setdefault((x, t), {})
            rhs[(x, t)] = c
    keys = list(rows)
    sol = solve([rows[k] for k in keys], [rhs.get(k, 0) for k in keys], unknowns)
    if sol is None:
        return None
    return Element({k: v for k, v in sol.items()})


def decompose_by_degree(m: WindowMap) -> list:
    """Split m into homogeneous components: d_a(L[b,j]) is the degree a+b part
    of m(L[b,j]).  Returns [(a, WindowMap)] for the nonzero components."""
    parts: dict = {}
    for idx, img in m.images.items():
        for t, c in img.items():
            a = t.alpha - idx[0]
            parts.setdefault(a, {}).setdefault(idx, {})[t] = c
    out = []
    for a in sorted(parts):
        images = {idx: Element(parts[a].get(idx, {})) for idx in m.images}
        out.append((a, WindowMap(m.window, images, a)))
    return out
