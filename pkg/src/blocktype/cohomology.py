"""Windowed first and second cohomology of B(q), exactly.

Both solvers work on a finite window ``w`` of basis indices and measure the
quotient on a strictly smaller ``core``, which suppresses the spurious
solutions created by truncation.

* H^1 (derivations modulo inner ones), one degree at a time.  A degree-a map
  d is unknown through the coefficients of L[a+b, k] in d(L[b,j]) for every
  (b,j) in w and k <= w.I.  Leibniz is imposed on every pair whose bracket
  lies in w, modulo the levels above w.I (the span of L[b,k], k > n, is an
  ideal preserved by all derivations, so this truncation is exact).  The
  quotient is read off on the core sources with target levels <= core.I.

* H^2 (2-cocycles modulo coboundaries) with trivial coefficients.  Unknowns
  are the values psi(a,b) for a < b in w; the cyclic identity is imposed on
  every triple whose three brackets lie in w.  Coboundaries come from
  functionals on every index reachable as a bracket of two window indices,
  so that core values whose bracket leaves w are still quotiented out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .core import AlgebraCfg, BasisIndex, Element, Window, central_term
from .errors import PreconditionError, WindowTooSmallError
from .grammar import format_element, format_scalar
from .linalg import Echelon
from .morphisms import WindowMap, d0_map
from .report import DEFAULT_LIMIT, ResidualReport

SCHEMA_VERSION = 1

H1_WINDOW, H1_CORE = Window(5, 4), Window(3, 2)
H2_WINDOW, H2_CORE = Window(5, 3), Window(3, 1)


# -- forms and functionals ----------------------------------------------

@dataclass
class WindowForm:
    """An antisymmetric bilinear form by its values on basis pairs of a window.

    ``values`` is keyed by (a, b) with a < b lexicographically; the value of
    (b, a) is the negative, and (a, a) is 0.
    """

    window: Window
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        vals = {}
        for (a, b), v in self.values.items():
            a, b = tuple(a), tuple(b)
            v = Fraction(v)
            if a == b:
                if v:
                    raise ValueError("antisymmetric form must vanish on (%s, %s)" % (a, b))
                continue
            if b < a:
                a, b, v = b, a, -v
            if v:
                vals[(a, b)] = v
        self.values = vals

    def value(self, a, b) -> Fraction:
        a, b = tuple(a), tuple(b)
        if a == b:
            return Fraction(0)
        if a < b:
            return self.values.get((a, b), Fraction(0))
        return -self.values.get((b, a), Fraction(0))

    def __call__(self, x: Element, y: Element) -> Fraction:
        total = Fraction(0)
        for a, u in x.items():
            for b, v in y.items():
                total += u * v * self.value(a, b)
        return total

    def __add__(self, other):
        vals = dict(self.values)
        for k, v in other.values.items():
            vals[k] = vals.get(k, 0) + v
        return WindowForm(self.window, vals)

    def __rmul__(self, lam):
        return WindowForm(self.window, {k: lam * v for k, v in self.values.items()})

    def __sub__(self, other):
        return self + (-1) * other

    def restrict(self, w: Window) -> "WindowForm":
        return WindowForm(w, {k: v for k, v in self.values.items() if k[0] in w and k[1] in w})

    def agrees(self, other: "WindowForm", w: Window) -> bool:
        return self.restrict(w).values == other.restrict(w).values

    def is_zero(self) -> bool:
        return not self.values

    def items(self) -> list:
        return [((BasisIndex(*a), BasisIndex(*b)), v) for (a, b), v in sorted(self.values.items())]


@dataclass
class LinearFunctional:
    """A linear function B(q) -> Q, zero off its stored support."""

    window: Window
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = {tuple(k): Fraction(v) for k, v in self.values.items() if v}

    def __call__(self, x: Element) -> Fraction:
        return sum((c * self.values.get(tuple(idx), 0) for idx, c in x.items()), Fraction(0))

    def is_zero(self) -> bool:
        return not self.values


def _br(q, a, b):
    """(coefficient, index) of the plain bracket of two basis indices."""
    k = b[0] * (a[1] + q) - a[0] * (b[1] + q)
    return k, (a[0] + b[0], a[1] + b[1])


def _pairs(w: Window):
    return list(combinations(w.indices(), 2))


def _admissible_triples(w: Window):
    for x, y, z in combinations(w.indices(), 3):
        if ((x[0] + y[0], x[1] + y[1]) in w and (y[0] + z[0], y[1] + z[1]) in w
                and (z[0] + x[0], z[1] + x[1]) in w):
            yield x, y, z


def cocycle_residuals(cfg: AlgebraCfg, psi: WindowForm, w: Window,
                      limit: int | None = DEFAULT_LIMIT) -> ResidualReport:
    """psi([x,y],z) + psi([y,z],x) + psi([z,x],y) over admissible basis triples.

    The cyclic sum is alternating in (x,y,z) for antisymmetric psi, so
    distinct unordered triples cover everything.
    """
    q = cfg.q
    report = ResidualReport("cocycle", limit=limit)
    for x, y, z in _admissible_triples(w):
        total = Fraction(0)
        for u, v, t in ((x, y, z), (y, z, x), (z, x, y)):
            k, idx = _br(q, u, v)
            if k:
                total += k * psi.value(idx, t)
        report.record((x, y, z), total)
    return report


def coboundary_from_functional(cfg: AlgebraCfg, f: LinearFunctional, w: Window) -> WindowForm:
    """psi_f(x, y) = f([x, y]) on the pairs of ``w``."""
    q = cfg.q
    vals = {}
    for a, b in _pairs(w):
        k, idx = _br(q, a, b)
        v = f.values.get(idx)
        if k and v:
            vals[(a, b)] = k * v
    return WindowForm(w, vals)


def canonical_cocycle(cfg: AlgebraCfg, w: Window) -> WindowForm:
    """phi(L[a,i], L[b,j]) = (a^3 - a)/12 if a + b = 0 and i = j = 0."""
    vals = {}
    for a in range(-w.A, w.A + 1):
        if a < -a:
            v = central_term(a)
            if v:
                vals[((a, 0), (-a, 0))] = v
    return WindowForm(w, vals)


def normalization_functional(cfg: AlgebraCfg, psi: WindowForm, w: Window) -> LinearFunctional:
    q = cfg.q
    if w.A < 1:
        raise WindowTooSmallError("normalization needs L[-1,i] and L[1,0] in the window")
    vals = {}
    for a, i in w:
        if a:
            vals[(a, i)] = -psi.value((a, i), (0, 0)) / (a * q)
        else:
            vals[(a, i)] = psi.value((-1, i), (1, 0)) / (i + 2 * q)
    return LinearFunctional(w, vals)


def normalize_cocycle(cfg: AlgebraCfg, psi: WindowForm, w: Window, check: bool = True):
    """Subtract the coboundary that kills psi(L[a,i], L[0,0]) (a != 0) and
    psi(L[-1,i], L[1,0]).  Returns (phi, f) with phi = psi - psi_f."""
    if check:
        res = cocycle_residuals(cfg, psi, w, limit=1)
        if res:
            raise PreconditionError("form is not a 2-cocycle on window %s: %s"
                                    % (w, res.to_text()))
    f = normalization_functional(cfg, psi, w)
    return psi - coboundary_from_functional(cfg, f, w), f


# -- reports ------------------------------------------------------------

@dataclass
class CohomReport:
    kind: str
    q: int
    window: Window
    core: Window
    dimension: int
    representatives: list
    degree: int | None = None
    lam: Fraction | None = None
    proportional: bool | None = None
    unknowns: int = 0
    equations: int = 0

    def to_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "kind": self.kind,
            "q": self.q,
            "window": [self.window.A, self.window.I],
            "core": [self.core.A, self.core.I],
        }
        if self.kind == "h1":
            out["degree"] = self.degree
        out["dimension"] = self.dimension
        out["representatives"] = [_rep_values(r) for r in self.representatives]
        key = "proportional_to_d0" if self.kind == "h1" else "proportional_to_phi"
        out[key] = self.proportional
        out["lambda"] = None if self.lam is None else format_scalar(self.lam)
        return out

    def to_text(self) -> str:
        d = self.to_dict()
        lines = ["cohomology-report v%d" % SCHEMA_VERSION,
                 "kind: %s" % self.kind,
                 "q: %d" % self.q,
                 "window: %s" % self.window,
                 "core: %s" % self.core]
        if self.kind == "h1":
            lines.append("degree: %d" % self.degree)
        lines.append("dimension: %d" % self.dimension)
        for n, rep in enumerate(d["representatives"]):
            lines.append("representative %d:" % (n + 1))
            arrow = "->" if self.kind == "h1" else "="
            for key, val in rep:
                lines.append("  %s %s %s" % (key, arrow, val))
        if self.kind == "h1":
            lines.append("pattern: %s" % ("L[b,j] -> j*L[b,j]" if self.proportional else "none"))
        else:
            lines.append("proportional: %s" % ("yes" if self.proportional else "no"))
        lines.append("lambda: %s" % (d["lambda"] if d["lambda"] is not None else "none"))
        return "\n".join(lines)


def _rep_values(rep) -> list:
    if isinstance(rep, WindowForm):
        return [["(%s, %s)" % (a, b), format_scalar(v)] for (a, b), v in rep.items()]
    return [[str(BasisIndex(*idx)), format_element(img)]
            for idx, img in sorted(rep.images.items()) if img]


def _check_windows(w: Window, core: Window):
    if core.A > w.A - 2 or core.I > w.I - 1:
        raise WindowTooSmallError(
            "core %s must sit strictly inside window %s (core.A <= A-2, core.I <= I-1); "
            "enlarge the window" % (core, w))


def _quotient(sol, sub, columns):
    """Canonical basis of span(sol) / span(sub) restricted to ``columns``.

    Returns (dimension, representatives, sub_rank).  Each representative is
    reduced against the RREF of ``sub`` and the set is itself in RREF.
    """
    colset = set(columns)
    restrict = lambda v: {k: c for k, c in v.items() if k in colset and c}
    e_sub = Echelon(columns)
    for v in sub:
        e_sub.add(restrict(v))
    e_sol = Echelon(columns)
    for v in sol:
        e_sol.add(restrict(v))
    e_rest = Echelon(columns)
    for v in sol:
        r = e_sub.reduce(restrict(v))
        if r:
            e_rest.add(r)
    if e_sol.rank != e_sub.rank + e_rest.rank:
        # sub is not contained in sol on the core
        from .errors import InternalError
        raise InternalError("coboundary/inner space is not inside the solution space")
    return e_rest.rank, e_rest.reduced_rows(), e_sub.rank


# -- H^1 ----------------------------------------------------------------

def _h1_columns(degree, w, levels):
    return [((b, j), (degree + b, k)) for b, j in w for k in levels]


def solve_h1(cfg: AlgebraCfg, degree: int, w: Window = H1_WINDOW,
             core: Window = H1_CORE) -> CohomReport:
    _check_windows(w, core)
    q = cfg.q
    top = w.I
    columns = _h1_columns(degree, w, range(top + 1))
    e = Echelon(columns)
    n_eq = 0
    for x, y in _pairs(w):
        k, s = _br(q, x, y)
        if s not in w:
            continue
        rows: dict = {}
        # d([x,y]) = k d(L[s])
        if k:
            for m in range(top + 1):
                rows.setdefault(m, {})[(s, (degree + s[0], m))] = Fraction(k)
        # - [d x, y] : d x has terms L[degree + x0, kx]
        for kx in range(top + 1):
            c, t = _br(q, (degree + x[0], kx), y)
            if c and t[1] <= top:
                row = rows.setdefault(t[1], {})
                key = (x, (degree + x[0], kx))
                row[key] = row.get(key, 0) - c
        # - [x, d y]
        for ky in range(top + 1):
            c, t = _br(q, x, (degree + y[0], ky))
            if c and t[1] <= top:
                row = rows.setdefault(t[1], {})
                key = (y, (degree + y[0], ky))
                row[key] = row.get(key, 0) - c
        for row in rows.values():
            row = {key: c for key, c in row.items() if c}
            if row:
                n_eq += 1
                e.add(row)
    sol = e.kernel(columns)

    inner = []
    for lvl in range(top + 1):
        v = {}
        for src in w:
            c, t = _br(q, (degree, lvl), src)
            if c and t[1] <= top:
                v[(src, t)] = Fraction(c)
        if v:
            inner.append(v)

    core_cols = _h1_columns(degree, core, range(core.I + 1))
    dim, reps, _ = _quotient(sol, inner, core_cols)
    maps = []
    for r in reps:
        images = {}
        for (src, tgt), c in r.items():
            images.setdefault(src, {})[tgt] = c
        maps.append(WindowMap(core, {idx: Element(images.get(idx, {})) for idx in core}, degree))
    prop, lam = None, None
    if degree == 0 and len(maps) == 1:
        d0 = d0_map(core)
        rep = maps[0]
        lam = rep.image((0, 1)).coeff((0, 1))
        prop = bool(lam) and rep == lam * d0
        if not prop:
            lam = None
    return CohomReport("h1", q, w, core, dim, maps, degree, lam, prop,
                       unknowns=len(columns), equations=n_eq)


# -- H^2 ----------------------------------------------------------------

def solve_h2(cfg: AlgebraCfg, w: Window = H2_WINDOW, core: Window = H2_CORE) -> CohomReport:
    _check_windows(w, core)
    if core.A < 2:
        raise WindowTooSmallError("core must contain L[2,0] and L[-2,0]")
    pcfg = cfg.plain
    q = cfg.q
    columns = _pairs(w)
    e = Echelon(columns)
    n_eq = 0
    for x, y, z in _admissible_triples(w):
        row: dict = {}
        for u, v, t in ((x, y, z), (y, z, x), (z, x, y)):
            k, idx = _br(q, u, v)
            if not k or idx == t:
                continue
            key, sign = ((idx, t), 1) if idx < t else ((t, idx), -1)
            row[key] = row.get(key, 0) + sign * k
        row = {key: c for key, c in row.items() if c}
        if row:
            n_eq += 1
            e.add(row)
    cocycles = e.kernel(columns)

    cob: dict = {}
    for a, b in columns:
        k, idx = _br(q, a, b)
        if k:
            cob.setdefault(idx, {})[(a, b)] = Fraction(k)
    coboundaries = [cob[t] for t in sorted(cob)]

    core_cols = _pairs(core)
    dim, reps, _ = _quotient(cocycles, coboundaries, core_cols)
    forms = []
    lam, prop = None, None
    for r in reps:
        form = WindowForm(core, r)
        form, _ = normalize_cocycle(pcfg, form, core)
        forms.append(form)
    if len(forms) == 1:
        phi = canonical_cocycle(pcfg, core)
        rep = forms[0]
        at = rep.value((2, 0), (-2, 0))
        if at:
            rep = (Fraction(1, 2) / at) * rep
            forms[0] = rep
        ref = phi.value((2, 0), (-2, 0))
        lam = rep.value((2, 0), (-2, 0)) / ref
        prop = bool(lam) and rep.values == (lam * phi).values
        if not prop:
            lam = None
    return CohomReport("h2", q, w, core, dim, forms, None, lam, prop,
                       unknowns=len(columns), equations=n_eq)
