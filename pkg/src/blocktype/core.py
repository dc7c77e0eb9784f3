"""Exact sparse arithmetic in the Block-type algebras B(q) and their central
extensions.

Elements are finite combinations of the basis vectors ``L[alpha,i]`` (alpha an
integer, i >= 0) plus a coefficient on the central element ``c``.  The bracket
is

    [L[a,i], L[b,j]] = (b(i+q) - a(j+q)) L[a+b,i+j]
                       + delta(a+b,0) delta(i,0) delta(j,0) (a^3-a)/12 c

where the central term is present only in the extended algebra.  All
coefficients are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from numbers import Rational
from typing import Iterable, Iterator, Mapping, NamedTuple, Tuple

from .errors import InvalidElementError

Scalar = Fraction


def scalar(value) -> Fraction:
    """Coerce an int, Fraction or rational string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational, str)):
        return Fraction(value)
    raise TypeError("not an exact rational: %r" % (value,))


class BasisIndex(NamedTuple):
    alpha: int
    i: int

    def __str__(self):
        return "L[%d,%d]" % (self.alpha, self.i)


@dataclass(frozen=True)
class AlgebraCfg:
    q: int = 1
    extended: bool = False

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 1:
            raise ValueError("q must be a positive integer, got %r" % (self.q,))

    @property
    def plain(self) -> "AlgebraCfg":
        return AlgebraCfg(self.q, False)


@dataclass(frozen=True)
class Window:
    """The box |alpha| <= A, 0 <= i <= I of basis indices."""

    A: int
    I: int

    def __post_init__(self):
        if self.A < 0 or self.I < 0:
            raise ValueError("window bounds must be nonnegative: %r" % (self,))

    def __contains__(self, idx) -> bool:
        a, i = idx
        return -self.A <= a <= self.A and 0 <= i <= self.I

    def indices(self) -> list:
        """All indices of the window in lexicographic (alpha, i) order."""
        return [BasisIndex(a, i) for a, i in
                product(range(-self.A, self.A + 1), range(self.I + 1))]

    def __iter__(self) -> Iterator[BasisIndex]:
        return iter(self.indices())

    def __len__(self):
        return (2 * self.A + 1) * (self.I + 1)

    def inside(self, other: "Window") -> bool:
        """True if this window is contained in ``other``."""
        return self.A <= other.A and self.I <= other.I

    def __str__(self):
        return "%d,%d" % (self.A, self.I)


class Element:
    """An immutable finite linear combination of basis vectors plus a central
    coefficient.  Zero coefficients are never stored."""

    __slots__ = ("_terms", "_central", "_hash")

    def __init__(self, terms: Mapping | Iterable = (), central=0):
        items = terms.items() if isinstance(terms, Mapping) else terms
        data = {}
        for idx, coeff in items:
            a, i = idx
            if not (isinstance(a, int) and isinstance(i, int)):
                raise TypeError("basis index must be a pair of ints: %r" % (idx,))
            if i < 0:
                raise ValueError("basis index needs i >= 0: %r" % (idx,))
            key = (a, i)
            data[key] = data.get(key, 0) + scalar(coeff)
        self._terms = {k: v for k, v in data.items() if v}
        self._central = scalar(central)
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, central=Fraction(0)) -> "Element":
        # trusted constructor: keys are valid tuples, values Fractions
        self = object.__new__(cls)
        self._terms = {k: v for k, v in terms.items() if v}
        self._central = central if isinstance(central, Fraction) else Fraction(central)
        self._hash = None
        return self

    # -- access ---------------------------------------------------------
    @property
    def central(self) -> Fraction:
        return self._central

    def coeff(self, idx) -> Fraction:
        return self._terms.get(tuple(idx), Fraction(0))

    def items(self) -> list:
        """(BasisIndex, coefficient) pairs in lexicographic order."""
        return [(BasisIndex(*k), self._terms[k]) for k in sorted(self._terms)]

    def support(self) -> list:
        return [BasisIndex(*k) for k in sorted(self._terms)]

    @property
    def terms(self) -> dict:
        return dict(self.items())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms and not self._central

    def __bool__(self):
        return not self.is_zero()

    def without_central(self) -> "Element":
        return Element._raw(self._terms)

    # -- vector space ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Element):
            if other == 0:
                return self
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return Element._raw(out, self._central + other._central)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw({k: -v for k, v in self._terms.items()}, -self._central)

    def __sub__(self, other):
        if not isinstance(other, Element):
            if other == 0:
                return self
            return NotImplemented
        return self + (-other)

    def __mul__(self, lam):
        if isinstance(lam, Element):
            return NotImplemented
        lam = scalar(lam)
        if not lam:
            return ZERO
        return Element._raw({k: lam * v for k, v in self._terms.items()},
                            lam * self._central)

    __rmul__ = __mul__

    def __truediv__(self, lam):
        return self * (1 / scalar(lam))

    def __eq__(self, other):
        if isinstance(other, Element):
            return self._terms == other._terms and self._central == other._central
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self._terms.items()), self._central))
        return self._hash

    def __str__(self):
        from .grammar import format_element
        return format_element(self)

    def __repr__(self):
        return "Element(%r)" % str(self)


ZERO = Element()


def L(alpha: int, i: int = 0, coeff=1) -> Element:
    """The basis vector ``coeff * L[alpha, i]``."""
    return Element({(alpha, i): coeff})


def central(coeff=1) -> Element:
    """``coeff * c``."""
    return Element((), coeff)


def check_element(cfg: AlgebraCfg, x: Element) -> None:
    if not isinstance(x, Element):
        raise TypeError("expected an Element, got %r" % (x,))
    if x._central and not cfg.extended:
        raise InvalidElementError(
            "element %s has a central component but the algebra B(%d) is centerless"
            % (x, cfg.q))


def structure_constant(q: int, a: Tuple[int, int], b: Tuple[int, int]) -> int:
    """The integer ``b(i+q) - a(j+q)`` with ``a = (alpha, i)``, ``b = (beta, j)``."""
    return b[0] * (a[1] + q) - a[0] * (b[1] + q)


def central_term(alpha: int) -> Fraction:
    """Coefficient of c in [L[alpha,0], L[-alpha,0]] for the extended algebra."""
    return Fraction(alpha ** 3 - alpha, 12)


def bracket_basis(cfg: AlgebraCfg, a, b) -> Element:
    a = tuple(a)
    b = tuple(b)
    k = structure_constant(cfg.q, a, b)
    terms = {(a[0] + b[0], a[1] + b[1]): Fraction(k)} if k else {}
    c = Fraction(0)
    if cfg.extended and a[0] + b[0] == 0 and a[1] == 0 and b[1] == 0:
        c = central_term(a[0])
    return Element._raw(terms, c)


def bracket(cfg: AlgebraCfg, x: Element, y: Element) -> Element:
    check_element(cfg, x)
    check_element(cfg, y)
    return _bracket(cfg.q, cfg.extended, x, y)


def _bracket(q: int, extended: bool, x: Element, y: Element) -> Element:
    out: dict = {}
    c = Fraction(0)
    for (a, i), u in x._terms.items():
        for (b, j), v in y._terms.items():
            k = b * (i + q) - a * (j + q)
            if k:
                key = (a + b, i + j)
                # integral coefficients are by far the common case; int
                # arithmetic avoids constructing intermediate Fractions
                if u._denominator == 1 and v._denominator == 1:
                    t = k * u._numerator * v._numerator
                else:
                    t = k * u * v
                old = out.get(key)
                out[key] = t if old is None else old + t
            if extended and a + b == 0 and i == 0 and j == 0:
                c += central_term(a) * u * v
    return Element._raw({key: v if type(v) is Fraction else Fraction(v)
                         for key, v in out.items()}, c)


def ad_pow(cfg: AlgebraCfg, f: Element, v: Element, k: int) -> Element:
    """``ad_f^k (v)`` with ``ad_f(x) = [f, x]``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    for _ in range(k):
        v = bracket(cfg, f, v)
    return v


def ad_orbit(cfg: AlgebraCfg, f: Element, v: Element, k: int) -> list:
    """The list ``[v, ad_f v, ..., ad_f^k v]``."""
    out = [v]
    for _ in range(k):
        v = bracket(cfg, f, v)
        out.append(v)
    return out


def jacobi_residual(cfg: AlgebraCfg, x: Element, y: Element, z: Element) -> Element:
    for e in (x, y, z):
        check_element(cfg, e)
    q, ext = cfg.q, cfg.extended
    br = lambda u, v: _bracket(q, ext, u, v)
    return br(br(x, y), z) + br(br(y, z), x) + br(br(z, x), y)


def degree_component(x: Element, alpha: int) -> Element:
    """Projection onto span{L[alpha, i]}; c belongs to degree 0."""
    terms = {k: v for k, v in x._terms.items() if k[0] == alpha}
    return Element._raw(terms, x._central if alpha == 0 else Fraction(0))


def degrees(x: Element) -> list:
    ds = {k[0] for k in x._terms}
    if x._central:
        ds.add(0)
    return sorted(ds)


def supported_in(x: Element, w: Window) -> bool:
    return all(k in w for k in x._terms)
