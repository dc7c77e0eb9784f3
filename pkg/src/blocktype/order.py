"""The total order on basis indices, minimal terms, and certificates for
ad-local finiteness / nilpotency.

Up to scalars L[0,0] is the only ad-locally finite element of B(q), and it is
not ad-locally nilpotent.  For any other element f we exhibit a basis vector v
whose iterates ad_f^k(v) have pairwise distinct leading terms, and confirm
their independence by an exact rank computation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import count

from .core import AlgebraCfg, BasisIndex, Element, L, ad_orbit, check_element
from .errors import InternalError, NoMinimalTermError, PreconditionError
from .linalg import rank

DEFAULT_DEPTH = 8


def order_key(idx) -> tuple:
    """Sort key realizing the order: (a,i) < (b,j) iff a < b, or a == b and i > j."""
    return (idx[0], -idx[1])


def precedes(a, b) -> bool:
    return order_key(a) < order_key(b)


def min_term(x: Element):
    """The minimal index with nonzero coefficient, and that coefficient."""
    if x.central:
        raise NoMinimalTermError("minimal term is undefined for elements with a central part")
    if not len(x):
        raise NoMinimalTermError("the zero element has no minimal term")
    idx = min(x.support(), key=order_key)
    return idx, x.coeff(idx)


class Finiteness(enum.Enum):
    LOCALLY_FINITE = "LocallyFinite"
    NOT_LOCALLY_FINITE = "NotLocallyFinite"


@dataclass(frozen=True)
class FinitenessVerdict:
    kind: Finiteness
    witness: tuple | None = None   # (v, K)
    leading: BasisIndex | None = None

    @property
    def locally_finite(self) -> bool:
        return self.kind is Finiteness.LOCALLY_FINITE


@dataclass(frozen=True)
class NilpotencyReport:
    nilpotent: bool
    certificate: Element | None = None
    verdict: FinitenessVerdict | None = None


def _small_integers():
    yield 0
    for n in count(1):
        yield n
        yield -n


def _first_beta(pred) -> int:
    # smallest |beta| first, positive before negative
    for b in _small_integers():
        if pred(b):
            return b


def witness_vector(cfg: AlgebraCfg, f: Element) -> tuple:
    """The basis vector v whose ad_f-orbit is infinite, and the term of f that
    drives the argument."""
    q = cfg.q
    support = f.support()
    negative = [t for t in support if t.alpha < 0]
    positive = [t for t in support if t.alpha > 0]
    if negative:
        a0, i0 = min(support, key=order_key)
        beta = _first_beta(lambda b: b * (i0 + q) - a0 * q < 0)
        return L(beta, 0), BasisIndex(a0, i0)
    if positive:
        # mirrored order: largest alpha first, then largest i
        a0, i0 = max(positive, key=lambda t: (t.alpha, t.i))
        beta = _first_beta(lambda b: b * (i0 + q) - a0 * q > 0)
        return L(beta, 0), BasisIndex(a0, i0)
    lead = min(support, key=order_key)
    return L(1, 0), lead


def local_finiteness(cfg: AlgebraCfg, f: Element, K: int = DEFAULT_DEPTH) -> FinitenessVerdict:
    check_element(cfg, f)
    if f.central:
        raise PreconditionError("local finiteness is decided for elements without central part")
    if K < 2:
        raise PreconditionError("certificate depth K must be at least 2")
    if all(t == (0, 0) for t in f.support()):
        return FinitenessVerdict(Finiteness.LOCALLY_FINITE)
    v, lead = witness_vector(cfg, f)
    orbit = ad_orbit(cfg, f, v, K)
    if not orbit_independent(orbit):
        raise InternalError("ad-orbit of %s under %s is dependent; this contradicts "
                            "the leading-term argument" % (v, f))
    return FinitenessVerdict(Finiteness.NOT_LOCALLY_FINITE, (v, K), lead)


def orbit_independent(orbit) -> bool:
    rows = [{k: c for k, c in x.items()} for x in orbit]
    return rank(rows) == len(orbit)


def local_nilpotency(cfg: AlgebraCfg, f: Element, K: int = DEFAULT_DEPTH) -> NilpotencyReport:
    check_element(cfg, f)
    if f.central:
        raise PreconditionError("local nilpotency is decided for elements without central part")
    if f.is_zero():
        return NilpotencyReport(True)
    if f.support() == [(0, 0)]:
        lam = f.coeff((0, 0))
        cert = ad_orbit(cfg, f, L(1, 0), K)[-1]
        if cert != L(1, 0, (lam * cfg.q) ** K):
            raise InternalError("unexpected iterate %s of L[1,0]" % cert)
        return NilpotencyReport(False, cert)
    return NilpotencyReport(False, verdict=local_finiteness(cfg, f, K))
