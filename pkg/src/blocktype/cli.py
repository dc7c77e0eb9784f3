"""Command-line front end: ``blocktype <command> [args] [--q N] [--output json] ...``.

Exit codes: 0 success, 1 mathematical failure (a residual report or a
verification check came out nonempty), 2 usage error, 3 parse error in an
element or parameter string, 4 precondition violation (including windows too
small), 5 invalid use of the central element, 6 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import cohomology, isomorphism, morphisms, order, verify
from .core import AlgebraCfg, BasisIndex, Element, L, Window, ad_pow, bracket, check_element
from .errors import (BlockTypeError, ElementParseError, InternalError, InvalidElementError,
                     NoMinimalTermError, PreconditionError)
from .grammar import format_element, format_scalar, parse_element, parse_scalar

SCHEMA_VERSION = 1
CONFIG_ENV = "BLOCKTYPE_CONFIG"
DEFAULT_CONFIG = "blocktype.cfg"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_PRECONDITION = 4
EXIT_INVALID_ELEMENT = 5
EXIT_INTERNAL = 6


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    q: int = 1
    extended: bool = False
    window: Window | None = None
    core: Window | None = None
    degree: int = 0
    output: str = "plain"

    def __post_init__(self):
        if self.q < 1:
            raise UsageError("q must be a positive integer")
        if self.output not in ("plain", "json"):
            raise UsageError("output must be 'plain' or 'json'")
        if self.window is not None and self.core is not None:
            w, c = self.window, self.core
            if not (c.A < w.A and c.I < w.I):
                raise UsageError("core %s must lie strictly inside window %s" % (c, w))

    @property
    def algebra(self) -> AlgebraCfg:
        return AlgebraCfg(self.q, self.extended)


# -- config -------------------------------------------------------------

def parse_window(text: str) -> Window:
    try:
        a, i = (int(p) for p in text.split(","))
        return Window(a, i)
    except (ValueError, TypeError):
        raise UsageError("expected a window 'A,I' with nonnegative integers, got %r" % text)


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise UsageError("expected a boolean, got %r" % text)


def _int(text: str, key: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError("%s must be an integer, got %r" % (key, text))


_CONVERTERS = {
    "q": lambda v: _int(v, "q"),
    "extended": _bool,
    "window": parse_window,
    "core": parse_window,
    "degree": lambda v: _int(v, "degree"),
    "output": lambda v: v.strip(),
}


def read_config_file(path: str) -> dict:
    """Flat ``key = value`` lines; '#' starts a comment."""
    out = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError("cannot read config file %s: %s" % (path, exc.strerror))
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError("%s:%d: expected key=value" % (path, n))
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in _CONVERTERS:
            raise UsageError("%s:%d: unknown key %r" % (path, n, key))
        out[key] = _CONVERTERS[key](val)
    return out


def resolve_config(args: argparse.Namespace, environ=None) -> CliConfig:
    """flags > config file > defaults."""
    environ = os.environ if environ is None else environ
    path = args.config or environ.get(CONFIG_ENV)
    values = {}
    if path:
        values.update(read_config_file(path))
    elif os.path.exists(DEFAULT_CONFIG):
        values.update(read_config_file(DEFAULT_CONFIG))
    for key in _CONVERTERS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = parse_window(flag) if key in ("window", "core") else flag
    return CliConfig(**values)


# -- output -------------------------------------------------------------

def emit(cfg: CliConfig, record: dict, text: str) -> None:
    if cfg.output == "json":
        print(json.dumps({"schema_version": SCHEMA_VERSION, **record}, sort_keys=True))
    else:
        print(text)


def _elem(text: str, cfg: CliConfig):
    x = parse_element(text)
    check_element(cfg.algebra, x)
    return x


def _base(cmd: str, cfg: CliConfig) -> dict:
    return {"command": cmd, "q": cfg.q, "extended": cfg.extended}


# -- commands -----------------------------------------------------------

def cmd_bracket(args, cfg):
    x, y = _elem(args.x, cfg), _elem(args.y, cfg)
    r = format_element(bracket(cfg.algebra, x, y))
    emit(cfg, {**_base("bracket", cfg), "x": format_element(x), "y": format_element(y),
               "result": r}, r)
    return EXIT_OK


def cmd_adpow(args, cfg):
    f, v = _elem(args.f, cfg), _elem(args.v, cfg)
    if args.k < 0:
        raise PreconditionError("k must be nonnegative")
    r = format_element(ad_pow(cfg.algebra, f, v, args.k))
    emit(cfg, {**_base("adpow", cfg), "f": format_element(f), "v": format_element(v),
               "k": args.k, "result": r}, r)
    return EXIT_OK


def cmd_minterm(args, cfg):
    x = _elem(args.x, cfg)
    idx, c = order.min_term(x)
    emit(cfg, {**_base("minterm", cfg), "x": format_element(x), "index": [idx.alpha, idx.i],
               "coefficient": format_scalar(c)}, "%s %s" % (idx, format_scalar(c)))
    return EXIT_OK


def cmd_finite(args, cfg):
    f = _elem(args.f, cfg)
    verdict = order.local_finiteness(cfg.algebra, f, args.k)
    nil = order.local_nilpotency(cfg.algebra, f, args.k)
    rec = {**_base("finite", cfg), "f": format_element(f), "kind": verdict.kind.value,
           "locally_nilpotent": nil.nilpotent}
    lines = [verdict.kind.value]
    if verdict.witness:
        v, k = verdict.witness
        rec["witness"] = {"v": format_element(v), "K": k}
        rec["leading"] = [verdict.leading.alpha, verdict.leading.i]
        lines.append("witness: v = %s, K = %d (iterates independent)" % (format_element(v), k))
        lines.append("leading term: %s" % (verdict.leading,))
    if nil.certificate is not None:
        rec["nilpotency_certificate"] = format_element(nil.certificate)
        lines.append("not nilpotent: ad_f^%d(L[1,0]) = %s" % (args.k,
                                                             format_element(nil.certificate)))
    else:
        lines.append("locally nilpotent: %s" % ("yes" if nil.nilpotent else "no"))
    emit(cfg, rec, "\n".join(lines))
    return EXIT_OK


def cmd_aut(args, cfg):
    if args.action == "apply":
        p = morphisms.AutParams.parse(args.params)
        x = _elem(args.x, cfg)
        r = format_element(morphisms.apply_aut(cfg.algebra, p, x))
        emit(cfg, {**_base("aut apply", cfg), "params": str(p), "x": format_element(x),
                   "result": r}, r)
    elif args.action == "compose":
        p1 = morphisms.AutParams.parse(args.params)
        p2 = morphisms.AutParams.parse(args.other)
        r = str(morphisms.compose_aut(p1, p2))
        emit(cfg, {**_base("aut compose", cfg), "p1": str(p1), "p2": str(p2), "result": r}, r)
    else:
        p = morphisms.AutParams.parse(args.params)
        r = str(morphisms.invert_aut(p))
        emit(cfg, {**_base("aut invert", cfg), "params": str(p), "result": r}, r)
    return EXIT_OK


def _report_out(cfg, rec, report, header):
    rec = {**rec, "report": report.to_dict()}
    emit(cfg, rec, "\n".join([header, report.to_text()]))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_der(args, cfg):
    pcfg = cfg.algebra.plain
    w = cfg.window or Window(4, 4)
    if args.action == "d0":
        x = _elem(args.x, cfg)
        r = format_element(morphisms.d0_apply(x))
        emit(cfg, {**_base("der d0", cfg), "x": format_element(x), "result": r}, r)
        return EXIT_OK
    if args.action == "extend":
        vals = [_elem(t, cfg) for t in args.images]
        g = morphisms.GeneratorAssignment(*vals)
        m, rep = morphisms.extend_derivation(pcfg, g, w)
        rec = {**_base("der extend", cfg), "window": [w.A, w.I],
               "generators": {str(BasisIndex(*k)): format_element(v)
                              for k, v in g.as_dict().items()}}
        if args.table:
            rec["table"] = {str(BasisIndex(*k)): format_element(v)
                            for k, v in sorted(m.images.items()) if v}
            lines = ["%s -> %s" % (k, v) for k, v in rec["table"].items()]
            header = "\n".join(["window: %s" % w] + lines)
        else:
            header = "window: %s" % w
        return _report_out(cfg, rec, rep, header)
    # check
    if args.inner:
        u = _elem(args.inner, cfg)
        m = morphisms.inner_derivation(pcfg, u).tabulate(w)
        label = "ad_(%s)" % format_element(u.without_central())
    else:
        m = morphisms.d0_map(w)
        label = "D0"
    rep = morphisms.leibniz_residuals(pcfg, m, w)
    u = morphisms.inner_solution(pcfg, m, w)
    inner = None if u is None else format_element(u)
    rec = {**_base("der check", cfg), "map": label, "window": [w.A, w.I], "inner": inner}
    header = "map: %s\nwindow: %s\ninner: %s" % (label, w, inner if inner else
                                                "infeasible (no u with ad_u equal to the map)")
    return _report_out(cfg, rec, rep, header)


def cmd_h1(args, cfg):
    w = cfg.window or cohomology.H1_WINDOW
    core = cfg.core or cohomology.H1_CORE
    r = cohomology.solve_h1(cfg.algebra.plain, cfg.degree, w, core)
    emit(cfg, {"command": "h1", **r.to_dict()}, r.to_text())
    return EXIT_OK


def cmd_h2(args, cfg):
    w = cfg.window or cohomology.H2_WINDOW
    core = cfg.core or cohomology.H2_CORE
    r = cohomology.solve_h2(cfg.algebra.plain, w, core)
    emit(cfg, {"command": "h2", **r.to_dict()}, r.to_text())
    return EXIT_OK


def cmd_normalize(args, cfg):
    """Normalize lambda*phi + psi_f and report what is left."""
    pcfg = cfg.algebra.plain
    w = cfg.window or cohomology.H2_CORE
    lam = parse_scalar(args.phi)
    f_el = _elem(args.functional, cfg) if args.functional else L(0, 0, 0)
    if f_el.central:
        raise InvalidElementError("the functional is given by coefficients on L[a,i] only")
    f = cohomology.LinearFunctional(w, {tuple(k): v for k, v in f_el.items()})
    phi = cohomology.canonical_cocycle(pcfg, w)
    psi = lam * phi + cohomology.coboundary_from_functional(pcfg, f, w)
    normal, g = cohomology.normalize_cocycle(pcfg, psi, w)
    prop = normal.values == (lam * phi).values
    vals = [["(%s, %s)" % (a, b), format_scalar(v)] for (a, b), v in normal.items()]
    g_text = format_element(Element(g.values))
    rec = {**_base("normalize", cfg), "window": [w.A, w.I], "lambda": format_scalar(lam),
           "functional": g_text, "normalized": vals, "equals_lambda_phi": prop}
    lines = ["window: %s" % w, "removed functional: %s" % g_text, "normalized:"]
    lines += ["  %s = %s" % tuple(kv) for kv in vals] or ["  0"]
    lines.append("equals %s*phi: %s" % (format_scalar(lam), "yes" if prop else "no"))
    emit(cfg, rec, "\n".join(lines))
    return EXIT_OK if prop else EXIT_FAIL


def cmd_iso(args, cfg):
    w = cfg.window or Window(4, 2)
    r = isomorphism.constrained_iso_search(args.q1, args.q2, w)
    emit(cfg, {"command": "iso", **r.to_dict()}, r.to_text())
    return EXIT_OK


def cmd_embed(args, cfg):
    q = cfg.q
    w = cfg.window or Window(3, 2 * q)
    if args.kind == "vir":
        rep = isomorphism.virasoro_embedding_check(cfg.algebra, w)
        rec = {**_base("embed vir", cfg), "window": [w.A, w.I]}
        header = "virasoro embedding L_a -> L[a,0]/%d on window %s" % (q, w)
        if cfg.extended:
            coeffs = {a: isomorphism.virasoro_central_coefficient(cfg.algebra, a)
                      for a in range(-w.A, w.A + 1)}
            rec["central_coefficients"] = {str(a): format_scalar(c) for a, c in coeffs.items()}
            header += "\ncentral coefficients: " + ", ".join(
                "%d: %s" % (a, format_scalar(c)) for a, c in coeffs.items())
    else:
        scale = parse_scalar(args.scale) if args.scale else None
        rep = isomorphism.b1_embedding_check(cfg.algebra, w, scale)
        rec = {**_base("embed b1", cfg), "window": [w.A, w.I],
               "scale": format_scalar(scale if scale is not None else Fraction(1, q))}
        header = "B(1) embedding M[a,i] -> %s*L[a,%d i] on window %s" % (
            rec["scale"], q, w)
    return _report_out(cfg, rec, rep, header)


def cmd_verify(args, cfg):
    if args.suite not in verify.SUITES + ("all",):
        raise UsageError("unknown suite %r (choose from %s, all)"
                         % (args.suite, ", ".join(verify.SUITES)))
    checks = verify.run_suite(args.suite, cfg.algebra, cfg.window, cfg.core)
    ok = all(c.passed for c in checks)
    if cfg.output == "json":
        for c in checks:
            print(json.dumps(c.to_dict(), sort_keys=True))
        print(json.dumps({"schema_version": SCHEMA_VERSION, "suite": args.suite,
                          "passed": ok, "checks": len(checks)}, sort_keys=True))
    else:
        for c in checks:
            print(c.to_text())
        print("%s: %d/%d checks passed" % (args.suite, sum(c.passed for c in checks),
                                           len(checks)))
    return EXIT_OK if ok else EXIT_FAIL


# -- parser -------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("configuration")
    g.add_argument("--q", type=int, default=None, help="algebra parameter (default 1)")
    g.add_argument("--extended", action="store_true", default=None,
                   help="use the central extension")
    g.add_argument("--window", default=None, metavar="A,I")
    g.add_argument("--core", default=None, metavar="A,I")
    g.add_argument("--degree", type=int, default=None, help="degree for h1 (default 0)")
    g.add_argument("--output", choices=("plain", "json"), default=None)
    g.add_argument("--config", default=None, metavar="PATH",
                   help="key=value config file (default $%s or ./%s)"
                        % (CONFIG_ENV, DEFAULT_CONFIG))
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    # configuration flags live on the leaf commands only: a parent parser
    # sharing them would let subparser defaults clobber earlier values
    parser = argparse.ArgumentParser(prog="blocktype", description="Exact computations in the Lie algebras B(q).")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help, leaf=True):
        p = sub.add_parser(name, parents=[common] if leaf else [], help=help)
        p.set_defaults(func=fn)
        return p

    p = add("bracket", cmd_bracket, "bracket of two elements")
    p.add_argument("x")
    p.add_argument("y")
    p = add("adpow", cmd_adpow, "ad_f^k(v)")
    p.add_argument("f")
    p.add_argument("v")
    p.add_argument("k", type=int)
    p = add("minterm", cmd_minterm, "minimal term of an element")
    p.add_argument("x")
    p = add("finite", cmd_finite, "ad-local finiteness and nilpotency")
    p.add_argument("f")
    p.add_argument("--k", type=int, default=order.DEFAULT_DEPTH, help="certificate depth")

    p = add("aut", cmd_aut, "automorphisms s,mu,nu", leaf=False)
    asub = p.add_subparsers(dest="action", required=True)
    a = asub.add_parser("apply", parents=[common])
    a.add_argument("params", help="s=1,mu=2,nu=3/2")
    a.add_argument("x")
    a = asub.add_parser("compose", parents=[common])
    a.add_argument("params")
    a.add_argument("other")
    a = asub.add_parser("invert", parents=[common])
    a.add_argument("params")

    p = add("der", cmd_der, "derivations", leaf=False)
    dsub = p.add_subparsers(dest="action", required=True)
    d = dsub.add_parser("extend", parents=[common],
                        help="extend images of L[1,0] L[-1,0] L[2,0] L[-2,0] L[0,1]")
    d.add_argument("images", nargs=5)
    d.add_argument("--table", action="store_true", help="print the whole map")
    d = dsub.add_parser("check", parents=[common], help="Leibniz and innerness of D0 or ad_u")
    d.add_argument("--inner", default=None, metavar="U")
    d = dsub.add_parser("d0", parents=[common], help="apply D0")
    d.add_argument("x")

    add("h1", cmd_h1, "first cohomology at one degree")
    add("h2", cmd_h2, "second cohomology with trivial coefficients")
    p = add("normalize", cmd_normalize, "normalize lambda*phi + psi_f")
    p.add_argument("--phi", default="1", metavar="LAMBDA")
    p.add_argument("--functional", default=None, metavar="ELEMENT",
                   help="f given by its coefficients, e.g. '2*L[1,0] - L[0,1]'")
    p = add("iso", cmd_iso, "constrained isomorphism search B(q1) -> B(q2)")
    p.add_argument("q1", type=int)
    p.add_argument("q2", type=int)
    p = add("embed", cmd_embed, "subalgebra embeddings")
    p.add_argument("kind", choices=("vir", "b1"))
    p.add_argument("--scale", default=None, help="override the b1 scaling (default 1/q)")
    p = add("verify", cmd_verify, "run a verification suite")
    p.add_argument("suite", help="one of %s or all" % ", ".join(verify.SUITES))
    return parser


def main(argv=None, environ=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = resolve_config(args, environ)
        return args.func(args, cfg)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except ElementParseError as exc:
        print("parse error: %s" % exc.annotated(), file=sys.stderr)
        return EXIT_PARSE
    except InvalidElementError as exc:
        print("invalid element: %s" % exc, file=sys.stderr)
        return EXIT_INVALID_ELEMENT
    except (PreconditionError, NoMinimalTermError) as exc:
        print("precondition failed: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION
    except InternalError as exc:
        print("internal error: %s" % exc, file=sys.stderr)
        return EXIT_INTERNAL
    except BlockTypeError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
