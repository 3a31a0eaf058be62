"""Batch command-line front end.

Subcommands: ``coeff`` (render heat coefficients, optionally against the
bundled reference tables), ``eval`` (cosmology tables for the named expansion
factors), ``pscc`` (packed-sphere expansions and the reconciliation report),
and ``verify`` (numeric identity suites with machine-readable reports).

Exit codes: 0 success, 2 validation error, 3 reference-table mismatch,
4 numeric verification failure.  A flat key=value config file can provide
defaults for any long option; explicit flags win.  SPECEXP_THREADS caps the
worker count used by the Monte Carlo and QMC internals.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import numpy as np

from . import bell, bridge, expansion, pscc, specfun, symcore, zeta

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_GOLDEN = 3
EXIT_VERIFY = 4


class ValidationError(Exception):
    pass


def worker_count() -> int:
    raw = os.environ.get("SPECEXP_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass
class RunConfig:
    """Merged command configuration (config file overridden by flags)."""

    command: str
    order: int = 0
    max_order: int = 4
    form: str = "ab"
    fmt: str = "text"
    family: str = "inflation"
    H: float = 1.0
    t: float = 1.0
    max_m: int = 2
    string: str = "ford"
    geometry: str = "s4"
    lam: float = 10.0
    testfn: str = "gaussian"
    seed: int = 0
    tolerance: float | None = None
    check_golden: bool = False
    reconcile: bool = False
    mode: str = "action"
    suite: str = "all"
    fast: bool = False
    mc_paths: int = 200_000
    mc_grid: int = 1024


def _read_config_file(path: str) -> dict:
    values = {}
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValidationError(f"bad config line: {line!r}")
            key, val = line.split("=", 1)
            values[key.strip()] = val.strip()
    return values


def _merge_config(args: argparse.Namespace) -> RunConfig:
    file_vals = _read_config_file(args.config) if args.config else {}
    cfg = RunConfig(command=args.command)
    mapping = {
        "order": int,
        "max_order": int,
        "form": str,
        "fmt": str,
        "family": str,
        "H": float,
        "t": float,
        "max_m": int,
        "string": str,
        "geometry": str,
        "lam": float,
        "testfn": str,
        "seed": int,
        "tolerance": float,
        "suite": str,
        "mc_paths": int,
        "mc_grid": int,
    }
    alias = {
        "maxM": "max_m",
        "format": "fmt",
        "lambda": "lam",
        "paths": "mc_paths",
        "grid": "mc_grid",
    }
    for key, raw in file_vals.items():
        attr = alias.get(key, key)
        if attr not in mapping:
            raise ValidationError(f"unknown config key {key!r}")
        setattr(cfg, attr, mapping[attr](raw))
    for attr in (
        "order",
        "max_order",
        "form",
        "fmt",
        "family",
        "H",
        "t",
        "max_m",
        "string",
        "geometry",
        "lam",
        "testfn",
        "seed",
        "tolerance",
        "check_golden",
        "reconcile",
        "mode",
        "suite",
        "fast",
        "mc_paths",
        "mc_grid",
    ):
        val = getattr(args, attr, None)
        if val is not None:
            setattr(cfg, attr, val)
    return cfg


# ----------------------------------------------------------------------
# coeff
# ----------------------------------------------------------------------

def _reference_tables() -> dict:
    raw = resources.files("specexp").joinpath("data/reference_coefficients.json").read_text()
    return json.loads(raw)


def cmd_coeff(cfg: RunConfig) -> int:
    if cfg.order < 0:
        raise ValidationError("order must be non-negative")
    if cfg.order > cfg.max_order:
        raise ValidationError(
            f"order {cfg.order} above the complexity guard ({cfg.max_order}); "
            "raise --max-order explicitly if intended"
        )
    if cfg.form not in ("ab", "a"):
        raise ValidationError("form must be 'ab' or 'a'")
    if cfg.fmt not in ("text", "latex", "json"):
        raise ValidationError("format must be text, latex or json")
    poly = expansion.a2M(cfg.order)
    if cfg.check_golden:
        tables = _reference_tables()
        entry = tables.get(str(2 * cfg.order))
        if entry is None:
            raise ValidationError(f"no bundled reference for order {2 * cfg.order}")
        ok_ab = symcore.sympoly_from_json(entry["ab"]) == poly
        ok_a = symcore.aform_from_json(entry["a"]) == symcore.to_a_form(poly)
        if not (ok_ab and ok_a):
            print(f"reference mismatch at order {2 * cfg.order}", file=sys.stderr)
            return EXIT_GOLDEN
        print(f"order {2 * cfg.order}: matches bundled reference (ab and a forms)")
        return EXIT_OK
    if cfg.form == "ab":
        if cfg.fmt == "text":
            print(symcore.sympoly_to_text(poly))
        elif cfg.fmt == "latex":
            print(symcore.sympoly_to_latex(poly))
        else:
            print(json.dumps(symcore.sympoly_to_json(poly)))
    else:
        aform = symcore.to_a_form(poly)
        if cfg.fmt == "text":
            print(symcore.aform_to_text(aform))
        elif cfg.fmt == "latex":
            print(symcore.aform_to_latex(aform))
        else:
            print(json.dumps(symcore.aform_to_json(aform)))
    return EXIT_OK


# ----------------------------------------------------------------------
# eval
# ----------------------------------------------------------------------

def cmd_eval(cfg: RunConfig) -> int:
    if cfg.family not in expansion.FAMILIES or cfg.family == "custom":
        raise ValidationError(f"family must be one of {expansion.FAMILIES[:-1]}")
    factor = expansion.scale_factor(cfg.family, H=cfg.H)
    if cfg.max_m > cfg.max_order:
        raise ValidationError("maxM above the complexity guard; raise --max-order")
    try:
        rows = expansion.heat_trace_series(cfg.max_m, factor, cfg.t)
    except ZeroDivisionError as exc:
        raise ValidationError(f"evaluation singularity: {exc}") from exc
    if cfg.fmt == "csv":
        print("exponent,re,im,kind")
        for p, v in rows:
            print(f"{p},{v!r},0.0,bulk")
    elif cfg.fmt == "json":
        print(json.dumps([{"exponent": p, "value": v} for p, v in rows]))
    else:
        print(f"family={cfg.family} H={cfg.H} t={cfg.t}")
        print(f"{'tau power':>10}  value")
        for p, v in rows:
            print(f"{p:>10}  {v:.12g}")
    return EXIT_OK


# ----------------------------------------------------------------------
# pscc
# ----------------------------------------------------------------------

def _resolve_string(name: str):
    if name == "ford":
        return zeta.FordString()
    if name.endswith(".json"):
        try:
            return zeta.load_string(name)
        except (OSError, ValueError, KeyError) as exc:
            raise ValidationError(f"cannot load string descriptor: {exc}") from exc
    raise ValidationError(f"unknown string {name!r} (use 'ford' or a .json path)")


def cmd_pscc(cfg: RunConfig) -> int:
    string = _resolve_string(cfg.string)
    if cfg.reconcile:
        print(pscc.ford_constants_report_text())
        rep = pscc.ford_constants_reconciliation()
        if not (rep["Lambda^2"]["match"] and rep["Lambda^4"]["match"]):
            return EXIT_VERIFY
        return EXIT_OK
    if cfg.geometry == "s4":
        geometry = pscc.S4Geometry()
    elif cfg.geometry == "rw":
        geometry = pscc.RWGeometry(expansion.scale_factor(cfg.family, H=cfg.H), cfg.t)
    else:
        raise ValidationError("geometry must be 's4' or 'rw'")
    if cfg.lam <= 0:
        raise ValidationError("lambda must be positive")
    try:
        if cfg.mode == "heat":
            terms = pscc.round_heat_expansion(string, cfg.max_m, geometry)
        else:
            if cfg.testfn != "gaussian":
                raise ValidationError("only the gaussian test function is built in")
            terms = pscc.spectral_action(
                string, pscc.gaussian_test_function(), cfg.lam, cfg.max_m, geometry
            )
    except pscc.CollisionError as exc:
        raise ValidationError(str(exc)) from exc
    if cfg.fmt == "json":
        print(json.dumps(pscc.expansion_to_json(terms)))
    elif cfg.fmt == "csv":
        print("exponent,re,im,kind")
        for t in terms:
            e = complex(t.exponent)
            c = complex(float(t.coeff)) if isinstance(
                t.coeff, (Fraction, zeta.ExactToken)
            ) else complex(t.coeff)
            print(f"{e.real:+.12g}{e.imag:+.12g}j,{c.real!r},{c.imag!r},{t.kind}")
    else:
        print(pscc.expansion_table(terms))
    return EXIT_OK


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------

def _suite_bridge(seed: int, fast: bool, n_paths: int = 200_000, n_grid: int = 1024) -> list[dict]:
    checks = []
    rng = np.random.default_rng(seed)
    # exact route equivalence on a small random word set
    words = []
    for _ in range(8):
        n = int(rng.integers(1, 4))
        w = tuple(int(x) for x in rng.integers(1, 4, n))
        if sum(w) <= 7:
            words.append(w)
    route_ok = all(
        bridge.simplex_integrate(bridge.monomial_bridge_polynomial(w), len(w))
        == bridge.monomial_simplex_integral(w)
        for w in words
    )
    checks.append({"name": "route-equivalence", "pass": bool(route_ok), "detail": f"{len(words)} words"})
    exact = bridge.moment_product({1: 2})
    checks.append(
        {"name": "x1^2-exact", "pass": exact == Fraction(1, 12), "detail": str(exact)}
    )
    if fast:
        n_paths, n_grid = min(n_paths, 20_000), min(n_grid, 128)
    est, se = bridge.mc_estimate({1: 2}, n_paths, n_grid, seed, worker_count())
    dev = abs(est - 1.0 / 12.0) / se
    checks.append(
        {
            "name": "mc-x1^2",
            "pass": dev <= 4.0,
            "detail": f"est={est:.6g} se={se:.2g} dev={dev:.2f} sigma",
        }
    )
    m24 = bridge.moment_product({2: 1})
    checks.append({"name": "x2-exact", "pass": m24 == Fraction(1, 6), "detail": str(m24)})
    return checks


def _suite_dawson(seed: int, fast: bool) -> list[dict]:
    checks = []
    rng = np.random.default_rng(seed)
    grid = np.linspace(-10, 10, 81)
    h = 1e-6
    resid = max(
        abs((specfun.dawson(x + h) - specfun.dawson(x - h)) / (2 * h) - 1 + 2 * x * specfun.dawson(x))
        for x in grid
    )
    checks.append({"name": "dawson-ode", "pass": resid < 1e-8, "detail": f"max residual {resid:.2g}"})
    draws = 2 if fast else 5
    for n in (1, 2, 3):
        ok = True
        worst = 0.0
        for _ in range(draws):
            u = rng.uniform(0.3, 2.0, n)
            lhs, rhs, good = specfun.verify_dawson_simplex(
                n, u, specfun.QuadratureSpec(dimension=n, tolerance=1e-9)
            )
            worst = max(worst, abs(lhs - rhs))
            ok = ok and good
        checks.append(
            {"name": f"dawson-simplex-n{n}", "pass": ok, "detail": f"worst |diff| {worst:.2g}"}
        )
    u4 = rng.uniform(0.3, 2.0, 4)
    pts = 1_000_000 if fast else 10_000_000
    lhs, rhs, ok4 = specfun.verify_dawson_simplex(
        4, u4, specfun.QuadratureSpec(dimension=4, tolerance=1e-5 if not fast else 1e-4, qmc_points=pts, seed=seed)
    )
    checks.append(
        {"name": "dawson-simplex-n4", "pass": ok4, "detail": f"|diff|={abs(lhs-rhs):.2g} ({pts} pts)"}
    )
    return checks


def _suite_mellin(seed: int, fast: bool) -> list[dict]:
    checks = []
    rng = np.random.default_rng(seed)
    draws = 3 if fast else 10
    ok = True
    worst = 0.0
    for _ in range(draws):
        U = float(rng.uniform(0.2, 3.0))
        V = float(rng.uniform(-3.0, 3.0))
        lhs, rhs, good = specfun.verify_gaussian_multiplicity(U, V)
        ok = ok and good
        worst = max(worst, abs(lhs - rhs))
    checks.append({"name": "gaussian-multiplicity", "pass": ok, "detail": f"worst {worst:.2g}"})
    ok = True
    for _ in range(draws):
        U = float(rng.uniform(0.2, 3.0))
        V = float(rng.uniform(-3.0, 3.0))
        lhs, rhs, good = specfun.verify_mellin_z1(U, V)
        ok = ok and good
    checks.append({"name": "mellin-z1", "pass": ok, "detail": f"{draws} draws"})
    ok = True
    for _ in range(draws):
        z = complex(rng.uniform(0.6, 3.0), rng.uniform(-1.5, 1.5))
        U = float(rng.uniform(0.3, 2.5))
        V = float(rng.uniform(-2.5, 2.5))
        ok = ok and specfun.verify_mellin_pm(z, U, V)
    checks.append({"name": "mellin-pm", "pass": ok, "detail": f"{draws} draws"})
    return checks


def _suite_bell(seed: int, fast: bool) -> list[dict]:
    checks = []

    def partitions_count(n: int) -> int:
        # brute-force set partition count
        def rec(rest):
            if not rest:
                return 1
            first, tail = rest[0], rest[1:]
            total = 0
            import itertools

            for k in range(len(tail) + 1):
                for block in itertools.combinations(tail, k):
                    remaining = tuple(x for x in tail if x not in block)
                    total += rec(remaining)
            return total

        return rec(tuple(range(n)))

    upto = 7 if fast else 9
    ok = all(bell.bell_number(n) == partitions_count(n) for n in range(0, upto))
    checks.append({"name": "bell-row-sum", "pass": ok, "detail": f"n<= {upto - 1}"})
    rng = np.random.default_rng(seed)
    ok = True
    for _ in range(10):
        n = int(rng.integers(1, 8))
        k = int(rng.integers(0, n + 1))
        xs = [Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4))) for _ in range(n - k + 1 if n >= k else 1)]
        c = Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 4)))
        lhs = bell.bell_polynomial(n, k, [c**i * x for i, x in enumerate(xs, start=1)])
        rhs = c**n * bell.bell_polynomial(n, k, xs)
        ok = ok and lhs == rhs
    checks.append({"name": "bell-homogeneity", "pass": ok, "detail": "10 random draws"})
    val = bell.faa_di_bruno(3, [math.e, math.e, math.e], [1.0, 0.0, 0.0])
    checks.append(
        {"name": "faa-di-bruno-exp", "pass": abs(val - math.e) < 1e-12, "detail": f"{val:.12g}"}
    )
    return checks


_SUITES = {
    "bridge": _suite_bridge,
    "dawson": _suite_dawson,
    "mellin": _suite_mellin,
    "bell": _suite_bell,
}


def cmd_verify(cfg: RunConfig) -> int:
    names = list(_SUITES) if cfg.suite == "all" else [cfg.suite]
    if any(n not in _SUITES for n in names):
        raise ValidationError(f"suite must be one of {list(_SUITES) + ['all']}")
    report = {"seed": cfg.seed, "suites": {}}
    all_ok = True
    for name in names:
        if name == "bridge":
            checks = _suite_bridge(cfg.seed, cfg.fast, cfg.mc_paths, cfg.mc_grid)
        else:
            checks = _SUITES[name](cfg.seed, cfg.fast)
        ok = all(c["pass"] for c in checks)
        all_ok = all_ok and ok
        report["suites"][name] = {"pass": ok, "checks": checks}
    report["pass"] = all_ok
    if cfg.fmt == "json":
        print(json.dumps(report, indent=1))
    else:
        for name, data in report["suites"].items():
            print(f"[{name}] {'PASS' if data['pass'] else 'FAIL'}")
            for c in data["checks"]:
                print(f"  {'ok ' if c['pass'] else 'FAIL'} {c['name']}: {c['detail']}")
        print(f"overall: {'PASS' if all_ok else 'FAIL'}")
    return EXIT_OK if all_ok else EXIT_VERIFY


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specexp",
        description="exact spectral-action expansions for Robertson-Walker and packed-sphere geometries",
    )
    parser.add_argument("--config", help="flat key=value defaults file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeff", help="render a heat coefficient")
    p.add_argument("--order", type=int, default=None, help="M in a_{2M}")
    p.add_argument("--form", choices=("ab", "a"), default=None)
    p.add_argument("--format", dest="fmt", choices=("text", "latex", "json"), default=None)
    p.add_argument("--check-golden", dest="check_golden", action="store_true", default=None)
    p.add_argument("--max-order", dest="max_order", type=int, default=None)

    p = sub.add_parser("eval", help="evaluate cosmology coefficient tables")
    p.add_argument("--family", default=None)
    p.add_argument("--H", type=float, default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--maxM", dest="max_m", type=int, default=None)
    p.add_argument("--format", dest="fmt", choices=("text", "csv", "json"), default=None)
    p.add_argument("--max-order", dest="max_order", type=int, default=None)

    p = sub.add_parser("pscc", help="packed-sphere expansions")
    p.add_argument("--string", default=None, help="'ford' or a descriptor .json path")
    p.add_argument("--geometry", choices=("s4", "rw"), default=None)
    p.add_argument("--family", default=None)
    p.add_argument("--H", type=float, default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--maxM", dest="max_m", type=int, default=None)
    p.add_argument("--testfn", choices=("gaussian",), default=None)
    p.add_argument("--mode", choices=("action", "heat"), default=None)
    p.add_argument("--format", dest="fmt", choices=("text", "csv", "json"), default=None)
    p.add_argument("--reconcile-paper", dest="reconcile", action="store_true", default=None)

    p = sub.add_parser("verify", help="run numeric verification suites")
    p.add_argument("--suite", default=None, choices=tuple(_SUITES) + ("all",))
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--fast", action="store_true", default=None)
    p.add_argument("--paths", dest="mc_paths", type=int, default=None,
                   help="Monte Carlo path count for the bridge suite")
    p.add_argument("--grid", dest="mc_grid", type=int, default=None,
                   help="Monte Carlo grid size for the bridge suite")
    p.add_argument("--format", dest="fmt", choices=("text", "json"), default=None)
    return parser


_DISPATCH = {
    "coeff": cmd_coeff,
    "eval": cmd_eval,
    "pscc": cmd_pscc,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge_config(args)
        return _DISPATCH[cfg.command](cfg)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (zeta.PoleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
