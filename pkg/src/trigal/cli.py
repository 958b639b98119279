"""Command-line front end.

    trigal periods    --config CURVE.json [--out PATH]
    trigal verify     [--config CURVE.json] [--suite NAME] [--samples N] [--seed S] [--radius R] [--out PATH]
    trigal al-eval    --config CURVE.json --a A --c C (--x X1,X2,X3 [--sheets K1,K2,K3] | --u U1,U2,U3)
    trigal sigma-eval --config CURVE.json --u U1,U2,U3 [--deriv 3,3]
    trigal report     REPORT.json

Configuration files are JSON with complex numbers written as [re, im]::

    {"branch_points": [[0, 0], [1, 0], [2, 0], [3, 0]],
     "precision": 40, "theta_radius": 12}

``curves`` (a list of branch-point lists) may replace ``branch_points``.
Exit codes: 0 success, 1 an identity failed, 2 bad input, 3 a numerical
procedure failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .curve import CurveSpec
from .errors import ConfigError, DegenerateBase, InputError, NumericalFailure, TrigalError
from .theta import DEFAULT_RADIUS

EXIT_OK = 0
EXIT_IDENTITY = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3


# ----------------------------------------------------------------------------
# configuration


def _complex(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ConfigError(f"complex numbers are [re, im] pairs, got {v!r}")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, str):
        try:
            return complex(v.replace(" ", "").replace("i", "j"))
        except ValueError as exc:
            raise ConfigError(f"cannot read {v!r} as a complex number") from exc
    raise ConfigError(f"cannot read {v!r} as a complex number")


def parse_complex_list(text: str) -> list[complex]:
    """'1, 2+0.5j, -1j' -> [1, 2+0.5j, -1j]."""
    return [_complex(t) for t in text.split(",") if t.strip()]


@dataclass
class RunConfig:
    curves: list
    hyper_curves: list | None = None
    precision: int = 40
    theta_radius: int = DEFAULT_RADIUS
    samples: int | None = None
    seed: int = 0
    suite: str = "all"
    out: str | None = None

    @classmethod
    def from_dict(cls, doc: dict) -> "RunConfig":
        if not isinstance(doc, dict):
            raise ConfigError("configuration must be a JSON object")
        if "branch_points" in doc:
            raw = [doc["branch_points"]]
        elif "curves" in doc:
            raw = doc["curves"]
        else:
            raise ConfigError("missing field 'branch_points'")
        curves = [[_complex(b) for b in bs] for bs in raw]
        hyper = doc.get("hyperelliptic_curves")
        if hyper is not None:
            hyper = [[_complex(b) for b in bs] for bs in hyper]
        try:
            return cls(
                curves=curves,
                hyper_curves=hyper,
                precision=int(doc.get("precision", 40)),
                theta_radius=int(doc.get("theta_radius", DEFAULT_RADIUS)),
                samples=None if doc.get("samples") is None else int(doc["samples"]),
                seed=int(doc.get("seed", 0)),
                suite=str(doc.get("suite", "all")),
                out=doc.get("out"),
            )
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad configuration value: {exc}") from exc

    @classmethod
    def load(cls, path: str) -> "RunConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read configuration: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"configuration is not valid JSON: {exc}") from exc
        return cls.from_dict(doc)

    def curve(self, index: int = 0) -> CurveSpec:
        return CurveSpec.from_branch_points(self.curves[index])


# ----------------------------------------------------------------------------
# output


def _enc(v):
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, np.ndarray):
        return [_enc(x) for x in v.tolist()] if v.ndim else _enc(v.item())
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, dict):
        return {str(k): _enc(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_enc(x) for x in v]
    if isinstance(v, float) and not np.isfinite(v):
        return str(v)
    return v


def _flat(v) -> bool:
    """Short arrays of scalars or of [re, im] pairs go on one line."""
    if not isinstance(v, list):
        return False
    if all(not isinstance(x, (list, dict)) for x in v):
        return True
    return all(isinstance(x, list) and len(x) == 2 and _flat(x) for x in v) and len(v) <= 8


def dumps(doc, indent: int = 0) -> str:
    """JSON with one key per line and short numeric arrays kept inline."""
    pad = "  " * indent
    if isinstance(doc, dict):
        if not doc:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {dumps(v, indent + 1)}' for k, v in doc.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(doc, list):
        if _flat(doc):
            return json.dumps(doc)
        items = [f"{pad}  {dumps(v, indent + 1)}" for v in doc]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    return json.dumps(doc)


def emit(doc: dict, out: str | None) -> None:
    text = dumps(_enc(doc)) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------------------
# commands


def period_document(curve: CurveSpec) -> dict:
    from .periods import trigonal_period_data

    pd = trigonal_period_data(curve)
    return {
        "branch_points": curve.roots,
        "genus": pd.genus,
        "omega1": pd.omega1,
        "omega2": pd.omega2,
        "eta1": pd.eta1,
        "eta2": pd.eta2,
        "tau": pd.tau,
        "branch_vectors": pd.branch,
        "legendre_residual": pd.legendre_residual(),
    }


def cmd_periods(args) -> int:
    cfg = RunConfig.load(args.config)
    docs = [period_document(cfg.curve(i)) for i in range(len(cfg.curves))]
    emit({"format": "trigal-periods/1", "curves": docs}, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import CORPUS, HYPER_CORPUS, SUITES, Verifier, report_document, run_suite

    cfg = RunConfig.load(args.config) if args.config else RunConfig(curves=[list(c) for c in CORPUS])
    suite = args.suite or cfg.suite
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    v = Verifier(
        curves=cfg.curves,
        hyper_curves=cfg.hyper_curves or HYPER_CORPUS,
        seed=cfg.seed if args.seed is None else args.seed,
        samples=cfg.samples if args.samples is None else args.samples,
        radius=cfg.theta_radius if args.radius is None else args.radius,
        precision=cfg.precision,
    )
    checks = run_suite(v, suite)
    for c in checks:
        print(c.line(), file=sys.stderr)
    emit(report_document(v, suite, checks), args.out or cfg.out)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_IDENTITY


def _context(cfg: RunConfig, radius):
    from .periods import trigonal_period_data
    from .sigma import build_sigma

    pd = trigonal_period_data(cfg.curve(0))
    return build_sigma(pd, cfg.theta_radius if radius is None else radius)


def cmd_sigma_eval(args) -> int:
    from .sigma import sigma, sigma_deriv

    cfg = RunConfig.load(args.config)
    u = np.array(parse_complex_list(args.u), dtype=complex)
    if u.size != 3:
        raise ConfigError("u needs three components")
    ctx = _context(cfg, args.radius)
    index = tuple(int(k) for k in args.deriv.split(",")) if args.deriv else ()
    if any(k not in (1, 2, 3) for k in index):
        raise ConfigError("derivative indices are 1, 2 or 3")
    value = sigma_deriv(ctx, u, index) if index else sigma(ctx, u)
    emit({"u": u, "derivative": list(index), "value": complex(value),
          "characteristic": {"a": list(ctx.char.a), "b": list(ctx.char.b)}}, args.out)
    return EXIT_OK


def cmd_al_eval(args) -> int:
    from .al import al_algebraic, al_sigma, lift_divisor
    from .divisors import A_func, F_func
    from .periods import abel

    cfg = RunConfig.load(args.config)
    a = int(args.a) - 1
    if not 0 <= a < 4:
        raise ConfigError("branch index a runs from 1 to 4")
    c = int(args.c) % 3
    ctx = _context(cfg, args.radius)
    pd, curve = ctx.pd, ctx.pd.cover
    doc: dict = {"a": a + 1, "c": c}
    if args.u:
        u = np.array(parse_complex_list(args.u), dtype=complex)
        if u.size != 3:
            raise ConfigError("u needs three components")
        doc.update(u=u, sigma_route=al_sigma(ctx, a, c, u))
        emit(doc, args.out)
        return EXIT_OK
    if not args.x:
        raise ConfigError("give either --u or --x")
    xs = parse_complex_list(args.x)
    sheets = [int(k) for k in args.sheets.split(",")] if args.sheets else [0] * len(xs)
    if len(xs) != 3 or len(sheets) != 3:
        raise ConfigError("a divisor here has three points")
    points, at_branch, free = [], [], []
    for x, k in zip(xs, sheets):
        d = np.abs(curve.roots - x)
        j = int(np.argmin(d))
        if d[j] <= 1e-12 * max(1.0, abs(x)):
            points.append((complex(curve.roots[j]), 0j))
            at_branch.append(j)
        else:
            points.append((x, complex(curve.sheets_above(x)[k % 3])))
            free.append(points[-1])
    A = A_func(curve, a, points)
    F = F_func(curve, a, points)
    scale = max(1.0, float(np.max(np.abs(curve.roots)))) ** 2
    doc.update(points=points, A_a=A, F_a=F)
    if at_branch:
        # the lifting paths stop short of a branch point; use omega_j there
        u = abel(pd, free) + sum(pd.branch[j] for j in at_branch)
        doc.update(u=u, A_a_vanishes=bool(a in at_branch and abs(A) < 1e-6 * scale),
                   sigma_route=al_sigma(ctx, a, c, u))
        emit(doc, args.out)
        return EXIT_OK
    L = lift_divisor(pd, points)
    s = al_sigma(ctx, a, c, L.u)
    alg = al_algebraic(curve, a, c, points, L.paths)
    doc.update(u=L.u, sigma_route=s, algebraic_route=alg, sigma_cubed=s**3, algebraic_cubed=alg**3,
               relative_cube_difference=abs(alg**3 - s**3) / abs(s**3))
    emit(doc, args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    try:
        with open(args.path, encoding="utf-8") as fh:
            doc = json.load(fh)
        checks = doc["checks"]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ConfigError(f"cannot read report: {exc}") from exc
    ok = True
    for c in checks:
        status = "PASS" if c["passed"] else "FAIL"
        ok &= bool(c["passed"])
        print(f"[{status}] {c['id']:2d} {c['name']}: max residual {float(c['max_residual']):.3e} "
              f"(tol {float(c['tolerance']):.0e}, {c['samples']} samples)")
        for p in c.get("parts", []):
            mark = " " if p["passed"] else "!"
            print(f"      {mark} {p['label']}: {float(p['max_residual']):.3e} < {float(p['tolerance']):.0e}")
    s = doc.get("summary", {})
    print(f"{s.get('passed', 0)} passed, {s.get('failed', 0)} failed")
    return EXIT_OK if ok else EXIT_IDENTITY


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trigal", description="Sigma and al functions of y^3 = f(x).")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, config_required=True):
        sp.add_argument("--config", required=config_required, help="curve configuration (JSON)")
        sp.add_argument("--radius", type=int, default=None, help="theta summation radius")
        sp.add_argument("--out", default=None, help="write the document here instead of stdout")

    sp = sub.add_parser("periods", help="period matrices and the Legendre residual")
    common(sp)
    sp.set_defaults(func=cmd_periods)

    sp = sub.add_parser("verify", help="run verification suites")
    common(sp, config_required=False)
    sp.add_argument("--suite", default=None, help="periods, sigma, divisors, al, periodicity, "
                    "frobenius, residues, addition, hyperelliptic or all")
    sp.add_argument("--samples", type=int, default=None, help="samples per sampled check")
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("al-eval", help="al_a^(c) by both routes")
    common(sp)
    sp.add_argument("--a", required=True, type=int, help="branch index 1..4")
    sp.add_argument("--c", default=0, type=int, help="twist 0..2")
    sp.add_argument("--x", default=None, help="x-coordinates of the three points")
    sp.add_argument("--sheets", default=None, help="sheet of each point: y = zeta^k * principal root")
    sp.add_argument("--u", default=None, help="a point of C^3 instead of a divisor")
    sp.set_defaults(func=cmd_al_eval)

    sp = sub.add_parser("sigma-eval", help="sigma or one of its derivatives")
    common(sp)
    sp.add_argument("--u", required=True, help="u1,u2,u3")
    sp.add_argument("--deriv", default=None, help="1-based derivative indices, e.g. 3,3")
    sp.set_defaults(func=cmd_sigma_eval)

    sp = sub.add_parser("report", help="summarise a verification report")
    sp.add_argument("path")
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DegenerateBase as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except NumericalFailure as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except TrigalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
