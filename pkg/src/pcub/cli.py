"""Command-line front end.

Subcommands: rule, cubature, kernel, verify, bound.  Configuration is a
JSON file (--config); results go to --out as JSON or CSV (--format), with
optional matplotlib figures next to the delimited output (--plot).

Exit codes: 0 success, 1 config error, 2 domain/geometry error, 3 solver
failure, 4 verification-suite failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import cubature as cb
from . import serialization as ser
from . import verify as verify_mod
from .errors import ConfigError, DomainError, PcubError, SolverError
from .hardy import Annulus, HardyElement, hl2_norm
from .kernels import KernelQuery, kernel_Kk
from .quadrature import build_basis, gauss_rule, moments
from .sphere import dim_harmonics

__all__ = ["main", "entry"]


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _figure_path(args) -> str | None:
    if not args.plot:
        return None
    if args.plot != "auto":
        return args.plot
    if not args.out:
        raise ConfigError("--plot without a path requires --out")
    return str(Path(args.out).with_suffix(".png"))


def _require(cfg: dict, key: str):
    if key not in cfg:
        raise ConfigError(f"config is missing required key {key!r}")
    return cfg[key]


def _geometry(cfg: dict) -> tuple[Annulus, int]:
    ann = ser.annulus_from_json(_require(cfg, "annulus"))
    d = int(_require(cfg, "d"))
    return ann, d


def _seeded(cfg: dict, args) -> int:
    if args.seed is not None:
        return args.seed
    return int(cfg.get("seed", 0))


def cmd_rule(cfg: dict, args) -> int:
    ann, d = _geometry(cfg)
    N = int(_require(cfg, "N"))
    mu = ser.measure_from_json(_require(cfg, "measure"), d, ann)
    entries = []
    for (k, ell), comp in mu.items():
        basis = build_basis(k, d, 2 * N)
        rule = gauss_rule(comp, basis)
        m = moments(comp, basis.exponents)
        got = basis.powers(rule.nodes).T @ rule.weights
        residuals = np.abs(got - m) / (1.0 + np.abs(m))
        entries.append(
            {
                "k": k,
                "ℓ": ell,
                "N": N,
                "nodes": list(rule.nodes),
                "weights": list(rule.weights),
                "residuals": list(residuals),
            }
        )
    if args.format == "json":
        payload = {"version": ser.CSV_VERSION, "seed": _seeded(cfg, args), "rules": entries}
        _write_text(ser.dump_json(payload), args.out)
    else:
        rows = []
        comments = []
        for e in entries:
            rows.extend(
                (e["k"], e["ℓ"], n, w) for n, w in zip(e["nodes"], e["weights"])
            )
            comments.append(
                f"max_residual k={e['k']} l={e['ℓ']}: {max(e['residuals'])!r}"
            )
        _write_text(
            ser.dump_csv(["k", "ell", "node", "weight"], rows, comments), args.out
        )
    fig = _figure_path(args)
    if fig:
        from . import plots

        plots.rule_figure(entries, fig)
    return 0


def _components_payload(report: cb.ErrorReport) -> list[dict]:
    return [
        {
            "k": k,
            "ℓ": ell,
            "re": report.components[(k, ell)].real,
            "im": report.components[(k, ell)].imag,
        }
        for (k, ell) in sorted(report.components)
    ]


def cmd_cubature(cfg: dict, args) -> int:
    ann, d = _geometry(cfg)
    N = int(_require(cfg, "N"))
    L = float(_require(cfg, "L"))
    mu = ser.measure_from_json(_require(cfg, "measure"), d, ann)
    f = ser.element_from_json(_require(cfg, "function"), d=d, L=L)
    muG = cb.build_gauss_measure(mu, N)
    report = cb.error_functional(f, mu, muG)
    cks = None
    bound = bound_unsq = None
    outer_cfg = cfg.get("outer_annulus")
    if cfg.get("Ck"):
        cks = {int(k): float(v) for k, v in cfg["Ck"].items()}
    elif outer_cfg is not None:
        outer = ser.annulus_from_json(outer_cfg)
        m_tau = int(cfg.get("M_tau", 256))
        cks = {
            k: max(
                (
                    cb.estimate_Ck(k, ell, mu, N, outer, m_tau)
                    for ell in range(1, dim_harmonics(d, k) + 1)
                ),
                default=0.0,
            )
            for k in range(max(f.k0, 0) + 1)
        }
    if cks is not None:
        outer = ser.annulus_from_json(outer_cfg) if outer_cfg else ann
        bound = cb.error_bound(f, cks, outer, squared=True)
        bound_unsq = cb.error_bound(f, cks, outer, squared=False)
    payload = {
        "version": ser.CSV_VERSION,
        "seed": _seeded(cfg, args),
        "N": N,
        "integral": {"re": report.integral.real, "im": report.integral.imag},
        "cubature": {"re": report.cubature.real, "im": report.cubature.imag},
        "total_error": {"re": report.total.real, "im": report.total.imag},
        "abs_error": abs(report.total),
        "components": _components_payload(report),
        "C_k": cks,
        "bound": bound,
        "bound_unsquared": bound_unsq,
        "passed": None if bound is None else abs(report.total) <= bound,
    }
    if args.format == "json":
        _write_text(ser.dump_json(payload), args.out)
    else:
        rows = [
            (c["k"], c["ℓ"], c["re"], c["im"], math.hypot(c["re"], c["im"]))
            for c in payload["components"]
        ]
        comments = [
            f"abs_error: {payload['abs_error']!r}",
            f"bound: {payload['bound']!r}",
            f"passed: {payload['passed']}",
        ]
        _write_text(
            ser.dump_csv(["k", "ell", "re_E", "im_E", "abs_E"], rows, comments),
            args.out,
        )
    return 0


def cmd_kernel(cfg: dict, args) -> int:
    ann, d = _geometry(cfg)
    ks = [int(k) for k in cfg.get("ks", range(int(cfg.get("k_max", 4)) + 1))]
    n_tau = int(cfg.get("n_tau", 64))
    z_list = [complex(float(re), float(im)) for re, im in _require(cfg, "z")]
    sides = cfg.get("sides", ["outer", "inner"])
    rows = []
    for k in ks:
        for z in z_list:
            if not ann.contains(z):
                raise DomainError(f"|z|={abs(z):.6g} outside annulus ({ann.a}, {ann.b})")
            for side in sides:
                rho = ann.b if side == "outer" else ann.a
                for m in range(n_tau):
                    tau = rho * complex(
                        math.cos(2 * math.pi * m / n_tau),
                        math.sin(2 * math.pi * m / n_tau),
                    )
                    q = KernelQuery(k=k, d=d, z=z, tau=tau, side=side)
                    val = kernel_Kk(q)
                    rows.append(
                        {
                            "k": k,
                            "re_z": z.real,
                            "im_z": z.imag,
                            "re_tau": tau.real,
                            "im_tau": tau.imag,
                            "side": side,
                            "re_K": val.real,
                            "im_K": val.imag,
                        }
                    )
    header = ["k", "re_z", "im_z", "re_tau", "im_tau", "side", "re_K", "im_K"]
    if args.format == "json":
        payload = {"version": ser.CSV_VERSION, "rows": rows}
        _write_text(ser.dump_json(payload), args.out)
    else:
        _write_text(
            ser.dump_csv(header, [tuple(r[h] for h in header) for r in rows]), args.out
        )
    fig = _figure_path(args)
    if fig:
        from . import plots

        plots.kernel_figure(rows, fig)
    return 0


def cmd_verify(cfg: dict, args) -> int:
    seed = _seeded(cfg, args)
    suites = [args.suite] if args.suite else cfg.get("suites")
    perturb = cfg.get("perturb")
    results = verify_mod.run_suites(suites, seed=seed, perturb=perturb)
    payload = {
        "version": ser.CSV_VERSION,
        "seed": seed,
        "generator": "numpy.default_rng(PCG64)",
        "suites": [
            {
                "name": r.name,
                "passed": r.passed,
                "worst_over_tol": r.worst,
                "checks": [
                    {"name": c.name, "residual": c.residual, "tol": c.tol, "ok": c.ok}
                    for c in r.checks
                ],
            }
            for r in results
        ],
        "passed": all(r.passed for r in results),
    }
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"[{status}] {r.name}: worst residual/tol = {r.worst:.3e}\n"
        sys.stdout.write(line)
        if not r.passed:
            for c in r.checks:
                if not c.ok:
                    sys.stdout.write(f"       failed check: {c.name} ({c.residual:.3e} > {c.tol:.1e})\n")
    if args.format == "json":
        _write_text(ser.dump_json(payload), args.out)
    else:
        rows = [
            (r.name, str(r.passed), r.worst) for r in results
        ]
        _write_text(ser.dump_csv(["suite", "passed", "worst_over_tol"], rows), args.out)
    fig = _figure_path(args)
    if fig:
        from . import plots

        plots.verify_figure(results, fig)
    return 0 if payload["passed"] else 4


def cmd_bound(cfg: dict, args) -> int:
    ann, d = _geometry(cfg)
    outer = ser.annulus_from_json(_require(cfg, "outer_annulus"))
    base_L = float(_require(cfg, "L"))
    mu = ser.measure_from_json(_require(cfg, "measure"), d, ann)
    f_base = ser.element_from_json(_require(cfg, "function"), d=d, L=base_L)
    sweep = cfg.get("sweep", {})
    Ns = [int(n) for n in sweep.get("N", [1, 2, 3])]
    k0s = [int(k) for k in sweep.get("k0", [max(f_base.k0, 0)])]
    Ls = [float(L) for L in sweep.get("L", [base_L])]
    m_tau = int(cfg.get("M_tau", 256))
    rows = []
    for N in Ns:
        muG = cb.build_gauss_measure(mu, N)
        cks_all = {
            k: max(
                (
                    cb.estimate_Ck(k, ell, mu, N, outer, m_tau)
                    for ell in range(1, dim_harmonics(d, k) + 1)
                ),
                default=0.0,
            )
            for k in range(max(f_base.k0, 0) + 1)
        }
        for k0 in k0s:
            comps = {key: c for key, c in f_base.components.items() if key[0] <= k0}
            for L in Ls:
                f = HardyElement(d=d, L=L, components=comps)
                rep = cb.error_functional(f, mu, muG)
                bound = cb.error_bound(f, cks_all, outer, squared=True)
                bound_unsq = cb.error_bound(f, cks_all, outer, squared=False)
                rows.append(
                    {
                        "N": N,
                        "k0": k0,
                        "L": L,
                        "abs_error": abs(rep.total),
                        "bound": bound,
                        "ratio": abs(rep.total) / bound if bound > 0 else 0.0,
                        "bound_unsquared": bound_unsq,
                        "ratio_unsquared": (
                            abs(rep.total) / bound_unsq if bound_unsq > 0 else 0.0
                        ),
                        "norm_outer": hl2_norm(f, outer),
                    }
                )
    header = [
        "N",
        "k0",
        "L",
        "abs_error",
        "bound",
        "ratio",
        "bound_unsquared",
        "ratio_unsquared",
        "norm_outer",
    ]
    if args.format == "json":
        payload = {"version": ser.CSV_VERSION, "seed": _seeded(cfg, args), "rows": rows}
        _write_text(ser.dump_json(payload), args.out)
    else:
        _write_text(
            ser.dump_csv(header, [tuple(r[h] for h in header) for r in rows]), args.out
        )
    fig = _figure_path(args)
    if fig:
        from . import plots

        plots.bound_figure(rows, fig)
    return 0


_COMMANDS = {
    "rule": cmd_rule,
    "cubature": cmd_cubature,
    "kernel": cmd_kernel,
    "verify": cmd_verify,
    "bound": cmd_bound,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcub",
        description="Generalized Gauss-Jacobi rules and polyharmonic cubature on annular domains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("rule", "construct per-component quadrature rules from a measure"),
        ("cubature", "run the full measure/function pipeline and error report"),
        ("kernel", "dump kernel values on a boundary grid"),
        ("verify", "run the invariant suites"),
        ("bound", "sweep N/k0/L and tabulate error against bound"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=(name != "verify"), help="JSON config path")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--tol", type=float, default=None, help="tolerance override")
        p.add_argument("--seed", type=int, default=None, help="seed override")
        p.add_argument(
            "--plot",
            nargs="?",
            const="auto",
            default=None,
            help="render a figure (optional path; defaults next to --out)",
        )
        if name == "verify":
            p.add_argument("--suite", default=None, help="restrict to one suite")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.tol is not None and args.tol <= 0:
            raise ConfigError("--tol must be positive")
        cfg = _load_config(args.config) if args.config else {}
        return _COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except PcubError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())
