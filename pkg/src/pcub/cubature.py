"""Pseudo-positive measures, the Gauss-Jacobi cubature, and its error bound.

A pseudo-positive measure is specified componentwise: each slot (k, l)
carries a nonnegative radial measure on [a, b].  Building the order-N
Gauss-Jacobi measure replaces every component by its 2N-node generalized
Gaussian rule; the cubature of a finite-expansion element is the sum of
the componentwise rule applications, exact whenever every component lies
in the order-2N radial span.

The error of non-exact components is controlled degree by degree: C_k
bounds the component quadrature error against the component Hardy norm
on a strictly larger annulus, estimated here as the sampled sup over
boundary tau of |integral of the kernel interpolation defect|.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, PcubError
from .hardy import Annulus, HardyElement, LaurentSeries, hl2_norm
from .kernels import _K_inner, _K_outer
from .quadrature import (
    QuadratureRule,
    RadialMeasure,
    apply_rule,
    build_basis,
    gauss_rule,
    interpolate,
    moments,
)
from .sphere import dim_harmonics

__all__ = [
    "PseudoPositiveMeasure",
    "GaussJacobiMeasure",
    "ValidationReport",
    "ErrorReport",
    "validate_pseudo_positive",
    "integral_against",
    "build_gauss_measure",
    "cubature_CN",
    "error_functional",
    "estimate_Ck",
    "error_bound",
    "signed_cubature",
]

_DENSITY_SAMPLES = 1000
_DENSITY_TOL = -1e-12


def _max_workers(n_jobs: int) -> int:
    cap = os.environ.get("PCUB_THREADS")
    if cap:
        try:
            return max(1, min(n_jobs, int(cap)))
        except ValueError:
            pass
    return max(1, min(n_jobs, os.cpu_count() or 1))


def _component_map(fn, keys):
    """Apply fn over component keys, possibly in parallel; deterministic order."""
    keys = sorted(keys)
    workers = _max_workers(len(keys))
    if workers <= 1 or len(keys) <= 1:
        return {key: fn(key) for key in keys}
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(fn, keys))
    return dict(zip(keys, results))


@dataclass(frozen=True)
class PseudoPositiveMeasure:
    """Componentwise measure: (k, l) -> RadialMeasure on the annulus radii."""

    d: int
    annulus: Annulus
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        for (k, ell), comp in self.components.items():
            if not 1 <= ell <= dim_harmonics(self.d, k):
                raise DomainError(f"order {ell} out of range for degree {k}, d={self.d}")
            if comp.lo != self.annulus.a or comp.hi != self.annulus.b:
                raise DomainError(
                    f"component ({k},{ell}) lives on [{comp.lo}, {comp.hi}], "
                    f"annulus is [{self.annulus.a}, {self.annulus.b}]"
                )

    @property
    def k0(self) -> int:
        return max((k for k, _ in self.components), default=-1)

    def items(self):
        return sorted(self.components.items())


@dataclass(frozen=True)
class GaussJacobiMeasure:
    """Component rules (k, l) -> QuadratureRule of a fixed polyharmonic order."""

    components: dict
    N: int

    def __post_init__(self):
        for (k, ell), rule in self.components.items():
            if len(rule) != 2 * self.N:
                raise DomainError(
                    f"rule at ({k},{ell}) has {len(rule)} nodes, expected {2 * self.N}"
                )

    def items(self):
        return sorted(self.components.items())


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple = ()


@dataclass(frozen=True)
class ErrorReport:
    """Cubature error budget: componentwise errors, total, optional bound."""

    components: dict
    total: complex
    integral: complex
    cubature: complex
    c_k: dict | None = None
    bound: float | None = None
    bound_unsquared: float | None = None

    @property
    def passed(self) -> bool | None:
        if self.bound is None:
            return None
        return abs(self.total) <= self.bound


def validate_pseudo_positive(mu: PseudoPositiveMeasure) -> ValidationReport:
    """Check componentwise nonnegativity; failures name the offending slot."""
    failures = []
    for (k, ell), comp in mu.items():
        for t, w in comp.atoms:
            if w < 0:
                failures.append((k, ell, f"negative atom weight {w} at t={t}"))
        if comp.has_density():
            grid = np.linspace(comp.lo, comp.hi, _DENSITY_SAMPLES)
            worst = float(np.min(comp.density_at(grid)))
            if worst < _DENSITY_TOL:
                failures.append((k, ell, f"density dips to {worst:.3e}"))
    return ValidationReport(ok=not failures, failures=tuple(failures))


def _gl_panels(lo: float, hi: float, panels: int, order: int = 16):
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(lo, hi, panels + 1)
    mid = (edges[:-1] + edges[1:]) / 2.0
    half = (edges[1:] - edges[:-1]) / 2.0
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return pts, wts


def integral_against(mu_comp: RadialMeasure, f):
    """Integral of a radial function against atoms plus polynomial density.

    Laurent series integrate in closed form; callables take numpy arrays of
    radii and are integrated with panel-doubling Gauss-Legendre until two
    refinements agree to 1e-12 (absolute plus relative).
    """
    atom_part = 0.0
    if mu_comp.atoms:
        locs = np.array([t for t, _ in mu_comp.atoms])
        wts = np.array([w for _, w in mu_comp.atoms])
        atom_part = np.dot(wts, np.asarray(f(locs)))
    if not mu_comp.has_density():
        return atom_part
    if isinstance(f, LaurentSeries):
        if mu_comp.lo <= 0:
            raise DomainError("Laurent integrands need support away from 0")
        from .quadrature import _power_integral

        dens_part = sum(
            c_f * c_r * _power_integral(mu_comp.lo, mu_comp.hi, j + p)
            for j, c_f in f.coeffs.items()
            for p, c_r in enumerate(mu_comp.density)
            if c_r != 0.0
        )
        return atom_part + dens_part
    prev = None
    for panels in (1, 2, 4, 8, 16, 32, 64, 128):
        pts, wts = _gl_panels(mu_comp.lo, mu_comp.hi, panels)
        with np.errstate(all="ignore"):
            vals = np.asarray(f(pts)) * mu_comp.density_at(pts)
        if not np.all(np.isfinite(vals)):
            raise DomainError("integrand not finite on the support")
        cur = np.sum(wts * vals)
        if prev is not None and abs(cur - prev) <= 1e-12 * (1.0 + abs(cur)):
            total = atom_part + cur
            return complex(total) if np.iscomplexobj(vals) else float(total)
        prev = cur
    raise DomainError("density integral did not stabilize (non-integrable input?)")


def build_gauss_measure(mu: PseudoPositiveMeasure, N: int) -> GaussJacobiMeasure:
    """Order-N Gauss-Jacobi measure: each component through its 2N-node rule."""
    if N < 1:
        raise DomainError("order N must be >= 1")

    def solve(key):
        k, ell = key
        try:
            return gauss_rule(mu.components[key], build_basis(k, mu.d, 2 * N))
        except PcubError as exc:
            raise type(exc)(f"component ({k},{ell}): {exc}") from exc

    rules = _component_map(solve, mu.components.keys())
    return GaussJacobiMeasure(components=rules, N=N)


def cubature_CN(f: HardyElement, muG: GaussJacobiMeasure):
    """Sum of componentwise rule applications; every component of f needs a rule."""
    missing = sorted(set(f.components) - set(muG.components))
    if missing:
        raise DomainError(f"no quadrature rule for components {missing}")
    total = 0j
    for key, comp in f.items():
        rule = muG.components[key]
        total += apply_rule(rule, comp.series(rule.nodes.astype(complex)))
    return total


def error_functional(
    f: HardyElement, mu: PseudoPositiveMeasure, muG: GaussJacobiMeasure
) -> ErrorReport:
    """Componentwise quadrature errors and their total for a finite element."""
    missing = sorted(set(f.components) - set(muG.components))
    if missing:
        raise DomainError(f"no quadrature rule for components {missing}")
    per = {}
    integral = 0j
    cub = 0j
    for key, comp in f.items():
        mu_comp = mu.components.get(key)
        exact = integral_against(mu_comp, comp.series) if mu_comp is not None else 0j
        rule = muG.components[key]
        approx = apply_rule(rule, comp.series(rule.nodes.astype(complex)))
        per[key] = exact - approx
        integral += exact
        cub += approx
    total = sum(per.values(), start=0j)
    return ErrorReport(components=per, total=total, integral=integral, cubature=cub)


def _defect_integrals(comp, k, d, N, rule, taus, side):
    """|integral of K_k(., tau) - H[K_k(., tau)] d mu| for an array of taus."""
    basis_n = build_basis(k, d, N)
    nodes = rule.nodes

    def kernel(t, tau):
        t = np.asarray(t, dtype=complex)
        if side == "outer":
            return _K_outer(k, t[:, None], tau[None, :])
        return _K_inner(k, d, t[:, None], tau[None, :])

    K_nodes = kernel(nodes, taus)
    coeffs = np.column_stack(
        [interpolate(basis_n, nodes, K_nodes[:, i]) for i in range(len(taus))]
    )
    total = np.zeros(len(taus), dtype=complex)
    if comp.atoms:
        t_at = np.array([t for t, _ in comp.atoms])
        w_at = np.array([w for _, w in comp.atoms])
        D = kernel(t_at, taus) - basis_n.powers(t_at) @ coeffs
        total += w_at @ D
    if comp.has_density():
        pts, wts = _gl_panels(comp.lo, comp.hi, panels=8, order=16)
        D = kernel(pts, taus) - basis_n.powers(pts) @ coeffs
        total += (wts * comp.density_at(pts)) @ D
    return np.abs(total)


def estimate_Ck(
    k: int,
    ell: int,
    mu: PseudoPositiveMeasure,
    N: int,
    outer_ann: Annulus,
    M_tau: int,
    safety: float = 1.05,
) -> float:
    """Empirical per-degree error constant for the component (k, l).

    Samples tau on M_tau angles of each boundary circle of the enclosing
    annulus and maximizes |integral of the kernel interpolation defect
    against the component measure|; the grid max is inflated by the
    recorded safety factor.
    """
    a, b = mu.annulus.a, mu.annulus.b
    if not (outer_ann.a < a and b < outer_ann.b):
        raise DomainError(
            f"[{a}, {b}] must sit strictly inside ({outer_ann.a}, {outer_ann.b})"
        )
    comp = mu.components.get((k, ell))
    if comp is None or comp.is_zero():
        return 0.0
    rule = gauss_rule(comp, build_basis(k, mu.d, 2 * N))
    phi = 2.0 * math.pi * np.arange(M_tau) / M_tau
    out_vals = _defect_integrals(
        comp, k, mu.d, N, rule, outer_ann.b * np.exp(1j * phi), "outer"
    )
    in_vals = _defect_integrals(
        comp, k, mu.d, N, rule, outer_ann.a * np.exp(1j * phi), "inner"
    )
    return safety * float(max(np.max(out_vals), np.max(in_vals)))


def error_bound(
    f: HardyElement, Cks: dict, outer_ann: Annulus, squared: bool = True
) -> float:
    """Aggregate bound sqrt(sum_k a_k C_k^2 / L^(2k)) * ||f||^p on the outer annulus.

    ``squared=True`` uses p = 2 as displayed in the source estimate;
    ``squared=False`` the first-power variant its proof supports.  Both are
    reported by the acceptance experiment.
    """
    if f.k0 < 0:
        return 0.0
    acc = 0.0
    for k in range(f.k0 + 1):
        if k not in Cks:
            raise DomainError(f"missing C_k estimate for degree {k}")
        acc += dim_harmonics(f.d, k) * Cks[k] ** 2 * f.L ** (-2 * k)
    norm = hl2_norm(f, outer_ann)
    return math.sqrt(acc) * (norm * norm if squared else norm)


def signed_cubature(
    mu1: PseudoPositiveMeasure,
    mu2: PseudoPositiveMeasure,
    f: HardyElement,
    N: int,
):
    """Cubature against a signed measure given as a pseudo-positive difference.

    Components of f absent from one side contribute zero there (the zero
    measure has the zero rule).
    """

    def one_side(mu):
        present = {key: comp for key, comp in mu.components.items() if key in f.components}
        if not present:
            return 0j
        side_mu = PseudoPositiveMeasure(d=mu.d, annulus=mu.annulus, components=present)
        muG = build_gauss_measure(side_mu, N)
        total = 0j
        for key, rule in muG.items():
            series = f.components[key].series
            total += apply_rule(rule, series(rule.nodes.astype(complex)))
        return total

    return one_side(mu1) - one_side(mu2)
