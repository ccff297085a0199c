"""Invariant suites behind the `verify` command.

Each suite replays the structural properties of one subsystem on seeded
random fixtures and reports the worst residual per check.  Suites are
deterministic for a fixed seed; `perturb` injects a deliberate defect
into the named suite so the failure path can be exercised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import cubature as cb
from . import hardy, kernels, quadrature, sphere

__all__ = ["Check", "SuiteResult", "SUITE_NAMES", "run_suites"]


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.residual <= self.tol


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def worst(self) -> float:
        return max((c.residual / c.tol for c in self.checks), default=0.0)


def _random_series(rng, exponents, n_terms):
    picks = rng.choice(len(exponents), size=min(n_terms, len(exponents)), replace=False)
    return hardy.LaurentSeries(
        {
            int(exponents[i]): complex(rng.normal(), rng.normal())
            for i in picks
        }
    )


def _random_element(rng, d, ann, k_max=6, L_range=(1.3, 3.0)):
    L = float(rng.uniform(*L_range))
    comps = {}
    for _ in range(rng.integers(2, 6)):
        k = int(rng.integers(0, k_max + 1))
        ell = int(rng.integers(1, sphere.dim_harmonics(d, k) + 1))
        exps = hardy.riesz_set(k, d, -8, 8)
        if not exps:
            continue
        series = _random_series(rng, exps, int(rng.integers(1, 4)))
        comps[(k, ell)] = hardy.ComponentFunction(k=k, d=d, series=series)
    if not comps:
        comps[(0, 1)] = hardy.ComponentFunction(
            0, d, hardy.LaurentSeries({0: 1.0 + 0j})
        )
    return hardy.HardyElement(d=d, L=L, components=comps)


def _random_measure(rng, ann, n_atoms=2):
    atoms = tuple(
        (float(rng.uniform(ann.a, ann.b)), float(rng.uniform(0.1, 2.0)))
        for _ in range(n_atoms)
    )
    c0 = float(rng.uniform(0.2, 1.5))
    c1 = float(rng.uniform(0.0, 0.8))
    c2 = float(rng.uniform(0.0, 0.5))
    # c0 + c1 (t-a) + c2 (t-a)^2 expanded: nonnegative on [a, b] by construction
    dens = (
        c0 - c1 * ann.a + c2 * ann.a**2,
        c1 - 2 * c2 * ann.a,
        c2,
    )
    return quadrature.RadialMeasure(lo=ann.a, hi=ann.b, atoms=atoms, density=dens)


def _suite_sphere(rng, perturb):
    checks = []
    bump = 1e-3 if perturb else 0.0
    for d, res in ((2, 8), (3, 16)):
        rule = sphere.sphere_rule(d, res)
        k_hi = res // 2
        tab = sphere.harmonic_table(d, k_hi, rule.points)
        flat = np.vstack(tab)
        gram = (flat * rule.weights) @ flat.T
        resid = float(np.max(np.abs(gram - np.eye(len(flat))))) + bump
        checks.append(Check(f"orthonormality d={d}", resid, 1e-10))
        slots = sum(len(t) for t in tab)
        expect = sum(sphere.dim_harmonics(d, k) for k in range(k_hi + 1))
        checks.append(Check(f"dim consistency d={d}", float(abs(slots - expect)), 0.5))
    rule = sphere.sphere_rule(3, 48)
    ratios = []
    for k in range(1, 41):
        tab_k = sphere.harmonic_table(3, k, rule.points)[k]
        ratios.append(float(np.max(np.abs(tab_k))) / math.sqrt(k))
    fit_c = 1.02 * max(ratios[:20])
    worst = max(ratios[20:]) / fit_c
    checks.append(Check("sup-norm growth d=3", worst, 1.0))
    return checks


def _suite_hardy(rng, perturb):
    checks = []
    ann = hardy.Annulus(1.0, 2.0)
    worst_parseval = 0.0
    worst_convex = 0.0
    worst_lower = 0.0
    worst_upper = 0.0
    for i in range(30):
        series = _random_series(rng, np.arange(-7, 8), 5)
        if perturb and i == 0:
            series = series + hardy.LaurentSeries({0: 1e-3})
            reference = series - hardy.LaurentSeries({0: 1e-3})
        else:
            reference = series
        M = 4 * series.max_abs_exponent + 8
        tr_a = hardy.boundary_trace(reference, ann, "inner", M)
        tr_b = hardy.boundary_trace(reference, ann, "outer", M)
        par = 2.0 * math.pi / M * (np.sum(np.abs(tr_a) ** 2) + np.sum(np.abs(tr_b) ** 2))
        norm2 = hardy.h2_norm(series, ann) ** 2
        worst_parseval = max(worst_parseval, abs(par - norm2) / (1.0 + norm2))
        radii = np.linspace(ann.a, ann.b, 101)
        sup_mid = max(hardy.m2_mean(series, float(r)) for r in radii)
        sup_ends = max(hardy.m2_mean(series, ann.a), hardy.m2_mean(series, ann.b))
        worst_convex = max(worst_convex, (sup_mid - sup_ends) / (1.0 + sup_ends))
        # boundary-pair norm (no 2 pi factor) obeys the sandwich inequalities
        pair_norm = hardy.h2_norm(series, ann) / math.sqrt(2.0 * math.pi)
        worst_lower = max(worst_lower, pair_norm - 2.0 * sup_mid)
        worst_upper = max(worst_upper, sup_mid - pair_norm)
        g, h = hardy.hardy_decompose(series)
        exact = g + h - series
        checks_sum = float(sum(abs(c) for c in exact.coeffs.values()))
        if checks_sum:
            worst_parseval = max(worst_parseval, checks_sum)
    checks.append(Check("parseval consistency", worst_parseval, 1e-10))
    checks.append(Check("mean max at boundary", worst_convex, 1e-12))
    checks.append(Check("norm sandwich lower", worst_lower, 1e-12))
    checks.append(Check("norm sandwich upper", worst_upper, 1e-12))
    worst_split = 0.0
    for _ in range(20):
        k = int(rng.integers(0, 5))
        d = 3
        exps = hardy.riesz_set(k, d, -9, 9)
        comp = hardy.ComponentFunction(k, d, _random_series(rng, exps, 4))
        f1, f2 = hardy.split_f1_f2(comp)
        rebuilt = {}
        for m, c in f1.coeffs.items():
            rebuilt[k + 2 * m] = rebuilt.get(k + 2 * m, 0j) + c
        for m, c in f2.coeffs.items():
            j = -d - k + 2 + 2 * m
            rebuilt[j] = rebuilt.get(j, 0j) + c
        diff = hardy.LaurentSeries(rebuilt) - comp.series
        worst_split = max(worst_split, float(sum(abs(c) for c in diff.coeffs.values())))
    checks.append(Check("split round-trip", worst_split, 1e-15))
    ks = [2 * n - 1 for n in range(2, 31)]
    stars = [k ** (-1.0 / 3.0) for k in ks]
    poles = [k ** (-1.0 / 3.0) * math.sqrt((2 * k + 1) / (4 * math.pi)) for k in ks]
    mono = float(max(np.diff(stars).max(), -np.diff(poles).min()))
    checks.append(Check("uN divergence pattern", max(mono, 0.0), 1e-15))
    ratios = []
    for _ in range(15):
        f = _random_element(rng, 3, ann)
        for _ in range(8):
            z = rng.uniform(1.05, 1.95) * np.exp(1j * rng.uniform(0, 2 * math.pi))
            v = rng.normal(size=3)
            theta = v / np.linalg.norm(v)
            val = abs(hardy.evaluate(f, complex(z), theta, ann))
            ratios.append(val / hardy.max_principle_bound(f, complex(z), ann))
    c_cal = 2.0 * max(ratios[: len(ratios) // 2])
    worst_mp = max(ratios[len(ratios) // 2 :]) / c_cal
    checks.append(Check("maximum principle", worst_mp, 1.0))
    return checks


def _suite_kernels(rng, perturb):
    checks = []
    ann = hardy.Annulus(1.0, 2.0)
    worst = 0.0
    for i in range(60):
        d = int(rng.choice([3, 5]))
        k = int(rng.integers(0, 41))
        side = "outer" if rng.random() < 0.5 else "inner"
        r = rng.uniform(ann.a + 0.05, ann.b - 0.05)
        z = complex(r * np.exp(1j * rng.uniform(0, 2 * math.pi)))
        rho = ann.b if side == "outer" else ann.a
        tau = complex(rho * np.exp(1j * rng.uniform(0, 2 * math.pi)))
        q = kernels.KernelQuery(k=k, d=d, z=z, tau=tau, side=side)
        closed = kernels.kernel_Kk(q)
        series = kernels.kernel_Kk_series(q, 1e-15)
        err = abs(closed - series)
        if perturb and i == 0:
            err += 1e-3
        worst = max(worst, err)
    checks.append(Check("closed form vs series", worst, 1e-11))
    d = 3
    comp = hardy.ComponentFunction(1, d, hardy.LaurentSeries({1: 1.0, 3: 0.5, -2: 0.25}))
    # z close to the outer circle keeps the M=128 error above the noise floor
    z = complex(1.93)
    exact = comp.series(z)
    err_lo = abs(kernels.reproduce_component(comp, z, ann, 128) - exact)
    err_hi = abs(kernels.reproduce_component(comp, z, ann, 256) - exact)
    decay = err_hi / max(err_lo, 1e-300)
    checks.append(Check("reproduction spectral decay", decay, 0.1))
    eps = (ann.b - ann.a) / 3.0
    hi = kernels.kernel_bound(64, eps, ann, 24)
    lo = kernels.kernel_bound(8, eps, ann, 24)
    ratio = hi / lo
    checks.append(Check("k-uniform bound ratio", abs(ratio - 1.0), 0.25))
    v = rng.normal(size=3)
    theta = v / np.linalg.norm(v)
    v = rng.normal(size=3)
    theta_p = v / np.linalg.norm(v)
    base = kernels.kernel_full(1.4 + 0.2j, theta, 2.0 + 0j, theta_p, 2.0, 40, 3, ann)
    more = kernels.kernel_full(1.4 + 0.2j, theta, 2.0 + 0j, theta_p, 2.0, 50, 3, ann)
    checks.append(Check("aggregate kernel tail", abs(base.value - more.value), 1e-10))
    return checks


def _suite_quadrature(rng, perturb):
    checks = []
    ann = hardy.Annulus(1.0, 2.0)
    worst_mom = 0.0
    worst_neg = 0.0
    worst_out = 0.0
    for i in range(6):
        k = int(rng.integers(0, 4))
        N = int(rng.integers(1, 4))
        mu = _random_measure(rng, ann)
        basis = quadrature.build_basis(k, 3, 2 * N)
        rule = quadrature.gauss_rule(mu, basis)
        m = quadrature.moments(mu, basis.exponents)
        got = basis.powers(rule.nodes).T @ rule.weights
        resid = float(np.max(np.abs(got - m) / (1.0 + np.abs(m))))
        if perturb and i == 0:
            resid += 1e-3
        worst_mom = max(worst_mom, resid)
        worst_neg = max(worst_neg, float(-np.min(rule.weights)))
        worst_out = max(
            worst_out,
            float(max(ann.a - rule.nodes.min(), rule.nodes.max() - ann.b, 0.0)),
        )
    checks.append(Check("moment exactness", worst_mom, 1e-10))
    checks.append(Check("weight positivity", worst_neg, 1e-12))
    checks.append(Check("node containment", worst_out, 1e-12))
    worst_det = math.inf
    basis = quadrature.build_basis(1, 3, 2)
    for _ in range(30):
        nodes = np.sort(rng.uniform(ann.a, ann.b, size=4))
        if np.min(np.diff(nodes)) < 1e-3:
            continue
        V = basis.powers(nodes)
        V = V / np.max(np.abs(V), axis=0)[None, :]
        V = V / np.max(np.abs(V), axis=1)[:, None]
        worst_det = min(worst_det, abs(float(np.linalg.det(V))))
    checks.append(Check("chebyshev nondegeneracy", 1e-12 / worst_det, 1.0))
    mu = _random_measure(rng, ann)
    basis = quadrature.build_basis(0, 3, 2)
    r1 = quadrature.gauss_rule(mu, basis)
    r2 = quadrature.gauss_rule(mu.scaled(3.0), basis)
    scale_resid = float(
        max(
            np.max(np.abs(r1.nodes - r2.nodes)),
            np.max(np.abs(3.0 * r1.weights - r2.weights)),
        )
    )
    checks.append(Check("scale covariance", scale_resid, 1e-10))
    return checks


def _suite_cubature(rng, perturb):
    checks = []
    ann = hardy.Annulus(1.0, 2.0)
    outer = hardy.Annulus(0.9, 2.2)
    d, N = 3, 2
    comps = {}
    for k in range(3):
        for ell in range(1, sphere.dim_harmonics(d, k) + 1):
            comps[(k, ell)] = _random_measure(rng, ann, n_atoms=1)
    mu = cb.PseudoPositiveMeasure(d=d, annulus=ann, components=comps)
    muG = cb.build_gauss_measure(mu, N)
    worst_exact = 0.0
    for i in range(5):
        f_comps = {}
        for _ in range(3):
            k = int(rng.integers(0, 3))
            ell = int(rng.integers(1, sphere.dim_harmonics(d, k) + 1))
            basis = quadrature.build_basis(k, d, 2 * N)
            f_comps[(k, ell)] = hardy.ComponentFunction(
                k, d, _random_series(rng, np.array(basis.exponents), 3)
            )
        f = hardy.HardyElement(d=d, L=2.0, components=f_comps)
        rep = cb.error_functional(f, mu, muG)
        err = abs(rep.total) / (1.0 + abs(rep.integral))
        if perturb and i == 0:
            err += 1e-3
        worst_exact = max(worst_exact, err)
    checks.append(Check("polyharmonic exactness", worst_exact, 1e-9))
    cks = {
        k: max(
            cb.estimate_Ck(k, ell, mu, N, outer, 128)
            for ell in range(1, sphere.dim_harmonics(d, k) + 1)
        )
        for k in range(3)
    }
    worst_bound = 0.0
    for _ in range(8):
        f = _random_element(rng, d, ann, k_max=2)
        scale = rng.uniform(1.0, 4.0) / max(hardy.hl2_norm(f, outer), 1e-12)
        f = hardy.HardyElement(
            d=d,
            L=f.L,
            components={
                key: hardy.ComponentFunction(c.k, d, scale * c.series)
                for key, c in f.components.items()
            },
        )
        rep = cb.error_functional(f, mu, muG)
        for squared in (True, False):
            bound = cb.error_bound(f, cks, outer, squared=squared)
            if bound > 0:
                worst_bound = max(worst_bound, abs(rep.total) / bound)
    checks.append(Check("error bound validity", worst_bound, 1.0))
    f1 = _random_element(rng, d, ann, k_max=2)
    f2 = _random_element(rng, d, ann, k_max=2)
    merged = dict(f1.components)
    for key, comp in f2.components.items():
        if key in merged:
            merged[key] = hardy.ComponentFunction(
                comp.k, d, merged[key].series + comp.series
            )
        else:
            merged[key] = comp
    fsum = hardy.HardyElement(d=d, L=2.0, components=merged)
    f1n = hardy.HardyElement(d=d, L=2.0, components=f1.components)
    f2n = hardy.HardyElement(d=d, L=2.0, components=f2.components)
    e_sum = cb.error_functional(fsum, mu, muG).total
    e_parts = cb.error_functional(f1n, mu, muG).total + cb.error_functional(f2n, mu, muG).total
    checks.append(Check("error additivity", abs(e_sum - e_parts), 1e-10))
    worst_w = 0.0
    for _, rule in muG.items():
        worst_w = max(worst_w, float(-np.min(rule.weights)))
    checks.append(Check("positivity transfer", worst_w, 1e-12))
    return checks


_SUITES = {
    "sphere": _suite_sphere,
    "hardy": _suite_hardy,
    "kernels": _suite_kernels,
    "quadrature": _suite_quadrature,
    "cubature": _suite_cubature,
}

SUITE_NAMES = tuple(_SUITES)


def run_suites(names=None, seed: int = 0, perturb: str | None = None) -> list[SuiteResult]:
    """Run the named suites (all by default) with a deterministic seed."""
    from .errors import ConfigError

    selected = list(names) if names else list(SUITE_NAMES)
    unknown = [n for n in selected if n not in _SUITES]
    if unknown:
        raise ConfigError(f"unknown suite(s) {unknown}; available: {list(SUITE_NAMES)}")
    results = []
    for name in selected:
        rng = np.random.default_rng(1000 * seed + SUITE_NAMES.index(name))
        checks = _SUITES[name](rng, perturb == name)
        results.append(SuiteResult(name=name, checks=tuple(checks)))
    return results
