"""Generalized Gauss-Jacobi rules for the annulus Chebyshev system.

The radial basis of polyharmonic order N at degree k in R^d (d odd) is
the 2N power functions

    t^k, t^(k+2), ..., t^(k+2(N-1)),
    t^(-d-k+2), t^(-d-k+4), ..., t^(-d-k+2+2(N-1)),

a Chebyshev system on any interval [a, b] with a > 0.  A nonnegative
radial measure with enough support admits a rule with 2N nodes in [a, b]
and nonnegative weights matching all 4N moments of the order-2N basis
(the Gaussian count for this system).  No three-term recurrence exists
here, so rules are computed by damped Newton iteration on the node/weight
system with continuation from an atomic measure whose rule is known.

Conditioning notes: power sums with exponents spanning [-d-k+2, k+4N-2]
are badly scaled, so moment equations are normalized per exponent and all
Vandermonde-type solves are column equilibrated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DegenerateMeasureError, DomainError, SolverError


@lru_cache(maxsize=64)
def _leggauss(n: int):
    return np.polynomial.legendre.leggauss(n)

__all__ = [
    "RadialBasis",
    "RadialMeasure",
    "QuadratureRule",
    "build_basis",
    "moments",
    "gauss_rule",
    "apply_rule",
    "interpolate",
    "interpolation_defect",
]

_WEIGHT_CLAMP = 1e-12
_NODE_CLAMP = 1e-12


@dataclass(frozen=True)
class RadialBasis:
    """Exponent list of the order-N radial system at degree k (2N entries)."""

    k: int
    d: int
    N: int
    exponents: tuple[int, ...]

    def powers(self, t) -> np.ndarray:
        """Matrix t_i^(e_j), shape (len(t), 2N)."""
        t = np.asarray(t, dtype=float)
        return t[:, None] ** np.array(self.exponents)[None, :]


def build_basis(k: int, d: int, N: int) -> RadialBasis:
    """Order-N basis exponents [k, k+2, ...] + [-d-k+2, -d-k+4, ...]."""
    if d < 3 or d % 2 == 0:
        raise DomainError(f"radial basis requires odd d >= 3, got {d}")
    if N < 1:
        raise DomainError("order N must be >= 1")
    if k < 0:
        raise DomainError("degree k must be >= 0")
    first = [k + 2 * j for j in range(N)]
    second = [-d - k + 2 + 2 * j for j in range(N)]
    exps = first + second
    if len(set(exps)) != 2 * N:
        raise DomainError(f"exponent collision in basis for k={k}, d={d}, N={N}")
    return RadialBasis(k=k, d=d, N=N, exponents=tuple(exps))


@dataclass(frozen=True)
class RadialMeasure:
    """Nonnegative measure on [lo, hi]: atoms plus optional polynomial density.

    ``density`` holds coefficients (c_0, c_1, ...) of c_0 + c_1 t + ...;
    nonnegativity of atoms/density is *reported* by the cubature-level
    validator rather than enforced here, so invalid measures can be
    constructed and diagnosed.
    """

    lo: float
    hi: float
    atoms: tuple = ()
    density: tuple | None = None

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        object.__setattr__(
            self, "atoms", tuple((float(t), float(w)) for t, w in self.atoms)
        )
        for t, _ in self.atoms:
            if not self.lo - 1e-12 <= t <= self.hi + 1e-12:
                raise DomainError(f"atom location {t} outside [{self.lo}, {self.hi}]")
        if self.density is not None:
            dens = tuple(float(c) for c in self.density)
            object.__setattr__(self, "density", dens if any(dens) else None)

    def has_density(self) -> bool:
        return self.density is not None

    def density_at(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        if self.density is not None:
            for i, c in enumerate(reversed(self.density)):
                out = out * t + c
        return out

    def support_size(self) -> float:
        """Distinct positive-weight atom count; inf if a density is present."""
        if self.has_density():
            return math.inf
        locs = sorted(t for t, w in self.atoms if w > 0)
        count = 0
        prev = None
        for t in locs:
            if prev is None or t - prev > 1e-14 * max(1.0, abs(t)):
                count += 1
            prev = t
        return count

    def is_zero(self) -> bool:
        return not self.has_density() and all(w == 0 for _, w in self.atoms)

    def scaled(self, c: float) -> "RadialMeasure":
        dens = None if self.density is None else tuple(c * x for x in self.density)
        return RadialMeasure(
            self.lo, self.hi, tuple((t, c * w) for t, w in self.atoms), dens
        )


def _power_integral(lo: float, hi: float, e: int) -> float:
    """Integral of t^e over [lo, hi] in closed form (log branch at e = -1)."""
    if e == -1:
        return math.log(hi / lo)
    return (hi ** (e + 1) - lo ** (e + 1)) / (e + 1)


def moments(mu: RadialMeasure, exponents) -> np.ndarray:
    """Moment vector m_e = sum_atoms w t^e + int t^e rho(t) dt, exactly."""
    if mu.lo <= 0:
        raise DomainError("moments require support away from 0 (lo > 0)")
    exps = [int(e) for e in exponents]
    out = np.zeros(len(exps))
    for i, e in enumerate(exps):
        acc = sum(w * t**e for t, w in mu.atoms)
        if mu.density is not None:
            acc += sum(
                c * _power_integral(mu.lo, mu.hi, e + p)
                for p, c in enumerate(mu.density)
                if c != 0.0
            )
        out[i] = acc
    return out


@dataclass(frozen=True)
class QuadratureRule:
    """Strictly increasing nodes with nonnegative weights."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise DomainError("nodes and weights must be 1-d arrays of equal length")
        if len(nodes) > 1 and np.any(np.diff(nodes) <= 0):
            raise DomainError("nodes must be strictly increasing")
        if np.any(weights < -_WEIGHT_CLAMP):
            raise DomainError(f"negative weight {weights.min():.3e} below tolerance")
        weights = np.maximum(weights, 0.0)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return len(self.nodes)


def apply_rule(rule: QuadratureRule, values):
    """Weighted sum of function values aligned with the rule nodes."""
    values = np.asarray(values)
    if values.shape != rule.nodes.shape:
        raise DomainError(
            f"{values.shape} values for a rule with {len(rule)} nodes"
        )
    out = np.dot(rule.weights, values)
    return complex(out) if np.iscomplexobj(values) else float(out)


class _TestBasis:
    """Well-conditioned functions spanning the same space as the power basis.

    phi_(1,j)(t) = t^k P_j(u(t)),  phi_(2,j)(t) = t^(2-d-k) P_j(u(t)),
    j = 0..N-1, where u maps t^2 affinely onto [-1, 1] and P_j is the
    Legendre polynomial, evaluated by the stable degree recurrence.  Raw
    power moments condition the Newton system beyond double precision
    already at a dozen functions; this basis keeps it solvable while the
    converged rule is still validated against the raw moments.
    """

    def __init__(self, basis: RadialBasis, lo: float, hi: float):
        self.N = basis.N
        self.prefactors = (basis.k, -basis.d - basis.k + 2)
        self.u_mid = (lo * lo + hi * hi) / 2.0
        self.u_half = (hi * hi - lo * lo) / 2.0

    def _legendre(self, u):
        """P_j(u) and dP_j/du for j < N, shapes (N, len(u))."""
        n = self.N
        P = np.zeros((n, len(u)), dtype=u.dtype)
        dP = np.zeros((n, len(u)), dtype=u.dtype)
        P[0] = 1.0
        if n > 1:
            P[1] = u
            dP[1] = 1.0
        for j in range(1, n - 1):
            P[j + 1] = ((2 * j + 1) * u * P[j] - j * P[j - 1]) / (j + 1)
            dP[j + 1] = dP[j - 1] + (2 * j + 1) * P[j]
        return P, dP

    def eval(self, t):
        """Values and t-derivatives, each of shape (2N, len(t)); dtype follows t."""
        t = np.asarray(t)
        u = (t * t - self.u_mid) / self.u_half
        P, dP = self._legendre(u)
        du = 2.0 * t / self.u_half
        vals, ders = [], []
        for p in self.prefactors:
            tp = t ** np.asarray(p, dtype=t.dtype)
            vals.append(tp * P)
            ders.append(p * tp / t * P + tp * dP * du)
        return np.vstack(vals), np.vstack(ders)

    def integral(self, mu: "RadialMeasure") -> np.ndarray:
        """Componentwise integral against the measure (2N entries).

        Atoms are exact; the density part uses panel-doubling Gauss-Legendre
        until two refinements agree to 1e-16 relative.  Accumulated in
        extended precision to stay consistent with the Newton arithmetic.
        """
        out = np.zeros(2 * self.N, dtype=np.longdouble)
        for t, w in mu.atoms:
            out += np.longdouble(w) * self.eval(np.array([t], dtype=np.longdouble))[0][:, 0]
        if mu.has_density():
            prev = None
            for panels in (2, 4, 8, 16, 32, 64):
                x, wq = _leggauss(24)
                edges = np.linspace(mu.lo, mu.hi, panels + 1)
                mid = (edges[:-1] + edges[1:]) / 2.0
                half = (edges[1:] - edges[:-1]) / 2.0
                pts = (mid[:, None] + half[:, None] * x[None, :]).ravel().astype(np.longdouble)
                wts = (half[:, None] * wq[None, :]).ravel().astype(np.longdouble)
                cur = self.eval(pts)[0] @ (wts * mu.density_at(pts).astype(np.longdouble))
                if prev is not None and np.all(
                    np.abs(cur - prev) <= 1e-16 * (1.0 + np.abs(cur))
                ):
                    return out + cur
                prev = cur
            out += prev
        return out


def _ld_solve(A, b):
    """Gaussian elimination with partial pivoting in extended precision.

    LAPACK only works in double; the Newton systems here can reach
    condition 1e16 (the two radial families are numerically nearly
    dependent at high order), so the extra mantissa bits of longdouble
    are what keeps the iteration productive.  Returns None on a zero pivot.
    """
    A = np.array(A, dtype=np.longdouble)
    b = np.array(b, dtype=np.longdouble)
    n = len(b)
    for i in range(n):
        p = i + int(np.argmax(np.abs(A[i:, i])))
        if A[p, i] == 0:
            return None
        if p != i:
            A[[i, p]] = A[[p, i]]
            b[[i, p]] = b[[p, i]]
        f = A[i + 1 :, i] / A[i, i]
        A[i + 1 :, i:] -= f[:, None] * A[i, i:]
        b[i + 1 :] -= f * b[i]
    x = np.zeros(n, dtype=np.longdouble)
    for i in range(n - 1, -1, -1):
        x[i] = (b[i] - A[i, i + 1 :] @ x[i + 1 :]) / A[i, i]
    return x


def _newton(
    tb: _TestBasis, g, t, w, lo, hi, sigma, *,
    extended, target_level, accept_level, max_iter=80,
):
    """Damped Newton on the node/weight system in the conditioned test basis.

    ``extended`` switches the arithmetic (and the linear solver) to
    longdouble, whose extra mantissa bits keep steps productive when the
    two radial families become numerically dependent at high order.  The
    iteration stops as soon as the residual level (componentwise
    |G|/sigma) reaches ``target_level``; a run that stalls above it still
    counts as converged down to ``accept_level``.
    """
    dtype = np.longdouble if extended else float
    t = np.array(t, dtype=dtype)
    w = np.array(w, dtype=dtype)
    g = np.asarray(g, dtype=dtype)
    sigma = np.asarray(sigma, dtype=dtype)
    n = len(t)
    span = hi - lo
    lo_guard = max(lo - 0.05 * span, 0.5 * lo)
    hi_guard = hi + 0.05 * span

    def residual(t, w):
        return tb.eval(t)[0] @ w - g

    def level(G):
        return float(np.max(np.abs(G) / sigma))

    def merit(G):
        return float(np.linalg.norm((G / sigma).astype(float)))

    G = residual(t, w)
    for _ in range(max_iter):
        if level(G) <= target_level:
            return t, w, True
        vals, ders = tb.eval(t)
        J = np.hstack([ders * w[None, :], vals]) / sigma[:, None]
        col = np.max(np.abs(J), axis=0)
        col[col == 0] = 1.0
        if extended:
            step = _ld_solve(J / col[None, :], -G / sigma)
        else:
            try:
                step = np.linalg.solve(J / col[None, :], -G / sigma)
            except np.linalg.LinAlgError:
                step = None
        if step is None:
            return t, w, level(G) <= accept_level
        step = step / col
        dt, dw = step[:n], step[n:]
        base = merit(G)
        lam = 1.0
        accepted = False
        for _ in range(40):
            t2 = t + lam * dt
            w2 = w + lam * dw
            if np.all((t2 > lo_guard) & (t2 < hi_guard)):
                G2 = residual(t2, w2)
                if merit(G2) <= (1.0 - 1e-4 * lam) * base:
                    t, w, G = t2, w2, G2
                    accepted = True
                    break
            lam *= 0.5
        if not accepted:
            return t, w, level(G) <= accept_level
    return t, w, level(residual(t, w)) <= accept_level


def _moments_ld(mu: RadialMeasure, exps) -> np.ndarray:
    """Closed-form moments in extended precision (solver-internal)."""
    out = np.zeros(len(exps), dtype=np.longdouble)
    lo = np.longdouble(mu.lo)
    hi = np.longdouble(mu.hi)
    for i, e in enumerate(exps):
        acc = np.longdouble(0)
        for t, w in mu.atoms:
            acc += np.longdouble(w) * np.longdouble(t) ** int(e)
        if mu.density is not None:
            for p, c in enumerate(mu.density):
                if c == 0.0:
                    continue
                q = int(e) + p
                if q == -1:
                    acc += np.longdouble(c) * np.log(hi / lo)
                else:
                    acc += np.longdouble(c) * (hi ** (q + 1) - lo ** (q + 1)) / (q + 1)
        out[i] = acc
    return out


def _newton_raw(exps, m, t, w, lo, hi, max_iter=40):
    """Extended-precision Newton directly on the raw power-moment system.

    Used as the final polish: the conditioned-basis iteration residual
    over-weighs the numerically thin directions of the system, while the
    acceptance criterion lives on the raw moments; polishing against them
    converges in a few steps from a near-solution.
    """
    t = np.array(t, dtype=np.longdouble)
    w = np.array(w, dtype=np.longdouble)
    exps_col = np.asarray(exps, dtype=np.longdouble)[:, None]
    mass = float(np.sum(np.abs(w.astype(float)))) + 1e-300
    pow_max = np.maximum(
        np.longdouble(lo) ** exps_col[:, 0], np.longdouble(hi) ** exps_col[:, 0]
    )
    sigma = np.abs(m) + mass * pow_max + np.longdouble(1e-300)
    n = len(t)
    span = hi - lo
    lo_guard = max(lo - 0.05 * span, 0.5 * lo)
    hi_guard = hi + 0.05 * span

    def residual(t, w):
        return (t[None, :] ** exps_col) @ w - m

    def merit(F):
        return float(np.linalg.norm((F / sigma).astype(float)))

    G = residual(t, w)
    for _ in range(max_iter):
        if np.all(np.abs(G) <= 1e-13 + 1e-11 * np.abs(m)):
            break
        P = t[None, :] ** exps_col
        dP = exps_col * t[None, :] ** (exps_col - 1) * w[None, :]
        J = np.hstack([dP, P]) / sigma[:, None]
        col = np.max(np.abs(J), axis=0)
        col[col == 0] = 1.0
        step = _ld_solve(J / col[None, :], -G / sigma)
        if step is None:
            break
        step = step / col
        dt, dw = step[:n], step[n:]
        base = merit(G)
        lam = 1.0
        accepted = False
        for _ in range(40):
            t2 = t + lam * dt
            w2 = w + lam * dw
            if np.all((t2 > lo_guard) & (t2 < hi_guard)):
                G2 = residual(t2, w2)
                if merit(G2) <= (1.0 - 1e-4 * lam) * base:
                    t, w, G = t2, w2, G2
                    accepted = True
                    break
            lam *= 0.5
        if not accepted:
            break
    return t, w


def gauss_rule(mu: RadialMeasure, basis: RadialBasis) -> QuadratureRule:
    """Rule with half as many nodes as basis exponents, exact on the basis.

    For an order-2N basis (4N exponents) this is the 2N-node generalized
    Gaussian rule.  A measure consisting of exactly that many positive
    atoms is returned directly; otherwise the rule is found by Newton
    iteration with continuation from equally weighted Gauss-Legendre-mapped
    atoms, with perturbation restarts on node coalescence.
    """
    exps = np.array(basis.exponents, dtype=int)
    n = len(exps) // 2
    if len(exps) != 2 * n:
        raise DomainError("basis must have an even number of exponents")
    support = mu.support_size()
    if support < n:
        raise DegenerateMeasureError(
            f"degenerate measure: {support} support points, rule needs {n}",
            support_size=support,
        )
    pos_atoms = sorted((t, w) for t, w in mu.atoms if w > 0)
    if not mu.has_density() and len(pos_atoms) == n:
        return QuadratureRule(
            nodes=np.array([t for t, _ in pos_atoms]),
            weights=np.array([w for _, w in pos_atoms]),
        )

    lo, hi = mu.lo, mu.hi
    m_target = moments(mu, exps)
    mass = float(moments(mu, [0])[0])
    tb = _TestBasis(basis, lo, hi)
    g_target = tb.integral(mu)
    pre_scale = np.repeat([max(lo**p, hi**p) for p in tb.prefactors], tb.N)
    sigma = np.abs(g_target) + np.longdouble(mass) * pre_scale + np.longdouble(1e-300)
    # Smooth stand-in for the continuation start: the density part alone, or
    # a uniform density of the same mass when the measure is purely atomic.
    if mu.has_density():
        smooth = RadialMeasure(lo, hi, density=mu.density)
    else:
        smooth = RadialMeasure(lo, hi, density=(mass / (hi - lo),))
    g_smooth = tb.integral(smooth)
    smooth_mass = float(moments(smooth, [0])[0])
    gl, _ = _leggauss(n)
    t_init = (lo + hi) / 2.0 + (hi - lo) / 2.0 * gl
    rng = np.random.default_rng(1729)

    m_target_ld = _moments_ld(mu, exps)

    def finish(t, w):
        """Polish against the raw power moments, then validate.

        The conditioned-basis iteration and the raw polish stall in
        different directions, so a few alternating rounds reach tolerances
        neither achieves alone.
        """
        t = np.array(t, dtype=np.longdouble)
        w = np.array(w, dtype=np.longdouble)
        for round_ in range(4):
            t, w = _newton_raw(exps, m_target_ld, t, w, lo, hi)
            res = (t[None, :] ** exps[:, None]) @ w - m_target_ld
            if np.all(np.abs(res).astype(float) <= 5e-13 + 5e-11 * np.abs(m_target)):
                break
            lv = float(np.max(np.abs(tb.eval(t)[0] @ w - g_target) / sigma))
            t, w, _ = _newton(
                tb, g_target, t, w, lo, hi, sigma,
                extended=True, target_level=max(lv / 100.0, 1e-17),
                accept_level=1.0, max_iter=40,
            )
        order = np.argsort(t)
        t, w = t[order], w[order]
        res = (t[None, :] ** exps[:, None]) @ w - m_target_ld
        rel = float(np.max(np.abs(res) / (1.0 + np.abs(m_target))))
        if np.any(np.abs(res).astype(float) > 1e-12 + 1e-10 * np.abs(m_target)):
            return None, rel
        if np.any(w.astype(float) < -_WEIGHT_CLAMP):
            return None, rel
        t = t.astype(float)
        w = w.astype(float)
        if np.any((t < lo - _NODE_CLAMP) | (t > hi + _NODE_CLAMP)):
            return None, rel
        t = np.clip(t, lo, hi)
        if len(t) > 1 and np.min(np.diff(t)) <= 1e-10 * (hi - lo):
            return None, rel
        return QuadratureRule(nodes=t, weights=np.maximum(w, 0.0)), rel

    last_residual = math.inf
    for restart in range(6):
        t0 = np.sort(t_init)
        if restart > 0:
            jitter = 0.05 * (hi - lo) * rng.uniform(-1.0, 1.0, size=n)
            t0 = np.sort(
                np.clip(t_init + jitter, lo + 0.01 * (hi - lo), hi - 0.01 * (hi - lo))
            )

        # Direct Newton on the full target.
        t, w, conv = _newton(
            tb, g_target, t0, np.full(n, mass / n), lo, hi, sigma,
            extended=True, target_level=1e-10, accept_level=1e-8, max_iter=100,
        )
        if conv:
            rule, rel = finish(t, w)
            last_residual = min(last_residual, rel)
            if rule is not None:
                return rule

        # Continuation from the smooth stand-in toward the spiky target.
        t, w, conv = _newton(
            tb, g_smooth, t0, np.full(n, smooth_mass / n), lo, hi, sigma,
            extended=True, target_level=1e-10, accept_level=1e-8, max_iter=100,
        )
        if not conv:
            continue
        s_done, ds = 0.0, 0.25
        ok = True
        while s_done < 1.0 and ok:
            s_try = min(1.0, s_done + ds)
            g_s = (1.0 - s_try) * g_smooth + s_try * g_target
            t2, w2, conv = _newton(
                tb, g_s, t, w, lo, hi, sigma,
                extended=True, target_level=1e-9, accept_level=1e-7, max_iter=50,
            )
            gap_ok = len(t2) < 2 or np.min(np.diff(np.sort(t2))) > 1e-10 * (hi - lo)
            if conv and gap_ok:
                t, w = np.asarray(t2), np.asarray(w2)
                s_done = s_try
                ds = min(0.25, 1.5 * ds)
            else:
                ds *= 0.5
                if ds < 1e-3:
                    ok = False
        if ok and s_done >= 1.0:
            rule, rel = finish(t, w)
            last_residual = min(last_residual, rel)
            if rule is not None:
                return rule
    raise SolverError(
        f"gauss rule did not converge (best relative residual {last_residual:.3e})",
        residual=last_residual,
    )


def _equilibrated_solve(V: np.ndarray, rhs: np.ndarray):
    """Column-equilibrated solve with one step of iterative refinement."""
    col = np.max(np.abs(V), axis=0)
    col[col == 0] = 1.0
    Vs = V / col[None, :]
    cond = np.linalg.cond(Vs)
    if not np.isfinite(cond) or cond > 1e14:
        raise SolverError(f"interpolation system ill-conditioned (cond ~ {cond:.3e})")
    y = np.linalg.solve(Vs, rhs)
    y += np.linalg.solve(Vs, rhs - Vs @ y)
    return y / col if rhs.ndim == 1 else y / col[:, None]


def interpolate(basis: RadialBasis, nodes, values) -> np.ndarray:
    """Coefficients c with sum_e c_e t_j^e = values_j at the given nodes.

    Node count must equal the basis dimension; the generalized Vandermonde
    solve is column equilibrated and refined once, and the result is
    checked against the interpolation conditions.
    """
    nodes = np.asarray(nodes, dtype=float)
    values = np.asarray(values)
    if len(nodes) != len(basis.exponents):
        raise DomainError(
            f"{len(nodes)} nodes for a basis of dimension {len(basis.exponents)}"
        )
    if values.shape != nodes.shape:
        raise DomainError("values must align with nodes")
    if len(np.unique(nodes)) != len(nodes):
        raise DomainError("interpolation nodes must be distinct")
    V = basis.powers(nodes)
    coeffs = _equilibrated_solve(V, values.astype(complex) if np.iscomplexobj(values) else values.astype(float))
    resid = float(np.linalg.norm(V @ coeffs - values))
    if resid > 1e-9 * max(1.0, float(np.linalg.norm(values))):
        raise SolverError(
            f"interpolation residual {resid:.3e} exceeds tolerance "
            f"(cond ~ {np.linalg.cond(V):.3e})",
            residual=resid,
        )
    return coeffs


def interpolation_defect(basis: RadialBasis, nodes, target, z_eval) -> np.ndarray:
    """target(z) - H[target](z) on a grid; zero on span(basis) and at nodes."""
    nodes = np.asarray(nodes, dtype=float)
    z_eval = np.asarray(z_eval, dtype=float)
    coeffs = interpolate(basis, nodes, target(nodes))
    return np.asarray(target(z_eval)) - basis.powers(z_eval) @ coeffs
