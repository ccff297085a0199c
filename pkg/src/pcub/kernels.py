"""Cauchy-type kernels for the component spaces and the weighted aggregate.

On the outer circle |tau| = b the kernel is K_k^1 + K_k^2 with

    K_k^1(z, tau) = (z/tau)^k tau^2/(tau^2 - z^2)
    K_k^2(z, tau) = tau^2/(tau^2 - z^2)            (k odd)
                  = (z/tau) tau^2/(tau^2 - z^2)    (k even)

and on the inner circle |tau| = a it is the finite sum

    K_k^3(z, tau) = sum over j >= 0 with -d-k+2+2j < 0 of (tau/z)^(d+k-2-2j).

The closed forms are normative for evaluation; the defining geometric
series are retained as an oracle (`kernel_Kk_series`).  The finite-sum
kernel requires odd ambient dimension d, the parity pairing the
splitting of R_k relies on.

The aggregate kernel weights the component kernels by L^(-k) and the
spherical-harmonic addition products; its truncation tail is controlled
by the k-uniform bound on |K_k| together with a_k L^(-k)/|S^(d-1)|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .hardy import Annulus, ComponentFunction, HardyElement, boundary_trace
from .sphere import dim_harmonics, harmonic_table, surface_measure

__all__ = [
    "KernelQuery",
    "KernelValue",
    "kernel_K1",
    "kernel_K2",
    "kernel_K3",
    "kernel_Kk",
    "kernel_Kk_series",
    "kernel_full",
    "reproduce_component",
    "reproduce_full",
    "kernel_bound",
]

_SING_TOL = 1e-13
_RADIUS_TOL = 1e-12


@dataclass(frozen=True)
class KernelQuery:
    """Point pair for a component kernel: interior z, boundary tau."""

    k: int
    d: int
    z: complex
    tau: complex
    side: str

    def __post_init__(self):
        if self.k < 0:
            raise DomainError("degree k must be >= 0")
        if self.side not in ("inner", "outer"):
            raise DomainError(f"side must be 'inner' or 'outer', got {self.side!r}")

    def check_geometry(self, ann: Annulus) -> None:
        if not ann.contains(self.z):
            raise DomainError(f"|z|={abs(self.z):.6g} outside annulus ({ann.a}, {ann.b})")
        rho = ann.a if self.side == "inner" else ann.b
        if abs(abs(self.tau) - rho) > _RADIUS_TOL * max(1.0, rho):
            raise DomainError(
                f"|tau|={abs(self.tau):.6g} is not on the {self.side} circle (rho={rho})"
            )


class KernelValue(NamedTuple):
    value: complex
    tail_bound: float


def _require_outer(q: KernelQuery) -> None:
    if q.side != "outer":
        raise DomainError("kernel defined on the outer circle only")
    if abs(q.z) >= abs(q.tau):
        raise DomainError("outer kernel requires |z| < |tau| (series divergent)")


def _require_inner(q: KernelQuery) -> None:
    if q.side != "inner":
        raise DomainError("kernel defined on the inner circle only")
    if abs(q.tau) >= abs(q.z):
        raise DomainError("inner kernel requires |tau| < |z|")


def _pole_factor(z, tau):
    """tau^2/(tau^2 - z^2) with a near-singularity guard."""
    z = np.asarray(z, dtype=complex)
    tau = np.asarray(tau, dtype=complex)
    denom = tau * tau - z * z
    if np.any(np.abs(denom) <= _SING_TOL * np.abs(tau) ** 2):
        raise DomainError("z^2 too close to tau^2 (kernel evaluation unstable)")
    return tau * tau / denom


def _K1(k, z, tau):
    return (np.asarray(z, complex) / tau) ** k * _pole_factor(z, tau)


def _K2(k, z, tau):
    g = _pole_factor(z, tau)
    if k % 2 == 1:
        return g
    return (np.asarray(z, complex) / tau) * g


def _K_outer(k, z, tau):
    return _K1(k, z, tau) + _K2(k, z, tau)


def _K_inner(k, d, z, tau):
    if d % 2 == 0:
        raise DomainError(f"inner kernel requires odd ambient dimension, got d={d}")
    z = np.asarray(z, dtype=complex)
    tau = np.asarray(tau, dtype=complex)
    out = np.zeros(np.broadcast(z, tau).shape, dtype=complex)
    e = d + k - 2
    while e > 0:
        out = out + (tau / z) ** e
        e -= 2
    return out


def kernel_K1(q: KernelQuery) -> complex:
    """(z/tau)^k tau^2/(tau^2 - z^2), the nonnegative-family part."""
    _require_outer(q)
    return complex(_K1(q.k, q.z, q.tau))


def kernel_K2(q: KernelQuery) -> complex:
    """Second outer-circle part; parity of k selects the closed form."""
    _require_outer(q)
    return complex(_K2(q.k, q.z, q.tau))


def kernel_K3(q: KernelQuery) -> complex:
    """Finite inner-circle sum; requires odd d."""
    _require_inner(q)
    return complex(_K_inner(q.k, q.d, q.z, q.tau))


def kernel_Kk(q: KernelQuery) -> complex:
    """Component kernel: K^1 + K^2 on the outer circle, K^3 on the inner."""
    if q.side == "outer":
        _require_outer(q)
        return complex(_K_outer(q.k, q.z, q.tau))
    _require_inner(q)
    return complex(_K_inner(q.k, q.d, q.z, q.tau))


def kernel_Kk_series(q: KernelQuery, tol: float) -> complex:
    """Direct summation of the defining series, truncated by the geometric tail.

    Oracle for the closed forms; the inner-circle series is a finite sum
    and is reproduced exactly.
    """
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    if q.side == "inner":
        _require_inner(q)
        return complex(_K_inner(q.k, q.d, q.z, q.tau))
    _require_outer(q)
    r = q.z / q.tau
    rho2 = abs(r) ** 2
    tail_factor = rho2 / (1.0 - rho2)

    def geometric(first_exponent: int) -> complex:
        total = 0j
        term = r**first_exponent
        for _ in range(10_000_000):
            total += term
            if abs(term) * tail_factor < 0.5 * tol:
                return total
            term *= r * r
        raise DomainError("series did not reach the requested tolerance")

    m0 = (q.d + q.k) % 2
    return geometric(q.k) + geometric(m0)


def _infer_side(tau: complex, ann: Annulus) -> str:
    if abs(abs(tau) - ann.a) <= _RADIUS_TOL * max(1.0, ann.a):
        return "inner"
    if abs(abs(tau) - ann.b) <= _RADIUS_TOL * max(1.0, ann.b):
        return "outer"
    raise DomainError(f"|tau|={abs(tau):.6g} lies on neither boundary circle")


def kernel_full(
    z: complex,
    theta,
    tau: complex,
    theta_p,
    L: float,
    k_max: int,
    d: int,
    ann: Annulus,
) -> KernelValue:
    """Truncated aggregate kernel sum_k L^(-k) K_k(z,tau) sum_l Y(theta) Y(theta').

    Returns the value together with a bound on the truncation tail,
    max_k |K_k| * sum_{k > k_max} a_k L^(-k) / |S^(d-1)|, using the
    Cauchy-Schwarz bound sum_l |Y Y'| <= a_k/|S^(d-1)| and the k-uniform
    kernel bound.
    """
    if L <= 1.0:
        raise DomainError("weight parameter L must be > 1")
    if not ann.contains(z):
        raise DomainError(f"|z|={abs(z):.6g} outside annulus ({ann.a}, {ann.b})")
    side = _infer_side(tau, ann)
    tab = harmonic_table(d, k_max, np.vstack([theta, theta_p]))
    value = 0j
    k_cap = 0.0
    for k in range(k_max + 1):
        if side == "outer":
            kk = complex(_K_outer(k, z, tau))
        else:
            kk = complex(_K_inner(k, d, z, tau))
        k_cap = max(k_cap, abs(kk))
        addition = float(np.dot(tab[k][:, 0], tab[k][:, 1]))
        value += L ** (-k) * kk * addition
    omega = surface_measure(d)
    tail = 0.0
    k = k_max + 1
    while True:
        term = dim_harmonics(d, k) * L ** (-k) / omega
        tail += term
        if term < 1e-18 * max(tail, 1e-300) or k > k_max + 200_000:
            break
        k += 1
    return KernelValue(value, k_cap * tail)


def reproduce_component(f: ComponentFunction, z: complex, ann: Annulus, M: int) -> complex:
    """Recover f(z) from boundary traces via the component Cauchy formula.

    Trapezoid rule with M angles on each circle; spectrally accurate for
    finite Laurent data.
    """
    if not ann.contains(z):
        raise DomainError(f"|z|={abs(z):.6g} outside annulus ({ann.a}, {ann.b})")
    phi = 2.0 * math.pi * np.arange(M) / M
    tau_b = ann.b * np.exp(1j * phi)
    tau_a = ann.a * np.exp(1j * phi)
    trace_b = boundary_trace(f.series, ann, "outer", M)
    trace_a = boundary_trace(f.series, ann, "inner", M)
    outer = np.mean(_K_outer(f.k, z, tau_b) * trace_b)
    inner = np.mean(_K_inner(f.k, f.d, z, tau_a) * trace_a)
    return complex(outer + inner)


def reproduce_full(
    f: HardyElement,
    z: complex,
    theta,
    ann: Annulus,
    M: int,
    sphere_res: int,
) -> complex:
    """Recover f(z, theta) by pairing the aggregate kernel with boundary data.

    The boundary function is synthesized on a (circle x sphere) product
    grid, resolved back into (k, l) components with the sphere rule, and
    each component is pushed through the componentwise Cauchy formula.
    The L weights of the pairing cancel against the kernel's L^(-k) factor
    componentwise, so none appear here.
    """
    from .sphere import sphere_rule  # local import to avoid cycle noise

    if f.k0 >= sphere_res:
        raise DomainError(
            f"sphere resolution {sphere_res} does not resolve degree {f.k0}"
        )
    if not f.components:
        return 0j
    rule = sphere_rule(f.d, sphere_res)
    tab = harmonic_table(f.d, f.k0, rule.points)
    phi = 2.0 * math.pi * np.arange(M) / M
    tau_b = ann.b * np.exp(1j * phi)
    tau_a = ann.a * np.exp(1j * phi)

    # Synthesize boundary samples F[m, i] = f*(tau_m, theta_i) on both circles.
    F_b = np.zeros((M, len(rule)), dtype=complex)
    F_a = np.zeros((M, len(rule)), dtype=complex)
    for (k, ell), comp in f.items():
        y = tab[k][ell - 1]
        F_b += np.outer(boundary_trace(comp.series, ann, "outer", M), y)
        F_a += np.outer(boundary_trace(comp.series, ann, "inner", M), y)

    theta_tab = harmonic_table(f.d, f.k0, np.asarray(theta, float)[None, :])
    total = 0j
    for (k, ell), _ in f.items():
        wy = rule.weights * tab[k][ell - 1]
        proj_b = F_b @ wy
        proj_a = F_a @ wy
        outer = np.mean(_K_outer(k, z, tau_b) * proj_b)
        inner = np.mean(_K_inner(k, f.d, z, tau_a) * proj_a)
        total += (outer + inner) * theta_tab[k][ell - 1, 0]
    return complex(total)


def kernel_bound(k_max: int, eps: float, ann: Annulus, grid: int, d: int = 3) -> float:
    """Empirical sup of |K_k| over k <= k_max, interior z, boundary tau.

    Samples |z| on ``grid`` radii in [a+eps, b-eps] and ``grid`` relative
    angles; by rotation invariance tau can be fixed on the positive real
    axis of each circle.
    """
    if not 0.0 < eps <= (ann.b - ann.a) / 3.0:
        raise DomainError("eps must satisfy 0 < eps <= (b - a)/3")
    if grid < 1:
        raise DomainError("grid must be >= 1")
    radii = np.linspace(ann.a + eps, ann.b - eps, grid)
    angles = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
    zs = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
    best = 0.0
    for k in range(k_max + 1):
        best = max(best, float(np.max(np.abs(_K_outer(k, zs, ann.b)))))
        best = max(best, float(np.max(np.abs(_K_inner(k, d, zs, ann.a)))))
    return best
