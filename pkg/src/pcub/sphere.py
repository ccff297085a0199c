"""Real orthonormal spherical harmonics on S^(d-1) and sphere quadrature.

Conventions
-----------
All bases are orthonormal for the *unnormalized* surface measure, whose
total mass is 2*pi for d = 2 and 4*pi for d = 3.

d = 2 (circle, angle phi):

    Y_{0,1} = 1/sqrt(2 pi)
    Y_{k,1} = cos(k phi)/sqrt(pi),  Y_{k,2} = sin(k phi)/sqrt(pi)   (k >= 1)

d = 3 (colatitude theta, azimuth phi):

    Y_{k,l} = Pbar_k^m(cos theta) * Phi_m(phi),   m = l - k - 1 in [-k, k]

with Phi_0 = 1, Phi_m = sqrt(2) cos(m phi) for m > 0, and
Phi_m = sqrt(2) sin(|m| phi) for m < 0.  Pbar_k^m is the fully normalized
associated Legendre function *without* the Condon-Shortley phase, so the
slot l = k + 1 is the zonal harmonic sqrt((2k+1)/(4 pi)) P_k(cos theta),
which equals sqrt((2k+1)/(4 pi)) at the north pole.

The degree recurrence for Pbar carries the normalization along and is
stable for k up to a few hundred.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "SphericalIndex",
    "SphereQuadrature",
    "dim_harmonics",
    "eval_harmonic",
    "harmonic_table",
    "sphere_rule",
    "surface_measure",
    "laplace_fourier_coefficient",
]

_UNIT_TOL = 1e-12


@dataclass(frozen=True)
class SphericalIndex:
    """Degree/order pair (k, l) with 1 <= l <= dim_harmonics(d, k)."""

    k: int
    ell: int

    def __post_init__(self):
        if self.k < 0:
            raise DomainError(f"degree k must be >= 0, got {self.k}")
        if self.ell < 1:
            raise DomainError(f"order l must be >= 1, got {self.ell}")


@dataclass(frozen=True)
class SphereQuadrature:
    """Quadrature rule on S^(d-1): unit points, positive weights.

    Weights sum to the surface measure (2*pi for d = 2, 4*pi for d = 3).
    ``resolution`` is the construction parameter of :func:`sphere_rule`;
    harmonics of degree below it are integrated exactly.
    """

    d: int
    points: np.ndarray
    weights: np.ndarray
    resolution: int

    def __post_init__(self):
        norms = np.linalg.norm(self.points, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-14:
            raise DomainError("sphere rule points must lie on the unit sphere")
        total = surface_measure(self.d)
        if abs(float(np.sum(self.weights)) - total) > 1e-12 * total:
            raise DomainError("sphere rule weights must sum to the surface measure")

    def __len__(self):
        return len(self.weights)


def surface_measure(d: int) -> float:
    """Total mass of S^(d-1): 2*pi^(d/2)/Gamma(d/2)."""
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


def dim_harmonics(d: int, k: int) -> int:
    """Dimension a_k of the space of homogeneous harmonics of degree k in R^d.

    Binomial form C(k+d-1, d-1) - C(k+d-3, d-1); reduces to 1/2 for d = 2
    and 2k+1 for d = 3.
    """
    if d < 2:
        raise DomainError(f"ambient dimension must be >= 2, got {d}")
    if k < 0:
        raise DomainError(f"degree must be >= 0, got {k}")
    if k == 0:
        return 1
    return math.comb(k + d - 1, d - 1) - math.comb(k + d - 3, d - 1)


def _pbar(k: int, m: int, x: np.ndarray) -> np.ndarray:
    """Fully normalized associated Legendre Pbar_k^m(x), no CS phase.

    Normalized so that int_{-1}^{1} Pbar_k^m(x)^2 dx = 1/(2 pi); combined
    with the azimuthal factors this makes the real harmonics orthonormal.
    """
    s = np.sqrt(np.maximum(0.0, 1.0 - x * x))
    p = np.full_like(x, 1.0 / math.sqrt(4.0 * math.pi))
    for i in range(1, m + 1):
        p = p * s * math.sqrt((2.0 * i + 1.0) / (2.0 * i))
    if k == m:
        return p
    p_prev = p
    p = math.sqrt(2.0 * m + 3.0) * x * p_prev
    for n in range(m + 2, k + 1):
        a = math.sqrt((4.0 * n * n - 1.0) / (n * n - m * m))
        b = math.sqrt(
            (2.0 * n + 1.0) * (n - 1.0 - m) * (n - 1.0 + m)
            / ((2.0 * n - 3.0) * (n - m) * (n + m))
        )
        p, p_prev = a * x * p - b * p_prev, p
    return p


def _check_unit(theta: np.ndarray) -> None:
    norms = np.linalg.norm(theta, axis=-1)
    if np.max(np.abs(norms - 1.0)) > _UNIT_TOL:
        raise DomainError("theta must be a unit vector (|theta| = 1 within 1e-12)")


def eval_harmonic(d: int, idx: SphericalIndex, theta) -> float | np.ndarray:
    """Evaluate Y_{k,l} at unit vectors ``theta`` (shape (d,) or (n, d)).

    Evaluation is implemented for d in {2, 3}; use :func:`dim_harmonics`
    for the slot count in higher dimensions.
    """
    theta = np.asarray(theta, dtype=float)
    scalar = theta.ndim == 1
    pts = theta[None, :] if scalar else theta
    if pts.shape[-1] != d:
        raise DomainError(f"theta has dimension {pts.shape[-1]}, expected {d}")
    _check_unit(pts)
    a_k = dim_harmonics(d, idx.k)
    if idx.ell > a_k:
        raise DomainError(f"order l={idx.ell} exceeds a_k={a_k} for d={d}, k={idx.k}")
    k, ell = idx.k, idx.ell
    if d == 2:
        phi = np.arctan2(pts[:, 1], pts[:, 0])
        if k == 0:
            out = np.full(len(pts), 1.0 / math.sqrt(2.0 * math.pi))
        elif ell == 1:
            out = np.cos(k * phi) / math.sqrt(math.pi)
        else:
            out = np.sin(k * phi) / math.sqrt(math.pi)
    elif d == 3:
        x = pts[:, 2]
        phi = np.arctan2(pts[:, 1], pts[:, 0])
        m = ell - k - 1
        pb = _pbar(k, abs(m), x)
        if m == 0:
            out = pb
        elif m > 0:
            out = math.sqrt(2.0) * pb * np.cos(m * phi)
        else:
            out = math.sqrt(2.0) * pb * np.sin(-m * phi)
    else:
        raise DomainError(f"harmonic evaluation supports d in {{2, 3}}, got {d}")
    return float(out[0]) if scalar else out


def harmonic_table(d: int, k_max: int, points) -> list[np.ndarray]:
    """All Y_{k,l} on a set of unit points: entry k has shape (a_k, n)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    table = []
    for k in range(k_max + 1):
        rows = [
            eval_harmonic(d, SphericalIndex(k, ell), points)
            for ell in range(1, dim_harmonics(d, k) + 1)
        ]
        table.append(np.array(rows))
    return table


def sphere_rule(d: int, resolution: int) -> SphereQuadrature:
    """Product quadrature on S^(d-1), exact for degrees < resolution.

    d = 2: trapezoid with 2*resolution equispaced angles (exact for
    trigonometric degree < 2*resolution).  d = 3: Gauss-Legendre in
    cos(theta) (``resolution`` points) times trapezoid in phi
    (2*resolution points).
    """
    if resolution < 1:
        raise DomainError("resolution must be >= 1")
    n_phi = 2 * resolution
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    if d == 2:
        points = np.column_stack([np.cos(phi), np.sin(phi)])
        weights = np.full(n_phi, 2.0 * math.pi / n_phi)
    elif d == 3:
        x, wx = np.polynomial.legendre.leggauss(resolution)
        s = np.sqrt(1.0 - x * x)
        points = np.column_stack(
            [
                np.outer(s, np.cos(phi)).ravel(),
                np.outer(s, np.sin(phi)).ravel(),
                np.outer(x, np.ones(n_phi)).ravel(),
            ]
        )
        weights = np.outer(wx, np.full(n_phi, 2.0 * math.pi / n_phi)).ravel()
    else:
        raise DomainError(f"sphere_rule supports d in {{2, 3}}, got {d}")
    return SphereQuadrature(d=d, points=points, weights=weights, resolution=resolution)


def laplace_fourier_coefficient(samples, idx: SphericalIndex, rule: SphereQuadrature):
    """Project samples of f(r*theta_i) onto Y_{k,l}: sum_i w_i f_i Y(theta_i).

    Approximates the sphere integral of f(r .) * Y_{k,l}; exact when the
    integrand has degree below the rule resolution.
    """
    samples = np.asarray(samples)
    if samples.shape != (len(rule),):
        raise DomainError(
            f"got {samples.shape[0] if samples.ndim else 0} samples "
            f"for a rule with {len(rule)} points"
        )
    if idx.k >= rule.resolution:
        raise DomainError(
            f"rule resolution {rule.resolution} does not resolve degree {idx.k}"
        )
    y = eval_harmonic(rule.d, idx, rule.points)
    out = np.dot(rule.weights, samples * y)
    return complex(out) if np.iscomplexobj(samples) else float(out)
