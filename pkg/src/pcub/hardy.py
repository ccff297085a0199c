"""Laurent-series model of the Hardy space on a complex annulus.

A finite Laurent series f(z) = sum_j c_j z^j is square integrable on both
boundary circles, and the squared boundary norm is

    ||f||^2 = 2 pi * sum_j |c_j|^2 (a^(2j) + b^(2j)).

Component functions restrict the support to the index set

    R_k = { k + 2m : m >= 0 } U { -d-k+2 + 2m : m >= 0 },

and weighted elements collect components by (degree, order) slots with
per-degree weights L^(2k), L > 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CollisionError, DomainError
from .sphere import SphericalIndex, dim_harmonics, eval_harmonic

__all__ = [
    "Annulus",
    "LaurentSeries",
    "ComponentFunction",
    "HardyElement",
    "riesz_set",
    "in_riesz_set",
    "m2_mean",
    "h2_inner",
    "h2_norm",
    "boundary_trace",
    "hardy_decompose",
    "split_f1_f2",
    "hl2_norm",
    "evaluate",
    "max_principle_bound",
]


@dataclass(frozen=True)
class Annulus:
    """Annular domain a < |z| < b with 0 < a < b."""

    a: float
    b: float

    def __post_init__(self):
        if not 0.0 < self.a < self.b:
            raise DomainError(f"annulus requires 0 < a < b, got a={self.a}, b={self.b}")

    def contains(self, z: complex) -> bool:
        return self.a < abs(z) < self.b


@dataclass(frozen=True)
class LaurentSeries:
    """Finitely supported Laurent series, exponent -> complex coefficient.

    Exactly-zero coefficients are dropped, so the empty series is the zero
    function.  Instances are immutable; arithmetic returns new series.
    """

    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(j): complex(c) for j, c in self.coeffs.items() if c != 0}
        object.__setattr__(self, "coeffs", clean)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.coeffs))

    @property
    def max_abs_exponent(self) -> int:
        return max((abs(j) for j in self.coeffs), default=0)

    def coeff(self, j: int) -> complex:
        return self.coeffs.get(j, 0j)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for j, c in self.coeffs.items():
            out += c * z**j
        return complex(out) if out.ndim == 0 else out

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        merged = dict(self.coeffs)
        for j, c in other.coeffs.items():
            merged[j] = merged.get(j, 0j) + c
        return LaurentSeries(merged)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "LaurentSeries":
        return LaurentSeries({j: scalar * c for j, c in self.coeffs.items()})

    def __bool__(self):
        return bool(self.coeffs)


def riesz_set(k: int, d: int, j_min: int, j_max: int) -> list[int]:
    """Elements of R_k within [j_min, j_max], sorted and deduplicated."""
    if j_min > j_max:
        raise DomainError("j_min must not exceed j_max")
    out = set()
    j = k
    while j <= j_max:
        if j >= j_min:
            out.add(j)
        j += 2
    j = -d - k + 2
    while j <= j_max:
        if j >= j_min:
            out.add(j)
        j += 2
    return sorted(out)


def in_riesz_set(j: int, k: int, d: int) -> bool:
    first = j >= k and (j - k) % 2 == 0
    second = j >= -d - k + 2 and (j + d + k) % 2 == 0
    return first or second


@dataclass(frozen=True)
class ComponentFunction:
    """Laurent series constrained to the index set R_k for degree k in R^d."""

    k: int
    d: int
    series: LaurentSeries

    def __post_init__(self):
        bad = [j for j in self.series.support if not in_riesz_set(j, self.k, self.d)]
        if bad:
            raise DomainError(
                f"exponents {bad} lie outside R_k for k={self.k}, d={self.d}"
            )


@dataclass(frozen=True)
class HardyElement:
    """Finite expansion sum_(k,l) f_(k,l)(z) Y_(k,l)(theta) with weight L > 1."""

    d: int
    L: float
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.L <= 1.0:
            raise DomainError(f"weight parameter L must be > 1, got {self.L}")
        for (k, ell), comp in self.components.items():
            if comp.k != k or comp.d != self.d:
                raise DomainError(f"component at slot ({k},{ell}) carries k={comp.k}, d={comp.d}")
            if not 1 <= ell <= dim_harmonics(self.d, k):
                raise DomainError(f"order {ell} out of range for degree {k}, d={self.d}")

    @property
    def k0(self) -> int:
        """Maximal degree present; -1 for the empty element."""
        return max((k for k, _ in self.components), default=-1)

    def items(self):
        return sorted(self.components.items())


def m2_mean(series: LaurentSeries, r: float) -> float:
    """Quadratic circle mean (sum_j |c_j|^2 r^(2j))^(1/2), exact for finite series."""
    if r <= 0:
        raise DomainError("radius must be positive")
    return math.sqrt(sum(abs(c) ** 2 * r ** (2 * j) for j, c in series.coeffs.items()))


def h2_inner(f: LaurentSeries, g: LaurentSeries, ann: Annulus) -> complex:
    """Boundary inner product 2 pi sum_j f_j conj(g_j) (a^(2j) + b^(2j))."""
    acc = 0j
    for j, cf in f.coeffs.items():
        cg = g.coeffs.get(j)
        if cg is not None:
            acc += cf * cg.conjugate() * (ann.a ** (2 * j) + ann.b ** (2 * j))
    return 2.0 * math.pi * acc


def h2_norm(f: LaurentSeries, ann: Annulus) -> float:
    return math.sqrt(max(0.0, h2_inner(f, f, ann).real))


def boundary_trace(f: LaurentSeries, ann: Annulus, side: str, M: int) -> np.ndarray:
    """Boundary values at M equispaced angles on the chosen circle.

    M must be at least 2*max|exponent| + 2 so the samples determine the
    trigonometric polynomial without aliasing.
    """
    rho = _side_radius(ann, side)
    need = 2 * f.max_abs_exponent + 2
    if M < need:
        raise DomainError(f"M={M} undersamples the trace; need M >= {need}")
    phi = 2.0 * math.pi * np.arange(M) / M
    return f(rho * np.exp(1j * phi))


def _side_radius(ann: Annulus, side: str) -> float:
    if side == "inner":
        return ann.a
    if side == "outer":
        return ann.b
    raise DomainError(f"side must be 'inner' or 'outer', got {side!r}")


def hardy_decompose(f: LaurentSeries) -> tuple[LaurentSeries, LaurentSeries]:
    """Exact split f = g + h with g on exponents >= 0 and h on exponents < 0."""
    g = LaurentSeries({j: c for j, c in f.coeffs.items() if j >= 0})
    h = LaurentSeries({j: c for j, c in f.coeffs.items() if j < 0})
    return g, h


def split_f1_f2(f: ComponentFunction) -> tuple[LaurentSeries, LaurentSeries]:
    """Unique (f1, f2) with f(z) = z^k f1(z^2) + z^(-d-k+2) f2(z^2).

    Requires the two exponent families to be disjoint, which holds exactly
    when d is odd; colliding exponents in even dimension are rejected since
    the split is no longer unique there.
    """
    k, d = f.k, f.d
    base2 = -d - k + 2
    f1, f2 = {}, {}
    for j, c in f.series.coeffs.items():
        first = j >= k and (j - k) % 2 == 0
        second = j >= base2 and (j - base2) % 2 == 0
        if first and second:
            raise CollisionError(
                f"exponent {j} belongs to both families for k={k}, d={d} "
                "(even-dimension collision; split not unique)"
            )
        if first:
            f1[(j - k) // 2] = c
        elif second:
            f2[(j - base2) // 2] = c
        else:
            raise DomainError(f"exponent {j} outside R_k for k={k}, d={d}")
    return LaurentSeries(f1), LaurentSeries(f2)


def hl2_norm(f: HardyElement, ann: Annulus) -> float:
    """Weighted norm sqrt(sum_(k,l) ||f_(k,l)||^2 L^(2k))."""
    total = 0.0
    for (k, _), comp in f.components.items():
        total += h2_norm(comp.series, ann) ** 2 * f.L ** (2 * k)
    return math.sqrt(total)


def evaluate(f: HardyElement, z: complex, theta, ann: Annulus) -> complex:
    """Pointwise value sum_(k,l) f_(k,l)(z) Y_(k,l)(theta) for z in the annulus."""
    if not ann.contains(z):
        raise DomainError(f"|z|={abs(z):.6g} outside annulus ({ann.a}, {ann.b})")
    acc = 0j
    for (k, ell), comp in f.components.items():
        acc += comp.series(z) * eval_harmonic(f.d, SphericalIndex(k, ell), theta)
    return acc


def max_principle_bound(f: HardyElement, z: complex, ann: Annulus) -> float:
    """Interior growth bound ||f|| / min(1 - |z|/b, |z|/a - 1).

    |f(z, theta)| is bounded by a fixed multiple of this quantity; the
    multiple is calibrated empirically in the verification suites.
    """
    denom = min(1.0 - abs(z) / ann.b, abs(z) / ann.a - 1.0)
    if denom <= 0.0:
        raise DomainError(f"z with |z|={abs(z):.6g} is not interior to ({ann.a}, {ann.b})")
    return hl2_norm(f, ann) / denom
