import math

import numpy as np
import pytest
from scipy.special import lpmv

from pcub import DomainError, SphericalIndex, dim_harmonics, eval_harmonic, sphere_rule
from pcub.sphere import harmonic_table, laplace_fourier_coefficient, surface_measure


def test_dim_harmonics_small_cases():
    assert dim_harmonics(3, 0) == 1
    assert dim_harmonics(2, 4) == 2
    assert dim_harmonics(2, 0) == 1
    assert dim_harmonics(3, 7) == 15
    assert dim_harmonics(5, 1) == 5


def test_dim_harmonics_rejects_bad_dimension():
    with pytest.raises(DomainError):
        dim_harmonics(1, 0)
    with pytest.raises(DomainError):
        dim_harmonics(3, -1)


def test_dim_harmonics_degree_two_gram_rank():
    # independent oracle: harmonic homogeneous degree-2 polynomials in R^3 are
    # the null space of the Laplacian on the 6 degree-2 monomials; its image
    # under sphere sampling must have rank dim_harmonics(3, 2) = 5.
    monomials = [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)]
    lap = np.zeros((1, 6))
    for i, (a, b, c) in enumerate(monomials):
        lap[0, i] = a * (a - 1) + b * (b - 1) + c * (c - 1)
    _, _, vt = np.linalg.svd(lap)
    harm_basis = vt[1:]  # 5-dim null space of the Laplacian row
    rule = sphere_rule(3, 16)
    x, y, z = rule.points.T
    mono_vals = np.array([x**a * y**b * z**c for a, b, c in monomials])
    samples = harm_basis @ mono_vals
    gram = (samples * rule.weights) @ samples.T
    rank = np.sum(np.linalg.svd(gram, compute_uv=False) > 1e-10)
    assert rank == dim_harmonics(3, 2) == 5


def test_eval_constant_harmonic():
    assert eval_harmonic(3, SphericalIndex(0, 1), [0.3, -0.4, math.sqrt(0.75)]) == \
        pytest.approx(1.0 / math.sqrt(4 * math.pi), rel=1e-14)


def test_eval_zonal_slot_at_pole():
    # zonal slot l = k + 1 carries sqrt((2k+1)/(4 pi)) P_k(cos theta)
    for k in (1, 3, 10, 99):
        got = eval_harmonic(3, SphericalIndex(k, k + 1), [0.0, 0.0, 1.0])
        assert got == pytest.approx(math.sqrt((2 * k + 1) / (4 * math.pi)), rel=1e-12)


def test_eval_circle_cosine_slot():
    got = eval_harmonic(2, SphericalIndex(3, 1), [1.0, 0.0])
    assert got == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-14)
    got_sin = eval_harmonic(2, SphericalIndex(3, 2), [math.cos(0.5), math.sin(0.5)])
    assert got_sin == pytest.approx(math.sin(1.5) / math.sqrt(math.pi), rel=1e-13)


def test_eval_rejects_non_unit_and_bad_order():
    with pytest.raises(DomainError):
        eval_harmonic(3, SphericalIndex(1, 1), [0.0, 0.0, 1.1])
    with pytest.raises(DomainError):
        eval_harmonic(3, SphericalIndex(1, 4), [0.0, 0.0, 1.0])


def test_against_scipy_associated_legendre():
    # cross-check the d=3 basis against scipy's lpmv (which carries the
    # Condon-Shortley phase; ours does not)
    rng = np.random.default_rng(7)
    for _ in range(50):
        k = int(rng.integers(0, 30))
        m = int(rng.integers(-k, k + 1)) if k else 0
        theta = rng.uniform(0, math.pi)
        phi = rng.uniform(0, 2 * math.pi)
        point = [math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)]
        norm = math.sqrt(
            (2 * k + 1) / (4 * math.pi) * math.factorial(k - abs(m)) / math.factorial(k + abs(m))
        )
        plm = (-1.0) ** abs(m) * lpmv(abs(m), k, math.cos(theta))
        if m == 0:
            expected = norm * plm
        elif m > 0:
            expected = math.sqrt(2) * norm * plm * math.cos(m * phi)
        else:
            expected = math.sqrt(2) * norm * plm * math.sin(-m * phi)
        got = eval_harmonic(3, SphericalIndex(k, m + k + 1), point)
        assert got == pytest.approx(expected, rel=1e-10, abs=1e-12)


def test_sphere_rule_circle_is_trapezoid():
    rule = sphere_rule(2, 8)
    assert len(rule) == 16
    assert np.allclose(rule.weights, 2 * math.pi / 16)
    assert np.allclose(np.linalg.norm(rule.points, axis=1), 1.0)


def test_sphere_rule_weight_totals():
    assert np.sum(sphere_rule(2, 10).weights) == pytest.approx(2 * math.pi, rel=1e-14)
    assert np.sum(sphere_rule(3, 10).weights) == pytest.approx(4 * math.pi, rel=1e-14)
    assert surface_measure(3) == pytest.approx(4 * math.pi)


@pytest.mark.parametrize("d,res", [(2, 8), (3, 16)])
def test_orthonormality_sweep(d, res):
    rule = sphere_rule(d, res)
    tab = harmonic_table(d, res // 2, rule.points)
    flat = np.vstack(tab)
    gram = (flat * rule.weights) @ flat.T
    assert np.max(np.abs(gram - np.eye(len(flat)))) < 1e-10


def test_harmonic_table_slot_counts():
    tab = harmonic_table(3, 6, sphere_rule(3, 8).points)
    for k, block in enumerate(tab):
        assert block.shape[0] == dim_harmonics(3, k)


def test_sup_norm_growth():
    # |Y_{k,l}| <= C k^(d/2-1) with one constant: fit C on low degrees and
    # check the upper half of the range against it
    rule = sphere_rule(3, 48)
    ratios = []
    for k in range(1, 51):
        block = harmonic_table(3, k, rule.points)[k]
        ratios.append(np.max(np.abs(block)) / math.sqrt(k))
    fit_c = 1.02 * max(ratios[:25])
    assert all(r <= fit_c for r in ratios[25:])


def test_laplace_fourier_recovers_coefficient():
    rule = sphere_rule(3, 16)
    y21 = eval_harmonic(3, SphericalIndex(2, 1), rule.points)
    got = laplace_fourier_coefficient(y21, SphericalIndex(2, 1), rule)
    assert got == pytest.approx(1.0, abs=1e-12)
    cross = laplace_fourier_coefficient(
        eval_harmonic(3, SphericalIndex(1, 2), rule.points), SphericalIndex(2, 2), rule
    )
    assert cross == pytest.approx(0.0, abs=1e-12)


def test_laplace_fourier_radial_factor_passes_through():
    rule = sphere_rule(3, 16)
    r = 1.5
    samples = r**2 * eval_harmonic(3, SphericalIndex(1, 1), rule.points)
    got = laplace_fourier_coefficient(samples, SphericalIndex(1, 1), rule)
    assert got == pytest.approx(2.25, abs=1e-12)


def test_laplace_fourier_x1_squared():
    # f(x) = x_1^2 on the unit sphere; its constant component is
    # (int theta_1^2 dtheta) * Y_{0,1} = (4 pi / 3) / sqrt(4 pi)
    rule = sphere_rule(3, 16)
    samples = rule.points[:, 0] ** 2
    got = laplace_fourier_coefficient(samples, SphericalIndex(0, 1), rule)
    assert got == pytest.approx((4 * math.pi / 3) / math.sqrt(4 * math.pi), rel=1e-12)


def test_laplace_fourier_rejects_mismatch():
    rule = sphere_rule(3, 8)
    with pytest.raises(DomainError):
        laplace_fourier_coefficient(np.ones(3), SphericalIndex(0, 1), rule)
    with pytest.raises(DomainError):
        laplace_fourier_coefficient(np.ones(len(rule)), SphericalIndex(9, 1), rule)
