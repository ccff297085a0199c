import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcub import (
    DegenerateMeasureError,
    DomainError,
    QuadratureRule,
    RadialMeasure,
    SolverError,
    apply_rule,
    build_basis,
    gauss_rule,
    interpolate,
    interpolation_defect,
    moments,
)
from .conftest import random_mixed_measure


def test_build_basis_examples():
    assert build_basis(0, 3, 2).exponents == (0, 2, -1, 1)
    assert build_basis(1, 3, 1).exponents == (1, -2)
    assert build_basis(2, 5, 2).exponents == (2, 4, -5, -3)


def test_build_basis_rejects_even_dimension():
    with pytest.raises(DomainError):
        build_basis(0, 2, 2)
    with pytest.raises(DomainError):
        build_basis(0, 4, 1)


def test_moments_lebesgue_example():
    mu = RadialMeasure(lo=1.0, hi=2.0, density=(1.0,))
    got = moments(mu, [0, 2, -1, 1])
    assert np.allclose(got, [1.0, 7 / 3, math.log(2), 1.5], rtol=1e-14)


def test_moments_atom_and_mixed():
    atom = RadialMeasure(lo=1.0, hi=2.0, atoms=((1.5, 2.0),))
    assert moments(atom, [2])[0] == pytest.approx(4.5)
    mixed = RadialMeasure(lo=1.0, hi=2.0, atoms=((1.5, 2.0),), density=(1.0,))
    assert mixed.support_size() == math.inf
    assert moments(mixed, [2])[0] == pytest.approx(4.5 + 7 / 3)


def test_moments_reject_origin_support():
    with pytest.raises(DomainError):
        moments(RadialMeasure(lo=-0.5, hi=1.0, density=(1.0,)), [0])


def _two_node_oracle(mu, exponents, lo=1.0, hi=2.0):
    """Brute-force bisection over the 2-parameter node manifold.

    For node pair (t1, t2) the weights solve the first two moment equations
    linearly; grid-refine the remaining residual to locate the Gauss pair.
    """
    m = moments(mu, exponents)

    def residual(t1, t2):
        A = np.array([[t1 ** exponents[0], t2 ** exponents[0]],
                      [t1 ** exponents[1], t2 ** exponents[1]]])
        try:
            w = np.linalg.solve(A, m[:2])
        except np.linalg.LinAlgError:
            return np.inf, None
        r = sum(
            (w[0] * t1**e + w[1] * t2**e - me) ** 2
            for e, me in zip(exponents[2:], m[2:])
        )
        return r, w

    span = hi - lo
    best = (lo + span / 3, hi - span / 3)
    for _ in range(30):
        grid1 = np.linspace(max(lo, best[0] - span), min(hi, best[0] + span), 40)
        grid2 = np.linspace(max(lo, best[1] - span), min(hi, best[1] + span), 40)
        vals = {}
        for t1 in grid1:
            for t2 in grid2:
                if t2 - t1 < 1e-6:
                    continue
                r, w = residual(t1, t2)
                if w is not None and np.all(w > 0):
                    vals[(t1, t2)] = r
        best = min(vals, key=vals.get)
        span /= 3
    _, w = residual(*best)
    return np.array(best), w


def test_gauss_rule_lebesgue_vs_bisection_oracle():
    mu = RadialMeasure(lo=1.0, hi=2.0, density=(1.0,))
    basis = build_basis(0, 3, 2)
    rule = gauss_rule(mu, basis)
    nodes, weights = _two_node_oracle(mu, list(basis.exponents))
    assert np.allclose(rule.nodes, nodes, atol=1e-7)
    assert np.allclose(rule.weights, weights, atol=1e-7)
    got = basis.powers(rule.nodes).T @ rule.weights
    m = moments(mu, basis.exponents)
    assert np.max(np.abs(got - m) / np.abs(m)) < 1e-10


def test_gauss_rule_atomic_echo():
    atoms = ((1.2, 0.7), (1.8, 0.3))
    mu = RadialMeasure(lo=1.0, hi=2.0, atoms=atoms)
    rule = gauss_rule(mu, build_basis(0, 3, 2))
    assert np.allclose(rule.nodes, [1.2, 1.8], atol=1e-12)
    assert np.allclose(rule.weights, [0.7, 0.3], atol=1e-12)


def test_gauss_rule_degenerate_measure():
    mu = RadialMeasure(lo=1.0, hi=2.0, atoms=((1.5, 1.0),))
    with pytest.raises(DegenerateMeasureError) as err:
        gauss_rule(mu, build_basis(0, 3, 2))
    assert err.value.support_size == 1


def test_gauss_rule_exactness_sweep():
    rng = np.random.default_rng(9)
    for _ in range(6):
        mu = random_mixed_measure(rng)
        for k in (0, 2, 4):
            for N in (1, 2, 3):
                basis = build_basis(k, 3, 2 * N)
                rule = gauss_rule(mu, basis)
                m = moments(mu, basis.exponents)
                got = basis.powers(rule.nodes).T @ rule.weights
                assert np.max(np.abs(got - m) / (1 + np.abs(m))) <= 1e-10
                assert np.all(rule.weights >= 0)
                assert rule.nodes.min() >= 1.0 - 1e-12
                assert rule.nodes.max() <= 2.0 + 1e-12


def test_gauss_rule_scale_covariance():
    rng = np.random.default_rng(10)
    mu = random_mixed_measure(rng)
    basis = build_basis(1, 3, 4)
    r1 = gauss_rule(mu, basis)
    r2 = gauss_rule(mu.scaled(3.0), basis)
    assert np.allclose(r1.nodes, r2.nodes, atol=1e-10)
    assert np.allclose(3.0 * r1.weights, r2.weights, atol=1e-10)


def test_quadrature_rule_validation():
    with pytest.raises(DomainError):
        QuadratureRule(nodes=np.array([1.0, 1.0]), weights=np.array([0.5, 0.5]))
    with pytest.raises(DomainError):
        QuadratureRule(nodes=np.array([1.0, 1.5]), weights=np.array([0.5, -0.1]))
    clamped = QuadratureRule(nodes=np.array([1.0, 1.5]), weights=np.array([0.5, -1e-13]))
    assert clamped.weights[1] == 0.0


def test_apply_rule_examples():
    rule = QuadratureRule(nodes=np.array([1.0, 2.0]), weights=np.array([1.0, 1.0]))
    assert apply_rule(rule, rule.nodes**2) == pytest.approx(5.0)
    zero = QuadratureRule(nodes=np.array([1.0, 2.0]), weights=np.array([0.0, 0.0]))
    assert apply_rule(zero, np.ones(2)) == 0.0
    with pytest.raises(DomainError):
        apply_rule(rule, np.ones(3))


def test_apply_rule_reproduces_moments():
    rng = np.random.default_rng(13)
    mu = random_mixed_measure(rng)
    basis = build_basis(2, 3, 4)
    rule = gauss_rule(mu, basis)
    m = moments(mu, basis.exponents)
    for e, me in zip(basis.exponents, m):
        assert apply_rule(rule, rule.nodes.astype(float) ** e) == pytest.approx(me, rel=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.1, 10.0), st.floats(-5, 5), st.floats(-5, 5))
def test_apply_rule_linearity(c, a, b):
    rule = QuadratureRule(nodes=np.array([1.1, 1.9]), weights=np.array([0.4, 0.6]))
    va = np.array([a, b])
    vb = np.array([b, a])
    left = apply_rule(rule, c * va + vb)
    right = c * apply_rule(rule, va) + apply_rule(rule, vb)
    assert left == pytest.approx(right, rel=1e-12, abs=1e-12)


def test_interpolate_unit_vector_on_basis_element():
    basis = build_basis(1, 3, 2)
    nodes = np.array([1.1, 1.4, 1.6, 1.9])
    for i, e in enumerate(basis.exponents):
        coeffs = interpolate(basis, nodes, nodes.astype(float) ** e)
        expected = np.zeros(4)
        expected[i] = 1.0
        assert np.allclose(coeffs, expected, atol=1e-10)


def test_interpolate_zero_values():
    basis = build_basis(0, 3, 1)
    coeffs = interpolate(basis, np.array([1.2, 1.7]), np.zeros(2))
    assert np.allclose(coeffs, 0.0)


def test_interpolate_round_trip():
    rng = np.random.default_rng(15)
    for k in range(5):
        for N in (1, 2, 3, 4):
            basis = build_basis(k, 3, N)
            n = 2 * N
            nodes = np.sort(rng.uniform(1.02, 1.98, size=n))
            while np.min(np.diff(nodes)) < 0.02:
                nodes = np.sort(rng.uniform(1.02, 1.98, size=n))
            coeffs = rng.normal(size=n)
            values = basis.powers(nodes) @ coeffs
            back = interpolate(basis, nodes, values)
            resid = np.linalg.norm(basis.powers(nodes) @ back - values)
            assert resid <= 1e-9 * max(1.0, np.linalg.norm(values))
            assert np.allclose(back, coeffs, atol=1e-7)


def test_interpolate_rejects_shape_and_duplicates():
    basis = build_basis(0, 3, 1)
    with pytest.raises(DomainError):
        interpolate(basis, np.array([1.1, 1.2, 1.3]), np.zeros(3))
    with pytest.raises(DomainError):
        interpolate(basis, np.array([1.1, 1.1]), np.zeros(2))


def test_interpolation_defect_in_span():
    basis = build_basis(0, 3, 2)
    nodes = np.array([1.1, 1.35, 1.6, 1.85])
    grid = np.linspace(1.0, 2.0, 101)
    defect = interpolation_defect(basis, nodes, lambda t: t**2 + 2.0 / t, grid)
    assert np.max(np.abs(defect)) <= 1e-9


def test_interpolation_defect_outside_span_vanishes_at_nodes():
    basis = build_basis(0, 3, 2)
    nodes = np.array([1.1, 1.35, 1.6, 1.85])
    grid = np.linspace(1.0, 2.0, 101)
    defect = interpolation_defect(basis, nodes, lambda t: t**5, grid)
    assert np.max(np.abs(defect)) > 1e-3
    at_nodes = interpolation_defect(basis, nodes, lambda t: t**5, nodes)
    assert np.max(np.abs(at_nodes)) <= 1e-9


def test_chebyshev_nondegeneracy():
    # scaled generalized Vandermonde of any increasing node set stays
    # invertible: 100 random draws
    rng = np.random.default_rng(17)
    basis = build_basis(1, 3, 2)
    for _ in range(100):
        nodes = np.sort(rng.uniform(1.0, 2.0, size=4))
        if np.min(np.diff(nodes)) < 1e-3:
            continue
        V = basis.powers(nodes)
        V = V / np.max(np.abs(V), axis=0)[None, :]
        V = V / np.max(np.abs(V), axis=1)[:, None]
        assert abs(np.linalg.det(V)) > 1e-12


def test_gauss_rule_five_atoms_compress():
    atoms = ((1.1, 0.3), (1.3, 0.6), (1.5, 0.2), (1.7, 0.55), (1.9, 0.35))
    mu = RadialMeasure(lo=1.0, hi=2.0, atoms=atoms)
    basis = build_basis(1, 3, 4)
    rule = gauss_rule(mu, basis)
    assert len(rule) == 4
    m = moments(mu, basis.exponents)
    got = basis.powers(rule.nodes).T @ rule.weights
    assert np.max(np.abs(got - m) / np.abs(m)) <= 1e-10
