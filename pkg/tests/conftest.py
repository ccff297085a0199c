import numpy as np
import pytest

from pcub import (
    Annulus,
    ComponentFunction,
    HardyElement,
    LaurentSeries,
    RadialMeasure,
    dim_harmonics,
    riesz_set,
)


@pytest.fixture
def ann():
    return Annulus(1.0, 2.0)


def random_series(rng, exponents, n_terms):
    exponents = list(exponents)
    picks = rng.choice(len(exponents), size=min(n_terms, len(exponents)), replace=False)
    return LaurentSeries(
        {exponents[i]: complex(rng.normal(), rng.normal()) for i in picks}
    )


def random_component(rng, k, d, j_min=-9, j_max=9, n_terms=4):
    exps = riesz_set(k, d, j_min, j_max)
    return ComponentFunction(k=k, d=d, series=random_series(rng, exps, n_terms))


def random_element(rng, d=3, k_max=8, j_max=8, L_range=(1.2, 3.0), n_comps=(2, 6)):
    comps = {}
    for _ in range(int(rng.integers(*n_comps))):
        k = int(rng.integers(0, k_max + 1))
        ell = int(rng.integers(1, dim_harmonics(d, k) + 1))
        comps[(k, ell)] = random_component(rng, k, d, -j_max, j_max,
                                           n_terms=int(rng.integers(1, 4)))
    if not comps:
        comps[(0, 1)] = ComponentFunction(0, d, LaurentSeries({0: 1.0 + 0j}))
    return HardyElement(d=d, L=float(rng.uniform(*L_range)), components=comps)


def random_unit_vector(rng, d=3):
    v = rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_mixed_measure(rng, lo=1.0, hi=2.0, max_atoms=3):
    """Atoms plus a quadratic density nonnegative on [lo, hi] by construction."""
    n_atoms = int(rng.integers(0, max_atoms + 1))
    atoms = tuple(
        (float(rng.uniform(lo, hi)), float(rng.uniform(0.1, 2.0)))
        for _ in range(n_atoms)
    )
    c0 = float(rng.uniform(0.2, 1.5))
    c1 = float(rng.uniform(0.0, 0.8))
    c2 = float(rng.uniform(0.0, 0.5))
    dens = (c0 - c1 * lo + c2 * lo * lo, c1 - 2 * c2 * lo, c2)
    return RadialMeasure(lo=lo, hi=hi, atoms=atoms, density=dens)
