import math

import pytest
import numpy as np

from sparsedetect.designs import sample_design, assumption_diagnostics, resolve_family, DESIGN_FAMILIES
from sparsedetect.errors import DomainError


def test_rademacher_moments():
    x = sample_design('rademacher_iid', 1000, 1, np.random.default_rng(0))
    assert set(np.unique(x)) == {-1., 1.}
    assert abs(x.mean()) < 0.1
    assert abs(x.var() - 1.) < 0.1


def test_uniform_support():
    x = sample_design('uniform_iid', 500, 20, np.random.default_rng(1))
    assert np.all(np.abs(x) <= math.sqrt(3.))
    assert abs(x.var() - 1.) < 0.05


def test_gaussian_columns_uncorrelated():
    x = sample_design('gaussian_iid', 2000, 2, np.random.default_rng(2))
    assert abs(np.corrcoef(x.T)[0, 1]) < 0.08


@pytest.mark.parametrize('family', sorted(DESIGN_FAMILIES))
def test_designs_deterministic(family):
    first = sample_design(family, 30, 7, np.random.default_rng(5))
    second = sample_design(family, 30, 7, np.random.default_rng(5))
    assert first.shape == (30, 7)
    np.testing.assert_array_equal(first, second)


@pytest.mark.parametrize('family', sorted(DESIGN_FAMILIES))
def test_column_norms_concentrate(family):
    x = sample_design(family, 4096, 20, np.random.default_rng(6))
    assert np.all(np.abs((x * x).sum(axis=0) / 4096 - 1.) < 0.2)


def test_family_aliases():
    assert resolve_family('gaussian') == 'gaussian_iid'
    assert resolve_family('uniform_iid') == 'uniform_iid'
    with pytest.raises(DomainError):
        resolve_family('cauchy')
    with pytest.raises(DomainError):
        sample_design('gaussian', 0, 3, np.random.default_rng(0))


def test_diagnostics_exact_cases():
    # Hadamard-type design: unit entries, orthogonal columns
    x = np.array([
        [1., 1., 1., 1.],
        [1., -1., 1., -1.],
        [1., 1., -1., -1.],
        [1., -1., -1., 1.],
    ])
    report = assumption_diagnostics(x)
    assert report.norm_deviation == 0.
    assert report.max_inner_product == 0.
    assert report.max_fourth_moment == 1.


def test_diagnostics_single_column():
    report = assumption_diagnostics(np.full((9, 1), 2.))
    assert report.norm_deviation == pytest.approx(27. / 3.)
    assert report.max_inner_product == 0.


def test_diagnostics_gaussian_inner_products():
    passed = 0
    for seed in range(200):
        x = sample_design('gaussian_iid', 500, 50, np.random.default_rng(seed))
        passed += assumption_diagnostics(x).max_inner_product < 2.5
    assert passed >= 0.95 * 200
