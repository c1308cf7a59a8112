import math

import pytest
import numpy as np

from sparsedetect import montecarlo
from sparsedetect.montecarlo import SweepGrid, CellResult
from sparsedetect.model import ProblemConfig
from sparsedetect.tests import TestSpec
from sparsedetect.errors import DomainError


@pytest.fixture
def small_cfg():
    return ProblemConfig(n=40, p=30, k=2, x=1.5, seed=11)


def test_always_and_never_rejecting(small_cfg):
    always = montecarlo.estimate_errors(small_cfg, TestSpec('psi0_T', t_np=-1e9), 60, threads=1)
    assert (always.alpha_hat, always.beta_hat, always.gamma_hat) == (1., 0., 1.)

    never = montecarlo.estimate_errors(small_cfg, TestSpec('psi0_T', t_np=1e9), 60, threads=1)
    assert (never.alpha_hat, never.beta_hat, never.gamma_hat) == (0., 1., 1.)
    assert never.se_alpha > 0.
    assert never.reps == 60
    assert never.seed == 11


def test_estimates_are_consistent(small_cfg):
    result = montecarlo.estimate_errors(small_cfg, 'psi_hc', 80, threads=1)
    assert isinstance(result, CellResult)
    assert result.test == 'psi_hc'
    assert (result.n, result.p, result.k) == (40, 30, 2)
    assert 0. <= result.alpha_hat <= 1.
    assert 0. <= result.beta_hat <= 1.
    assert result.gamma_hat == result.alpha_hat + result.beta_hat
    assert result.sigma is None
    assert not result.sigma_sensitive


def test_thread_count_does_not_change_results(small_cfg):
    serial = montecarlo.estimate_errors(small_cfg, 'psi_star', 120, threads=1)
    threaded = montecarlo.estimate_errors(small_cfg, 'psi_star', 120, threads=4)
    assert serial == threaded


def test_seed_changes_results(small_cfg):
    first = montecarlo.estimate_errors(small_cfg, 'psi0_alpha', 200, threads=1)
    again = montecarlo.estimate_errors(small_cfg, 'psi0_alpha', 200, threads=1)
    other = montecarlo.estimate_errors(small_cfg.replace(seed=12), 'psi0_alpha', 200, threads=1)
    assert first == again
    assert first.as_row() != other.as_row()


def test_replication_streams_are_independent():
    a = montecarlo.replication_rng(1, (0, 0), montecarlo.NULL, 0).standard_normal(4)
    b = montecarlo.replication_rng(1, (0, 0), montecarlo.ALTERNATIVE, 0).standard_normal(4)
    c = montecarlo.replication_rng(1, (0, 1), montecarlo.NULL, 0).standard_normal(4)
    d = montecarlo.replication_rng(1, (0, 0), montecarlo.NULL, 0).standard_normal(4)
    assert not np.array_equal(a, b)
    assert not np.array_equal(a, c)
    np.testing.assert_array_equal(a, d)


def test_draw_dataset_noise_models():
    cfg = ProblemConfig(n=20, p=5, k=1, r=1., sigma=2.)
    signal = montecarlo.cell_fixed_signal(cfg)

    known = montecarlo.draw_dataset(cfg, signal, np.random.default_rng(0))
    rng = np.random.default_rng(0)
    x = montecarlo.designs.sample_design(cfg.design, 20, 5, rng)
    noise = rng.standard_normal(20)
    np.testing.assert_allclose(known.y, x @ signal.coefficients + 2. * noise)

    unknown = montecarlo.draw_dataset(cfg.replace(variance_known=False), signal, np.random.default_rng(0))
    np.testing.assert_allclose(unknown.y, 2. * (x @ signal.coefficients + noise))


def test_fixed_signal_mode(small_cfg):
    cfg = small_cfg.replace(fixed_signal=True)
    first = montecarlo.cell_fixed_signal(cfg, (0, 0))
    assert first.sparsity == cfg.k
    assert first.norm == pytest.approx(cfg.r)
    np.testing.assert_array_equal(first.coefficients, montecarlo.cell_fixed_signal(cfg, (0, 0)).coefficients)

    result = montecarlo.estimate_errors(cfg, 'psi_hc', 60, threads=2)
    assert result == montecarlo.estimate_errors(cfg, 'psi_hc', 60, threads=1)


def test_wilson_interval():
    lower, upper = montecarlo.wilson_interval(0, 10)
    assert lower == pytest.approx(0., abs=1e-12)
    assert upper == pytest.approx(0.2775, abs=1e-3)

    lower, upper = montecarlo.wilson_interval(10, 10)
    assert upper == pytest.approx(1., abs=1e-12)
    assert lower == pytest.approx(1. - 0.2775, abs=1e-3)

    with pytest.raises(DomainError):
        montecarlo.wilson_interval(0, 0)


def test_binomial_stderr():
    assert montecarlo.binomial_stderr(5, 20) == pytest.approx(math.sqrt(0.25 * 0.75 / 20))
    z = montecarlo.upper_quantile(0.025)
    assert montecarlo.binomial_stderr(0, 10) == pytest.approx(0.2775 / (2. * z), abs=1e-3)
    assert montecarlo.binomial_stderr(10, 10) == pytest.approx(montecarlo.binomial_stderr(0, 10))


def test_grid_validation(small_cfg):
    with pytest.raises(DomainError):
        SweepGrid([], [1.], small_cfg, 10)
    with pytest.raises(DomainError):
        SweepGrid([0.7, 0.6], [1.], small_cfg, 10)
    with pytest.raises(DomainError):
        SweepGrid([0.6], [1., 1.], small_cfg, 10)
    with pytest.raises(DomainError):
        SweepGrid([0.6, 1.], [1.], small_cfg, 10)
    with pytest.raises(DomainError):
        SweepGrid([0.6], [0., 1.], small_cfg, 10)
    with pytest.raises(DomainError):
        SweepGrid([0.6], [1.], small_cfg, 0)
    with pytest.raises(DomainError):
        SweepGrid([0.6], [1.], dict(n=10), 10)


def test_grid_cells():
    grid = SweepGrid.from_settings([0.6, 0.8], [0.5, 1., 2.], 10, n=100, p=256, seed=4)
    assert grid.base_seed == 4
    cells = list(grid.cells())
    assert [cell for cell, _ in cells] == [(i, j) for i in range(2) for j in range(3)]
    assert [(cfg.beta, cfg.x) for _, cfg in cells] == [(b, x) for b in (0.6, 0.8) for x in (0.5, 1., 2.)]
    assert all(cfg.n == 100 and cfg.p == 256 for _, cfg in cells)


def test_single_cell_sweep_is_estimate_errors():
    grid = SweepGrid.from_settings([0.7], [1.2], 40, n=50, p=64, seed=2)
    (result,) = montecarlo.run_sweep(grid, 'psi_hc', threads=1)
    direct = montecarlo.estimate_errors(grid.base, 'psi_hc', 40, threads=1)
    assert result == direct


def test_cell_order_does_not_matter():
    grid = SweepGrid.from_settings([0.6, 0.8], [0.8, 1.6], 30, n=50, p=64, seed=5)
    swept = montecarlo.run_sweep(grid, 'psi_hc', threads=2)
    reversed_cells = list(grid.cells())[::-1]
    recomputed = [montecarlo.estimate_errors(cfg, 'psi_hc', 30, threads=1, cell=cell)
                  for cell, cfg in reversed_cells][::-1]
    assert swept == recomputed


def test_unknown_variance_sweep_hc_is_scale_free():
    grid = SweepGrid.from_settings([0.7], [1.5], 40, n=60, p=64, seed=6)
    results = montecarlo.unknown_variance_sweep(grid, [0.1, 1., 10.], 'psi_hc', threads=1)
    assert [r.sigma for r in results] == [0.1, 1., 10.]
    assert not any(r.sigma_sensitive for r in results)
    assert len({(r.alpha_hat, r.beta_hat) for r in results}) == 1


def test_unknown_variance_sweep_flags_psi0():
    grid = SweepGrid.from_settings([0.7], [1.5], 40, n=60, p=64, seed=6)
    results = montecarlo.unknown_variance_sweep(grid, [0.1, 1., 10.], TestSpec('psi0'), threads=1)
    assert all(r.sigma_sensitive for r in results)
    assert results[0].alpha_hat == 0.
    assert results[-1].alpha_hat == 1.


def test_unknown_variance_sweep_validation():
    grid = SweepGrid.from_settings([0.7], [1.5], 5, n=20, p=16)
    with pytest.raises(DomainError):
        montecarlo.unknown_variance_sweep(grid, [])
    with pytest.raises(DomainError):
        montecarlo.unknown_variance_sweep(grid, [1., -1.])


def test_bad_arguments(small_cfg):
    with pytest.raises(DomainError):
        montecarlo.estimate_errors(small_cfg, 'psi_hc', 0)
    with pytest.raises(DomainError):
        montecarlo.estimate_errors(small_cfg, 'psi_hc', 10, threads=0)
    with pytest.raises(DomainError):
        montecarlo.estimate_errors(small_cfg, 'psi_nonexistent', 10)


def test_psi_lu_single_coefficient():
    cfg = ProblemConfig(n=50, p=64, k=1, x=1., seed=3)
    result = montecarlo.estimate_errors(cfg, 'psi_lu', 5, threads=1)
    assert result.k == 1
    assert 0. <= result.gamma_hat <= 2.
