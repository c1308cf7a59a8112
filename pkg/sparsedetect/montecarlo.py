"""Seeded Monte Carlo estimation of type I, type II and total errors.

Every replication draws from its own counter-based stream keyed by
(seed, cell, hypothesis, replication), so results do not depend on the order
in which cells or replications are evaluated, nor on the number of threads.
"""

import math
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from loguru import logger

from . import designs, runtime_settings as rs
from .errors import DomainError
from .model import Dataset, ProblemConfig, place_signal
from .numerics import upper_quantile
from .progress import get_progress_bar
from .tests import TestSpec
from .timer import Timer

NULL, ALTERNATIVE, FIXED_SIGNAL = 0, 1, 2

#: replications handed to a worker thread at once
CHUNK_SIZE = 50

CSV_FIELDS = (
    'beta', 'x', 'n', 'p', 'k', 'test', 'alpha_hat', 'beta_hat', 'gamma_hat',
    'se_alpha', 'se_beta', 'reps', 'seed'
)

#: tests with a Higher Criticism type constituent, calibrated for Gaussian designs only
HC_FAMILY = ('psi_hc', 'psi_max', 'psi_lu', 'psi_star_hc', 'psi_triple')


class CellResult(namedtuple('CellResult', CSV_FIELDS + ('sigma', 'sigma_sensitive'))):
    """Error estimates of one test on one (beta, x) configuration.

    ``sigma`` and ``sigma_sensitive`` are only set by :func:`unknown_variance_sweep`.
    """

    __slots__ = ()

    def as_row(self):
        return tuple(getattr(self, field) for field in CSV_FIELDS)


CellResult.__new__.__defaults__ = (None, False)


def replication_rng(seed, cell, hypothesis, rep):
    """Independent Philox stream for one replication"""
    seq = np.random.SeedSequence(seed, spawn_key=(int(cell[0]), int(cell[1]), hypothesis, rep))
    return np.random.Generator(np.random.Philox(seq))


def wilson_interval(successes, trials, z=None):
    """Wilson score interval for a binomial proportion (95% by default)"""
    if trials < 1:
        raise DomainError('need at least one trial (got {})'.format(trials))
    if z is None:
        z = upper_quantile(0.025)
    phat = successes / trials
    denominator = 1. + z * z / trials
    center = (phat + z * z / (2. * trials)) / denominator
    half_width = z * math.sqrt(phat * (1. - phat) / trials + z * z / (4. * trials * trials)) / denominator
    return center - half_width, center + half_width


def binomial_stderr(successes, trials):
    """Wald standard error; the Wilson width (upper - lower) / (2 z) if all or no trials succeed"""
    if successes in (0, trials):
        z = upper_quantile(0.025)
        lower, upper = wilson_interval(successes, trials, z)
        return (upper - lower) / (2. * z)
    phat = successes / trials
    return math.sqrt(phat * (1. - phat) / trials)


def draw_dataset(cfg, signal, rng):
    """Y = X theta + sigma xi with known variance, Y = sigma (X theta + xi) otherwise"""
    x = designs.sample_design(cfg.design, cfg.n, cfg.p, rng)
    noise = rng.standard_normal(cfg.n)
    mean = x @ signal.coefficients if signal is not None else 0.
    if cfg.variance_known:
        y = mean + cfg.sigma * noise
    else:
        y = cfg.sigma * (mean + noise)
    return Dataset(x, y)


def _as_test_spec(test):
    if isinstance(test, TestSpec):
        return test
    return TestSpec(test)


def _run_replications(job, count, threads, pbar):
    rejects = np.zeros(count, dtype=bool)
    chunks = [range(start, min(start + CHUNK_SIZE, count)) for start in range(0, count, CHUNK_SIZE)]

    def run_chunk(chunk):
        return chunk, [job(rep) for rep in chunk]

    if threads == 1:
        outcomes = map(run_chunk, chunks)
        for chunk, decisions in outcomes:
            rejects[chunk.start:chunk.stop] = decisions
            pbar.advance(len(chunk))
        return rejects

    with ThreadPoolExecutor(max_workers=threads) as executor:
        logger.trace('Dispatching {} chunks to {} threads', len(chunks), threads)
        for chunk, decisions in executor.map(run_chunk, chunks):
            rejects[chunk.start:chunk.stop] = decisions
            pbar.advance(len(chunk))
    return rejects


def _estimate_cell(cfg, test, reps, threads, cell, allow_uncalibrated=False):
    if reps < 1:
        raise DomainError('reps must be at least 1 (got {})'.format(reps))
    if threads is None:
        threads = rs.num_threads
    if threads < 1:
        raise DomainError('threads must be at least 1 (got {})'.format(threads))

    if test.name in HC_FAMILY and cfg.design != 'gaussian_iid':
        logger.warning('{} is calibrated for Gaussian designs; results on {} carry no guarantee',
                       test.name, cfg.design)

    alternative = cfg.alternative
    fixed_signal = cell_fixed_signal(cfg, cell) if cfg.fixed_signal else None

    def decide(data):
        return test.decide(
            data, r=cfg.r, beta=cfg.beta, sigma=cfg.sigma, variance_known=cfg.variance_known,
            allow_uncalibrated=allow_uncalibrated
        ).reject

    def null_job(rep):
        rng = replication_rng(cfg.seed, cell, NULL, rep)
        return decide(draw_dataset(cfg, None, rng))

    def alternative_job(rep):
        rng = replication_rng(cfg.seed, cell, ALTERNATIVE, rep)
        signal = fixed_signal
        if signal is None:
            signal = place_signal(alternative, cfg.sign_pattern, rng)
        return decide(draw_dataset(cfg, signal, rng))

    timer = Timer('cell')
    label = 'beta={:.3g} x={:.3g}'.format(cfg.beta, cfg.x) if cfg.beta is not None else 'Replications'
    with timer, get_progress_bar(2 * reps, label=label) as pbar:
        null_rejects = _run_replications(null_job, reps, threads, pbar)
        alternative_rejects = _run_replications(alternative_job, reps, threads, pbar)

    false_alarms = int(null_rejects.sum())
    misses = reps - int(alternative_rejects.sum())
    alpha_hat = false_alarms / reps
    beta_hat = misses / reps

    logger.debug(
        'Cell {}: alpha = {:.4f}, beta = {:.4f} ({} x 2 replications in {:.2f}s)',
        cell, alpha_hat, beta_hat, reps, timer.last_time
    )

    result = CellResult(
        beta=cfg.beta, x=cfg.x, n=cfg.n, p=cfg.p, k=cfg.k, test=test.name,
        alpha_hat=alpha_hat, beta_hat=beta_hat, gamma_hat=alpha_hat + beta_hat,
        se_alpha=binomial_stderr(false_alarms, reps), se_beta=binomial_stderr(misses, reps),
        reps=reps, seed=cfg.seed,
    )
    return result, null_rejects, alternative_rejects


def estimate_errors(cfg, test, reps, threads=None, cell=(0, 0)):
    """Estimate alpha(psi), the average beta(psi, theta) over boundary alternatives, and their sum.

    Arguments:
        cfg (ProblemConfig): problem configuration; ``cfg.seed`` keys all random streams.
        test (TestSpec or str): decision rule.
        reps (int): replications per hypothesis.
        threads (int): worker threads (default: ``runtime_settings.num_threads``).
        cell (tuple): stream key of the configuration inside a sweep.

    Returns:
        :class:`CellResult`
    """
    result, _, _ = _estimate_cell(cfg, _as_test_spec(test), reps, threads, cell)
    return result


class SweepGrid(namedtuple('SweepGrid', ('beta_values', 'x_values', 'base', 'reps_per_cell'))):
    """A (beta, x) phase-diagram grid around a base configuration.

    ``base`` fixes n, p, the design, the noise model and the seed; its own sparsity
    and intensity are replaced cell by cell.
    """

    __slots__ = ()

    def __new__(cls, beta_values, x_values, base, reps_per_cell):
        beta_values = tuple(float(b) for b in beta_values)
        x_values = tuple(float(x) for x in x_values)

        for name, values in (('beta', beta_values), ('x', x_values)):
            if not values:
                raise DomainError('{} grid is empty'.format(name))
            if any(b <= a for a, b in zip(values, values[1:])):
                raise DomainError('{} grid must be strictly increasing (got {!r})'.format(name, values))

        if not all(0. < b < 1. for b in beta_values):
            raise DomainError('beta values must lie in (0, 1)')
        if not all(x > 0. for x in x_values):
            raise DomainError('x values must be positive')
        if reps_per_cell < 1:
            raise DomainError('reps_per_cell must be at least 1 (got {})'.format(reps_per_cell))
        if not isinstance(base, ProblemConfig):
            raise DomainError('grid base must be a ProblemConfig')

        return super(SweepGrid, cls).__new__(cls, beta_values, x_values, base, int(reps_per_cell))

    @classmethod
    def from_settings(cls, beta_values, x_values, reps_per_cell, **settings):
        settings.update(beta=beta_values[0] if beta_values else 0.5, x=x_values[0] if x_values else 1.)
        settings.pop('k', None)
        settings.pop('r', None)
        return cls(beta_values, x_values, ProblemConfig(**settings), reps_per_cell)

    @property
    def base_seed(self):
        return self.base.seed

    def cells(self):
        """(cell index, configuration) in (beta, x) order"""
        for i, beta in enumerate(self.beta_values):
            for j, x in enumerate(self.x_values):
                yield (i, j), self.base.replace(beta=beta, x=x)


def run_sweep(grid, test, threads=None):
    """One :class:`CellResult` per (beta, x) cell, ordered by beta then x"""
    test = _as_test_spec(test)
    cells = list(grid.cells())
    logger.info('Sweeping {} cells of {} replications each ({})',
                len(cells), grid.reps_per_cell, test.name)

    timer = Timer('sweep')
    with timer:
        results = [
            estimate_errors(cfg, test, grid.reps_per_cell, threads, cell)
            for cell, cfg in cells
        ]

    logger.info('Sweep finished in {:.1f}s', timer.last_time)
    return results


def unknown_variance_sweep(grid, sigma_values, test='psi_hc', threads=None):
    """Rerun every cell with noise level sigma and alternatives sigma theta.

    Replications share their random streams across sigma. A cell is flagged
    ``sigma_sensitive`` if any decision changes with sigma; scale-invariant tests are
    never flagged.
    """
    test = _as_test_spec(test)
    sigma_values = tuple(float(s) for s in sigma_values)
    if not sigma_values:
        raise DomainError('sigma grid is empty')
    if not all(s > 0 for s in sigma_values):
        raise DomainError('sigma values must be positive (got {!r})'.format(sigma_values))

    if test.requires_known_variance:
        logger.warning('{} is calibrated for sigma = 1; running it uncalibrated', test.name)

    results = []
    for cell, cfg in grid.cells():
        runs = []
        for sigma in sigma_values:
            sigma_cfg = cfg.replace(sigma=sigma, variance_known=False)
            runs.append(_estimate_cell(
                sigma_cfg, test, grid.reps_per_cell, threads, cell, allow_uncalibrated=True
            ))

        reference = runs[0]
        sensitive = any(
            not (np.array_equal(reference[1], run[1]) and np.array_equal(reference[2], run[2]))
            for run in runs[1:]
        )
        for sigma, (result, _, _) in zip(sigma_values, runs):
            results.append(result._replace(sigma=sigma, sigma_sensitive=sensitive))

    return results


def cell_fixed_signal(cfg, cell=(0, 0)):
    """The alternative used by every replication of a cell in fixed-signal mode"""
    return place_signal(cfg.alternative, cfg.sign_pattern, replication_rng(cfg.seed, cell, FIXED_SIGNAL, 0))
