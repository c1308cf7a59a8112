"""Fast invariant checks on closed-form values, exact identities and small Monte Carlo runs.

Every check raises ``AssertionError`` on failure. :func:`run_selftest` runs all of
them and reports which ones failed.
"""

import math
from collections import namedtuple

import numpy as np
from loguru import logger

from . import numerics, statistics, boundary, lowerbound
from .model import Dataset, ProblemConfig
from .timer import Timer

SELFTEST_SEED = 20190427


def _close(actual, expected, tol, what):
    assert abs(actual - expected) <= tol, '{}: got {!r}, expected {!r} (tolerance {})'.format(
        what, actual, expected, tol
    )


def check_normal_cdf():
    _close(numerics.std_normal_cdf(0.), 0.5, 1e-15, 'Phi(0)')
    _close(numerics.std_normal_cdf(-1.959964), 0.025, 1e-6, 'Phi(-1.959964)')
    _close(numerics.std_normal_cdf(40.), 1., 0., 'Phi(40)')
    for t in np.linspace(-8., 8., 33):
        _close(numerics.std_normal_cdf(t) + numerics.std_normal_cdf(-t), 1., 1e-14, 'Phi(t) + Phi(-t)')


def check_normal_quantile():
    _close(numerics.std_normal_quantile(0.5), 0., 1e-15, 'quantile(0.5)')
    _close(numerics.std_normal_quantile(0.975), 1.959964, 1e-6, 'quantile(0.975)')
    for t in np.linspace(-6., 6., 25):
        _close(numerics.std_normal_quantile(numerics.std_normal_cdf(t)), t, 1e-8, 'quantile(Phi(t))')


def check_pvalues():
    _close(numerics.two_sided_pvalue(0.), 1., 0., 'q(0)')
    _close(numerics.two_sided_pvalue(1.959964), 0.05, 1e-6, 'q(1.959964)')
    _close(numerics.two_sided_pvalue(50.), numerics.Q_MIN, 0., 'q(50)')


def check_boundary_constants():
    _close(boundary.phi_boundary(0.75), math.sqrt(0.5), 1e-12, 'phi(3/4)')
    _close(math.sqrt(2.) * (1. - math.sqrt(0.25)), math.sqrt(2. * 0.75 - 1.), 1e-12, 'phi branches at 3/4')
    _close(boundary.phi_boundary(0.99), 1.272792, 1e-6, 'phi(0.99)')
    _close(boundary.sharp_radius(10000, 256, 0.75), 0.033321, 1e-6, 'sharp radius')
    _close(boundary.boundary_rate(10000, 100, 10), 0.0316228, 1e-7, 'moderate rate')


def check_t1_forms():
    data = Dataset([[1., 0.], [0., 1.], [1., 1.]], [1., 2., 3.])
    _close(statistics.t1_statistic(data), 9. / math.sqrt(6.), 1e-12, 't1 example')

    rng = np.random.default_rng(SELFTEST_SEED)
    for _ in range(20):
        n, p = rng.integers(2, 21), rng.integers(1, 11)
        data = Dataset(rng.standard_normal((n, p)), rng.standard_normal(n))
        fast = statistics.t1_statistic(data)
        slow = statistics.t1_statistic_pairwise(data)
        _close(fast, slow, 1e-10 * max(1., abs(slow)), 't1 column form vs pairwise form')


def check_hc_examples():
    profile = statistics.PValueProfile.from_projections(np.zeros(2))._replace(
        q_sorted=np.array([0.2, 0.7])
    )
    _close(statistics.hc_statistic(profile), 1.060660, 1e-6, 'HC with p = 2')
    profile = profile._replace(q_sorted=np.array([0.01, 0.2, 0.4, 0.9]))
    _close(statistics.hc_statistic(profile), 4.824182, 1e-6, 'HC with p = 4')


def check_scale_invariance():
    rng = np.random.default_rng(SELFTEST_SEED + 1)
    x = rng.standard_normal((200, 50))
    y = x[:, :3].sum(axis=1) * 0.3 + rng.standard_normal(200)
    reference = statistics.hc_statistic(statistics.pvalue_profile(Dataset(x, y)))
    for scale in (0.1, 10.):
        scaled = statistics.hc_statistic(statistics.pvalue_profile(Dataset(x, scale * y)))
        _close(scaled, reference, 1e-12, 'HC under scaling by {}'.format(scale))


def check_martingale_identity():
    cfg = ProblemConfig(n=20, p=4, k=1, r=0.2, seed=SELFTEST_SEED)
    prior = lowerbound.make_prior(cfg, 'three_point')
    estimate = lowerbound.null_likelihood_ratio_mean(cfg, prior, 2000, np.random.default_rng(cfg.seed))
    _close(estimate.mean, 1., 4. * estimate.stderr, 'E0[L]')


def check_oracle_degenerate():
    cfg = ProblemConfig(n=20, p=4, k=1, r=0.)
    _close(lowerbound.bayes_risk_oracle(cfg, reps=10).gamma_hat, 1., 0., 'oracle with theta = 0')


CHECKS = (
    ('normal_cdf', check_normal_cdf),
    ('normal_quantile', check_normal_quantile),
    ('pvalues', check_pvalues),
    ('boundary_constants', check_boundary_constants),
    ('t1_forms', check_t1_forms),
    ('hc_examples', check_hc_examples),
    ('scale_invariance', check_scale_invariance),
    ('martingale_identity', check_martingale_identity),
    ('oracle_degenerate', check_oracle_degenerate),
)

CheckResult = namedtuple('CheckResult', ('name', 'passed', 'message', 'seconds'))


def run_selftest(checks=CHECKS):
    results = []
    for name, check in checks:
        timer = Timer(name)
        try:
            with timer:
                check()
        except Exception as exc:
            logger.error('{} FAILED: {}', name, exc)
            results.append(CheckResult(name, False, str(exc), timer.last_time))
        else:
            logger.debug('{} passed ({:.2f}s)', name, timer.last_time)
            results.append(CheckResult(name, True, '', timer.last_time))
    return results
