"""Lower-bound priors, exact likelihood ratios on small instances and the Bayes-risk oracle.

All likelihood ratios are evaluated in the log domain; the mixtures are reduced
with ``scipy.special.logsumexp``.
"""

import math
import itertools
from collections import namedtuple

import numpy as np
from scipy.special import logsumexp, comb
from loguru import logger

from . import designs
from .errors import DomainError, ResourceLimitError
from .model import Dataset, SparseSignal, NORM_TOLERANCE
from .progress import get_progress_bar
from .timer import Timer

#: largest p for which the 3^p sign patterns are enumerated
P_MAX_EXACT = 12

#: largest number of supports averaged exactly in the unknown-variance mixture
MAX_EXACT_SUPPORTS = 10000

DEFAULT_C = 0.9

PRIORS = ('three_point', 'uniform_support')


class ThreePointPrior(namedtuple('ThreePointPrior', ('p', 'h', 'b', 'c'))):
    """theta_j = b eps_j, eps_j i.i.d. with P(0) = 1 - h and P(+1) = P(-1) = h / 2."""

    __slots__ = ()

    def __new__(cls, p, h, b, c=None):
        p, h, b = int(p), float(h), float(b)
        if p < 1:
            raise DomainError('prior dimension must be positive (got p={})'.format(p))
        # h = 0 is accepted as the degenerate prior at theta = 0
        if not 0. <= h < 1.:
            raise DomainError('atom mass h must lie in [0, 1) (got {})'.format(h))
        if not b >= 0.:
            raise DomainError('atom magnitude b must be nonnegative (got {})'.format(b))
        return super(ThreePointPrior, cls).__new__(cls, p, h, b, c)

    @classmethod
    def from_radius(cls, p, k, r, c=DEFAULT_C):
        """h = c k / p and b = r / (c sqrt(k))"""
        if not 0. < c < 1.:
            raise DomainError('prior constant c must lie in (0, 1) (got {})'.format(c))
        if not 1 <= k <= p:
            raise DomainError('k must lie in [1, p] (got k={}, p={})'.format(k, p))
        return cls(p, c * k / p, r / (c * math.sqrt(k)), c)

    @property
    def degenerate(self):
        return self.h == 0. or self.b == 0.


class UniformSupportPrior(namedtuple('UniformSupportPrior', ('p', 'k', 'b'))):
    """Coefficients b on a uniformly drawn k-subset, noise variance shrunk to 1 - k b^2."""

    __slots__ = ()

    def __new__(cls, p, k, b):
        p, k, b = int(p), int(k), float(b)
        if not 1 <= k <= p:
            raise DomainError('k must lie in [1, p] (got k={}, p={})'.format(k, p))
        if not b >= 0.:
            raise DomainError('magnitude b must be nonnegative (got {})'.format(b))
        if not k * b * b < 1.:
            raise DomainError('uniform support prior needs k b^2 < 1 (got k={}, b={})'.format(k, b))
        return super(UniformSupportPrior, cls).__new__(cls, p, k, b)

    @classmethod
    def from_intensity(cls, n, p, k, x, c=DEFAULT_C):
        """b = (x / c) sqrt(log(p) / n), the same magnitude as the three-point prior"""
        if not 0. < c < 1.:
            raise DomainError('prior constant c must lie in (0, 1) (got {})'.format(c))
        if p < 2:
            raise DomainError('intensity scale needs p >= 2 (got p={})'.format(p))
        return cls(p, k, (x / c) * math.sqrt(math.log(p) / n))

    @classmethod
    def high_dimensional(cls, n, p, k, beta):
        """Magnitude with k b^2 / (1 - k b^2) = (2 beta - 1) k log(p) / n"""
        if not 0.5 < beta < 1.:
            raise DomainError('beta must lie in (1/2, 1) (got {})'.format(beta))
        t = (2. * beta - 1.) * k * math.log(p) / n
        return cls(p, k, math.sqrt(t / ((1. + t) * k)))

    @property
    def variance_shrink(self):
        return 1. - self.k * self.b * self.b

    @property
    def degenerate(self):
        return self.b == 0.


def sample_three_point(prior, rng):
    u = rng.random(prior.p)
    signs = np.where(rng.random(prior.p) < 0.5, -1., 1.)
    eps = np.where(u < prior.h, signs, 0.)
    return SparseSignal(prior.b * eps)


def _sign_patterns(p, start, stop):
    idx = np.arange(start, stop)
    powers = 3 ** np.arange(p)
    return ((idx[:, None] // powers[None, :]) % 3 - 1).astype('float64')


def log_likelihood_ratio_exact(data, prior, p_max_exact=P_MAX_EXACT):
    """log L_pi(Z) = log E_pi exp(-||X theta||^2 / 2 + (X theta, Y)), summed over all 3^p patterns"""
    if data.p != prior.p:
        raise DomainError('prior dimension {} does not match p = {}'.format(prior.p, data.p))
    if prior.degenerate:
        return 0.
    p = data.p
    if p > p_max_exact:
        raise ResourceLimitError(
            'exact likelihood ratio enumerates 3^p patterns, p = {} exceeds the limit of {}'
            .format(p, p_max_exact)
        )

    gram = data.x.T @ data.x
    cross = data.x.T @ data.y
    log_atom = math.log(prior.h / 2.)
    log_zero = math.log1p(-prior.h)

    total = 3 ** p
    block = 3 ** min(p, 9)
    partial = []
    for start in range(0, total, block):
        eps = _sign_patterns(p, start, min(start + block, total))
        theta = prior.b * eps
        m = np.count_nonzero(eps, axis=1)
        log_terms = (
            -0.5 * np.einsum('ij,jk,ik->i', theta, gram, theta)
            + theta @ cross
            + m * log_atom + (p - m) * log_zero
        )
        partial.append(logsumexp(log_terms))

    return float(logsumexp(partial))


def likelihood_ratio_exact(data, prior, p_max_exact=P_MAX_EXACT):
    return math.exp(log_likelihood_ratio_exact(data, prior, p_max_exact))


def _log_cosh(z):
    z = np.abs(z)
    return z + np.log1p(np.exp(-2. * z)) - math.log(2.)


def log_likelihood_ratio_product(data, prior):
    """log Lambda(Z) = sum_j log(1 - h + h exp(-b^2 ||X_j||^2 / 2) cosh(b (X_j, Y)))"""
    if prior.degenerate:
        return 0.
    col_norms = np.einsum('ij,ij->j', data.x, data.x)
    cross = data.x.T @ data.y
    b = prior.b
    log_bump = -0.5 * b * b * col_norms + _log_cosh(b * cross)
    return float(np.sum(np.logaddexp(math.log1p(-prior.h), math.log(prior.h) + log_bump)))


def likelihood_ratio_product(data, prior):
    """Product form of the three-point likelihood ratio; equals L_pi for orthogonal columns"""
    return math.exp(log_likelihood_ratio_product(data, prior))


def _support_log_ratios(data, prior, supports):
    supports = np.asarray(supports, dtype='int64').reshape(-1, prior.k)
    s = prior.variance_shrink
    b = prior.b
    n = data.n
    kb2 = prior.k * b * b

    cross = data.x.T @ data.y
    gram = data.x.T @ data.x
    y_norm2 = float(data.y @ data.y)

    cross_sum = cross[supports].sum(axis=1)
    gram_sum = gram[supports[:, :, None], supports[:, None, :]].sum(axis=(1, 2))

    return (
        -0.5 * n * math.log(s)
        - kb2 * y_norm2 / (2. * s)
        + b * cross_sum / s
        - b * b * gram_sum / (2. * s)
    )


def likelihood_ratio_unknown_variance(data, prior, support):
    """L_m(Z) for a single support m, the density ratio of N(X theta_m, (1 - k b^2) I) to N(0, I)"""
    if data.p != prior.p:
        raise DomainError('prior dimension {} does not match p = {}'.format(prior.p, data.p))
    support = np.asarray(support, dtype='int64')
    if support.shape != (prior.k,) or len(set(support.tolist())) != prior.k:
        raise DomainError('support must hold k = {} distinct indices'.format(prior.k))
    if support.min() < 0 or support.max() >= prior.p:
        raise DomainError('support indices must lie in [0, p)')
    return math.exp(float(_support_log_ratios(data, prior, support[None, :])[0]))


MixtureRatio = namedtuple('MixtureRatio', ('log_value', 'supports', 'exact'))


def mixture_log_likelihood_ratio_unknown_variance(data, prior, rng=None, max_supports=MAX_EXACT_SUPPORTS):
    """log of the average of L_m over all k-subsets m.

    Averages exactly when C(p, k) <= ``max_supports``; otherwise over ``max_supports``
    uniformly drawn supports, and the result is flagged as approximate.
    """
    if data.p != prior.p:
        raise DomainError('prior dimension {} does not match p = {}'.format(prior.p, data.p))
    if prior.degenerate:
        return MixtureRatio(0., 0, True)

    p, k = prior.p, prior.k
    count = comb(p, k, exact=True)
    if count <= max_supports:
        supports = np.array(list(itertools.combinations(range(p), k)), dtype='int64')
        exact = True
    else:
        if rng is None:
            rng = np.random.default_rng()
        logger.warning(
            'Averaging over {} of {} supports (approximate likelihood ratio)', max_supports, count
        )
        supports = np.array([
            np.sort(rng.choice(p, size=k, replace=False)) for _ in range(max_supports)
        ], dtype='int64')
        exact = False

    log_ratios = _support_log_ratios(data, prior, supports)
    value = float(logsumexp(log_ratios) - math.log(len(supports)))
    return MixtureRatio(value, len(supports), exact)


def mixture_likelihood_ratio_unknown_variance(data, prior, rng=None, max_supports=MAX_EXACT_SUPPORTS):
    return math.exp(mixture_log_likelihood_ratio_unknown_variance(data, prior, rng, max_supports).log_value)


def threshold_tj(a_j, h):
    """T_j = a_j / 2 + log(1 / h) / a_j"""
    if not a_j > 0:
        raise DomainError('a_j must be positive (got {})'.format(a_j))
    if not 0. < h < 1.:
        raise DomainError('h must lie in (0, 1) (got {})'.format(h))
    return a_j / 2. - math.log(h) / a_j


def prior_containment_frequency(prior, k, r, draws, rng):
    """Fraction of prior draws with at most k nonzeros and norm at least r.

    For the three-point prior ||theta||^2 = b^2 M(theta) with M(theta) ~ Binomial(p, h),
    so only the support sizes are drawn.
    """
    if draws < 1:
        raise DomainError('need at least one draw (got {})'.format(draws))
    if isinstance(prior, ThreePointPrior):
        sizes = rng.binomial(prior.p, prior.h, size=draws)
    else:
        sizes = np.full(draws, prior.k)
    norms = prior.b * np.sqrt(sizes)
    contained = (sizes <= k) & (norms >= r * (1. - NORM_TOLERANCE))
    return float(np.mean(contained))


def make_prior(cfg, prior='three_point', c=DEFAULT_C):
    """The prior of the oracle experiments for a problem configuration"""
    if prior == 'three_point':
        return ThreePointPrior.from_radius(cfg.p, cfg.k, cfg.r, c)
    if prior == 'uniform_support':
        return UniformSupportPrior.from_intensity(cfg.n, cfg.p, cfg.k, cfg.x, c)
    raise DomainError('unknown prior {!r} (must be one of {!r})'.format(prior, PRIORS))


def _check_exact(prior, p_max_exact):
    if isinstance(prior, ThreePointPrior):
        if prior.p > p_max_exact and not prior.degenerate:
            raise ResourceLimitError(
                'oracle needs the exact likelihood ratio, p = {} exceeds the limit of {}'
                .format(prior.p, p_max_exact)
            )
    elif comb(prior.p, prior.k, exact=True) > MAX_EXACT_SUPPORTS:
        raise ResourceLimitError(
            'oracle needs the exact support mixture, C({}, {}) exceeds {}'
            .format(prior.p, prior.k, MAX_EXACT_SUPPORTS)
        )


def _log_ratio_function(prior, p_max_exact):
    if isinstance(prior, ThreePointPrior):
        return lambda data: log_likelihood_ratio_exact(data, prior, p_max_exact)
    return lambda data: mixture_log_likelihood_ratio_unknown_variance(data, prior).log_value


def null_log_likelihood_ratios(cfg, prior, reps, rng, p_max_exact=P_MAX_EXACT, label='Oracle'):
    """log L_pi(Z) for ``reps`` independent draws of (X, Y) under the null hypothesis"""
    if reps < 1:
        raise DomainError('reps must be at least 1 (got {})'.format(reps))
    _check_exact(prior, p_max_exact)
    log_ratio = _log_ratio_function(prior, p_max_exact)

    out = np.empty(reps)
    with get_progress_bar(reps, label=label) as pbar:
        for rep in range(reps):
            x = designs.sample_design(cfg.design, cfg.n, cfg.p, rng)
            y = rng.standard_normal(cfg.n)
            out[rep] = log_ratio(Dataset(x, y))
            pbar.advance()
    return out


OracleEstimate = namedtuple('OracleEstimate', ('gamma_hat', 'stderr', 'reps', 'prior'))


def bayes_risk_oracle(cfg, prior='three_point', reps=1000, rng=None, c=DEFAULT_C, p_max_exact=P_MAX_EXACT):
    """Monte Carlo estimate of the smallest total error between P_0 and the prior mixture.

    Uses gamma* = E_0[min(1, L_pi)], which equals 1 - E_0|L_pi - 1| / 2 and stays bounded
    when the two measures are nearly singular.
    """
    if isinstance(prior, str):
        prior = make_prior(cfg, prior, c)

    if prior.degenerate:
        return OracleEstimate(1., 0., reps, prior)

    if rng is None:
        rng = np.random.default_rng(cfg.seed)

    if not designs.resolve_family(cfg.design) == 'gaussian_iid':
        logger.warning('Lower-bound constructions assume a Gaussian design, running on {}', cfg.design)

    timer = Timer('oracle')
    with timer:
        log_ratios = null_log_likelihood_ratios(cfg, prior, reps, rng, p_max_exact)

    values = np.exp(np.minimum(log_ratios, 0.))
    gamma_hat = float(np.mean(values))
    stderr = float(np.std(values, ddof=1) / math.sqrt(reps)) if reps > 1 else 0.

    logger.info(
        'Oracle: gamma = {:.4f} +- {:.4f} over {} replications ({:.2f}s)',
        gamma_hat, stderr, reps, timer.last_time
    )
    return OracleEstimate(gamma_hat, stderr, reps, prior)


LikelihoodMean = namedtuple('LikelihoodMean', ('mean', 'stderr', 'reps'))


def null_likelihood_ratio_mean(cfg, prior, reps, rng, p_max_exact=P_MAX_EXACT):
    """Monte Carlo estimate of E_0[L_pi] (equal to 1)"""
    if prior.degenerate:
        return LikelihoodMean(1., 0., reps)
    values = np.exp(null_log_likelihood_ratios(cfg, prior, reps, rng, p_max_exact, label='E0[L]'))
    stderr = float(np.std(values, ddof=1) / math.sqrt(reps)) if reps > 1 else 0.
    return LikelihoodMean(float(np.mean(values)), stderr, reps)
