"""Closed-form detection boundaries.

All logarithms are natural logarithms.
"""

import math
from collections import namedtuple

from . import settings
from .errors import DomainError
from .model import k_from_beta, beta_from_sparsity, boundary_unit

MODERATELY_SPARSE = 'moderately_sparse'
HIGHLY_SPARSE = 'highly_sparse'


def phi_boundary(beta):
    """Sharp constant of the highly sparse boundary.

    sqrt(2 beta - 1) for 1/2 < beta <= 3/4 and sqrt(2) (1 - sqrt(1 - beta)) for 3/4 < beta < 1.
    """
    beta = float(beta)
    if not 0.5 < beta < 1.:
        raise DomainError('phi(beta) is defined for beta in (1/2, 1), got {!r}'.format(beta))
    if beta <= 0.75:
        return math.sqrt(2. * beta - 1.)
    return math.sqrt(2.) * (1. - math.sqrt(1. - beta))


def sparse_limit_phi(beta):
    """phi(beta), continued by its beta -> 1 limit sqrt(2) for beta >= 1 (k = 1)"""
    if beta >= 1.:
        return math.sqrt(2.)
    return phi_boundary(beta)


def _check_sizes(n, p, k=None):
    if n < 2 or p < 2:
        raise DomainError('boundary formulas need n >= 2 and p >= 2 (got n={}, p={})'.format(n, p))
    if k is not None and not 1 <= k <= p:
        raise DomainError('k must lie in [1, p] (got k={}, p={})'.format(k, p))


def boundary_rate(n, p, k):
    """Order of magnitude of the detection boundary.

    min(p^(1/4) / sqrt(n), n^(-1/4)) when k^2 >= p, min(sqrt(k log p / n), n^(-1/4)) otherwise.
    """
    _check_sizes(n, p, k)
    dense_rate = n ** -0.25
    if k * k >= p:
        return min(p ** 0.25 / math.sqrt(n), dense_rate)
    return min(boundary_unit(n, p, k), dense_rate)


def sharp_radius(n, p, beta):
    """r = phi(beta) sqrt(k log p / n) with k = round(p^(1 - beta))"""
    phi = phi_boundary(beta)
    _check_sizes(n, p)
    return phi * boundary_unit(n, p, k_from_beta(p, beta))


RegimeReport = namedtuple('RegimeReport', (
    'beta', 'k', 'regime', 'sharp_constant_applicable', 'sharp_condition_ratio',
    'unknown_variance_ratio', 'unknown_variance_detectable', 'boundary_rate',
    'phi', 'sharp_radius'
))


def classify_regime(cfg, sharp_threshold=None, unknown_variance_threshold=None):
    """Place a problem configuration in the sparsity regimes.

    ``sharp_threshold`` and ``unknown_variance_threshold`` are the finite-sample proxies of
    k log p = o(sqrt(n)) and k log p = o(n); both ratios are reported as well.
    """
    if sharp_threshold is None:
        sharp_threshold = settings.BOUNDARY_SETTINGS['sharp_threshold'].default
    if unknown_variance_threshold is None:
        unknown_variance_threshold = settings.BOUNDARY_SETTINGS['unknown_variance_threshold'].default

    n, p, k = cfg.n, cfg.p, cfg.k
    _check_sizes(n, p, k)
    beta = cfg.beta if cfg.beta is not None else beta_from_sparsity(p, k)

    k_log_p = k * math.log(p)
    sharp_ratio = k_log_p / math.sqrt(n)
    unknown_ratio = k_log_p / n

    # beta = 1/2 itself stays on the moderate side
    if beta <= 0.5:
        regime = MODERATELY_SPARSE
        phi = radius = None
        sharp_applicable = False
    else:
        regime = HIGHLY_SPARSE
        phi = sparse_limit_phi(beta)
        radius = phi * boundary_unit(n, p, k)
        sharp_applicable = sharp_ratio <= sharp_threshold

    if cfg.variance_known:
        detectable = True
    else:
        detectable = unknown_ratio <= unknown_variance_threshold

    return RegimeReport(
        beta=beta, k=k, regime=regime,
        sharp_constant_applicable=sharp_applicable,
        sharp_condition_ratio=sharp_ratio,
        unknown_variance_ratio=unknown_ratio,
        unknown_variance_detectable=detectable,
        boundary_rate=boundary_rate(n, p, k),
        phi=phi, sharp_radius=radius,
    )
