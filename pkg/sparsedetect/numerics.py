"""Scalar routines for the standard Gaussian distribution.

All tail evaluations go through ``scipy.special.erfc`` and ``ndtri`` (Cephes
implementations bundled with SciPy), which do not depend on the platform libm.
"""

import math

import numpy as np
from scipy import special

from .errors import DomainError

SQRT_HALF = 0.7071067811865476

#: floor for two-sided p-values, keeps sqrt(q (1 - q)) away from zero
Q_MIN = 1e-300


def std_normal_cdf(t):
    """Standard Gaussian cdf Phi(t).

    Accepts scalars or arrays. Saturates to 0 / 1 beyond the representable tail.
    """
    if np.isscalar(t):
        if math.isnan(t):
            raise DomainError('std_normal_cdf needs a finite argument (got nan)')
        return float(0.5 * special.erfc(-t * SQRT_HALF))
    return 0.5 * special.erfc(-np.asarray(t, dtype='float64') * SQRT_HALF)


def std_normal_quantile(alpha):
    """Lower alpha-quantile of the standard Gaussian distribution.

    The (1 - alpha)-quantile u_alpha used by the level-alpha tests is
    ``std_normal_quantile(1 - alpha)``.
    """
    alpha = float(alpha)
    if not 0. < alpha < 1.:
        raise DomainError('quantile level must lie in (0, 1), got {!r}'.format(alpha))
    return float(special.ndtri(alpha))


def upper_quantile(alpha):
    """u_alpha, the (1 - alpha)-quantile"""
    alpha = float(alpha)
    if not 0. < alpha < 1.:
        raise DomainError('level alpha must lie in (0, 1), got {!r}'.format(alpha))
    # -ndtri(alpha) avoids the cancellation in 1 - alpha for tiny alpha
    return float(-special.ndtri(alpha))


def two_sided_pvalue(y, q_min=Q_MIN):
    """P(|N(0,1)| > |y|), clamped below by ``q_min``."""
    if np.isscalar(y):
        return max(float(special.erfc(abs(y) * SQRT_HALF)), q_min)
    y = np.asarray(y, dtype='float64')
    return np.maximum(special.erfc(np.abs(y) * SQRT_HALF), q_min)
