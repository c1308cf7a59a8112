"""Test statistics computed from a :class:`~sparsedetect.model.Dataset`.

The chi-square type statistic t0, the degenerate U-statistic t1, the Higher
Criticism statistic on the p-values of the projections y_j = (X_j, Y) / ||Y||,
and the auxiliary statistics t_max, ||y||_inf and L(u) that bound HC from below.
"""

import math
from collections import namedtuple

import numpy as np

from . import numerics
from .boundary import phi_boundary
from .errors import DomainError, DegenerateResponseError


def t0_statistic(y):
    """t0 = (2n)^(-1/2) sum_i (Y_i^2 - 1), for unit noise variance"""
    y = np.asarray(y, dtype='float64')
    n = y.shape[0]
    if n == 0:
        raise DomainError('t0 needs at least one observation')
    return float((np.dot(y, y) - n) / math.sqrt(2. * n))


def t1_statistic(data):
    """Degenerate U-statistic with kernel K(Z_i, Z_k) = p^(-1/2) Y_i Y_k (X_i., X_k.).

    Uses the column-sum form
    sum_j [(sum_i Y_i X_ij)^2 - sum_i Y_i^2 X_ij^2] / (2 sqrt(p) sqrt(N)), N = n(n-1)/2,
    which equals the pairwise sum over i < k.
    """
    n, p = data.x.shape
    if n < 2:
        raise DomainError('t1 needs n >= 2 (got n={})'.format(n))
    y = data.y
    column_sums = data.x.T @ y
    diagonal = (y * y) @ (data.x * data.x)
    total = np.sum(column_sums * column_sums) - np.sum(diagonal)
    pairs = n * (n - 1) / 2.
    return float(total / (2. * math.sqrt(p) * math.sqrt(pairs)))


def t1_statistic_pairwise(data):
    """O(n^2 p) evaluation of t1 straight from the kernel definition"""
    n, p = data.x.shape
    if n < 2:
        raise DomainError('t1 needs n >= 2 (got n={})'.format(n))
    x, y = data.x, data.y
    total = 0.
    for i in range(n):
        for k in range(i + 1, n):
            total += y[i] * y[k] * np.dot(x[i], x[k])
    pairs = n * (n - 1) / 2.
    return float(total / math.sqrt(p) / math.sqrt(pairs))


class PValueProfile(namedtuple('PValueProfile', ('y_values', 'q_values', 'order', 'q_sorted'))):
    """Projections y_j, their two-sided p-values, and the p-values in increasing order.

    ``order`` maps sorted positions to original column indices (stable under ties).
    """

    __slots__ = ()

    @classmethod
    def from_projections(cls, y_values, q_min=numerics.Q_MIN):
        y_values = np.asarray(y_values, dtype='float64')
        q_values = numerics.two_sided_pvalue(y_values, q_min=q_min)
        order = np.argsort(q_values, kind='stable')
        return cls(y_values, q_values, order, q_values[order])

    @property
    def p(self):
        return self.y_values.shape[0]


def projections(data):
    """y_j = (X_j, Y) / ||Y|| for every column j"""
    norm = np.linalg.norm(data.y)
    if not norm > 0:
        raise DegenerateResponseError('p-values need a nonzero response vector')
    return (data.x.T @ data.y) / norm


def pvalue_profile(data):
    return PValueProfile.from_projections(projections(data))


def hc_statistic(profile, cutoff=0.5):
    """Higher Criticism statistic.

    max over i with q_(i) <= cutoff of sqrt(p) (i/p - q_(i)) / sqrt(q_(i) (1 - q_(i))).
    Returns -inf if no p-value is at most ``cutoff``.
    """
    if not 0. < cutoff < 1.:
        raise DomainError('HC cutoff must lie in (0, 1), got {!r}'.format(cutoff))
    q = profile.q_sorted
    p = q.shape[0]
    count = int(np.searchsorted(q, cutoff, side='right'))
    if count == 0:
        return -math.inf
    q = q[:count]
    ranks = np.arange(1, count + 1) / p
    terms = math.sqrt(p) * (ranks - q) / np.sqrt(q * (1. - q))
    return float(terms.max())


def hc_threshold(p, a=0.1):
    """H_np = (1 + a) sqrt(2 log log p); needs p >= 3"""
    if p < 3:
        raise DomainError('HC threshold needs p >= 3 so that log log p > 0 (got p={})'.format(p))
    if not a > 0:
        raise DomainError('HC margin a must be positive (got {})'.format(a))
    return (1. + a) * math.sqrt(2. * math.log(math.log(p)))


def tmax_statistic(profile):
    """t_max = (p q_(1))^(-1/2) - (p q_(1))^(1/2), a lower bound of HC"""
    pq = profile.p * profile.q_sorted[0]
    return 1. / math.sqrt(pq) - math.sqrt(pq)


def ymax_threshold(p):
    return math.sqrt(2.5 * math.log(p))


def ymax_exceeds(profile, p=None):
    """Whether ||y||_inf >= sqrt(2.5 log p)"""
    p = profile.p if p is None else p
    if p < 2:
        raise DomainError('ymax test needs p >= 2 (got p={})'.format(p))
    return bool(np.max(np.abs(profile.y_values)) >= ymax_threshold(p))


def default_lu_multiplier(beta):
    """u = 2 phi(beta) for beta in (1/2, 3/4] and sqrt(2) for beta in (3/4, 1)

    beta >= 1 (a single nonzero coefficient) takes the beta -> 1 value sqrt(2).
    """
    if beta <= 0.75:
        return 2. * phi_boundary(beta)
    if beta < 1.:
        phi_boundary(beta)  # domain check only
    return math.sqrt(2.)


def lu_statistic(profile, u, p=None):
    """L(u) = sum_j (1{|y_j| > u T_p} - 2 Phi(-u T_p)) / sqrt(2 p Phi(-u T_p)), T_p = sqrt(log p)"""
    p = profile.p if p is None else p
    if not u > 0:
        raise DomainError('L(u) needs u > 0 (got {})'.format(u))
    if p < 2:
        raise DomainError('L(u) needs p >= 2 (got p={})'.format(p))
    level = u * math.sqrt(math.log(p))
    tail = max(numerics.std_normal_cdf(-level), numerics.Q_MIN)
    exceedances = int(np.count_nonzero(np.abs(profile.y_values) > level))
    return (exceedances - 2. * p * tail) / math.sqrt(2. * p * tail)
