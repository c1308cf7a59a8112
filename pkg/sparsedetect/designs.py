"""Random design matrices with independent, centred, unit-variance entries."""

import math
from collections import namedtuple

import numpy as np

from .errors import DomainError

SQRT3 = math.sqrt(3.)


def _gaussian(rng, n, p):
    return rng.standard_normal(size=(n, p))


def _rademacher(rng, n, p):
    return rng.integers(0, 2, size=(n, p)).astype('float64') * 2. - 1.


def _uniform(rng, n, p):
    return rng.uniform(-SQRT3, SQRT3, size=(n, p))


DESIGN_FAMILIES = {
    'gaussian_iid': _gaussian,
    'rademacher_iid': _rademacher,
    'uniform_iid': _uniform,
}

#: short names accepted on the command line
FAMILY_ALIASES = {
    'gaussian': 'gaussian_iid',
    'rademacher': 'rademacher_iid',
    'uniform': 'uniform_iid',
}


def resolve_family(family):
    family = FAMILY_ALIASES.get(family, family)
    if family not in DESIGN_FAMILIES:
        raise DomainError('unrecognized design family {} (must be either of: {!r})'
                          .format(family, sorted(DESIGN_FAMILIES)))
    return family


def sample_design(family, n, p, rng):
    """Draw an n x p design matrix with i.i.d. mean-0, variance-1 entries.

    Arguments:
        family (str): ``gaussian_iid`` (standard normal), ``rademacher_iid`` (+-1
            equiprobable) or ``uniform_iid`` (uniform on [-sqrt(3), sqrt(3)]).
        n (int): number of rows (observations).
        p (int): number of columns (regressors).
        rng (numpy.random.Generator): source of randomness.
    """
    if n < 1 or p < 1:
        raise DomainError('design needs n >= 1 and p >= 1 (got n={}, p={})'.format(n, p))
    return DESIGN_FAMILIES[resolve_family(family)](rng, n, p)


DiagnosticReport = namedtuple('DiagnosticReport', (
    'norm_deviation', 'max_inner_product', 'max_fourth_moment'
))


def assumption_diagnostics(x):
    """Finite-sample analogues of the moment and near-orthogonality conditions on X.

    Returns:
        :class:`DiagnosticReport` with

        - ``norm_deviation``: max_j | ||X_j||^2 - n | / sqrt(n log p)
        - ``max_inner_product``: max_{j<l} |(X_j, X_l)| / sqrt(n log p)
        - ``max_fourth_moment``: max_j n^-1 sum_i X_ij^4

        For p = 1, log p is replaced by 1.
    """
    x = np.asarray(x, dtype='float64')
    if x.ndim != 2:
        raise DomainError('design must be a 2-D array')
    n, p = x.shape
    scale = math.sqrt(n * (math.log(p) if p > 1 else 1.))

    col_norms = np.einsum('ij,ij->j', x, x)
    norm_deviation = float(np.max(np.abs(col_norms - n))) / scale

    if p > 1:
        gram = x.T @ x
        off_diagonal = np.abs(gram[np.triu_indices(p, k=1)])
        max_inner_product = float(off_diagonal.max()) / scale
    else:
        max_inner_product = 0.

    max_fourth_moment = float(np.max(np.mean(x ** 4, axis=0)))
    return DiagnosticReport(norm_deviation, max_inner_product, max_fourth_moment)
