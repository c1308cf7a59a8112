"""Domain types of the regression detection problem.

Data follow Y = X theta + xi with an n x p design X and Gaussian noise xi.
"""

import math
from collections import namedtuple

import numpy as np

from . import settings
from .errors import DomainError, ConfigConflictError

NORM_TOLERANCE = 1e-12


class Dataset:
    """Observations Z = (X, Y); rows of ``x`` are observations."""

    __slots__ = ('x', 'y')

    def __init__(self, x, y):
        x = np.asarray(x, dtype='float64')
        y = np.asarray(y, dtype='float64')

        if x.ndim != 2:
            raise DomainError('design must be a 2-D array (got shape {})'.format(x.shape))
        if y.ndim != 1:
            raise DomainError('response must be a 1-D array (got shape {})'.format(y.shape))
        if x.shape[0] != y.shape[0]:
            raise DomainError('design has {} rows but response has length {}'
                              .format(x.shape[0], y.shape[0]))
        if x.shape[0] < 1 or x.shape[1] < 1:
            raise DomainError('dataset needs n >= 1 and p >= 1 (got shape {})'.format(x.shape))

        object.__setattr__(self, 'x', x)
        object.__setattr__(self, 'y', y)

    def __setattr__(self, attr, val):
        raise TypeError('Dataset objects are immutable')

    @property
    def n(self):
        return self.x.shape[0]

    @property
    def p(self):
        return self.x.shape[1]

    def with_response(self, y):
        return Dataset(self.x, y)

    def __repr__(self):
        return 'Dataset(n={}, p={})'.format(self.n, self.p)


class SparseSignal:
    """Coefficient vector theta with its support and Euclidean norm."""

    __slots__ = ('coefficients', 'support', 'norm')

    def __init__(self, coefficients):
        coefficients = np.array(coefficients, dtype='float64')
        if coefficients.ndim != 1:
            raise DomainError('coefficients must be a 1-D array')
        coefficients.setflags(write=False)
        support = np.flatnonzero(coefficients)
        support.setflags(write=False)
        object.__setattr__(self, 'coefficients', coefficients)
        object.__setattr__(self, 'support', support)
        object.__setattr__(self, 'norm', float(np.linalg.norm(coefficients)))

    def __setattr__(self, attr, val):
        raise TypeError('SparseSignal objects are immutable')

    @classmethod
    def zero(cls, p):
        return cls(np.zeros(p))

    @property
    def p(self):
        return self.coefficients.shape[0]

    @property
    def sparsity(self):
        """M(theta), the number of nonzero coordinates"""
        return len(self.support)

    def __repr__(self):
        return 'SparseSignal(p={}, sparsity={}, norm={:.6g})'.format(self.p, self.sparsity, self.norm)


class AlternativeSpec(namedtuple('AlternativeSpec', ('p', 'k', 'r'))):
    """The alternative set Theta_k(r) in R^p."""

    __slots__ = ()

    def __new__(cls, p, k, r):
        p, k, r = int(p), int(k), float(r)
        if p < 1:
            raise DomainError('p must be positive (got {})'.format(p))
        if not 1 <= k:
            raise DomainError('k must be at least 1 (got {})'.format(k))
        if k > p:
            raise DomainError('k = {} exceeds p = {}'.format(k, p))
        if not r >= 0:
            raise DomainError('radius must be nonnegative (got {})'.format(r))
        return super(AlternativeSpec, cls).__new__(cls, p, k, r)

    def contains(self, signal):
        return signal.sparsity <= self.k and signal.norm >= self.r * (1 - NORM_TOLERANCE)


TestDecision = namedtuple('TestDecision', ('statistic_value', 'threshold', 'reject', 'test_name', 'constituents'))
TestDecision.__new__.__defaults__ = ((),)
TestDecision.__test__ = False


def make_decision(test_name, statistic_value, threshold, constituents=()):
    statistic_value = float(statistic_value)
    threshold = float(threshold)
    # -inf never rejects, whatever the threshold
    reject = statistic_value != -math.inf and statistic_value > threshold
    return TestDecision(statistic_value, threshold, bool(reject), test_name, tuple(constituents))


def round_half_up(value):
    return int(math.floor(value + 0.5))


def k_from_beta(p, beta):
    """k = p^(1 - beta), rounded half up and clamped to [1, p]"""
    return min(max(round_half_up(p ** (1. - beta)), 1), p)


def beta_from_sparsity(p, k):
    """Sparsity index of k nonzeros among p coordinates"""
    if p < 2:
        raise DomainError('sparsity index needs p >= 2 (got {})'.format(p))
    return 1. - math.log(k) / math.log(p)


def boundary_unit(n, p, k):
    """sqrt(k log(p) / n), the unit of the rescaled intensity x"""
    return math.sqrt(k * math.log(p) / n)


def _close(a, b):
    return abs(a - b) <= settings.CONSISTENCY_TOLERANCE * max(1., abs(a), abs(b))


class ProblemConfig:
    """Fully resolved problem configuration.

    Arguments are the keys of :data:`sparsedetect.settings.SETTINGS`. Sparsity may be
    given as ``k`` or ``beta`` and signal strength as ``r`` or ``x``; the missing member
    of each pair is derived on construction. Instances are frozen.

    Example:
        >>> cfg = ProblemConfig(n=4000, p=4096, beta=0.75, x=1.0)
        >>> cfg.k
        8
    """

    def __init__(self, **kwargs):
        values = settings.with_defaults(settings.SETTINGS, kwargs)
        settings.check_setting_conflicts(values)
        given = frozenset(key for key in ('k', 'beta', 'r', 'x') if values[key] is not None)

        n, p = values['n'], values['p']

        k = values['k']
        if values['beta'] is not None:
            k_beta = k_from_beta(p, values['beta'])
            if k is not None and k != k_beta:
                raise ConfigConflictError('k = {} conflicts with beta = {} (implies k = {})'
                                          .format(k, values['beta'], k_beta))
            k = k_beta
        values['k'] = k

        if values['beta'] is None and p >= 2:
            values['beta'] = beta_from_sparsity(p, k)

        unit = boundary_unit(n, p, k)
        r, x = values['r'], values['x']
        if x is not None:
            r_x = x * unit
            if r is not None and not _close(r, r_x):
                raise ConfigConflictError('r = {} conflicts with x = {} (implies r = {})'
                                          .format(r, x, r_x))
            r = r_x
        elif unit > 0:
            x = r / unit
        values['r'], values['x'] = r, x

        self.__dict__['_values'] = values
        self.__dict__['_given'] = given

    def __getattr__(self, attr):
        try:
            return self.__dict__['_values'][attr]
        except KeyError:
            raise AttributeError(attr)

    def __setattr__(self, attr, val):
        raise TypeError('ProblemConfig objects are frozen (use replace())')

    def replace(self, **kwargs):
        """Copy with some settings changed.

        Derived members of the (k, beta) and (r, x) pairs are resolved again from the
        supplied ones; changing one member of a pair drops the other one.
        """
        values = dict(self._values)
        for key in ('k', 'beta', 'r', 'x'):
            if key not in self._given:
                values[key] = None
        for first, second in (('k', 'beta'), ('r', 'x')):
            if first in kwargs and second not in kwargs:
                values[second] = None
            if second in kwargs and first not in kwargs:
                values[first] = None
        values.update(kwargs)
        return ProblemConfig(**values)

    def as_dict(self):
        return dict(self._values)

    @property
    def alternative(self):
        return AlternativeSpec(self.p, self.k, self.r)

    def __eq__(self, other):
        return isinstance(other, ProblemConfig) and self._values == other._values

    def __hash__(self):
        return hash(tuple(sorted(self._values.items())))

    def __repr__(self):
        setval = ', '.join('%s=%r' % (key, val) for key, val in self._values.items())
        return 'ProblemConfig({})'.format(setval)


def place_signal(spec, sign_pattern='random', rng=None):
    """Place k equal-magnitude coefficients r / sqrt(k) at uniformly chosen positions.

    ``sign_pattern`` is ``'random'`` (independent fair signs), ``'positive'``, or an
    explicit length-k array of +1/-1.
    """
    if not isinstance(spec, AlternativeSpec):
        spec = AlternativeSpec(*spec)

    if rng is None:
        rng = np.random.default_rng()

    p, k, r = spec
    support = np.sort(rng.choice(p, size=k, replace=False))

    if isinstance(sign_pattern, str):
        if sign_pattern == 'random':
            signs = rng.choice(np.array([-1., 1.]), size=k)
        elif sign_pattern == 'positive':
            signs = np.ones(k)
        else:
            raise DomainError('unknown sign pattern {!r}'.format(sign_pattern))
    else:
        signs = np.asarray(sign_pattern, dtype='float64')
        if signs.shape != (k,) or not np.all(np.abs(signs) == 1):
            raise DomainError('explicit sign pattern must be k = {} entries of +-1'.format(k))

    coefficients = np.zeros(p)
    coefficients[support] = signs * (r / math.sqrt(k))
    return SparseSignal(coefficients)
