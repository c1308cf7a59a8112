from collections import namedtuple, OrderedDict

from .errors import ConfigConflictError, DomainError
from .designs import DESIGN_FAMILIES, resolve_family

Setting = namedtuple('setting', ('default', 'type', 'description'))

SIGN_PATTERNS = ('random', 'positive')

SETTINGS = OrderedDict([
    # Problem size
    ('n', Setting(100, int, 'Number of observations (rows of the design matrix)')),
    ('p', Setting(100, int, 'Number of regressors (columns of the design matrix)')),

    # Sparsity, exactly one of k / beta
    ('k', Setting(None, int, 'Number of nonzero coefficients of the alternative')),
    ('beta', Setting(None, float, 'Sparsity index, k = round(p^(1 - beta))')),

    # Signal strength, exactly one of r / x (or both if consistent)
    ('r', Setting(None, float, 'Separation radius, Euclidean norm of the alternative')),
    ('x', Setting(None, float, 'Rescaled intensity, r = x * sqrt(k log(p) / n)')),

    # Noise
    ('sigma', Setting(1., float, 'Standard deviation of the noise')),
    ('variance_known', Setting(True, bool, 'Whether the noise level is known to the tests')),

    # Data generation
    ('design', Setting('gaussian_iid', str, 'Design family: one of %s' % ', '.join(sorted(DESIGN_FAMILIES)))),
    ('sign_pattern', Setting('random', str, 'Signs of the alternative: random or positive')),
    ('fixed_signal', Setting(False, bool, 'Draw one alternative per cell instead of one per replication')),
    ('seed', Setting(0, int, 'Base seed of the counter-based random streams')),
])

TEST_SETTINGS = OrderedDict([
    ('alpha', Setting(0.05, float, 'Nominal level of the calibrated tests')),
    ('a', Setting(0.1, float, 'Margin in the HC threshold (1 + a) sqrt(2 log log p)')),
    ('cutoff', Setting(0.5, float, 'Largest p-value entering the HC maximum')),
    ('t_np', Setting(None, float, 'Threshold of psi0_T (default sqrt(n) r^2 / 2)')),
    ('u', Setting(None, float, 'Multiplier u of the L(u) statistic (default from beta)')),
])

BOUNDARY_SETTINGS = OrderedDict([
    ('sharp_threshold', Setting(0.1, float, 'Largest k log(p) / sqrt(n) treated as o(sqrt(n))')),
    ('unknown_variance_threshold', Setting(1.0, float, 'Largest k log(p) / n treated as o(n)')),
])

# relative tolerance when both r and x (or k and beta) are given
CONSISTENCY_TOLERANCE = 1e-12


def coerce(registry, key, value):
    if key not in registry:
        raise ConfigConflictError('unknown setting {!r}'.format(key))
    if value is None:
        return None
    typ = registry[key].type
    if typ is bool and isinstance(value, str):
        return value.strip().lower() in ('1', 'true', 'yes', 'on')
    return typ(value)


def with_defaults(registry, overrides):
    values = OrderedDict((key, setting.default) for key, setting in registry.items())
    for key, value in (overrides or {}).items():
        values[key] = coerce(registry, key, value)
    return values


def check_setting_conflicts(values):
    """Validate a complete set of problem settings (before resolution)"""
    if values['n'] < 1 or values['p'] < 1:
        raise ConfigConflictError('n and p must be positive (got n={n}, p={p})'.format(**values))

    if values['k'] is None and values['beta'] is None:
        raise ConfigConflictError('one of k or beta must be given')

    if values['k'] is not None and not 1 <= values['k'] <= values['p']:
        raise ConfigConflictError('k must lie in [1, p] (got k={k}, p={p})'.format(**values))

    if values['beta'] is not None and not 0. < values['beta'] < 1.:
        raise ConfigConflictError('beta must lie in (0, 1) (got {})'.format(values['beta']))

    if values['r'] is None and values['x'] is None:
        raise ConfigConflictError('one of r or x must be given')

    for key in ('r', 'x'):
        if values[key] is not None and values[key] < 0:
            raise ConfigConflictError('{} must be nonnegative (got {})'.format(key, values[key]))

    if not values['sigma'] > 0:
        raise ConfigConflictError('sigma must be positive (got {})'.format(values['sigma']))

    if values['seed'] < 0:
        raise ConfigConflictError('seed must be nonnegative (got {})'.format(values['seed']))

    try:
        values['design'] = resolve_family(values['design'])
    except DomainError as exc:
        raise ConfigConflictError(str(exc))

    if values['sign_pattern'] not in SIGN_PATTERNS:
        raise ConfigConflictError('unknown sign pattern {!r} (must be one of {!r})'
                                  .format(values['sign_pattern'], SIGN_PATTERNS))
