"""Decision rules built from the statistics.

Every rule maps a :class:`~sparsedetect.model.Dataset` to a
:class:`~sparsedetect.model.TestDecision`. Combined rules reject as soon as one
of their constituents rejects.
"""

import math
from abc import ABCMeta, abstractmethod
from collections import namedtuple

from . import numerics, settings, statistics
from .errors import DomainError, VarianceModeError
from .model import make_decision, TestDecision


def decide_psi0_alpha(data, alpha=0.05):
    """Reject iff t0 > u_alpha"""
    return make_decision(
        'psi0_alpha', statistics.t0_statistic(data.y), numerics.upper_quantile(alpha)
    )


def psi0_default_threshold(n, r):
    """T_np = sqrt(n) r^2 / 2"""
    if not r > 0:
        raise DomainError('psi0_T needs a positive radius r (got {})'.format(r))
    return math.sqrt(n) * r * r / 2.


def decide_psi0_T(data, r, t_np=None):
    """Reject iff t0 > T_np, T_np = sqrt(n) r^2 / 2 unless given"""
    threshold = psi0_default_threshold(data.n, r)
    if t_np is not None:
        threshold = float(t_np)
    return make_decision('psi0_T', statistics.t0_statistic(data.y), threshold)


def decide_psi1_alpha(data, alpha=0.05):
    """Reject iff t1 > u_alpha"""
    return make_decision(
        'psi1_alpha', statistics.t1_statistic(data), numerics.upper_quantile(alpha)
    )


def decide_psi_hc(data, a=0.1, cutoff=0.5):
    """Reject iff t_HC > (1 + a) sqrt(2 log log p)"""
    threshold = statistics.hc_threshold(data.p, a)
    profile = statistics.pvalue_profile(data)
    return make_decision('psi_hc', statistics.hc_statistic(profile, cutoff), threshold)


def decide_psi_max(data, a=0.1):
    """Reject iff t_max > (1 + a) sqrt(2 log log p)"""
    threshold = statistics.hc_threshold(data.p, a)
    profile = statistics.pvalue_profile(data)
    return make_decision('psi_max', statistics.tmax_statistic(profile), threshold)


def decide_psi_lu(data, u=None, beta=None, a=0.1):
    """Reject iff L(u) > (1 + a) sqrt(2 log log p), with u chosen from beta if not given"""
    if u is None:
        if beta is None:
            raise DomainError('psi_lu needs either u or the sparsity index beta')
        u = statistics.default_lu_multiplier(beta)
    threshold = statistics.hc_threshold(data.p, a)
    profile = statistics.pvalue_profile(data)
    return make_decision('psi_lu', statistics.lu_statistic(profile, u), threshold)


def decide_psi_ymax(data):
    """Reject iff ||y||_inf >= sqrt(2.5 log p)"""
    profile = statistics.pvalue_profile(data)
    reject = statistics.ymax_exceeds(profile)
    value = float(abs(profile.y_values).max())
    return TestDecision(value, statistics.ymax_threshold(data.p), reject, 'psi_ymax', ())


class DecisionRule(metaclass=ABCMeta):
    #: whether the decision is unchanged when Y is multiplied by c > 0
    scale_invariant = False

    @abstractmethod
    def decide(self, data, spec, r=None, beta=None):
        pass


class Psi0Alpha(DecisionRule):
    def __init__(self, level_factor=1.):
        self.level_factor = level_factor

    def decide(self, data, spec, r=None, beta=None):
        return decide_psi0_alpha(data, spec.alpha * self.level_factor)


class Psi0T(DecisionRule):
    def decide(self, data, spec, r=None, beta=None):
        if r is None:
            raise DomainError('psi0_T needs the separation radius r')
        return decide_psi0_T(data, r, spec.t_np)


class Psi1Alpha(DecisionRule):
    def __init__(self, level_factor=1.):
        self.level_factor = level_factor

    def decide(self, data, spec, r=None, beta=None):
        return decide_psi1_alpha(data, spec.alpha * self.level_factor)


class PsiHC(DecisionRule):
    scale_invariant = True

    def decide(self, data, spec, r=None, beta=None):
        return decide_psi_hc(data, spec.a, spec.cutoff)


class PsiMax(DecisionRule):
    scale_invariant = True

    def decide(self, data, spec, r=None, beta=None):
        return decide_psi_max(data, spec.a)


class PsiLU(DecisionRule):
    scale_invariant = True

    def decide(self, data, spec, r=None, beta=None):
        return decide_psi_lu(data, spec.u, beta, spec.a)


class PsiYmax(DecisionRule):
    scale_invariant = True

    def decide(self, data, spec, r=None, beta=None):
        return decide_psi_ymax(data)


class CombinedRule(DecisionRule):
    """Maximum of several rules; the decision records every constituent."""

    def __init__(self, name, constituents):
        self.name = name
        self.constituents = tuple(constituents)
        self.scale_invariant = all(rule.scale_invariant for rule in self.constituents)

    def decide(self, data, spec, r=None, beta=None):
        decisions = tuple(rule.decide(data, spec, r, beta) for rule in self.constituents)
        return combine_decisions(self.name, decisions)


def combine_decisions(name, decisions):
    """Reject iff any constituent rejects; the statistic is the largest margin s_i - tau_i"""
    margin = max(d.statistic_value - d.threshold for d in decisions)
    reject = any(d.reject for d in decisions)
    return TestDecision(float(margin), 0., reject, name, tuple(decisions))


TEST_RULES = {
    'psi0_alpha': Psi0Alpha(),
    'psi0_T': Psi0T(),
    'psi1_alpha': Psi1Alpha(),
    'psi_hc': PsiHC(),
    'psi_max': PsiMax(),
    'psi_lu': PsiLU(),
    'psi_ymax': PsiYmax(),
    'psi_star': CombinedRule('psi_star', (Psi0Alpha(.5), Psi1Alpha(.5))),
    'psi_star_hc': CombinedRule('psi_star_hc', (Psi0Alpha(), PsiHC())),
    'psi_triple': CombinedRule('psi_triple', (Psi0Alpha(.5), Psi1Alpha(.5), PsiHC())),
}

TEST_ALIASES = {
    'psi0': 'psi0_alpha',
    'psi1': 'psi1_alpha',
    'hc': 'psi_hc',
}

#: rules whose calibration assumes sigma = 1
KNOWN_VARIANCE_TESTS = ('psi0_alpha', 'psi0_T', 'psi1_alpha', 'psi_star', 'psi_star_hc', 'psi_triple')

_ALPHA_TESTS = ('psi0_alpha', 'psi1_alpha', 'psi_star', 'psi_star_hc', 'psi_triple')


class TestSpec(namedtuple('TestSpec', ('name', 'alpha', 'a', 'cutoff', 't_np', 'u'))):
    """A named decision rule together with its tuning parameters.

    Missing parameters take their defaults from :data:`sparsedetect.settings.TEST_SETTINGS`.

    Example:
        >>> spec = TestSpec('psi_star', alpha=0.05)
        >>> spec.decide(data).reject
    """

    __slots__ = ()
    __test__ = False

    def __new__(cls, name, **kwargs):
        name = TEST_ALIASES.get(name, name)
        if name not in TEST_RULES:
            raise DomainError('unknown test {!r} (must be one of {})'
                              .format(name, ', '.join(sorted(TEST_RULES))))

        values = settings.with_defaults(settings.TEST_SETTINGS, kwargs)

        if name in _ALPHA_TESTS and not 0. < values['alpha'] < 1.:
            raise DomainError('alpha must lie in (0, 1) (got {})'.format(values['alpha']))
        if not values['a'] > 0:
            raise DomainError('HC margin a must be positive (got {})'.format(values['a']))
        if not 0. < values['cutoff'] < 1.:
            raise DomainError('HC cutoff must lie in (0, 1) (got {})'.format(values['cutoff']))
        if values['u'] is not None and not values['u'] > 0:
            raise DomainError('L(u) multiplier must be positive (got {})'.format(values['u']))

        return super(TestSpec, cls).__new__(cls, name, **values)

    @property
    def rule(self):
        return TEST_RULES[self.name]

    @property
    def scale_invariant(self):
        return self.rule.scale_invariant

    @property
    def requires_known_variance(self):
        return self.name in KNOWN_VARIANCE_TESTS

    def decide(self, data, r=None, beta=None, sigma=1., variance_known=True, allow_uncalibrated=False):
        return decide(data, self, r=r, beta=beta, sigma=sigma, variance_known=variance_known,
                      allow_uncalibrated=allow_uncalibrated)


def decide(data, spec, r=None, beta=None, sigma=1., variance_known=True, allow_uncalibrated=False):
    """Apply a decision rule.

    With known ``sigma`` != 1 the response is standardized to unit noise first. In
    unknown-variance mode rules that need sigma = 1 are refused, unless
    ``allow_uncalibrated`` is set (used to demonstrate their sensitivity to sigma).
    """
    if variance_known:
        if not sigma > 0:
            raise DomainError('sigma must be positive (got {})'.format(sigma))
        if sigma != 1.:
            data = data.with_response(data.y / sigma)
    elif spec.requires_known_variance and not allow_uncalibrated:
        family = 'psi1' if spec.name == 'psi1_alpha' else 'psi0'
        raise VarianceModeError('{} requires known variance (test {} assumes sigma = 1)'
                                .format(family, spec.name))

    return spec.rule.decide(data, spec, r=r, beta=beta)


def decide_combined(data, spec, r=None, beta=None):
    """Decision of a combined rule (psi_star, psi_star_hc or psi_triple)"""
    if not isinstance(spec.rule, CombinedRule):
        raise DomainError('{} is not a combined test'.format(spec.name))
    return spec.rule.decide(data, spec, r=r, beta=beta)
