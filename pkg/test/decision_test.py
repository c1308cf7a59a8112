import math

import pytest
import numpy as np

from sparsedetect import tests, statistics
from sparsedetect.tests import TestSpec
from sparsedetect.model import Dataset
from sparsedetect.designs import sample_design
from sparsedetect.errors import DomainError, VarianceModeError


@pytest.fixture
def null_data():
    rng = np.random.default_rng(7)
    x = sample_design('gaussian_iid', 60, 40, rng)
    return Dataset(x, rng.standard_normal(60))


def _data_with_t0(n, value):
    # all entries equal, sum of squares n + value sqrt(2n)
    level = math.sqrt((n + value * math.sqrt(2. * n)) / n)
    return Dataset(np.ones((n, 3)), np.full(n, level))


def test_psi0_alpha():
    zero = Dataset(np.ones((10, 3)), np.zeros(10))
    assert not tests.decide_psi0_alpha(zero, 0.05).reject

    forced = tests.decide_psi0_alpha(_data_with_t0(50, 10.), 0.05)
    assert forced.statistic_value == pytest.approx(10.)
    assert forced.threshold == pytest.approx(1.644854, abs=1e-6)
    assert forced.reject


def test_psi0_alpha_monotone_in_level():
    data = _data_with_t0(50, 1.5)
    rejects = [tests.decide_psi0_alpha(data, alpha).reject for alpha in (0.01, 0.05, 0.1, 0.2)]
    assert rejects == sorted(rejects)
    assert rejects == [False, False, True, True]


def test_psi0_T():
    data = Dataset(np.ones((100, 2)), np.zeros(100))
    decision = tests.decide_psi0_T(data, 1.)
    assert decision.threshold == 5.
    assert not decision.reject
    assert not tests.decide_psi0_T(data, 1e-6).reject

    assert tests.decide_psi0_T(data, 1., t_np=-1e9).reject
    with pytest.raises(DomainError):
        tests.decide_psi0_T(data, 0.)
    assert tests.psi0_default_threshold(100, 1.) == 5.


def test_psi1_alpha():
    zero = Dataset(np.ones((10, 3)), np.zeros(10))
    decision = tests.decide_psi1_alpha(zero, 0.05)
    assert decision.statistic_value == 0.
    assert not decision.reject

    with pytest.raises(DomainError):
        tests.decide_psi1_alpha(Dataset([[1.]], [1.]), 0.05)


def test_psi_hc():
    with pytest.raises(DomainError):
        tests.decide_psi_hc(Dataset(np.eye(2), np.ones(2)))

    # response orthogonal to every column: all q-values are 1
    x = np.zeros((4, 3))
    x[0] = 1.
    y = np.array([0., 1., 2., 3.])
    decision = tests.decide_psi_hc(Dataset(x, y))
    assert decision.statistic_value == -math.inf
    assert not decision.reject


def test_psi_hc_rejects_strong_spike():
    rng = np.random.default_rng(1)
    n, p = 200, 500
    x = sample_design('gaussian_iid', n, p, rng)
    theta = np.zeros(p)
    theta[:3] = 1.5
    data = Dataset(x, x @ theta + rng.standard_normal(n))
    assert tests.decide_psi_hc(data).reject
    assert tests.decide_psi_max(data).reject
    assert tests.decide_psi_ymax(data).reject


def test_psi_ymax_and_lu(null_data):
    decision = tests.decide_psi_ymax(null_data)
    assert decision.threshold == pytest.approx(statistics.ymax_threshold(40))
    assert decision.reject == (decision.statistic_value >= decision.threshold)

    with pytest.raises(DomainError):
        tests.decide_psi_lu(null_data)
    by_beta = tests.decide_psi_lu(null_data, beta=0.9)
    by_u = tests.decide_psi_lu(null_data, u=math.sqrt(2.))
    assert by_beta == by_u


def test_combined_rules():
    spec = TestSpec('psi_star', alpha=0.05)
    assert isinstance(spec.rule, tests.CombinedRule)

    zero = Dataset(np.ones((10, 3)), np.zeros(10))
    decision = tests.decide_combined(zero, spec)
    assert not decision.reject
    assert len(decision.constituents) == 2
    assert [c.test_name for c in decision.constituents] == ['psi0_alpha', 'psi1_alpha']
    # each constituent runs at alpha / 2
    assert decision.constituents[0].threshold == pytest.approx(1.959964, abs=1e-6)

    forced = tests.decide_combined(_data_with_t0(50, 10.), spec)
    assert forced.reject
    assert forced.constituents[0].reject

    with pytest.raises(DomainError):
        tests.decide_combined(zero, TestSpec('psi_hc'))


def test_combine_decisions():
    from sparsedetect.model import make_decision
    no = make_decision('a', 0., 1.)
    yes = make_decision('b', 3., 1.)
    assert not tests.combine_decisions('c', (no, no)).reject
    combined = tests.combine_decisions('c', (no, yes))
    assert combined.reject
    assert combined.statistic_value == 2.
    assert combined.constituents == (no, yes)


def test_triple_rule_constituents(null_data):
    decision = TestSpec('psi_triple').decide(null_data)
    assert [c.test_name for c in decision.constituents] == ['psi0_alpha', 'psi1_alpha', 'psi_hc']


def test_test_spec_defaults_and_aliases():
    spec = TestSpec('hc')
    assert spec.name == 'psi_hc'
    assert (spec.alpha, spec.a, spec.cutoff, spec.t_np, spec.u) == (0.05, 0.1, 0.5, None, None)
    assert spec.scale_invariant
    assert not spec.requires_known_variance

    assert TestSpec('psi0').name == 'psi0_alpha'
    assert TestSpec('psi1').requires_known_variance

    with pytest.raises(DomainError):
        TestSpec('psi_unknown')
    with pytest.raises(DomainError):
        TestSpec('psi0_alpha', alpha=1.)
    with pytest.raises(DomainError):
        TestSpec('psi_hc', cutoff=0.)
    with pytest.raises(DomainError):
        TestSpec('psi_hc', a=-0.1)


@pytest.mark.parametrize('name', ['psi_hc', 'psi_max', 'psi_ymax', 'psi_lu'])
def test_scale_invariant_decisions(name, null_data):
    rng = np.random.default_rng(8)
    x = null_data.x
    theta = np.zeros(x.shape[1])
    theta[:2] = 0.4
    data = Dataset(x, x @ theta + rng.standard_normal(x.shape[0]))
    spec = TestSpec(name)
    reference = spec.decide(data, beta=0.8)
    for c in (1e-3, 0.2, 5., 300.):
        scaled = spec.decide(data.with_response(c * data.y), beta=0.8)
        assert scaled.reject == reference.reject
        assert scaled.statistic_value == pytest.approx(reference.statistic_value, rel=1e-10, abs=1e-12)


def test_known_sigma_standardizes(null_data):
    spec = TestSpec('psi0_alpha')
    scaled = null_data.with_response(3. * null_data.y)
    assert spec.decide(scaled, sigma=3.).statistic_value == pytest.approx(
        spec.decide(null_data).statistic_value, rel=1e-12)

    with pytest.raises(DomainError):
        spec.decide(null_data, sigma=0.)


@pytest.mark.parametrize('name, family', [
    ('psi0_alpha', 'psi0'),
    ('psi0_T', 'psi0'),
    ('psi1_alpha', 'psi1'),
    ('psi_star', 'psi0'),
])
def test_unknown_variance_refuses_calibrated_tests(name, family, null_data):
    with pytest.raises(VarianceModeError) as excinfo:
        TestSpec(name).decide(null_data, r=1., variance_known=False)
    assert '{} requires known variance'.format(family) in str(excinfo.value)

    # opt-in runs the rule on the raw response
    decision = TestSpec(name).decide(null_data, r=1., variance_known=False, allow_uncalibrated=True)
    assert decision.test_name == name


def test_unknown_variance_runs_hc(null_data):
    spec = TestSpec('psi_hc')
    assert spec.decide(null_data, variance_known=False) == spec.decide(null_data)


def test_psi0_T_needs_radius(null_data):
    with pytest.raises(DomainError):
        TestSpec('psi0_T').decide(null_data)


def test_psi_lu_single_coefficient(null_data):
    assert statistics.default_lu_multiplier(1.) == math.sqrt(2.)

    decision = TestSpec('psi_lu').decide(null_data, beta=1.)
    profile = statistics.pvalue_profile(null_data)
    assert decision.statistic_value == statistics.lu_statistic(profile, math.sqrt(2.))
