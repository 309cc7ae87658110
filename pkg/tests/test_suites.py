import pytest

from chaoskit.config import RunConfig
from chaoskit.suites import ESTIMATOR_HORIZONS, SUITES, run_suite


def config(**kw):
    kw.setdefault('seed', 3)
    return RunConfig(command='verify', **kw)


def test_registry_includes_estimator():
    assert 'estimator' in SUITES


def test_hermite_suite_with_conversions():
    result = run_suite('hermite', config(cases=3))
    assert result.passed, result.failures
    # 112 conversion identities over degrees 0..6 on top of the exact checks.
    assert result.cases > 112


def test_product_suite_covers_total_rank_six():
    # One case per type pair: all (a,b)x(c,dd) with a+b+c+dd <= 6.
    result = run_suite('product', config(cases=1))
    assert result.cases == 210
    assert result.passed, result.failures


def test_fmt_suite_checks_normality_trend():
    result = run_suite('fmt', config(samples=20000))
    assert result.passed, result.failures
    normality = result.notes['normality']
    assert normality[-1] < normality[0]


@pytest.mark.slow
def test_estimator_consistency():
    result = run_suite('estimator', config(seed=11))
    assert result.passed, result.failures
    for hurst in ('0.5', '0.6'):
        bias = result.notes[f'bias_H{hurst}']
        assert len(bias) == len(ESTIMATOR_HORIZONS)
    bias = result.notes['bias_H0.5']
    assert bias[-1] < bias[0]
