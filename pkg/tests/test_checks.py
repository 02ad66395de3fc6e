import pytest

from slnstates import checks, fixtures
from slnstates.statecalc.core import enumerate_states


def test_histogram_shift():
    assert checks.histogram_shift({0: 1, 2: 3}, {-2: 1, 0: 3}) == -2
    assert checks.histogram_shift({}, {}) == 0
    assert checks.histogram_shift({0: 1}, {0: 2}) is None
    assert checks.histogram_shift({0: 1, 1: 2}, {0: 2, 1: 1}) is None


@pytest.mark.parametrize("ijkN,shift", [((1, 1, 1, 3), -2), ((1, 1, 2, 3), 2), ((1, 2, 1, 4), -1),
                                        ((2, 1, 1, 4), -1)])
def test_fork_slide_keeps_histogram_up_to_shift(ijkN, shift):
    before, after = fixtures.fork_slide_pair(*ijkN)
    a, b = enumerate_states(before), enumerate_states(after)
    assert a.count == b.count > 0
    assert checks.histogram_shift(a.histogram, b.histogram) == shift


def test_affine_params_distinct_and_invertible():
    assert len(set(checks.AFFINE_PARAMS)) == len(checks.AFFINE_PARAMS) == 15
    assert all(a != 0 for a, _ in checks.AFFINE_PARAMS)


@pytest.mark.parametrize("name", ["bounds", "circle-ring"])
def test_fast_suites_pass(name):
    report = checks.run_suite(name)
    assert report.passed
    assert report.seed == checks.DEFAULT_SEEDS[name]


def test_unknown_suite():
    with pytest.raises(ValueError, match="unknown suite"):
        checks.run_suite("nope")


def test_seeded_cases_are_reproducible():
    a = [b.to_text() for b in checks.random_link_cases(20, 5)]
    b = [b.to_text() for b in checks.random_link_cases(20, 5)]
    assert a == b
