"""Acceptance battery: one test per numbered criterion, one line per result.

Each test delegates to the corresponding verify.criterion_* function (the
same code the `iselab verify` command runs), prints its pass/fail line
with the measured detail through the capture layer so it shows up in any
pytest run, and asserts the verdict.
"""

import pytest

from iselab import verify


@pytest.fixture
def check(capsys):
    def _check(result):
        status = "PASS" if result.passed else "FAIL"
        line = (
            f"criterion {result.cid:02d} [{result.name}]: {status} "
            f"({result.elapsed:.2f}s) {result.detail}"
        )
        with capsys.disabled():
            print(f"\n{line}", flush=True)
        assert result.passed, line

    return _check


def test_criterion_01_exact_oracle_agreement(check):
    check(verify.criterion_1())


def test_criterion_02_constant_recurrences(check):
    check(verify.criterion_2())


def test_criterion_03_moment_convergence(check):
    check(verify.criterion_3())


def test_criterion_04_excursion_limit(check):
    check(verify.criterion_4())


def test_criterion_05_mean_density_cross_check(check):
    check(verify.criterion_5())


def test_criterion_06_mgf_derivative_moments(check):
    check(verify.criterion_6())


def test_criterion_07_abs_moment_interpolation(check):
    check(verify.criterion_7())


def test_criterion_08_profile_density_match(check):
    check(verify.criterion_8())


def test_criterion_09_fourier_ratio_bound(check):
    check(verify.criterion_9())


def test_criterion_10_sampler_uniformity(check):
    check(verify.criterion_10())
