"""Acceptance criteria 1 to 10 at full size.

Each test prints one PASS/FAIL line; the lines are also collected into the
terminal summary.  Run directly with ``python tests/test_acceptance.py``.
"""

import sys

import pytest

from lietower.verify import ALL_CHECKS

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = []


def _record(result):
    line = result.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result.passed, line


def test_criterion_01_lie_dimension():
    _record(ALL_CHECKS[1](max_n=8))


@pytest.mark.slow
def test_criterion_02_partition_homology():
    _record(ALL_CHECKS[2](max_n=7))


def test_criterion_03_robinson_equivariance():
    _record(ALL_CHECKS[3](max_n=6))


def test_criterion_04_graded_twist():
    _record(ALL_CHECKS[4](max_n=6, max_D=3))


def test_criterion_05_tensor_oracle():
    _record(ALL_CHECKS[5](max_n=5, samples=500))


def test_criterion_06_ungraft_rescaling():
    _record(ALL_CHECKS[6](samples=500))


def test_criterion_07_caterpillar():
    _record(ALL_CHECKS[7](max_n=5, samples=100))


def test_criterion_08_rank_formulas():
    _record(ALL_CHECKS[8]())


def test_criterion_09_grasper_bracket():
    _record(ALL_CHECKS[9](samples=200))


def test_criterion_10_sphere_twist():
    _record(ALL_CHECKS[10]())


if __name__ == "__main__":
    failed = 0
    for k in sorted(ALL_CHECKS):
        res = ALL_CHECKS[k]()
        print(res.line())
        failed += not res.passed
    sys.exit(1 if failed else 0)
