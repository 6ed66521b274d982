import pytest

from theta_refine.refinement import run_algorithm


@pytest.fixture(scope="session")
def run_11():
    return run_algorithm(1, 1, "diagonal", 13)


@pytest.fixture(scope="session")
def run_12():
    # One iteration past the reference-table horizon; see test_acceptance
    # for the column accounting.
    return run_algorithm(1, 2, "diagonal", 14)


@pytest.fixture(scope="session")
def run_10():
    return run_algorithm(1, 0, "q1_eq_q3", 13)
