import pytest

from stratify.runner import run_scenario


@pytest.fixture(scope="session")
def cubic3fold_report():
    return run_scenario("cubic3fold")


@pytest.fixture(scope="session")
def cubicsurf_report():
    return run_scenario("cubicsurf")


@pytest.fixture(scope="session")
def binary12_report():
    return run_scenario("binary12")


@pytest.fixture(scope="session")
def cubiccurve_report():
    return run_scenario("cubiccurve")
