import pytest

from braidcalc.calculi import solve_flips
from braidcalc.covariance import (
    close_right_ideal,
    reconstruct_from_ideal,
    solve_left_action,
    solve_right_action,
    universal_ideals,
)
from braidcalc.fixtures import fix_anyon, fix_gr, fix_k2, fix_k4, fix_one
from braidcalc.reporting import Report


@pytest.fixture(scope="session")
def k2():
    return fix_k2()


@pytest.fixture(scope="session")
def gr():
    return fix_gr()


@pytest.fixture(scope="session")
def one():
    return fix_one()


@pytest.fixture(scope="session")
def k4():
    return fix_k4()


@pytest.fixture(scope="session")
def k2_universal(k2):
    return reconstruct_from_ideal(k2, universal_ideals(k2)["zero"], Report(), name="universal")


@pytest.fixture(scope="session")
def k2_zero_calc(k2):
    return reconstruct_from_ideal(k2, universal_ideals(k2)["keps"], Report(), name="zero")


@pytest.fixture(scope="session")
def gr_universal(gr):
    return reconstruct_from_ideal(gr, universal_ideals(gr)["zero"], Report(), name="universal")


@pytest.fixture(scope="session")
def gr_zero_calc(gr):
    return reconstruct_from_ideal(gr, universal_ideals(gr)["keps"], Report(), name="zero")


@pytest.fixture(scope="session")
def k2_flips(k2_universal):
    return solve_flips(k2_universal, 2)


@pytest.fixture(scope="session")
def gr_flips(gr_universal):
    return solve_flips(gr_universal, 2)


@pytest.fixture(scope="session")
def k2_lcd(k2_universal, k2_flips):
    return solve_left_action(k2_universal, Report(), flips=k2_flips)


@pytest.fixture(scope="session")
def gr_lcd(gr_universal, gr_flips):
    return solve_left_action(gr_universal, Report(), flips=gr_flips)


@pytest.fixture(scope="session")
def k2_rcd(k2_universal, k2_flips):
    return solve_right_action(k2_universal, Report(), flips=k2_flips)


@pytest.fixture(scope="session")
def gr_rcd(gr_universal, gr_flips):
    return solve_right_action(gr_universal, Report(), flips=gr_flips)


@pytest.fixture(scope="session")
def anyon():
    return fix_anyon()


@pytest.fixture(scope="session")
def anyon_t2_calc(anyon):
    t2 = close_right_ideal(anyon, [[0, 0, 1, 0]])
    return reconstruct_from_ideal(anyon, t2, Report(), name="t2", verify=False)


@pytest.fixture(scope="session")
def k4_d1(k4):
    return close_right_ideal(k4, [[0, 1, 0, 0]])


@pytest.fixture(scope="session")
def k4_d1_calc(k4, k4_d1):
    return reconstruct_from_ideal(k4, k4_d1, Report(), name="d1", verify=False)
