import numpy as np
import pytest

from sicmub import build_mub_set, hesse_kets, hesse_sic


@pytest.fixture(scope="session")
def sic():
    return hesse_sic()


@pytest.fixture(scope="session")
def kets():
    return hesse_kets()


@pytest.fixture(scope="session")
def mubs(sic):
    return build_mub_set(sic)


@pytest.fixture(scope="session")
def projectors(sic):
    return np.asarray(sic.projectors)
