import pytest

from tiltcell.core.affine import affine_group
from tiltcell.core.hecke import AntisphericalModule
from tiltcell.core.rootdata import root_system_from_type
from tiltcell.core.tilting import TiltingCategory


@pytest.fixture(scope="session")
def a1():
    return root_system_from_type("A1")


@pytest.fixture(scope="session")
def a2():
    return root_system_from_type("A2")


@pytest.fixture(scope="session")
def b2():
    return root_system_from_type("B2")


@pytest.fixture(scope="session")
def g2():
    return root_system_from_type("G2")


@pytest.fixture(scope="session")
def a1_group(a1):
    return affine_group(a1, 5, progress=False)


@pytest.fixture(scope="session")
def a2_group(a2):
    return affine_group(a2, 5, progress=False)


@pytest.fixture(scope="session")
def b2_group(b2):
    return affine_group(b2, 5, progress=False)


@pytest.fixture(scope="session")
def g2_group(g2):
    return affine_group(g2, 7, progress=False)


@pytest.fixture(scope="session")
def a1_module(a1_group):
    return AntisphericalModule(a1_group)


@pytest.fixture(scope="session")
def a2_module(a2_group):
    return AntisphericalModule(a2_group)


@pytest.fixture(scope="session")
def b2_module(b2_group):
    return AntisphericalModule(b2_group)


@pytest.fixture(scope="session")
def g2_module(g2_group):
    return AntisphericalModule(g2_group)


@pytest.fixture(scope="session")
def a1_category(a1_module):
    return TiltingCategory(a1_module)


@pytest.fixture(scope="session")
def g2_category(g2_module):
    return TiltingCategory(g2_module)


def word(group, letters):
    """WfRep from a word, e.g. word(group, "010")"""
    return group.rep_from_word(tuple(int(s) for s in letters))
