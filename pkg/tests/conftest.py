import pytest

from qweyl.fields import make_field


@pytest.fixture(scope="session")
def F3():
    return make_field("Fp:3;n=2;q=2")


@pytest.fixture(scope="session")
def F5():
    return make_field("Fp:5;n=2;q=4")


@pytest.fixture(scope="session")
def F5n4():
    return make_field("Fp:5;n=4;q=2")


@pytest.fixture(scope="session")
def F7():
    return make_field("Fp:7;n=3;q=2")


@pytest.fixture(scope="session")
def F13():
    return make_field("Fp:13;n=4;q=5")


@pytest.fixture(scope="session")
def F3t():
    return make_field("Frat:Fp:3;n=2;q=2")
