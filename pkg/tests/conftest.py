import numpy as np
import pytest

from taxica import build_model, ca_decompose, reduce_to_minimal, tca_decompose

from helpers import load_table, make_table


@pytest.fixture(scope="session")
def toy_table():
    return load_table("toy_4x4.csv")


@pytest.fixture(scope="session")
def toy_minimal(toy_table):
    return reduce_to_minimal(toy_table).minimal


@pytest.fixture(scope="session")
def tv_table():
    return load_table("tv_programs.csv")


@pytest.fixture(scope="session")
def rodents_table():
    return load_table("rodents.csv")


@pytest.fixture(scope="session")
def tv_ca(tv_table):
    return ca_decompose(build_model(tv_table))


@pytest.fixture(scope="session")
def tv_tca(tv_table):
    return tca_decompose(build_model(tv_table))


@pytest.fixture(scope="session")
def rodents_ca(rodents_table):
    return ca_decompose(build_model(rodents_table))


@pytest.fixture(scope="session")
def rodents_tca(rodents_table):
    return tca_decompose(build_model(rodents_table))


def diagonal_table(values):
    return make_table(np.diag(np.asarray(values, dtype=float)))


@pytest.fixture(scope="session")
def diag_12346():
    return diagonal_table([1, 2, 3, 4, 6])


@pytest.fixture(scope="session")
def diag_12345():
    return diagonal_table([1, 2, 3, 4, 5])
