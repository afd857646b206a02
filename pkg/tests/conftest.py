import pytest
from click.testing import CliRunner

from stationary_lab import create_app
from stationary_lab.extensions import pool
from stationary_lab.services import representation_service as rep


@pytest.fixture(autouse=True)
def single_thread():
    pool.configure(1)
    yield
    pool.configure(1)


@pytest.fixture
def data_b2():
    """a = 0, b = 2, beta = z: the reference surface for the curvature checks."""
    return rep.make_canonical(0.0, 2.0, (), "z", 2)


@pytest.fixture
def data_case_iii():
    return rep.make_canonical(1.0, 1.0, (), "z", 2)


@pytest.fixture
def data_flat():
    return rep.make_canonical(0.5, 1.5, (), "1+2*i", 2)


@pytest.fixture
def data_lightlike():
    return rep.make_canonical(0.0, 1.0, (), "z^2", 2)


@pytest.fixture
def cli():
    return create_app()


@pytest.fixture
def runner():
    return CliRunner()
