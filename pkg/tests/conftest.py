import pytest

from cornerspec.cli import BUNDLED, bundled_input
from cornerspec.corner_complex import load_complex


@pytest.fixture(scope="session")
def bundled():
    """name -> loaded CornerComplex for every bundled example input."""
    return {name: load_complex(bundled_input(name)) for name in BUNDLED}


@pytest.fixture(scope="session")
def square(bundled):
    return bundled["square.json"]


@pytest.fixture(scope="session")
def interval(bundled):
    return bundled["interval.json"]


@pytest.fixture(scope="session")
def cyl_s2(bundled):
    return bundled["cyl_s2.json"]


@pytest.fixture(scope="session")
def cyl_s3(bundled):
    return bundled["cyl_s3.json"]


@pytest.fixture(scope="session")
def torus_closed(bundled):
    return bundled["torus_closed.json"]


@pytest.fixture(scope="session")
def cube_corner(bundled):
    return bundled["cube_corner.json"]
