import pytest

from igmax.cayley import cyclic_group, klein_four_group
from igmax.presentations import TriangularPresentation
from igmax.verify import run_cayley_pipeline, run_triangular_pipeline


@pytest.fixture(scope="session")
def klein_tri():
    # < a, b, c | b a = c, c b = a >, the Klein bottle group in product form
    return TriangularPresentation(names=("a", "b", "c"), triples=((1, 0, 2), (2, 1, 0)))


@pytest.fixture(scope="session")
def klein_pipeline(klein_tri):
    return run_triangular_pipeline(klein_tri)


@pytest.fixture(scope="session")
def k4_pipeline():
    return run_cayley_pipeline(klein_four_group())


@pytest.fixture(scope="session")
def c4_pipeline():
    return run_cayley_pipeline(cyclic_group(4))
