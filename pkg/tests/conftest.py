import numpy as np
import pytest

from fluxbands import assemble, build_square_lattice, harper_nn, staggered_mass_harper


@pytest.fixture(scope="session")
def box10():
    return build_square_lattice(10)


@pytest.fixture(scope="session")
def harper10(box10):
    return assemble(box10, harper_nn())


@pytest.fixture(scope="session")
def staggered12():
    return assemble(build_square_lattice(12), staggered_mass_harper(1.0))
