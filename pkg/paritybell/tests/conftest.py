import numpy as np
import pytest

from paritybell.bell import MeasurementSettings
from paritybell.fock import ModeSpace, StateVector
from paritybell.states import GhzSpec, ghz_state

SQRT_HALF = np.sqrt(0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def ghz2():
    return ghz_state(GhzSpec(2, 4))


@pytest.fixture
def ghz3():
    return ghz_state(GhzSpec(3, 4))


@pytest.fixture
def chsh_settings():
    """
    xz-plane settings reaching 2 sqrt(2) on the two-mode GHZ state.
    """
    return MeasurementSettings([
        ((0., 0., 1.), (1., 0., 0.)),
        ((-SQRT_HALF, 0., SQRT_HALF), (SQRT_HALF, 0., SQRT_HALF)),
    ])


@pytest.fixture
def mermin_settings():
    """
    a_m = y, a'_m = x on all three modes: <B_3> = 4 on GHZ_3.
    """
    return MeasurementSettings([((0., 1., 0.), (1., 0., 0.))]*3)


def random_state(rng, num_modes, dim):
    space = ModeSpace(num_modes, dim)
    amplitudes = (rng.normal(size=space.total_dim) +
                  1j*rng.normal(size=space.total_dim))
    return StateVector(space, amplitudes).normalize()
