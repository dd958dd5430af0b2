import numpy as np
import pytest

from scissor_sfwm import (
    DispersionModel,
    PulseShape,
    PumpPulse,
    ResonanceTriplet,
    StructureParams,
)


@pytest.fixture(scope="session")
def params():
    return StructureParams(
        ring_radius=5e-6,
        ring_spacing=15e-6,
        num_rings=1,
        self_coupling=1 - 0.0126,
        phase_index=2.5,
        group_velocity=0.75e8,
        nonlinear_gamma=200.0,
    )


@pytest.fixture(scope="session")
def model(params):
    return DispersionModel.from_structure(params, 50)


@pytest.fixture(scope="session")
def triplet(params, model):
    return ResonanceTriplet.adjacent(params, model)


@pytest.fixture(scope="session")
def gaussian_pulse(triplet):
    def make(duration_ns, photon_number=1.0):
        return PumpPulse(
            PulseShape.GAUSSIAN,
            triplet.omega_pump,
            duration_ns * 1e-9,
            photon_number,
        )

    return make


@pytest.fixture(scope="session")
def tophat_pulse(triplet):
    def make(duration_s, photon_number=1.0):
        return PumpPulse(
            PulseShape.TOP_HAT_SINC, triplet.omega_pump, duration_s, photon_number
        )

    return make


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
