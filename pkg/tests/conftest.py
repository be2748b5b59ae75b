import numpy as np
import pytest
from hypothesis import strategies as st

from trinu import OscillationParams, TripartiteState


@pytest.fixture(scope="session")
def params():
    return OscillationParams()


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)


def random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return a + a.conj().T


@st.composite
def w_class_states(draw):
    """Normalized single-excitation states with arbitrary complex phases."""
    raw = [
        draw(st.floats(0.0, 1.0, allow_nan=False)) for _ in range(3)
    ]
    total = sum(raw)
    if total < 1e-9:
        raw = [1.0, 1.0, 1.0]
        total = 3.0
    probs = [r / total for r in raw]
    phases = [draw(st.floats(0.0, 2.0 * np.pi)) for _ in range(3)]
    amps = [np.sqrt(p) * np.exp(1j * ph) for p, ph in zip(probs, phases)]
    norm = np.sqrt(sum(abs(a) ** 2 for a in amps))
    return TripartiteState(*(a / norm for a in amps))


@st.composite
def physics_params(draw):
    """Random but internally consistent oscillation parameters."""
    t12 = draw(st.floats(0.1, 89.0))
    t23 = draw(st.floats(0.1, 89.0))
    t13 = draw(st.floats(0.1, 89.0))
    dcp = draw(st.floats(-180.0, 180.0))
    dm21 = draw(st.floats(1e-5, 3e-4))
    dm32 = draw(st.floats(1e-3, 5e-3))
    return OscillationParams(
        theta12=t12, theta23=t23, theta13=t13, delta_cp=dcp,
        dm2_21=dm21, dm2_31=dm21 + dm32, dm2_32=dm32, ordering="custom",
    )
