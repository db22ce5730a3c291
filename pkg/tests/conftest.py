import numpy as np
import pytest

from ctxharvest import DetectorConfig, assemble_state, compute_kernels

ACCEPTANCE_DTILDE = 2 * 0.1 + 5 / np.sqrt(2)


@pytest.fixture(scope="session")
def acceptance_config():
    return DetectorConfig(lam=1e-3, omega=1.0, rtilde=0.1, dtilde=ACCEPTANCE_DTILDE)


@pytest.fixture(scope="session")
def acceptance_kernels(acceptance_config):
    return compute_kernels(acceptance_config)


@pytest.fixture(scope="session")
def acceptance_state(acceptance_config, acceptance_kernels):
    return assemble_state(acceptance_config, acceptance_kernels)


@pytest.fixture(scope="session")
def strange_qutrit():
    """(|1> - |2>)/sqrt(2): the most Wigner-negative qutrit state."""
    s = np.array([0.0, 1.0, -1.0], dtype=complex) / np.sqrt(2.0)
    return np.outer(s, s.conj())
