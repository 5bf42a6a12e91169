import numpy as np
import pytest


def random_pure(rng, num_qubits):
    amps = rng.normal(size=1 << num_qubits) + 1j * rng.normal(size=1 << num_qubits)
    return amps / np.linalg.norm(amps)


def random_density(rng, num_qubits, rank=3):
    dim = 1 << num_qubits
    rho = np.zeros((dim, dim), dtype=complex)
    weights = rng.uniform(0.2, 1.0, size=rank)
    weights /= weights.sum()
    for w in weights:
        amps = random_pure(rng, num_qubits)
        rho += w * np.outer(amps, amps.conj())
    return rho


def random_hermitian(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (m + m.conj().T) / 2.0


@pytest.fixture
def rng():
    return np.random.default_rng(20250101)
