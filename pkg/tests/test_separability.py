import math

import numpy as np
import pytest

from qcopynet import (
    CopyVariant,
    InputQubit,
    entanglement_distance_correlation,
    kron,
    negativity_bound_check,
    ppt_verdict,
    run_copier,
)

from conftest import random_density

SQRT5 = math.sqrt(5.0)
SQRT17 = math.sqrt(17.0)

DUP_SPECTRUM = np.sort([(2 - SQRT5) / 6, 1 / 6, 1 / 6, (2 + SQRT5) / 6])
TRIP_SPECTRUM = np.sort([-1 / 6, (5 - SQRT17) / 12, 1 / 3, (5 + SQRT17) / 12])


def test_product_state_is_separable():
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0
    verdict = ppt_verdict(rho)
    assert not verdict.inseparable
    assert not verdict.indeterminate
    assert np.max(np.abs(np.array(verdict.spectrum) - np.array([0.0, 0.0, 0.0, 1.0]))) < 1e-12


def test_random_product_states_are_separable(rng):
    for _ in range(20):
        rho = kron(random_density(rng, 1), random_density(rng, 1))
        assert not ppt_verdict(rho).inseparable


def test_duplicator_pair_spectrum_input_independent():
    for theta, phi in [(0.0, 0.0), (0.5, 1.0), (math.pi / 4, math.pi / 2), (1.4, 5.9)]:
        report = run_copier(InputQubit(theta, phi), CopyVariant.DUPLICATOR)
        verdict = ppt_verdict(report.pair_reductions["a2a3"], input_tag=f"{theta},{phi}")
        assert verdict.inseparable
        assert np.max(np.abs(np.array(verdict.spectrum) - DUP_SPECTRUM)) < 1e-12


def test_triplicator_pair_spectrum_real_input():
    for theta in np.linspace(0.0, math.pi / 2.0, 9):
        report = run_copier(InputQubit(float(theta), 0.0), CopyVariant.TRIPLICATOR)
        for label in ("a2a3", "a1a2", "a1a3"):
            verdict = ppt_verdict(report.pair_reductions[label])
            assert verdict.inseparable
            assert np.max(np.abs(np.array(verdict.spectrum) - TRIP_SPECTRUM)) < 1e-12


def test_triplicator_pairs_inseparable_for_complex_inputs(rng):
    for _ in range(25):
        qubit = InputQubit(float(rng.uniform(0, math.pi / 2)), float(rng.uniform(0, 2 * math.pi)))
        report = run_copier(qubit, CopyVariant.TRIPLICATOR)
        assert ppt_verdict(report.pair_reductions["a2a3"]).inseparable


def test_spectrum_invariant_under_transposed_subsystem(rng):
    for _ in range(10):
        rho = random_density(rng, 2)
        s0 = np.array(ppt_verdict(rho, subsystem=0).spectrum)
        s1 = np.array(ppt_verdict(rho, subsystem=1).spectrum)
        assert np.max(np.abs(s0 - s1)) < 1e-10


def test_spectrum_sums_to_one(rng):
    for _ in range(10):
        verdict = ppt_verdict(random_density(rng, 2))
        assert abs(sum(verdict.spectrum) - 1.0) < 1e-10


def test_indeterminate_band_close_to_zero():
    # Werner-like family: min PT eigenvalue is (1 - 3p)/4, tuned into (-1e-10, 0)
    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = 1.0 / math.sqrt(2.0)
    bell_rho = np.outer(bell, bell.conj())
    p = 1.0 / 3.0 + 2e-10 / 3.0
    rho = p * bell_rho + (1.0 - p) * np.eye(4) / 4.0
    verdict = ppt_verdict(rho)
    assert not verdict.inseparable
    assert verdict.indeterminate


def test_ppt_verdict_rejects_invalid_density():
    with pytest.raises(ValueError):
        ppt_verdict(np.eye(4))  # trace 4
    with pytest.raises(ValueError):
        ppt_verdict(np.eye(2) / 2.0)  # one qubit


# ------------------------------------------------------------------ bound

def test_bound_at_basis_input():
    result = negativity_bound_check(InputQubit(0.0, math.pi / 2.0))
    assert abs(result.bound + 1.0 / 6.0) < 1e-15
    assert abs(result.min_eigenvalue + 1.0 / 6.0) < 1e-12
    assert abs(result.gap) < 1e-12
    assert result.satisfied


def test_bound_value_at_balanced_input():
    # |alpha|^2 = 1/2: bound = -(1 + (sqrt(5) - 2))/6 = -(sqrt(5) - 1)/6
    result = negativity_bound_check(InputQubit(math.pi / 4.0, math.pi / 2.0))
    assert abs(result.bound + (SQRT5 - 1.0) / 6.0) < 1e-12
    assert result.satisfied


def test_bound_holds_over_amplitude_grid():
    for theta in np.linspace(0.0, math.pi / 2.0, 50):
        result = negativity_bound_check(InputQubit(float(theta), math.pi / 2.0))
        assert result.min_eigenvalue <= result.bound + 1e-9
        assert result.gap >= -1e-9


def test_bound_requires_quarter_phase():
    with pytest.raises(ValueError, match="pi/2"):
        negativity_bound_check(InputQubit(0.3, 0.0))
    # 3*pi/2 has the same physics and is accepted
    assert negativity_bound_check(InputQubit(0.3, 3.0 * math.pi / 2.0)).satisfied


# ------------------------------------------------------------ correlation

@pytest.fixture(scope="module")
def correlation():
    thetas = np.linspace(0.0, math.pi / 2.0, 6)
    phis = [0.0, math.pi / 4.0, math.pi / 2.0, 3.0 * math.pi / 4.0, math.pi]
    return entanglement_distance_correlation(thetas, phis)


def test_correlation_rows_ordered_theta_major(correlation):
    thetas = [row.theta for row in correlation.rows]
    assert thetas == sorted(thetas)
    assert len(correlation.rows) == 30


def test_correlation_real_phase_rows(correlation):
    for row in correlation.rows:
        if row.phi in (0.0, math.pi):
            assert abs(row.min_eigenvalue + 1.0 / 6.0) < 1e-10
            assert abs(row.d1 - 1.0 / 18.0) < 1e-10
    assert correlation.real_phase_deviation is not None
    assert correlation.real_phase_deviation < 1e-10


def test_correlation_minimum_at_quarter_phase(correlation):
    assert correlation.minimum_at_quarter_phase is True
    for theta in {row.theta for row in correlation.rows}:
        group = [row for row in correlation.rows if row.theta == theta]
        at_quarter = next(r.min_eigenvalue for r in group if r.phi == math.pi / 2.0)
        assert at_quarter <= min(r.min_eigenvalue for r in group) + 1e-12


def test_correlation_distance_tracks_eigenvalue(correlation):
    # rows with a larger d1 never carry a higher (less negative) eigenvalue
    for theta in {row.theta for row in correlation.rows}:
        group = sorted((r for r in correlation.rows if r.theta == theta), key=lambda r: r.d1)
        eigs = [r.min_eigenvalue for r in group]
        for earlier, later in zip(eigs[:-1], eigs[1:]):
            assert later <= earlier + 1e-10


def test_correlation_without_quarter_phase_grid():
    table = entanglement_distance_correlation([0.3], [0.0, math.pi])
    assert table.minimum_at_quarter_phase is None
    assert table.real_phase_deviation < 1e-10


def test_eigenvalue_phase_profile_dense_grid():
    # 100-point phase grid at fixed amplitude: maximum -1/6 at phi in {0, pi},
    # minimum at phi = pi/2 (and its mirror 3*pi/2)
    phis = np.linspace(0.0, 2.0 * math.pi, 100, endpoint=False)
    table = entanglement_distance_correlation([0.6], phis)
    eigs = {row.phi: row.min_eigenvalue for row in table.rows}
    top = max(eigs.values())
    assert abs(top + 1.0 / 6.0) < 1e-10
    assert abs(eigs[0.0] - top) < 1e-12
    assert abs(eigs[phis[50]] - top) < 1e-12  # phi = pi
    bottom = min(eigs.values())
    assert abs(eigs[phis[25]] - bottom) < 1e-12  # phi = pi/2
    assert abs(eigs[phis[75]] - bottom) < 1e-12  # phi = 3*pi/2
    assert bottom < top - 1e-3
