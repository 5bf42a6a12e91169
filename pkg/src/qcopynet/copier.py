"""The duplicator and triplicator networks and their output analysis.

Both machines share one three-qubit circuit: a five-gate preparation stage
acting on the two blank qubits (a2, a3), followed by four CNOTs that spread
the original qubit (a1) over all three.  The two variants differ only in the
sign of the middle preparation angle.  ``run_copier`` executes the circuit
and collects every reduced state, scaling fit, fidelity split, and
Hilbert-Schmidt distance into a CopyReport.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import linalg
from .gates import CNOT, GateNetwork, PureState, Rotation, density_of, run_network

__all__ = [
    "CopyVariant",
    "InputQubit",
    "PreparationAngles",
    "CopyReport",
    "AngleSolverError",
    "QUBIT_LABELS",
    "PAIR_LABELS",
    "PAIR_QUBITS",
    "preparation_amplitudes",
    "preparation_angles",
    "amplitudes_from_angles",
    "solve_preparation_angles",
    "preparation_network",
    "copy_stage_network",
    "full_network",
    "run_copier",
    "ideal_density",
    "scaling_decompose",
    "fidelity_split",
    "original_transpose_check",
    "transpose_expectation_residual",
]

QUBIT_LABELS = ("a1", "a2", "a3")
PAIR_LABELS = ("a2a3", "a1a2", "a1a3")
PAIR_QUBITS = {"a2a3": (1, 2), "a1a2": (0, 1), "a1a3": (0, 2)}

SCALING_RESIDUAL_TOL = 1e-10
_PURITY_TOL = 1e-10


class CopyVariant(Enum):
    DUPLICATOR = "duplicator"
    TRIPLICATOR = "triplicator"


@dataclass(frozen=True)
class InputQubit:
    """The qubit to be copied: alpha|0> + beta|1> with alpha = sin(theta) e^{i phi}, beta = cos(theta).

    The parametrization keeps the state normalized by construction, with
    beta real and non-negative for theta in [0, pi/2].
    """

    theta: float
    phi: float = 0.0

    @property
    def alpha(self) -> complex:
        return math.sin(self.theta) * cmath.exp(1j * self.phi)

    @property
    def beta(self) -> float:
        return math.cos(self.theta)

    def state(self) -> PureState:
        return PureState(np.array([self.alpha, self.beta], dtype=complex))

    def orthogonal_state(self) -> PureState:
        """The state conj(beta)|0> - conj(alpha)|1>, orthogonal to state()."""
        return PureState(np.array([np.conj(self.beta), -np.conj(self.alpha)], dtype=complex))

    def density(self) -> np.ndarray:
        return density_of(self.state())

    @classmethod
    def from_amplitudes(cls, alpha: complex, beta: complex, *, norm_tol: float = 1e-9) -> "InputQubit":
        """Build from raw amplitudes, factoring out the global phase.

        The amplitudes must be normalized within norm_tol; the returned
        qubit describes the same physical state with beta real >= 0.
        """
        alpha = complex(alpha)
        beta = complex(beta)
        norm = math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
        if abs(norm - 1.0) > norm_tol:
            raise ValueError(f"amplitudes are not normalized (norm {norm!r})")
        alpha /= norm
        beta /= norm
        if abs(beta) > 1e-15:
            phase = beta / abs(beta)
            alpha *= np.conj(phase)
            beta = abs(beta)
        theta = math.atan2(abs(alpha), beta.real)
        phi = cmath.phase(alpha) if abs(alpha) > 1e-15 else 0.0
        return cls(theta=theta, phi=phi)


@dataclass(frozen=True)
class PreparationAngles:
    """The three rotation angles of the preparation stage."""

    theta1: float
    theta2: float
    theta3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.theta1, self.theta2, self.theta3])


class AngleSolverError(ValueError):
    """No preparation angles reproduced the target amplitudes; carries the best residual seen."""

    def __init__(self, best_residual: float):
        super().__init__(
            f"no angle solution found within tolerance (best residual {best_residual:.3e})"
        )
        self.best_residual = best_residual


_THETA2_MAGNITUDE = math.asin(math.sqrt(0.5 - math.sqrt(2.0) / 3.0))

_DUPLICATOR_AMPLITUDES = np.array([2.0, 1.0, 1.0, 0.0]) / math.sqrt(6.0)
_TRIPLICATOR_AMPLITUDES = np.array([3.0, 1.0, 1.0, 1.0]) / math.sqrt(12.0)


def preparation_amplitudes(variant: CopyVariant) -> np.ndarray:
    """Target blank-qubit amplitudes (|00>, |01>, |10>, |11>) for a variant."""
    if variant is CopyVariant.DUPLICATOR:
        return _DUPLICATOR_AMPLITUDES.copy()
    return _TRIPLICATOR_AMPLITUDES.copy()


def preparation_angles(variant: CopyVariant) -> PreparationAngles:
    """Closed-form preparation angles; the variants differ only in the sign of theta2."""
    sign = -1.0 if variant is CopyVariant.DUPLICATOR else 1.0
    return PreparationAngles(math.pi / 8.0, sign * _THETA2_MAGNITUDE, math.pi / 8.0)


def amplitudes_from_angles(angles: PreparationAngles) -> np.ndarray:
    """Amplitudes produced on |00> by the preparation stage with the given angles."""
    c1, s1 = math.cos(angles.theta1), math.sin(angles.theta1)
    c2, s2 = math.cos(angles.theta2), math.sin(angles.theta2)
    c3, s3 = math.cos(angles.theta3), math.sin(angles.theta3)
    return np.array(
        [
            c1 * c2 * c3 + s1 * s2 * s3,
            -c1 * s2 * s3 + s1 * c2 * c3,
            c1 * c2 * s3 - s1 * s2 * c3,
            c1 * s2 * c3 + s1 * c2 * s3,
        ]
    )


def _angles_jacobian(theta: np.ndarray) -> np.ndarray:
    c1, s1 = math.cos(theta[0]), math.sin(theta[0])
    c2, s2 = math.cos(theta[1]), math.sin(theta[1])
    c3, s3 = math.cos(theta[2]), math.sin(theta[2])
    return np.array(
        [
            [
                -s1 * c2 * c3 + c1 * s2 * s3,
                -c1 * s2 * c3 + s1 * c2 * s3,
                -c1 * c2 * s3 + s1 * s2 * c3,
            ],
            [
                s1 * s2 * s3 + c1 * c2 * c3,
                -c1 * c2 * s3 - s1 * s2 * c3,
                -c1 * s2 * c3 - s1 * c2 * s3,
            ],
            [
                -s1 * c2 * s3 - c1 * s2 * c3,
                -c1 * s2 * s3 - s1 * c2 * c3,
                c1 * c2 * c3 + s1 * s2 * s3,
            ],
            [
                -s1 * s2 * c3 + c1 * c2 * s3,
                c1 * c2 * c3 + s1 * s2 * s3,
                -c1 * s2 * s3 + s1 * c2 * c3,
            ],
        ]
    )


def _wrap_angle(x: float) -> float:
    return math.remainder(x, 2.0 * math.pi)


def _lattice_starts() -> list[np.ndarray]:
    # 4 x 2 x 2 grid over [-pi, pi)^3, offset off the symmetry points where
    # the amplitude map's Jacobian loses rank and local steps stall.
    def axis(m: int) -> list[float]:
        return [-math.pi + 2.0 * math.pi * (i + 0.37) / m for i in range(m)]

    return [np.array(s) for s in itertools.product(axis(4), axis(2), axis(2))]


def solve_preparation_angles(
    c,
    *,
    residual_tol: float = 1e-10,
    max_iterations: int = 80,
) -> PreparationAngles:
    """Solve for rotation angles whose preparation-stage image matches ``c``.

    Damped Gauss-Newton iteration (with a Levenberg-Marquardt fallback when
    a plain step fails to improve) from 16 deterministic lattice starts over
    [-pi, pi)^3.  Solutions come in symmetric families (for instance
    (t1 + pi, t2, t3 + pi) maps to the same amplitudes); the representative
    with the smallest Euclidean norm is returned.  Raises AngleSolverError
    with the best residual seen if no start converges.
    """
    c = np.asarray(c, dtype=float)
    if c.shape != (4,):
        raise ValueError("expected four target amplitudes")
    if abs(float(np.sum(c * c)) - 1.0) > 1e-12:
        raise ValueError("target amplitudes must have unit sum of squares")

    solutions: list[np.ndarray] = []
    best_residual = math.inf
    for start in _lattice_starts():
        theta = start.copy()
        residual = amplitudes_from_angles(PreparationAngles(*theta)) - c
        # steps are accepted on the 2-norm (what Gauss-Newton descends);
        # convergence and reporting use the max-norm contract
        err = float(np.linalg.norm(residual))
        for _ in range(max_iterations):
            if float(np.max(np.abs(residual))) <= residual_tol * 0.01:
                break
            jac = _angles_jacobian(theta)
            damping = 0.0
            improved = False
            for _ in range(25):
                if damping == 0.0:
                    step, *_ = np.linalg.lstsq(jac, -residual, rcond=None)
                else:
                    normal = jac.T @ jac + damping * np.eye(3)
                    step = np.linalg.solve(normal, -jac.T @ residual)
                trial = theta + step
                trial_residual = amplitudes_from_angles(PreparationAngles(*trial)) - c
                trial_err = float(np.linalg.norm(trial_residual))
                if trial_err < err:
                    theta, residual, err = trial, trial_residual, trial_err
                    improved = True
                    break
                damping = 1e-4 if damping == 0.0 else damping * 8.0
            if not improved:
                break
        max_residual = float(np.max(np.abs(residual)))
        best_residual = min(best_residual, max_residual)
        if max_residual <= residual_tol:
            solutions.append(np.array([_wrap_angle(t) for t in theta]))
    if not solutions:
        raise AngleSolverError(best_residual)
    solutions.sort(key=lambda t: (float(np.linalg.norm(t)), tuple(t)))
    return PreparationAngles(*(float(t) for t in solutions[0]))


def preparation_network(angles: PreparationAngles, qubits: tuple[int, int] = (0, 1)) -> GateNetwork:
    """The five-gate preparation stage on the (a2, a3) qubit pair.

    ``qubits`` names the register indices playing the roles of a2 and a3;
    the default runs the stage on a bare two-qubit register.
    """
    q2, q3 = qubits
    return GateNetwork(
        (
            Rotation(q2, angles.theta1),
            CNOT(q2, q3),
            Rotation(q3, angles.theta2),
            CNOT(q3, q2),
            Rotation(q2, angles.theta3),
        )
    )


def copy_stage_network(qubits: tuple[int, int, int] = (0, 1, 2)) -> GateNetwork:
    """The four-CNOT copying stage on (a1, a2, a3), first gate applied first."""
    a1, a2, a3 = qubits
    return GateNetwork((CNOT(a1, a2), CNOT(a1, a3), CNOT(a2, a1), CNOT(a3, a1)))


def full_network(variant: CopyVariant) -> GateNetwork:
    """Preparation plus copying on the standard three-qubit register."""
    return preparation_network(preparation_angles(variant), qubits=(1, 2)) + copy_stage_network()


@dataclass(frozen=True)
class CopyReport:
    """Everything measured on one copier run.

    Reduced matrices are keyed 'a1', 'a2', 'a3' for single qubits and
    'a2a3', 'a1a2', 'a1a3' for pairs (the first-listed qubit is the
    high-order subsystem).  ``scaling`` holds the fitted mixing factor per
    qubit, or None where the reduction has no such form.  ``fidelity``
    holds (weight on the input state, weight on its orthogonal complement)
    per qubit.  ``d3`` is only set for the triplicator.
    """

    variant: CopyVariant
    input: InputQubit
    output_state: PureState
    qubit_reductions: dict[str, np.ndarray]
    pair_reductions: dict[str, np.ndarray]
    scaling: dict[str, float | None]
    fidelity: dict[str, tuple[float, float]]
    d1: dict[str, float]
    d2: dict[str, float]
    d3: float | None


def ideal_density(input_qubit: InputQubit, n: int) -> np.ndarray:
    """The would-be perfect output (|psi><psi|)^(tensor n) for n in {1, 2, 3}."""
    if n not in (1, 2, 3):
        raise ValueError("copy count must be 1, 2 or 3")
    rho = input_qubit.density()
    out = rho
    for _ in range(n - 1):
        out = linalg.kron(out, rho)
    return out


def scaling_decompose(
    rho_out,
    rho_id,
    *,
    residual_tol: float = SCALING_RESIDUAL_TOL,
) -> float | None:
    """Fit rho_out = s * rho_id + (1 - s)/2 * I on one qubit.

    Returns the least-squares s when the fit is exact within residual_tol,
    None otherwise.  rho_id must be pure.
    """
    rho_out = np.asarray(rho_out, dtype=complex)
    rho_id = np.asarray(rho_id, dtype=complex)
    if rho_out.shape != (2, 2) or rho_id.shape != (2, 2):
        raise ValueError("scaling decomposition applies to single-qubit matrices")
    purity = float(np.trace(rho_id @ rho_id).real)
    if purity < 1.0 - _PURITY_TOL:
        raise ValueError(f"reference state is not pure (purity {purity!r})")
    eye = np.eye(2)
    direction = rho_id - eye / 2.0
    offset = rho_out - eye / 2.0
    s = float(np.trace(offset @ direction).real / np.trace(direction @ direction).real)
    residual = linalg.hs_distance(rho_out, s * rho_id + (1.0 - s) / 2.0 * eye)
    if residual > residual_tol:
        return None
    return s


def fidelity_split(rho_out, input_qubit: InputQubit) -> tuple[float, float]:
    """Weights of a single-qubit state on the input state and its orthogonal complement."""
    rho_out = np.asarray(rho_out, dtype=complex)
    if rho_out.shape != (2, 2):
        raise ValueError("fidelity split applies to single-qubit matrices")
    psi = input_qubit.state().amplitudes
    perp = input_qubit.orthogonal_state().amplitudes
    p_ideal = float(np.real(psi.conj() @ rho_out @ psi))
    p_orth = float(np.real(perp.conj() @ rho_out @ perp))
    return p_ideal, p_orth


def run_copier(input_qubit: InputQubit, variant: CopyVariant) -> CopyReport:
    """Run the copying network on the input qubit and characterize the output."""
    init = np.zeros(8, dtype=complex)
    init[0b000] = input_qubit.alpha
    init[0b100] = input_qubit.beta
    out = run_network(PureState(init), full_network(variant))
    rho = density_of(out)

    ideal1 = input_qubit.density()
    ideal2 = linalg.kron(ideal1, ideal1)
    ideal3 = linalg.kron(ideal2, ideal1)

    singles = {label: linalg.partial_trace(rho, (i,)) for i, label in enumerate(QUBIT_LABELS)}
    pairs = {label: linalg.partial_trace(rho, PAIR_QUBITS[label]) for label in PAIR_LABELS}

    return CopyReport(
        variant=variant,
        input=input_qubit,
        output_state=out,
        qubit_reductions=singles,
        pair_reductions=pairs,
        scaling={label: scaling_decompose(m, ideal1) for label, m in singles.items()},
        fidelity={label: fidelity_split(m, input_qubit) for label, m in singles.items()},
        d1={label: linalg.hs_distance(m, ideal1) for label, m in singles.items()},
        d2={label: linalg.hs_distance(m, ideal2) for label, m in pairs.items()},
        d3=linalg.hs_distance(rho, ideal3) if variant is CopyVariant.TRIPLICATOR else None,
    )


def original_transpose_check(report: CopyReport, input_qubit: InputQubit | None = None) -> tuple[bool, float]:
    """Check the duplicator law for the original qubit after copying.

    The original ends up in transpose(rho_in)/3 + I/3.  Returns (holds,
    max entry deviation); the tolerance is 1e-10.
    """
    if report.variant is not CopyVariant.DUPLICATOR:
        raise ValueError("the transpose law applies to duplicator runs")
    if input_qubit is None:
        input_qubit = report.input
    expected = input_qubit.density().T / 3.0 + np.eye(2) / 3.0
    residual = float(np.max(np.abs(report.qubit_reductions["a1"] - expected)))
    return residual <= 1e-10, residual


def transpose_expectation_residual(rho, observable) -> float:
    """|Tr(rho A) - Tr(rho^T A^T)|, zero for any operators of equal shape.

    This identity is what lets expectation values of the original qubit be
    recovered after copying: measure the transposed observable instead.
    """
    rho = np.asarray(rho, dtype=complex)
    observable = np.asarray(observable, dtype=complex)
    lhs = complex(np.trace(rho @ observable))
    rhs = complex(np.trace(rho.T @ observable.T))
    return abs(lhs - rhs)
