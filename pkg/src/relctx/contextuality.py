"""Preparation (non-)contextuality of qubit state sets.

Linear independence of the density matrices is sufficient for
non-contextuality, and for pure states also necessary. Independence is
tested on Bloch vectors (Tr rho, Tr rho X, Tr rho Y, Tr rho Z). For an
independent set of four states the dual frame {F_j}, Tr(tau_i F_j) =
delta_ij, is an explicit pseudo-POVM realizing the ontological model with
sigma_lambda = tau_lambda.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, SingularFrameError

RANK_TOL = 1e-9
MAX_CONDITION = 1e12

IDENTITY = np.eye(2, dtype=complex)
PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


def bloch_vector(h) -> np.ndarray:
    """Real coefficients (r0, rx, ry, rz) with h = (r0 I + rx X + ry Y + rz Z) / 2."""
    return np.einsum("kij,ji->k", PAULI, np.asarray(h, dtype=complex)).real


def from_bloch(r) -> np.ndarray:
    return 0.5 * np.einsum("k,kij->ij", np.asarray(r, dtype=float), PAULI)


def bloch_matrix(states) -> np.ndarray:
    return np.array([bloch_vector(s) for s in states])


def singular_values(states) -> np.ndarray:
    return np.linalg.svd(bloch_matrix(states), compute_uv=False)


def gram_rank(states, tol: float = RANK_TOL) -> int:
    """Number of singular values above tol * largest for the Bloch-vectorized set."""
    if len(states) == 0:
        raise InvalidInputError("gram_rank needs at least one state")
    sv = singular_values(states)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def is_noncontextual_pure(states, tol: float = RANK_TOL) -> bool:
    """Pure-state criterion: non-contextual iff the density matrices are independent."""
    for s in states:
        s = np.asarray(s)
        if np.trace(s @ s).real <= 1 - 1e-8:
            raise InvalidInputError("is_noncontextual_pure applies to pure states only")
    return gram_rank(states, tol) == len(states)


def hermitian_from_params(a, b, c, d) -> np.ndarray:
    """F(a, b, c, d) = [[a, b + ic], [b - ic, d]]."""
    return np.array([[a, b + 1j * c], [b - 1j * c, d]], dtype=complex)


@dataclass(frozen=True)
class DualFrame:
    operators: np.ndarray  # (4, 2, 2)
    states: np.ndarray  # (4, 2, 2), the tau_i the frame is dual to
    residual: float
    condition: float

    @property
    def params(self) -> np.ndarray:
        """(a, b, c, d) of each operator, shape (4, 4)."""
        f = self.operators
        return np.stack([f[:, 0, 0].real, f[:, 0, 1].real, f[:, 0, 1].imag, f[:, 1, 1].real], axis=1)


def _trace_rows(states) -> np.ndarray:
    # Tr(tau F(a,b,c,d)) = tau00 a + 2 Re(tau01) b + 2 Im(tau01) c + tau11 d
    s = np.asarray(states, dtype=complex)
    return np.stack(
        [s[:, 0, 0].real, 2 * s[:, 0, 1].real, 2 * s[:, 0, 1].imag, s[:, 1, 1].real], axis=1
    )


def build_dual_frame(states, tol: float = RANK_TOL, max_condition: float = MAX_CONDITION) -> DualFrame:
    """Solve for F_1..F_3 with Tr(tau_i F_j) = delta_ij; F_4 = I - F_1 - F_2 - F_3.

    The 12 real unknowns (a, b, c, d per operator) satisfy 12 equations
    (i = 1..4, j = 1..3). The j = 4 relations are implied by unit traces and
    enter only the reported residual.
    """
    states = np.asarray(states, dtype=complex)
    if states.shape != (4, 2, 2):
        raise InvalidInputError("build_dual_frame needs exactly four 2x2 states")
    rank = gram_rank(states, tol)
    if rank < 4:
        raise SingularFrameError(f"states are linearly dependent (rank {rank} of 4)")

    rows = _trace_rows(states)
    system = np.kron(np.eye(3), rows)
    rhs = np.concatenate([np.eye(4)[:, j] for j in range(3)])
    condition = float(np.linalg.cond(system))
    if not condition < max_condition:
        raise SingularFrameError(f"dual-frame system condition number {condition:.3e}", condition)
    x = np.linalg.solve(system, rhs)
    r = rhs - system @ x
    if np.max(np.abs(r)) > 1e-10:
        x = x + np.linalg.solve(system, r)

    ops = [hermitian_from_params(*x[4 * j : 4 * j + 4]) for j in range(3)]
    ops.append(IDENTITY - ops[0] - ops[1] - ops[2])
    ops = np.array(ops)
    table = np.einsum("iab,jba->ij", states, ops).real
    residual = float(np.max(np.abs(table - np.eye(4))))
    return DualFrame(ops, states, residual, condition)


@dataclass(frozen=True)
class OntologicalReport:
    max_violation: float
    min_weight: float  # min_{i, lambda} Tr(rho_i F_lambda)
    max_normalization_error: float  # max_i |sum_lambda Tr(rho_i F_lambda) - 1|


def verify_ontological_model(states, frame: DualFrame, measurements) -> OntologicalReport:
    """Check Tr(rho_i M_k) = sum_l Tr(rho_i F_l) Tr(tau_l M_k) over every effect supplied.

    ``measurements`` is an iterable of POVMs, each a sequence of 2x2 effects.
    """
    states = np.asarray(states, dtype=complex)
    weights = np.einsum("iab,lba->il", states, frame.operators).real
    worst = 0.0
    for povm in measurements:
        effects = np.asarray(povm, dtype=complex)
        direct = np.einsum("iab,kba->ik", states, effects).real
        response = np.einsum("lab,kba->lk", frame.states, effects).real
        worst = max(worst, float(np.max(np.abs(direct - weights @ response))))
    return OntologicalReport(
        max_violation=worst,
        min_weight=float(weights.min()),
        max_normalization_error=float(np.max(np.abs(weights.sum(axis=1) - 1))),
    )


def random_projective_povms(count: int, seed: int) -> list:
    """``count`` two-outcome projective measurements along uniform random Bloch directions."""
    rng = np.random.default_rng(seed)
    dirs = rng.normal(size=(count, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    povms = []
    for n in dirs:
        proj = from_bloch(np.concatenate([[1.0], n]))
        povms.append(np.array([proj, IDENTITY - proj]))
    return povms
