"""Minimum-error discrimination of qubit states.

``min_error_sdp`` solves

    max sum_i p_i Tr(rho_i M_i)  s.t.  M_i >= 0, sum_i M_i = I

through its dual, min Tr Y s.t. Y >= p_i rho_i, using a log-det barrier
path-following Newton method on the four real parameters of Y. On the
central path M_i = mu (Y - p_i rho_i)^{-1} is an exact POVM and the duality
gap is 2 N mu, so every returned optimum carries a checked certificate.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .contextuality import bloch_vector, from_bloch, singular_values
from .errors import InvalidInputError, SolverError
from .kinematics import check_rapidity
from .quadrature import QuadratureGrid
from .reduced_states import LABELS, PaperSetup, boosted_reduced_density, ensemble_mix

SDP_TOL = 1e-6
_LORENTZ = np.diag([1.0, -1.0, -1.0, -1.0])


def _check_hermitian(h):
    h = np.asarray(h, dtype=complex)
    if h.shape != (2, 2):
        raise InvalidInputError(f"expected a 2x2 matrix, got shape {h.shape}")
    scale = max(1.0, float(np.max(np.abs(h))))
    if np.max(np.abs(h - h.conj().T)) > 1e-12 * scale:
        raise InvalidInputError("matrix is not Hermitian")
    return h


def trace_norm(h) -> float:
    """Sum of absolute eigenvalues of a 2x2 Hermitian matrix."""
    h = _check_hermitian(h)
    a, d = h[0, 0].real, h[1, 1].real
    mean = 0.5 * (a + d)
    radius = np.hypot(0.5 * (a - d), abs(h[0, 1]))
    return float(abs(mean + radius) + abs(mean - radius))


def helstrom(rho_a, rho_b) -> float:
    """Optimal success probability for two equiprobable states."""
    return 0.5 + 0.25 * trace_norm(np.asarray(rho_a) - np.asarray(rho_b))


@dataclass(frozen=True)
class DiscriminationProblem:
    states: tuple
    priors: tuple

    def __post_init__(self):
        if len(self.states) < 2:
            raise InvalidInputError("need at least two states")
        if len(self.priors) != len(self.states):
            raise InvalidInputError("need one prior per state")
        priors = np.asarray(self.priors, dtype=float)
        if np.any(priors < 0) or abs(priors.sum() - 1) > 1e-12:
            raise InvalidInputError("priors must be non-negative and sum to 1")

    @classmethod
    def uniform(cls, states) -> DiscriminationProblem:
        n = len(states)
        return cls(tuple(np.asarray(s, dtype=complex) for s in states), (1.0 / n,) * n)


@dataclass
class DiscriminationResult:
    povm: np.ndarray
    p_success: float
    dual_operator: np.ndarray
    duality_gap: float
    iterations: int = 0
    # (dual value, primal value) after each centering step
    history: list = field(default_factory=list)


def _primal(weighted, y, mu):
    """Rescaled central-path POVM and its objective value."""
    dual = from_bloch(y)
    effects = np.array([mu * np.linalg.inv(dual - w) for w in weighted])
    effects = 0.5 * (effects + effects.conj().transpose(0, 2, 1))
    total = effects.sum(axis=0)
    vals, vecs = np.linalg.eigh(total)
    root_inv = vecs @ np.diag(vals**-0.5) @ vecs.conj().T
    effects = np.array([root_inv @ e @ root_inv for e in effects])
    effects = 0.5 * (effects + effects.conj().transpose(0, 2, 1))
    value = float(sum(np.trace(w @ e).real for w, e in zip(weighted, effects)))
    return effects, value


def min_error_sdp(
    problem: DiscriminationProblem,
    tol: float = SDP_TOL,
    mu_final: float = 1e-11,
    max_newton: int = 200,
) -> DiscriminationResult:
    """Optimal POVM for minimum-error discrimination with a dual certificate.

    Raises :class:`SolverError` if the final duality gap is not below ``tol``.
    """
    priors = np.asarray(problem.priors, dtype=float)
    weighted = [p * np.asarray(s, dtype=complex) for p, s in zip(priors, problem.states)]
    centers = np.array([bloch_vector(w) for w in weighted])

    # Strictly feasible start: Y = t I with t above every largest eigenvalue.
    y = np.zeros(4)
    y[0] = np.max(centers[:, 0] + np.linalg.norm(centers[:, 1:], axis=1)) + 1.0
    mu = 0.1 * y[0]

    def slack(y):
        w = y - centers
        u = w[:, 0]
        v = np.linalg.norm(w[:, 1:], axis=1)
        return w, u, (u - v) * (u + v)

    def objective(y, mu):
        _, u, s = slack(y)
        if np.any(u <= 0) or np.any(s <= 0):
            return np.inf
        return y[0] - mu * np.sum(np.log(s))

    history = []
    iterations = 0
    e0 = np.eye(4)[0]
    while True:
        for _ in range(max_newton):
            w, _, s = slack(y)
            jw = w @ _LORENTZ
            grad = e0 - mu * np.sum(2 * jw / s[:, None], axis=0)
            hess = mu * sum(4 * np.outer(a, a) / b**2 - 2 * _LORENTZ / b for a, b in zip(jw, s))
            step = -np.linalg.solve(hess, grad)
            decrement = -grad @ step
            iterations += 1
            if decrement < 1e-20:
                break
            t = 1.0
            f0 = objective(y, mu)
            while objective(y + t * step, mu) > f0 - 0.25 * t * decrement:
                t *= 0.5
                if t < 1e-12:
                    break
            if t < 1e-12:
                break
            y = y + t * step
            if decrement < 1e-18:
                break
        effects, value = _primal(weighted, y, mu)
        history.append((float(y[0]), value))
        if mu <= mu_final:
            break
        mu = max(0.1 * mu, mu_final)

    gap = float(y[0]) - value
    if not (-1e-9 <= gap < tol):
        raise SolverError(f"duality gap {gap:.3e} not below tolerance {tol:g}", gap)
    return DiscriminationResult(
        povm=effects,
        p_success=value,
        dual_operator=from_bloch(y),
        duality_gap=gap,
        iterations=iterations,
        history=history,
    )


@dataclass(frozen=True)
class SweepRow:
    zeta: float
    p_success_four: float
    p_helstrom_two: float
    min_singular_value: float
    status: str = "ok"


def sweep_rapidity(
    setup: PaperSetup,
    zetas,
    grid: QuadratureGrid | None = None,
    tol: float = SDP_TOL,
    priors=None,
) -> list:
    """Four-state SDP, two-ensemble Helstrom value and rank margin at every rapidity.

    ``priors`` weight the four-state problem (uniform by default).

    A failing row is reported with its error in ``status`` and NaN values;
    the remaining rows are still computed.
    """
    grid = setup.grid() if grid is None else grid
    states = setup.states(grid)
    rows = []
    for zeta in zetas:
        try:
            zeta = check_rapidity(zeta)
            taus = [boosted_reduced_density(states[k], zeta, grid, setup.mass) for k in LABELS]
            problem = (
                DiscriminationProblem.uniform(taus)
                if priors is None
                else DiscriminationProblem(tuple(taus), tuple(priors))
            )
            four = min_error_sdp(problem, tol)
            two = helstrom(
                ensemble_mix(taus[:2], [0.5, 0.5]), ensemble_mix(taus[2:], [0.5, 0.5])
            )
            rows.append(SweepRow(zeta, four.p_success, two, float(singular_values(taus)[-1])))
        except (ArithmeticError, ValueError, FloatingPointError) as exc:
            nan = float("nan")
            rows.append(SweepRow(float(zeta), nan, nan, nan, f"{type(exc).__name__}: {exc}"))
    return rows
