"""Reduced spin density matrices in the rest frame and after a z-boost.

Boosted states are integrated over the original momentum variable: since
the measure is invariant, tracing out momentum after U(Lambda) gives

    tau = int dmu(p) D(W(Lambda, p)) chi(p) chi(p)^dagger D(W(Lambda, p))^dagger

with chi(p) = (amp_up psi_up(p), amp_down psi_down(p)).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, UnnormalizedProfileError
from .kinematics import check_rapidity, wigner_half
from .quadrature import QuadratureGrid, default_grid, integrate_complex
from .wavefunctions import Profile, deformed_gaussian, eval_profile, normalize_profile

UP, DOWN, PLUS, MINUS = "up", "down", "plus", "minus"
LABELS = (UP, DOWN, PLUS, MINUS)
_R = 1 / np.sqrt(2)
AMPLITUDES = {UP: (1.0, 0.0), DOWN: (0.0, 1.0), PLUS: (_R, _R), MINUS: (_R, -_R)}


@dataclass(frozen=True)
class RelativisticQubit:
    """amp_up |up> psi_up(p) + amp_down |down> psi_down(p), integrated over dmu(p)."""

    amp_up: complex
    amp_down: complex
    profile_up: Profile
    profile_down: Profile

    def __post_init__(self):
        total = abs(self.amp_up) ** 2 + abs(self.amp_down) ** 2
        if abs(total - 1) > 1e-12:
            raise InvalidInputError(f"spin amplitudes have norm^2 {total!r}, expected 1")
        if not (self.profile_up.normalized and self.profile_down.normalized):
            raise UnnormalizedProfileError("both profiles must be normalized")

    @classmethod
    def single(cls, profile: Profile, amp_up, amp_down) -> RelativisticQubit:
        """State whose spin and momentum factorize with one shared profile."""
        return cls(amp_up, amp_down, profile, profile)


@dataclass(frozen=True)
class BoostIntegrals:
    """Weighted averages of Wigner-matrix products over |psi|^2 dmu.

    I1 = <alpha^2>, I2 = <beta^2>, I3 = <D_du^2> = <beta^2 e^{2i phi}>,
    I4 = <D_du D_uu> = <-alpha beta e^{i phi}>.
    """

    I1: float
    I2: float
    I3: complex
    I4: complex


def _spinor(state: RelativisticQubit, point):
    up = state.amp_up * eval_profile(state.profile_up, point)
    down = state.amp_down * eval_profile(state.profile_down, point)
    return np.array(np.broadcast_arrays(up + 0j, down + 0j))


def _hermitize(m):
    out = np.empty((2, 2), dtype=complex)
    out[0, 0] = m[0, 0].real
    out[1, 1] = m[1, 1].real
    out[0, 1] = m[0, 1]
    out[1, 0] = np.conj(m[0, 1])
    return out


def _outer_integral(vec_fn, grid, mass):
    def integrand(point):
        v = vec_fn(point)
        return v[:, None] * v[None, :].conj()

    return _hermitize(integrate_complex(integrand, grid, mass))


def rest_reduced_density(state: RelativisticQubit, grid: QuadratureGrid, mass: float = 1.0):
    """Spin state left after tracing out momentum in the preparation frame."""
    return _outer_integral(lambda q: _spinor(state, q), grid, mass)


def boosted_reduced_density(
    state: RelativisticQubit, zeta, grid: QuadratureGrid, mass: float = 1.0
):
    """Spin state seen by an observer boosted along z with rapidity ``zeta``."""
    zeta = check_rapidity(zeta)

    def rotated(point):
        d = wigner_half(point, zeta).matrix()
        chi = _spinor(state, point)
        return np.einsum("ij...,j...->i...", d, chi)

    return _outer_integral(rotated, grid, mass)


def boost_integrals(profile: Profile, zeta, grid: QuadratureGrid, mass: float = 1.0):
    zeta = check_rapidity(zeta)

    def integrand(point):
        w = wigner_half(point, zeta)
        weight = eval_profile(profile, point) ** 2
        phase = np.exp(1j * point.phi)
        return np.array(
            [
                weight * w.alpha**2,
                weight * w.beta**2,
                weight * w.beta**2 * phase**2,
                -weight * w.alpha * w.beta * phase,
            ]
        )

    i1, i2, i3, i4 = integrate_complex(integrand, grid, mass)
    return BoostIntegrals(float(i1.real), float(i2.real), complex(i3), complex(i4))


def assemble_tau(label: str, ints: BoostIntegrals) -> np.ndarray:
    """Boosted matrix of one of the four basis-aligned states, built from its integrals.

    For the up/down states the off-diagonal integral is the D_du D_uu average
    (``I4`` here); the +/- states also need ``I3``.
    """
    i1, i2, i3, i4 = ints.I1, ints.I2, ints.I3, ints.I4
    if label == UP:
        return np.array([[i1, np.conj(i4)], [i4, i2]], dtype=complex)
    if label == DOWN:
        return np.array([[i2, -np.conj(i4)], [-i4, i1]], dtype=complex)
    re4 = 2 * i4.real
    if label == PLUS:
        return 0.5 * np.array([[1 - re4, i1 - np.conj(i3)], [i1 - i3, 1 + re4]])
    if label == MINUS:
        return 0.5 * np.array([[1 + re4, np.conj(i3) - i1], [i3 - i1, 1 - re4]])
    raise InvalidInputError(f"unknown state label {label!r}")


def ensemble_mix(states, weights) -> np.ndarray:
    """Convex combination sum_i w_i rho_i."""
    weights = np.asarray(weights, dtype=float)
    if len(weights) != len(states):
        raise InvalidInputError("need one weight per state")
    if np.any(weights < 0) or abs(weights.sum() - 1) > 1e-12:
        raise InvalidInputError("weights must be non-negative and sum to 1")
    return np.einsum("i,ijk->jk", weights, np.asarray(states, dtype=complex))


def check_density(rho, trace_tol=1e-8, psd_tol=1e-10) -> None:
    """Raise unless rho is a Hermitian, unit-trace, positive semidefinite 2x2 matrix."""
    rho = np.asarray(rho)
    if rho.shape != (2, 2):
        raise InvalidInputError(f"expected a 2x2 matrix, got shape {rho.shape}")
    if not np.allclose(rho, rho.conj().T, rtol=0, atol=1e-14):
        raise InvalidInputError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1) > trace_tol:
        raise InvalidInputError(f"trace {np.trace(rho).real!r} differs from 1")
    if np.linalg.eigvalsh(rho).min() < -psd_tol:
        raise InvalidInputError("density matrix has a negative eigenvalue")


def purity(rho) -> float:
    rho = np.asarray(rho)
    return float(np.trace(rho @ rho).real)


@dataclass(frozen=True)
class PaperSetup:
    """Four basis-aligned states, each with its own deformed Gaussian profile.

    Defaults are the parameters used for the discrimination curves.
    """

    mass: float = 1.0
    epsilon: float = 0.1
    sigma_up: float = 2.0
    sigma_down: float = 4.0
    sigma_plus: float = 3.0
    sigma_minus: float = 6.0

    @property
    def sigmas(self):
        return {UP: self.sigma_up, DOWN: self.sigma_down, PLUS: self.sigma_plus, MINUS: self.sigma_minus}

    def grid(self) -> QuadratureGrid:
        return default_grid(self.mass, self.sigmas.values())

    def profiles(self, grid: QuadratureGrid) -> dict:
        return {
            label: normalize_profile(deformed_gaussian(sigma, self.epsilon), grid, self.mass)
            for label, sigma in self.sigmas.items()
        }

    def states(self, grid: QuadratureGrid) -> dict:
        return {
            label: RelativisticQubit.single(profile, *AMPLITUDES[label])
            for label, profile in self.profiles(grid).items()
        }


def paper_densities(setup: PaperSetup, zeta, grid: QuadratureGrid | None = None) -> list:
    """[tau_up, tau_down, tau_plus, tau_minus] at rapidity zeta (rest frame for zeta=0)."""
    grid = setup.grid() if grid is None else grid
    states = setup.states(grid)
    return [boosted_reduced_density(states[k], zeta, grid, setup.mass) for k in LABELS]
