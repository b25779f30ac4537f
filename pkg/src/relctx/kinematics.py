"""Single-particle kinematics for boosts along z and the spin-1/2 Wigner rotation.

All functions accept scalars or broadcastable numpy arrays. Natural units
(c = 1); angles in radians.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

MAX_RAPIDITY = 20.0


def energy(p, m):
    """Relativistic energy sqrt(m^2 + p^2)."""
    p = np.asarray(p, dtype=float)
    m = np.asarray(m, dtype=float)
    if np.any(m <= 0) or np.any(p < 0):
        raise InvalidInputError("energy requires p >= 0 and m > 0")
    out = np.hypot(m, p)
    return float(out) if out.ndim == 0 else out


def check_rapidity(zeta) -> float:
    zeta = float(zeta)
    if not np.isfinite(zeta) or abs(zeta) > MAX_RAPIDITY:
        raise InvalidInputError(
            f"rapidity {zeta!r} outside supported range [-{MAX_RAPIDITY}, {MAX_RAPIDITY}]"
        )
    return zeta


@dataclass(frozen=True)
class MomentumPoint:
    """Momentum (p, theta, phi) of a particle with rest mass m.

    Fields may be numpy arrays of a common broadcast shape; quadrature grids
    pass whole meshes through a single point object.
    """

    p: float | np.ndarray
    theta: float | np.ndarray
    phi: float | np.ndarray
    m: float = 1.0

    def __post_init__(self):
        if np.any(np.asarray(self.m) <= 0):
            raise InvalidInputError("mass must be positive")
        if np.any(np.asarray(self.p) < 0):
            raise InvalidInputError("momentum magnitude must be non-negative")
        theta = np.asarray(self.theta)
        if np.any(theta < 0) or np.any(theta > np.pi):
            raise InvalidInputError("theta must lie in [0, pi]")
        phi = np.asarray(self.phi)
        if np.any(phi < 0) or np.any(phi >= 2 * np.pi):
            raise InvalidInputError("phi must lie in [0, 2*pi)")

    @property
    def energy(self):
        return energy(self.p, self.m)

    @property
    def p_z(self):
        return self.p * np.cos(self.theta)

    @property
    def p_perp(self):
        return self.p * np.sin(self.theta)


def _light_cone(point: MomentumPoint):
    # E + p_z and E - p_z, each computed without cancellation.
    e = np.hypot(point.m, point.p)
    pz = point.p_z
    big = e + np.abs(pz)
    small = (point.m**2 + point.p_perp**2) / big
    plus = np.where(pz >= 0, big, small)
    minus = np.where(pz >= 0, small, big)
    return e, plus, minus


def boosted_energy(point: MomentumPoint, zeta):
    """Energy E cosh(zeta) + p cos(theta) sinh(zeta) seen after a z-boost.

    Evaluated as (e^zeta (E + p_z) + e^-zeta (E - p_z)) / 2, a sum of two
    positive terms, so the result stays >= m without cancellation.
    """
    zeta = check_rapidity(zeta)
    if zeta == 0.0:
        return point.energy
    _, plus, minus = _light_cone(point)
    out = 0.5 * (np.exp(zeta) * plus + np.exp(-zeta) * minus)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class WignerHalf:
    """Spin-1/2 little-group rotation [[a, b e^{-i phi}], [-b e^{i phi}, a]]."""

    alpha: float | np.ndarray
    beta: float | np.ndarray
    phi: float | np.ndarray

    def matrix(self) -> np.ndarray:
        """Complex array of shape (2, 2) + broadcast shape of the fields."""
        alpha, beta, phi = np.broadcast_arrays(
            np.asarray(self.alpha, dtype=float),
            np.asarray(self.beta, dtype=float),
            np.asarray(self.phi, dtype=float),
        )
        phase = np.exp(1j * phi)
        return np.array(
            [[alpha + 0j, beta * phase.conj()], [-beta * phase, alpha + 0j]]
        )


def wigner_half(point: MomentumPoint, zeta) -> WignerHalf:
    """Wigner rotation for a massive spin-1/2 particle under a z-boost of rapidity zeta."""
    zeta = check_rapidity(zeta)
    if zeta == 0.0:
        shape = np.broadcast(point.p, point.theta, point.phi).shape
        if shape == ():
            return WignerHalf(1.0, 0.0, float(point.phi))
        return WignerHalf(np.ones(shape), np.zeros(shape), np.broadcast_to(point.phi, shape))
    e, plus, minus = _light_cone(point)
    m = point.m
    e_boost = 0.5 * (np.exp(zeta) * plus + np.exp(-zeta) * minus)
    denom = np.sqrt((e + m) * (e_boost + m))
    # (E+m) cosh(zeta/2) + p_z sinh(zeta/2), split into two positive terms.
    num = 0.5 * (np.exp(0.5 * zeta) * (m + plus) + np.exp(-0.5 * zeta) * (m + minus))
    alpha = num / denom
    beta = point.p_perp * np.sinh(0.5 * zeta) / denom
    if np.ndim(alpha) == 0:
        return WignerHalf(float(alpha), float(beta), float(point.phi))
    return WignerHalf(alpha, beta, point.phi)
