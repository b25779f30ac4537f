"""Tensor-product quadrature over momentum space with the invariant measure.

Radial and polar directions use Gauss-Legendre rules on [0, p_max] and
[0, pi]; the azimuth uses the uniform periodic (trapezoid) rule, which
integrates e^{ik phi} exactly for |k| < phi_nodes.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .errors import InvalidInputError
from .kinematics import MomentumPoint, energy

TAIL_WIDTHS = 8.0


@dataclass(frozen=True)
class QuadratureGrid:
    p_max: float
    p_nodes: int = 64
    theta_nodes: int = 64
    phi_nodes: int = 32

    def __post_init__(self):
        if min(self.p_nodes, self.theta_nodes, self.phi_nodes) < 2:
            raise InvalidInputError("every node count must be >= 2")
        if not self.p_max > 0:
            raise InvalidInputError("p_max must be positive")

    def doubled(self) -> QuadratureGrid:
        return replace(
            self,
            p_nodes=2 * self.p_nodes,
            theta_nodes=2 * self.theta_nodes,
            phi_nodes=2 * self.phi_nodes,
        )


def default_grid(mass: float, sigmas) -> QuadratureGrid:
    """Grid with the default node counts and p_max = m + 8 max(sigma)."""
    return QuadratureGrid(p_max=mass + TAIL_WIDTHS * max(sigmas))


def measure_weight(point: MomentumPoint):
    """Density p^2 sin(theta) / ((2 pi)^3 2E) of d^3p / ((2 pi)^3 2E) in (p, theta, phi)."""
    return point.p**2 * np.sin(point.theta) / ((2 * np.pi) ** 3 * 2 * energy(point.p, point.m))


@lru_cache(maxsize=32)
def _rule(grid: QuadratureGrid, mass: float):
    x, wp = np.polynomial.legendre.leggauss(grid.p_nodes)
    p = 0.5 * grid.p_max * (x + 1)
    wp = 0.5 * grid.p_max * wp
    x, wt = np.polynomial.legendre.leggauss(grid.theta_nodes)
    theta = 0.5 * np.pi * (x + 1)
    wt = 0.5 * np.pi * wt
    phi = 2 * np.pi * np.arange(grid.phi_nodes) / grid.phi_nodes
    wphi = np.full(grid.phi_nodes, 2 * np.pi / grid.phi_nodes)

    pp, tt, ff = np.meshgrid(p, theta, phi, indexing="ij")
    point = MomentumPoint(pp, tt, ff, mass)
    density = measure_weight(point)
    for arr in (pp, tt, ff, density, wp, wt, wphi):
        arr.flags.writeable = False
    return point, density, (wp, wt, wphi)


def mesh(grid: QuadratureGrid, mass: float) -> MomentumPoint:
    """The grid nodes as a MomentumPoint of shape (p_nodes, theta_nodes, phi_nodes)."""
    return _rule(grid, float(mass))[0]


def _reduce(values, grid, mass):
    _, density, (wp, wt, wphi) = _rule(grid, float(mass))
    # Fixed order: phi innermost, then theta, then p.
    acc = np.sum(values * density * wphi, axis=-1)
    acc = np.sum(acc * wt, axis=-1)
    return np.sum(acc * wp, axis=-1)


def integrate_complex(f, grid: QuadratureGrid, mass: float):
    """Integrate f over momentum space with the Lorentz-invariant measure.

    ``f`` receives the grid mesh as a MomentumPoint and returns an array whose
    trailing three axes match the mesh (leading axes are integrated
    independently, e.g. matrix entries). Returns a complex scalar or array.
    """
    point = mesh(grid, mass)
    values = np.asarray(f(point), dtype=complex)
    lead = values.shape[:-3] if values.ndim >= 3 else ()
    values = np.broadcast_to(values, lead + point.p.shape)
    bad = ~np.isfinite(values)
    if bad.any():
        idx = tuple(int(i) for i in np.argwhere(bad)[0])
        node = idx[-3:]
        raise FloatingPointError(
            f"non-finite integrand at node {node}: p={point.p[node]:.6g}, "
            f"theta={point.theta[node]:.6g}, phi={point.phi[node]:.6g}"
        )
    out = _reduce(values, grid, mass)
    return complex(out) if np.ndim(out) == 0 else out


def convergence_check(f, grid: QuadratureGrid, mass: float, floor: float = 1e-300) -> float:
    """Relative change of the integral when every node count is doubled."""
    coarse = np.asarray(integrate_complex(f, grid, mass))
    fine = np.asarray(integrate_complex(f, grid.doubled(), mass))
    scale = max(float(np.max(np.abs(fine))), floor)
    return float(np.max(np.abs(fine - coarse))) / scale
