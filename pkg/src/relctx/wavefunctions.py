"""Real momentum-space profiles: spherical and azimuthally deformed Gaussians."""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import ConvergenceError, InvalidInputError, UnnormalizedProfileError
from .kinematics import MomentumPoint
from .quadrature import QuadratureGrid, integrate_complex

DEFORMED = "deformed_gaussian"
SPHERICAL = "spherical_gaussian"
KINDS = (DEFORMED, SPHERICAL)

# Angle entering the deformation factor sqrt(1 + eps cos(angle)).
AZIMUTHAL = "azimuthal"
POLAR = "polar"


@dataclass(frozen=True)
class Profile:
    """psi(p) = N exp(-p^2 / (2 sigma^2)) sqrt(1 + epsilon cos(angle - orientation)).

    ``norm`` stays None until :func:`normalize_profile` fixes it. ``angle``
    selects which spherical angle carries the deformation; ``orientation``
    rotates the deformation lobe about the z-axis (azimuthal case only).
    """

    kind: str
    sigma: float
    epsilon: float = 0.0
    norm: float | None = None
    angle: str = AZIMUTHAL
    orientation: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"unknown profile kind {self.kind!r}")
        if not self.sigma > 0:
            raise InvalidInputError("sigma must be positive")
        if not 0 <= self.epsilon < 1:
            raise InvalidInputError("epsilon must lie in [0, 1)")
        if self.kind == SPHERICAL and self.epsilon != 0:
            raise InvalidInputError("spherical_gaussian takes no epsilon")
        if self.angle not in (AZIMUTHAL, POLAR):
            raise InvalidInputError(f"unknown deformation angle {self.angle!r}")
        if self.norm is not None and not self.norm > 0:
            raise InvalidInputError("norm must be positive")

    @property
    def normalized(self) -> bool:
        return self.norm is not None


def deformed_gaussian(sigma, epsilon, **kwargs) -> Profile:
    return Profile(DEFORMED, sigma, epsilon, **kwargs)


def spherical_gaussian(sigma) -> Profile:
    return Profile(SPHERICAL, sigma)


def _shape(profile: Profile, point: MomentumPoint):
    radial = np.exp(-(point.p**2) / (2 * profile.sigma**2))
    if profile.kind == SPHERICAL or profile.epsilon == 0:
        return radial
    if profile.angle == AZIMUTHAL:
        arg = point.phi - profile.orientation
    else:
        arg = point.theta
    return radial * np.sqrt(1 + profile.epsilon * np.cos(arg))


def eval_profile(profile: Profile, point: MomentumPoint):
    """Amplitude psi(point) of a normalized profile."""
    if profile.norm is None:
        raise UnnormalizedProfileError("profile must be normalized before evaluation")
    return profile.norm * _shape(profile, point)


def norm_integral(profile: Profile, grid: QuadratureGrid, mass: float) -> float:
    """Integral of |psi|^2 over the invariant measure (N = 1 if unnormalized)."""
    scale = 1.0 if profile.norm is None else profile.norm
    return integrate_complex(lambda q: (scale * _shape(profile, q)) ** 2, grid, mass).real


def normalize_profile(
    profile: Profile, grid: QuadratureGrid, mass: float = 1.0, tol: float = 1e-8
) -> Profile:
    """Fix N so that the invariant-measure norm is 1 on ``grid``.

    The same integral on the doubled grid must agree to ``tol`` relatively,
    otherwise :class:`ConvergenceError` is raised.
    """
    bare = replace(profile, norm=None)
    coarse = norm_integral(bare, grid, mass)
    fine = norm_integral(bare, grid.doubled(), mass)
    change = abs(fine - coarse) / max(abs(fine), 1e-300)
    if change > tol:
        raise ConvergenceError(
            f"normalization integral changed by {change:.3e} under grid doubling (tol {tol:g})"
        )
    return replace(profile, norm=1.0 / np.sqrt(coarse))
