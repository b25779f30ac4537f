"""Spin states of massive spin-1/2 particles seen from boosted frames.

Boost momentum-space wavefunctions along z, trace out momentum, test the
reduced spin states for preparation contextuality, and compute optimal
state-discrimination probabilities.
"""
from .contextuality import (
    DualFrame,
    build_dual_frame,
    gram_rank,
    is_noncontextual_pure,
    random_projective_povms,
    verify_ontological_model,
)
from .discrimination import (
    DiscriminationProblem,
    DiscriminationResult,
    helstrom,
    min_error_sdp,
    sweep_rapidity,
    trace_norm,
)
from .kinematics import MomentumPoint, WignerHalf, boosted_energy, energy, wigner_half
from .quadrature import QuadratureGrid, convergence_check, integrate_complex, measure_weight
from .reduced_states import (
    BoostIntegrals,
    PaperSetup,
    RelativisticQubit,
    boost_integrals,
    boosted_reduced_density,
    ensemble_mix,
    rest_reduced_density,
)
from .wavefunctions import Profile, deformed_gaussian, eval_profile, normalize_profile, spherical_gaussian

__version__ = "0.1.0"
