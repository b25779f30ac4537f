import numpy as np
import pytest

from conftest import BB84, GRID, SETUP, paper_taus
from relctx.contextuality import (
    bloch_vector,
    build_dual_frame,
    from_bloch,
    gram_rank,
    hermitian_from_params,
    is_noncontextual_pure,
    random_projective_povms,
    singular_values,
    verify_ontological_model,
)
from relctx.errors import InvalidInputError, SingularFrameError
from relctx.reduced_states import AMPLITUDES, LABELS, RelativisticQubit, boosted_reduced_density
from relctx.wavefunctions import deformed_gaussian, normalize_profile

UP, DOWN, PLUS, MINUS = BB84


@pytest.fixture(scope="module")
def oriented_taus():
    """Boosted states whose deformation lobes point in different azimuthal directions."""
    orient = {"up": 0.0, "down": np.pi / 2, "plus": np.pi / 4, "minus": 3 * np.pi / 4}
    out = {}
    for zeta in (0.01, 1.0):
        taus = []
        for k in LABELS:
            prof = deformed_gaussian(SETUP.sigmas[k], 0.1, orientation=orient[k])
            prof = normalize_profile(prof, GRID)
            state = RelativisticQubit.single(prof, *AMPLITUDES[k])
            taus.append(boosted_reduced_density(state, zeta, GRID))
        out[zeta] = np.array(taus)
    return out


def test_bloch_roundtrip():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        h = a + a.conj().T
        np.testing.assert_allclose(from_bloch(bloch_vector(h)), h, atol=1e-14)


def test_bb84_bloch_vectors():
    np.testing.assert_allclose(
        [bloch_vector(s) for s in BB84],
        [[1, 0, 0, 1], [1, 0, 0, -1], [1, 1, 0, 0], [1, -1, 0, 0]],
        atol=1e-15,
    )


def test_gram_rank_examples():
    assert gram_rank(BB84) == 3
    assert gram_rank([UP, DOWN]) == 2
    with pytest.raises(InvalidInputError):
        gram_rank([])


def test_bb84_determinant_zero():
    # hand-checkable: the 4x4 Bloch matrix is singular
    m = np.array([bloch_vector(s) for s in BB84])
    assert abs(np.linalg.det(m)) < 1e-14


def test_pure_state_criterion():
    assert not is_noncontextual_pure(BB84)
    assert is_noncontextual_pure([UP, PLUS])
    assert not is_noncontextual_pure([UP, UP])
    with pytest.raises(InvalidInputError):
        is_noncontextual_pure([np.eye(2) / 2])


def test_pure_criterion_agrees_with_rank():
    rng = np.random.default_rng(11)
    for n in (2, 3, 4, 5):
        for _ in range(10):
            kets = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
            kets /= np.linalg.norm(kets, axis=1, keepdims=True)
            states = [np.outer(k, k.conj()) for k in kets]
            assert is_noncontextual_pure(states) == (gram_rank(states) == n)


def test_hermitian_params():
    f = hermitian_from_params(1.0, 2.0, 3.0, 4.0)
    np.testing.assert_array_equal(f, f.conj().T)
    assert f[0, 1] == 2 + 3j


def test_rest_frame_has_no_frame():
    with pytest.raises(SingularFrameError):
        build_dual_frame(BB84)


def test_nearly_dependent_set_is_rejected():
    almost = from_bloch([1, -0.5, 1e-13, 0])
    with pytest.raises(SingularFrameError):
        build_dual_frame([UP, DOWN, PLUS, almost])
    # bypassing the rank gate leaves the condition-number gate
    with pytest.raises(SingularFrameError) as info:
        build_dual_frame([UP, DOWN, PLUS, almost], tol=0.0)
    assert info.value.condition > 1e12


def test_dual_frame_on_tetrahedron():
    r = 1 / np.sqrt(3)
    dirs = [(r, r, r), (r, -r, -r), (-r, r, -r), (-r, -r, r)]
    states = [from_bloch([1, *d]) for d in dirs]
    frame = build_dual_frame(states)
    np.testing.assert_allclose(frame.operators.sum(axis=0), np.eye(2), atol=1e-10)
    table = np.einsum("iab,jba->ij", np.array(states), frame.operators).real
    np.testing.assert_allclose(table, np.eye(4), atol=1e-12)
    assert frame.residual < 1e-12
    for f in frame.operators:
        np.testing.assert_array_equal(f, f.conj().T)


def test_paper_boost_has_no_frame():
    # with the cos(phi) deformation the boosted set stays in a 3-dim real subspace
    assert gram_rank(paper_taus(1.0)) == 3
    with pytest.raises(SingularFrameError):
        build_dual_frame(paper_taus(1.0))


@pytest.mark.parametrize("zeta", [0.01, 1.0])
def test_oriented_lobes_become_independent(oriented_taus, zeta):
    taus = oriented_taus[zeta]
    assert gram_rank(taus) == 4
    assert singular_values(taus)[-1] > 1e-8
    frame = build_dual_frame(taus)
    assert frame.residual < 1e-8
    np.testing.assert_allclose(frame.operators.sum(axis=0), np.eye(2), atol=1e-10)


def test_frame_is_not_positive(oriented_taus):
    # a genuine pseudo-POVM: some element has a negative eigenvalue
    frame = build_dual_frame(oriented_taus[1.0])
    assert min(np.linalg.eigvalsh(f).min() for f in frame.operators) < 0


def test_ontological_model_on_own_states(oriented_taus):
    taus = oriented_taus[1.0]
    frame = build_dual_frame(taus)
    report = verify_ontological_model(taus, frame, random_projective_povms(100, seed=7))
    assert report.max_violation < 1e-7
    assert report.min_weight == pytest.approx(0.0, abs=1e-8)
    assert report.max_normalization_error < 1e-10


def test_ontological_model_trivial_povm(oriented_taus):
    taus = oriented_taus[0.01]
    frame = build_dual_frame(taus)
    report = verify_ontological_model(taus, frame, [[np.eye(2)]])
    assert report.max_violation < 1e-10


def test_ontological_model_on_span_members(oriented_taus):
    # any state in the span of the frame's states is reproduced; weights may go negative
    taus = oriented_taus[1.0]
    frame = build_dual_frame(taus)
    probe = 0.5 * (taus[0] + taus[3])
    report = verify_ontological_model([probe], frame, random_projective_povms(50, seed=1))
    assert report.max_violation < 1e-12


def test_random_povms_are_projective():
    for povm in random_projective_povms(10, seed=5):
        np.testing.assert_allclose(povm.sum(axis=0), np.eye(2), atol=1e-15)
        for e in povm:
            np.testing.assert_allclose(e @ e, e, atol=1e-14)
    a = random_projective_povms(3, seed=9)
    b = random_projective_povms(3, seed=9)
    np.testing.assert_array_equal(np.array(a), np.array(b))
