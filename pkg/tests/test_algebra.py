import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qutrit_ybe import algebra as alg
from qutrit_ybe.errors import BadLabel, BadSubsystem
from qutrit_ybe.tensor import commutator, dagger, distance, eigvals_hermitian
from qutrit_ybe.yangbaxter import RParams, printed_R_display, weights

phase = st.floats(min_value=0, max_value=2 * np.pi, allow_nan=False)
SUBSYSTEMS = [1, 2, 3]


def test_labels_and_indices():
    assert [alg.lex_index(a, b) for a, b in [(1, 1), (0, -1), (-1, -1)]] == [0, 5, 8]
    assert alg.pair_label(5) == "|0-1>"
    with pytest.raises(BadLabel):
        alg.lex_index(2, 0)
    with pytest.raises(BadSubsystem):
        alg.subsystem_indices(4)


def test_display_permutation_swaps():
    p = alg.display_permutation()
    order = [int(np.argmax(row)) for row in p]
    assert order == [0, 1, 3, 2, 4, 6, 5, 7, 8]
    m = np.arange(81.0).reshape(9, 9)
    assert distance(alg.from_display_order(alg.to_display_order(m)), m) == 0


def test_subsystems_partition_the_space():
    total = sum(alg.subsystem_projector(k) for k in SUBSYSTEMS)
    assert distance(total, np.eye(9)) == 0


def test_structure_constants_known_values():
    f = alg.structure_constants()
    assert f[0, 1, 2] == pytest.approx(1.0, abs=1e-14)
    assert f[3, 4, 7] == pytest.approx(np.sqrt(3) / 2, abs=1e-14)
    assert f[0, 3, 6] == pytest.approx(0.5, abs=1e-14)
    # total antisymmetry
    assert np.max(np.abs(f + f.transpose(1, 0, 2))) < 1e-14
    assert np.max(np.abs(f + f.transpose(0, 2, 1))) < 1e-14


def test_gellmann_normalization():
    for a, ga in enumerate(alg.gellmann()):
        for b, gb in enumerate(alg.gellmann()):
            assert abs(np.trace(ga @ gb) - 2 * (a == b)) < 1e-14


@pytest.mark.parametrize("k", SUBSYSTEMS)
def test_su3_realization_closes(k):
    f = alg.structure_constants()
    g = alg.su3_realization(k).generators()
    for a in range(8):
        assert distance(g[a], dagger(g[a])) < 1e-14
        for b in range(8):
            rhs = 1j * sum(f[a, b, c] * g[c] for c in range(8))
            assert distance(commutator(g[a], g[b]), rhs) < 1e-12


@pytest.mark.parametrize("k", SUBSYSTEMS)
def test_printed_diagonal_operators_match_commutators(k):
    assert max(alg.diagonal_consistency(k).values()) < 1e-12


@pytest.mark.parametrize("k", SUBSYSTEMS)
def test_su3_acts_as_fundamental_on_role_kets(k):
    # on the role kets (1, 0, -1) the ladders have the fundamental pattern:
    # I+ : 0 -> 1, U+ : -1 -> 0, V+ : 1 -> -1
    r = alg.su3_realization(k)
    kets = [alg.ket(*ab) for ab in alg.ROLE_KETS[k]]
    expected = {"i_plus": (0, 1), "u_plus": (1, 2), "v_plus": (2, 0)}
    for name, (row, col) in expected.items():
        op = getattr(r, name)
        mods = np.array([[abs(np.vdot(a, op @ b)) for b in kets] for a in kets])
        target = np.zeros((3, 3))
        target[row, col] = 1
        assert np.allclose(mods, target, atol=1e-14)


@pytest.mark.parametrize("k", SUBSYSTEMS)
def test_su2_realization(k):
    s = alg.su2_realization(k)
    assert distance(commutator(s.s_plus, s.s_minus), 2 * s.s3) < 1e-12
    assert distance(commutator(s.s1, s.s2), 1j * s.s3) < 1e-12
    assert distance(s.s_plus @ s.s_plus, 0) < 1e-14
    vals = eigvals_hermitian(s.casimir)
    assert np.allclose(np.sort(vals), [0] * 7 + [0.75] * 2, atol=1e-10)


def test_su2_subsystems_commute():
    for i in SUBSYSTEMS:
        for j in SUBSYSTEMS:
            if i != j:
                a, b = alg.su2_realization(i), alg.su2_realization(j)
                for x in (a.s_plus, a.s_minus, a.s3):
                    for y in (b.s_plus, b.s_minus, b.s3):
                        assert distance(commutator(x, y), 0) < 1e-12


def test_m_against_printed_matrix():
    # M recovered from the entry-by-entry R display: M = (3R - bI)/a
    p = RParams(0.9, 0.4, 2.1)
    w = weights(p.theta)
    m_printed = alg.from_display_order(3 * printed_R_display(p) - w.b * np.eye(9)) / w.a
    assert distance(alg.build_M(p.hecke), m_printed) < 1e-13


@given(phase, phase)
def test_m_characteristic_polynomial(phi1, phi2):
    # compare coefficients, not roots: a sixfold root is ill-conditioned
    m = alg.build_M(alg.HeckeParams(phi1, phi2))
    assert np.allclose(np.poly(m), np.poly([2] * 3 + [-1] * 6), atol=1e-9)
    vals = eigvals_hermitian(m)
    assert np.sum(np.abs(vals - 2) < 1e-10) == 3
    assert np.sum(np.abs(vals + 1) < 1e-10) == 6


@given(phase, phase)
def test_hecke_relations(phi1, phi2):
    p = alg.HeckeParams(phi1, phi2)
    assert alg.quadratic_residual(p) < 1e-10
    assert alg.hecke_residual(p) < 1e-10
    assert alg.braid_limit_residual(p) < 1e-10


def test_hecke_negative_control():
    assert alg.hecke_residual(alg.HeckeParams(0.3, 0.8), g=3.0) > 1e-3


def test_m_dot_matches_finite_difference():
    w1, w2, t, h = 0.7, 1.9, 0.4, 1e-6
    m = lambda s: alg.build_M(alg.HeckeParams(w1 * s, w2 * s))
    fd = (m(t + h) - m(t - h)) / (2 * h)
    assert distance(alg.build_M_dot(alg.HeckeParams(w1 * t, w2 * t), w1, w2), fd) < 1e-8


def test_braid_limit_and_far_commutativity():
    p = alg.HeckeParams(1.1, 0.2)
    b = alg.braid_generator(p)
    assert distance(b @ b, b) < 1e-14
    assert alg.far_commutativity_residual(p) < 1e-12
