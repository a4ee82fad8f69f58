from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photonloc import poincare as pc
from photonloc.exprcore import SamplePlan, exp, r, sample_points
from photonloc.operators import (
    LinOp, MatFn, WaveFn, apply, check_involution, commutator, compose,
    formal_adjoint, op_is_zero, unitary_conjugate, zero_test,
)

GOLDEN = Path(__file__).parent / "golden"


def same(a: WaveFn, b: WaveFn, points, tol=1e-9):
    return zero_test((a - b).labelled(), points, tol).passed


# -- spin matrices and U --------------------------------------------------------

def test_spin_matrices_as_displayed():
    S = [m((1.0, 0.0, 0.0)) for m in pc.spin_matrices()]
    np.testing.assert_array_equal(S[0], [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]])
    np.testing.assert_array_equal(S[1], [[0, 0, 1j], [0, 0, 0], [-1j, 0, 0]])
    np.testing.assert_array_equal(S[2], [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]])


def test_spin_s3_on_e1():
    S3 = pc.spin_matrices()[2]((1.0, 0.0, 0.0))
    np.testing.assert_array_equal(S3 @ [1, 0, 0], [0, 1j, 0])


def test_spin_algebra_and_hermiticity():
    S = [m((1.0, 1.0, 1.0)) for m in pc.spin_matrices()]
    for i in range(3):
        np.testing.assert_array_equal(S[i], S[i].conj().T)
        j, k = (i + 1) % 3, (i + 2) % 3
        np.testing.assert_array_equal(S[i] @ S[j] - S[j] @ S[i], 1j * S[k])


def test_u_at_x_axis():
    np.testing.assert_allclose(pc.u_matrix()((1.0, 0.0, 0.0)), [[0, 0, 1], [0, 1, 0], [-1, 0, 0]], atol=1e-15)


def test_u_maps_cartesian_to_spherical_basis(points):
    U = pc.u_matrix()
    for i, e in enumerate(pc.polarization_basis()):
        cart = [0, 0, 0]
        cart[i] = 1
        assert same(U.dot(WaveFn(cart)), e, points)


def test_u_orthogonal_and_real(points):
    U = pc.u_matrix()
    assert zero_test((U @ U.T - MatFn.identity()).labelled(), points, 1e-12)
    for x in points[:5]:
        assert np.all(np.imag(U(x)) == 0)


def _u_trig(p):
    """U from the angle display, independent of the radical form."""
    x, y, z = p
    th = np.arccos(z / np.linalg.norm(p))
    ph = np.arctan2(y, x)
    ct, st, cp, sp = np.cos(th), np.sin(th), np.cos(ph), np.sin(ph)
    return np.array([[ct * cp, -sp, st * cp], [ct * sp, cp, st * sp], [-st, 0, ct]])


def test_u_radical_form_matches_angles(points):
    U = pc.u_matrix()
    for x in points[:10]:
        np.testing.assert_allclose(U(x), _u_trig(x), atol=1e-13)


def test_twist_involutive(points):
    assert check_involution(pc.parity_twist(), points)


# -- Hawton operator ----------------------------------------------------------------

def test_hawton_closed_form_equals_conjugation(points):
    for a, b in zip(pc.hawton_q(), pc.hawton_q_conjugated()):
        assert op_is_zero(a - b, points)


def test_hawton_literal_s3_reading_differs(points):
    """The display with the fixed matrix S3 misses U Q U^T in components 1 and 2."""
    lit, conj = pc.hawton_q_fixed_s3(), pc.hawton_q_conjugated()
    assert not op_is_zero(lit[0] - conj[0], points)
    assert not op_is_zero(lit[1] - conj[1], points)
    assert op_is_zero(lit[2] - conj[2], points)


def test_hawton_derivative_part_is_q():
    for qh, q in zip(pc.hawton_q(), pc.flat_position()):
        assert qh.b == q.b


def test_hawton_component3_numeric_oracle():
    """Multiplicative part of U Q^3 U^T is i U d3 U^T, here by finite differences of the angle form."""
    p = np.array([1.0, 0.0, 0.0])
    h = 1e-6
    dUt = (_u_trig(p + [0, 0, h]).T - _u_trig(p - [0, 0, h]).T) / (2 * h)
    oracle = 1j * _u_trig(p) @ dUt @ [0, 1, 0]
    got = pc.hawton_q()[2].mat(p) @ [0, 1, 0]
    np.testing.assert_allclose(got, oracle, atol=1e-8)


def test_hawton_self_adjoint_and_commuting(points):
    Qh = pc.hawton_q()
    for i in range(3):
        assert op_is_zero(formal_adjoint(Qh[i]) - Qh[i], points)
        assert op_is_zero(commutator(Qh[i], Qh[(i + 1) % 3]), points)


# -- Pryce operator ---------------------------------------------------------------------

def test_pryce_minus_q_is_multiplicative():
    for x, q in zip(pc.pryce_x(), pc.flat_position()):
        assert (x - q).is_multiplicative


def test_pryce_canonical_and_self_adjoint(points):
    X = pc.pryce_x()
    P = pc.momentum()
    for i in range(3):
        for j in range(3):
            want = LinOp.scalar(-1j if i == j else 0)
            assert op_is_zero(commutator(P[i + 1], X[j]) - want, points)
        assert op_is_zero(formal_adjoint(X[i]) - X[i], points)


# -- helicity -------------------------------------------------------------------------------

def test_helicity_acts_as_plus_i_pi_cross(points, random_fns):
    lam = pc.helicity_original()
    for f in random_fns:
        pi_x_f = f.cross(pc.PI)  # WaveFn.cross(a) is a x self
        assert same(apply(lam, f), pi_x_f.scale(1j), points)


def test_helicity_minus_i_pi_cross_does_not_hold(points, random_fns):
    lam = pc.helicity_original()
    f = random_fns[0]
    pi_x_f = f.cross(pc.PI)
    assert not same(apply(lam, f), pi_x_f.scale(-1j), points)


def test_helicity_by_representation(points):
    assert pc.representation("hat").helicity_is_zero
    assert op_is_zero(pc.helicity("hat"), points)
    lt = unitary_conjugate(pc.u_matrix(), pc.helicity_original())
    assert op_is_zero(pc.helicity("tilde") - lt, points)
    for name in pc.REPRESENTATIONS:
        assert pc.helicity(name).is_multiplicative


def test_helicity_is_transported_s3(points):
    # U^T pi = e3, so U^T (pi . S) U is the constant matrix S3
    U = pc.u_matrix()
    back = unitary_conjugate(U.T, pc.helicity_original())
    assert op_is_zero(back - LinOp.matrix(pc.spin_matrices()[2]), points)


def test_helicity_cube_and_projector(points):
    lam = pc.helicity_original()
    sq = compose(lam, lam)
    assert op_is_zero(compose(sq, lam) - lam, points)
    assert op_is_zero(compose(sq, sq) - sq, points)
    assert zero_test((sq.mat - sq.mat.H).labelled(), points, 1e-9)


def test_helicity_projector_on_catalog(points):
    sq = compose(pc.helicity_original(), pc.helicity_original())
    for name, (f, kind) in pc.catalog_wavefns().items():
        if kind == "transverse":
            assert same(apply(sq, f), f, points), name
        elif kind == "longitudinal":
            assert same(apply(sq, f), f.scale(0), points), name


@pytest.mark.parametrize("rep", ["original", "tilde"])
def test_helicity_commutes_with_generators(points, rep):
    R = pc.representation(rep)
    for label, g in R.generators:
        assert op_is_zero(commutator(R.helicity, g), points), label


# -- Pauli-Lubanski ----------------------------------------------------------------------------

def test_pauli_lubanski_original_is_lambda_p(points):
    W = pc.pauli_lubanski("original")
    lam = pc.helicity_original()
    for w, p in zip(W, pc.momentum()):
        assert op_is_zero(w - compose(lam, p), points)


@pytest.mark.parametrize("rep", ["hat", "lk"])
def test_pauli_lubanski_vanishes(points, rep):
    for w in pc.pauli_lubanski(rep):
        assert op_is_zero(w, points)


def test_pauli_lubanski_tilde(points):
    W = pc.pauli_lubanski("tilde")
    for w, p in zip(W, pc.momentum()):
        assert op_is_zero(w - compose(pc.helicity("tilde"), p), points)


@pytest.mark.parametrize("rep", ["original", "lk", "hat"])
def test_pauli_lubanski_minus_sign_fails(points, rep):
    """With P0 J - P x B the spatial components pick up 2 P x B and stop vanishing."""
    W = pc.pauli_lubanski_minus(rep)
    target = pc.helicity(rep)
    for w, p in zip(W[1:], pc.momentum()[1:]):
        assert not op_is_zero(w - compose(target, p), points)


# -- representations ---------------------------------------------------------------------------

@pytest.mark.parametrize("rep", pc.REPRESENTATIONS)
def test_mass_shell(points, rep):
    P = pc.representation(rep).P
    sq = compose(P[0], P[0]) - sum((compose(p, p) for p in P[1:]), LinOp.zero())
    assert op_is_zero(sq, points)


def test_hat_generators_from_position(points):
    Qh, P = pc.hawton_q(), pc.momentum()
    hat = pc.representation("hat")
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        qxp = compose(Qh[j], P[k + 1]) - compose(Qh[k], P[j + 1])
        assert op_is_zero(hat.J[i] - qxp, points)
        sym = (compose(Qh[i], P[0]) + compose(P[0], Qh[i])).scale(0.5)
        assert op_is_zero(hat.B[i] - sym, points)


def test_boost_from_flat_position(points):
    Q, P, K = pc.flat_position(), pc.momentum(), pc.orbital_boost()
    for i in range(3):
        assert op_is_zero(K[i] - (compose(Q[i], P[0]) + compose(P[0], Q[i])).scale(0.5), points)


def test_unknown_representation():
    with pytest.raises(KeyError):
        pc.representation("bogus")


# -- subspace membership ---------------------------------------------------------------------

def test_subspace_examples(points):
    g = exp(-r ** 2)
    assert pc.subspace_membership(WaveFn([g * x for x in pc.P]), points) == "longitudinal"
    assert pc.subspace_membership(pc.polarization_basis()[1].scale(g), points) == "transverse"
    assert pc.subspace_membership(WaveFn([g, 0, 0]), points) == "mixed"


def test_catalog_classes_are_right(points):
    for name, (f, kind) in pc.catalog_wavefns().items():
        assert pc.subspace_membership(f, points) == kind, name


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_transverse_part_is_transverse(seed):
    """Lambda^2 f is transverse and f - Lambda^2 f is longitudinal for any f."""
    f = pc.random_wavefn(np.random.default_rng(seed))
    pts = sample_points(SamplePlan(seed=seed, count=16))
    sq = compose(pc.helicity_original(), pc.helicity_original())
    t = apply(sq, f)
    assert pc.subspace_membership(t, pts, 1e-8) in ("transverse",)
    assert pc.subspace_membership(f - t, pts, 1e-8) in ("longitudinal",)


# -- catalog and display ------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["S3", "pryce-1"])
def test_show_golden(name):
    assert pc.show(name) + "\n" == (GOLDEN / f"show_{name}.txt").read_text()


def test_show_unknown_lists_catalog():
    with pytest.raises(KeyError, match="catalog"):
        pc.show("nope")


def test_catalog_is_deterministic():
    a = {k: pc.show(k) for k in pc.operator_catalog()}
    b = {k: pc.show(k) for k in pc.operator_catalog()}
    assert a == b
