from fractions import Fraction

import numpy as np
import pytest

from slackhopf.catalog import cyclic_group_bialgebra, s3_bialgebra, z2_quasi_associator
from slackhopf.errors import InvalidStructure, InverseMismatch, PreconditionError
from slackhopf.exactlin import QQ
from slackhopf.quasihopf import (
    Decomposition,
    LeftHopf,
    QuasiAntipode,
    QuasiBialgebra,
    SlackOnly,
    check_quasi_antipode,
    check_sigma_delta,
    check_v_change,
    check_wbar_identity,
    classify_slack_structure,
    closed_form_inverse,
    left_hopf_from_antipode,
    random_env_unit,
    random_G0_element,
    sigma_delta,
    slackness,
    torsor_decompose,
    trivial_associator,
    validate_quasibialgebra,
)
from slackhopf.slack import check_slack_hopf, torsor_act

half = Fraction(1, 2)


def hopf_z(m):
    C, eps = cyclic_group_bialgebra(m)
    A = C.alg
    return QuasiBialgebra(C, eps, trivial_associator(A), trivial_associator(A))


def inversion(m):
    S = QQ.zeros((m, m))
    for j in range(m):
        S[(-j) % m, j] = 1
    return S


def test_trivial_associator_valid():
    assert validate_quasibialgebra(hopf_z(3)).ok


def test_z2_associator_valid(kz2_quasi):
    rep = validate_quasibialgebra(kz2_quasi.Q)
    assert rep.ok and rep.passed("pentagon")


def test_nonmultiplicative_phi_inverse_rejected():
    C, eps = cyclic_group_bialgebra(2)
    phi, _ = z2_quasi_associator()
    with pytest.raises(InvalidStructure):
        QuasiBialgebra(C, eps, phi, trivial_associator(C.alg))
    Q = QuasiBialgebra(C, eps, phi, trivial_associator(C.alg), check=False)
    assert validate_quasibialgebra(Q).failed("phi_invertible")


def test_group_inversion_is_quasi_antipode():
    Q = hopf_z(3)
    A = Q.alg
    assert check_quasi_antipode(Q, QuasiAntipode(inversion(3), A.one, A.one)).ok


def test_identity_is_not_quasi_antipode_on_z3():
    Q = hopf_z(3)
    A = Q.alg
    rep = check_quasi_antipode(Q, QuasiAntipode(QQ.eye(3), A.one, A.one))
    assert rep.failed("QA1[g]")


def test_grid_solutions_all_validate(kz2_quasi):
    sols = kz2_quasi.solutions
    assert len(sols) == 4
    for qa in sols:
        assert check_quasi_antipode(kz2_quasi.Q, qa).ok
        assert np.array_equal(qa.S, QQ.eye(2))


def test_kz2_quasi_structures(kz2_quasi):
    # 𝔞 = 1, 𝔟 = g, S = id, p = (1 - g)/2, gp = -p:
    # v = 1⊗g - 2 p⊗gp = 1⊗g + 2p⊗p,  w = 1⊗1 - 2 p⊗p
    cert = kz2_quasi.cert
    assert list(kz2_quasi.qa.b_elem) == [0, 1]
    assert np.array_equal(cert.v, QQ.array([[half, half], [-half, half]]))
    assert np.array_equal(cert.w, QQ.array([[half, half], [half, -half]]))


def test_hopf_case_gives_unit_v():
    Q = hopf_z(2)
    A = Q.alg
    cert = left_hopf_from_antipode(Q, QuasiAntipode(inversion(2), A.one, A.one))
    assert np.array_equal(cert.v, A.tensor_one(2))


def test_closed_form_inverse_matches(quasi_fixtures):
    for fx in quasi_fixtures:
        got = closed_form_inverse(fx.Q, fx.qa.S, fx.cert.w)
        assert np.array_equal(got, fx.cert.Hv_inv), fx.name


def test_forged_b_raises(kz2_quasi):
    qa = kz2_quasi.qa
    forged = QuasiAntipode(qa.S, qa.a_elem, QQ.reduce(2 * qa.b_elem))
    with pytest.raises(InverseMismatch):
        left_hopf_from_antipode(kz2_quasi.Q, forged)


def test_slackness_of_group_algebra():
    Q = hopf_z(2)
    cert = check_slack_hopf(Q.comagma, Q.alg.tensor_one(2))
    sl = slackness(Q, cert)
    assert np.array_equal(sl.value, Q.alg.tensor_one(2))
    assert np.array_equal(sl.wbar, Q.alg.tensor_one(2))


def test_classify_unit_shift_is_left_hopf():
    # v = 1⊗g = (1⊗1)◁(1⊗g); γ₀ = g, so sl = (1⊗g⁻¹)(1⊗1)(1⊗g) = 1⊗1
    Q = hopf_z(2)
    A = Q.alg
    g = A.e(1)
    base = check_slack_hopf(Q.comagma, A.tensor_one(2))
    v = torsor_act(base, A.tensor(A.one, g))
    assert np.array_equal(v, A.tensor(A.one, g))
    res = classify_slack_structure(Q, check_slack_hopf(Q.comagma, v))
    assert isinstance(res, LeftHopf)
    assert np.array_equal(res.antipode.S, inversion(2))
    assert list(res.antipode.b_elem) == [0, 1]


def test_classify_gg_is_slack_only():
    # g⊗g = (1⊗1)◁(g⊗1) and γ₀ = ε(g) = 1, so sl = g⊗1
    Q = hopf_z(2)
    A = Q.alg
    g = A.e(1)
    res = classify_slack_structure(Q, check_slack_hopf(Q.comagma, A.tensor(g, g)))
    assert isinstance(res, SlackOnly)
    assert res.invertible
    assert np.array_equal(res.slackness.value, A.tensor(g, A.one))


def test_left_hopf_fixed_point(quasi_fixtures):
    for fx in quasi_fixtures:
        res = classify_slack_structure(fx.Q, fx.cert)
        assert isinstance(res, LeftHopf), fx.name
        assert check_quasi_antipode(fx.Q, res.antipode).ok
        assert np.array_equal(left_hopf_from_antipode(fx.Q, res.antipode).v, fx.cert.v)
        assert np.array_equal(res.antipode.S, fx.qa.S)


def test_decompose_left_hopf_is_trivial(kz2_quasi):
    d = torsor_decompose(kz2_quasi.Q, kz2_quasi.cert)
    assert isinstance(d, Decomposition)
    assert np.array_equal(d.v0, kz2_quasi.cert.v)
    assert np.array_equal(d.gamma, kz2_quasi.Q.alg.tensor_one(2))


def test_decompose_requires_quasi_bialgebra(m2_flip):
    C, t = m2_flip
    with pytest.raises(PreconditionError):
        torsor_decompose(C, check_slack_hopf(C, t))


def test_counit_precondition(m2_flip):
    C, _ = m2_flip
    A = C.alg
    with pytest.raises(PreconditionError):
        QuasiBialgebra(C, A.unit, trivial_associator(A), trivial_associator(A))


def test_random_G0_normalised(kz2_quasi):
    A = kz2_quasi.Q.alg
    rng = np.random.default_rng(3)
    g = random_G0_element(A, kz2_quasi.Q.eps, rng)
    counit_leg = QQ.reduce(np.einsum("i,ij->j", kz2_quasi.Q.eps.epsilon, g))
    assert np.array_equal(counit_leg, A.one)


@pytest.mark.parametrize("seed", range(3))
def test_identities_on_shifted_structures(quasi_fixtures, seed):
    for fx in quasi_fixtures:
        rng = np.random.default_rng(seed)
        gamma = random_env_unit(fx.Q.alg, rng)
        assert check_v_change(fx.Q, fx.cert, gamma).ok, fx.name
        moved = check_slack_hopf(fx.Q.comagma, torsor_act(fx.cert, gamma))
        assert check_sigma_delta(fx.Q, moved).ok, fx.name
        assert check_wbar_identity(fx.Q, moved).ok, fx.name


def test_sigma_delta_with_coproduct_is_not_an_identity(s3_twisted):
    # The intertwining identity holds with ∇(x) on the left factor; replacing
    # ∇(x) by Δ(x) fails on this noncommutative fixture.
    Q = s3_twisted.Q
    A = Q.alg
    gamma = random_env_unit(A, np.random.default_rng(0))
    moved = check_slack_hopf(Q.comagma, torsor_act(s3_twisted.cert, gamma))
    sl = slackness(Q, moved)
    holds = all(
        np.array_equal(A.emul(sl.value, Q.comagma.apply_delta(A.e(i))),
                       A.emul(sigma_delta(Q, sl.sigma, A.e(i)), sl.value))
        for i in range(A.dim))
    assert not holds


@pytest.mark.parametrize("seed", range(2))
def test_twisted_s3_decomposition(s3_twisted, seed):
    Q = s3_twisted.Q
    gamma = random_G0_element(Q.alg, Q.eps, np.random.default_rng(seed))
    moved = check_slack_hopf(Q.comagma, torsor_act(s3_twisted.cert, gamma))
    res = classify_slack_structure(Q, moved)
    assert isinstance(res, SlackOnly) and res.invertible
    d = torsor_decompose(Q, moved)
    assert np.array_equal(d.gamma, gamma)
    assert np.array_equal(d.v0, s3_twisted.cert.v)


def test_twisted_s3_is_not_a_bialgebra(s3_twisted):
    # the twist makes Δ non-coassociative; the associator is needed
    C, eps = s3_bialgebra()
    Q = s3_twisted.Q
    A = Q.alg
    with pytest.raises(InvalidStructure):
        QuasiBialgebra(Q.comagma, eps, trivial_associator(A), trivial_associator(A))
