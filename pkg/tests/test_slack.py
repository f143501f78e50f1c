import itertools

import numpy as np
import pytest

from slackhopf.algebra import EnvInverse, env_invert
from slackhopf.bialgebra import fusion_operator
from slackhopf.catalog import (
    bool_monoid_bialgebra,
    cyclic_group_bialgebra,
    left_trivial_comagma,
    matrix_flip_comagma,
    s3_bialgebra,
)
from slackhopf.errors import BoundExceeded
from slackhopf.exactlin import GF, QQ, Inverse, solve_or_invert
from slackhopf.slack import (
    Found,
    NoneExists,
    NotSlack,
    SlackHopfCertificate,
    Unknown,
    bimodule_property,
    build_Hv,
    check_slack_hopf,
    enumerate_env_units,
    enumerate_slack_structures,
    find_slack_hopf,
    nabla_antihomomorphism,
    torsor_act,
    verify_adjoint_identities,
    verify_vw_duality,
)


def group_fusion_inverse(n, op, inv):
    """Closed form of (H^{1⊗1})⁻¹ on a group algebra: g⊗h ↦ g⊗g⁻¹h."""
    M = QQ.zeros((n * n, n * n))
    for g in range(n):
        for h in range(n):
            M[g * n + op(inv(g), h), g * n + h] = 1
    return M


def test_zero_v_gives_zero_matrix(kz2):
    C, _ = kz2
    assert not build_Hv(C, QQ.zeros((2, 2))).any()


def test_kz2_fusion_is_permutation(kz2):
    C, _ = kz2
    A = C.alg
    H = build_Hv(C, A.tensor_one(2))
    expected = QQ.zeros((4, 4))
    for a, b in itertools.product(range(2), repeat=2):
        expected[2 * a + (a + b) % 2, 2 * a + b] = 1
    assert np.array_equal(H, expected)


@pytest.mark.parametrize("m", [2, 3])
def test_cyclic_group_certificate(m):
    C, _ = cyclic_group_bialgebra(m)
    A = C.alg
    cert = check_slack_hopf(C, A.tensor_one(2))
    assert isinstance(cert, SlackHopfCertificate)
    expected = group_fusion_inverse(m, lambda a, b: (a + b) % m, lambda a: (-a) % m)
    assert np.array_equal(cert.Hv_inv, expected)
    assert np.array_equal(cert.w, A.tensor_one(2))


def test_s3_certificate_closed_form():
    C, _ = s3_bialgebra()
    from slackhopf.catalog import s3_elements
    el = s3_elements()

    def op(i, j):
        p, q = el[i], el[j]
        return el.index(tuple(p[q[x]] for x in range(3)))

    def inv(i):
        p = el[i]
        return el.index(tuple(sorted(range(3), key=lambda x: p[x])))

    cert = check_slack_hopf(C, C.alg.tensor_one(2))
    assert np.array_equal(cert.Hv_inv, group_fusion_inverse(6, op, inv))


def test_left_trivial_coproduct_gives_identity(kz2):
    C, _ = kz2
    L = left_trivial_comagma(C.alg)
    cert = check_slack_hopf(L, L.alg.tensor_one(2))
    assert isinstance(cert, SlackHopfCertificate)
    assert np.array_equal(cert.Hv, QQ.eye(4))


def test_idempotent_monoid_not_slack():
    C, _ = bool_monoid_bialgebra()
    res = check_slack_hopf(C, C.alg.tensor_one(2))
    assert isinstance(res, NotSlack)
    H = build_Hv(C, C.alg.tensor_one(2))
    for k in res.kernel:
        assert not np.dot(H, k.reshape(-1)).any()


def test_matrix_flip_certificate(m2_flip):
    C, t = m2_flip
    cert = check_slack_hopf(C, t)
    assert isinstance(cert, SlackHopfCertificate)
    assert cert.checks.ok
    assert verify_adjoint_identities(cert).ok
    assert not isinstance(solve_or_invert(fusion_operator(C), QQ), Inverse)


def test_find_exhaustive_gf2_group():
    C, _ = cyclic_group_bialgebra(2, GF(2))
    res = find_slack_hopf(C, "exhaustive")
    assert isinstance(res, Found)
    sols = enumerate_slack_structures(C)
    assert any(np.array_equal(s, C.alg.tensor_one(2)) for s in sols)


def test_find_exhaustive_gf2_idempotent_none():
    C, _ = bool_monoid_bialgebra(GF(2))
    assert find_slack_hopf(C, "exhaustive") == NoneExists(16)


def test_find_randomized_matrix(m2_flip):
    C, _ = m2_flip
    res = find_slack_hopf(C, "randomized", seed=1, max_trials=64)
    assert isinstance(res, Found)
    assert res.certificate.checks.ok


def test_randomized_never_claims_nonexistence():
    C, _ = bool_monoid_bialgebra()
    assert find_slack_hopf(C, "randomized", seed=0, max_trials=8) == Unknown(8)


def test_exhaustive_over_rationals_refused(kz2):
    C, _ = kz2
    with pytest.raises(BoundExceeded):
        find_slack_hopf(C, "exhaustive")


def test_exhaustive_bound_respected():
    C, _ = cyclic_group_bialgebra(3, GF(3))
    with pytest.raises(BoundExceeded):
        find_slack_hopf(C, "exhaustive", bound=100)


def test_torsor_act_examples(kz2):
    C, _ = kz2
    A = C.alg
    g = A.e(1)
    cert = check_slack_hopf(C, A.tensor_one(2))
    assert np.array_equal(torsor_act(cert, A.tensor_one(2)), cert.v)
    assert np.array_equal(torsor_act(cert, cert.w), A.tensor_one(2))
    assert np.array_equal(torsor_act(cert, A.tensor(g, g)), A.tensor(g, A.one))


def test_torsor_act_on_matrix_flip(m2_flip):
    C, t = m2_flip
    cert = check_slack_hopf(C, t)
    assert np.array_equal(torsor_act(cert, cert.w), C.alg.tensor_one(2))


def test_adjoint_identities_and_broken_w(kz2):
    C, _ = kz2
    A = C.alg
    cert = check_slack_hopf(C, A.tensor_one(2))
    assert verify_adjoint_identities(cert).ok
    cert.w = QQ.reduce(cert.w + A.tensor(A.one, A.e(1)))
    rep = verify_adjoint_identities(cert)
    assert rep.failed("(3)")


@pytest.mark.parametrize("p", [2, 3])
def test_vw_duality_enumeration(p):
    C, _ = cyclic_group_bialgebra(2, GF(p))
    cert = check_slack_hopf(C, C.alg.tensor_one(2))
    rep = verify_vw_duality(cert)
    assert rep.ok, str(rep)


def test_vw_duality_refused_over_rationals(kz2):
    C, _ = kz2
    cert = check_slack_hopf(C, C.alg.tensor_one(2))
    with pytest.raises(BoundExceeded):
        verify_vw_duality(cert)


def certificates(kz2, m2_flip):
    C, _ = kz2
    A = C.alg
    g = A.e(1)
    out = [check_slack_hopf(C, v) for v in (A.tensor_one(2), A.tensor(g, g), A.tensor(A.one, g))]
    out.append(check_slack_hopf(m2_flip[0], m2_flip[1]))
    Cs, _ = s3_bialgebra()
    out.append(check_slack_hopf(Cs, Cs.alg.tensor_one(2)))
    return out


def test_bimodule_and_nabla_on_all(kz2, m2_flip):
    for cert in certificates(kz2, m2_flip)[:4]:
        assert bimodule_property(cert).ok
        assert nabla_antihomomorphism(cert).ok
        assert verify_adjoint_identities(cert).ok


def test_fusion_invertible_iff_w_invertible(kz2, m2_flip):
    for cert in certificates(kz2, m2_flip):
        fusion = isinstance(solve_or_invert(fusion_operator(cert.comagma), cert.field), Inverse)
        assert fusion == isinstance(env_invert(cert.alg, cert.w), EnvInverse)
    C, _ = m2_flip
    res = find_slack_hopf(C, "randomized", seed=1)
    assert not isinstance(env_invert(C.alg, res.certificate.w), EnvInverse)


def test_torsor_on_gf3_group():
    C, _ = cyclic_group_bialgebra(2, GF(3))
    A = C.alg
    cert = check_slack_hopf(C, A.tensor_one(2))
    units = enumerate_env_units(A)
    images = {tuple(torsor_act(cert, g).reshape(-1)) for g in units}
    sols = {tuple(s.reshape(-1)) for s in enumerate_slack_structures(C)}
    assert images == sols
    assert len(images) == len(units)
