import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slackhopf.bialgebra import (
    Antipode,
    AntipodeData,
    NoAntipode,
    build_antipode,
    convolution,
    convolution_unit,
    extract_antipode_data,
    fusion_operator,
    make_counit,
)
from slackhopf.catalog import (
    bool_monoid_bialgebra,
    cyclic_group_bialgebra,
    matrix_flip_comagma,
    s3_bialgebra,
    s3_elements,
    sweedler_h4,
)
from slackhopf.errors import PreconditionError
from slackhopf.exactlin import QQ, Inverse, solve_or_invert
from slackhopf.quasihopf import random_env_unit
from slackhopf.slack import check_slack_hopf, torsor_act


def inversion_matrix(n, inv):
    S = QQ.zeros((n, n))
    for j in range(n):
        S[inv(j), j] = 1
    return S


def s3_inversion():
    el = s3_elements()
    return inversion_matrix(6, lambda j: el.index(tuple(sorted(range(3), key=lambda x: el[j][x]))))


def data_for(C, eps, v=None):
    cert = check_slack_hopf(C, C.alg.tensor_one(2) if v is None else v)
    return cert, extract_antipode_data(cert, make_counit(C, eps))


def test_counit_flags():
    C, eps = cyclic_group_bialgebra(2)
    e = make_counit(C, eps)
    assert e.is_left_counit and e.is_bialgebra_counit
    bad = make_counit(C, QQ.array([1, 0]))
    assert not bad.is_algebra_morphism


def test_z2_data():
    C, eps = cyclic_group_bialgebra(2)
    _, d = data_for(C, eps)
    assert list(d.sigma[:, 1]) == [0, 1]
    assert list(d.a_elem) == [1, 0] and list(d.b_elem) == [1, 0]


def test_z3_data():
    C, eps = cyclic_group_bialgebra(3)
    _, d = data_for(C, eps)
    assert list(d.sigma[:, 1]) == [0, 0, 1]
    assert list(d.a_elem) == [1, 0, 0] and list(d.b_elem) == [1, 0, 0]


def test_h4_sigma_is_textbook_antipode():
    C, eps, S = sweedler_h4()
    _, d = data_for(C, eps)
    assert np.array_equal(d.sigma, S)
    # S(x) = -gx
    assert list(d.sigma[:, 2]) == [0, 0, 0, -1]


def test_convolution_examples():
    C, eps = cyclic_group_bialgebra(2)
    e = make_counit(C, eps)
    ident = QQ.eye(2)
    u_eps = convolution_unit(C, e)
    assert np.array_equal(convolution(u_eps, ident, C), ident)
    assert np.array_equal(convolution(ident, ident, C), QQ.array([[1, 1], [0, 0]]))
    S = inversion_matrix(2, lambda j: j)
    assert np.array_equal(convolution(S, ident, C), u_eps)


@pytest.mark.parametrize("m", [2, 3])
def test_cyclic_antipode(m):
    C, eps = cyclic_group_bialgebra(m)
    _, d = data_for(C, eps)
    res = build_antipode(d, C, make_counit(C, eps))
    assert res == Antipode(res.S)
    assert np.array_equal(res.S, inversion_matrix(m, lambda j: (-j) % m))


def test_s3_antipode():
    C, eps = s3_bialgebra()
    _, d = data_for(C, eps)
    res = build_antipode(d, C, make_counit(C, eps))
    assert isinstance(res, Antipode)
    assert np.array_equal(res.S, s3_inversion())


def test_h4_antipode():
    C, eps, S = sweedler_h4()
    _, d = data_for(C, eps)
    e = make_counit(C, eps)
    res = build_antipode(d, C, e)
    assert isinstance(res, Antipode) and np.array_equal(res.S, S)
    unit = convolution_unit(C, e)
    assert np.array_equal(convolution(S, QQ.eye(4), C), unit)
    assert np.array_equal(convolution(QQ.eye(4), S, C), unit)


def test_noninvertible_a_gives_no_antipode():
    C, eps = cyclic_group_bialgebra(2)
    _, d = data_for(C, eps)
    forged = AntipodeData(d.sigma, QQ.array([1, 1]), d.b_elem)  # 1 + g is a zero divisor
    assert build_antipode(forged, C, make_counit(C, eps)) == NoAntipode()


def test_build_antipode_needs_counit():
    C, eps = cyclic_group_bialgebra(2)
    _, d = data_for(C, eps)
    with pytest.raises(PreconditionError):
        build_antipode(d, C, make_counit(C, QQ.array([1, 0])))


@pytest.mark.parametrize("seed", range(4))
def test_antipode_from_shifted_structure_is_inversion(seed):
    C, eps = s3_bialgebra()
    A = C.alg
    base = check_slack_hopf(C, A.tensor_one(2))
    g = random_env_unit(A, np.random.default_rng(seed))
    _, d = data_for(C, eps, torsor_act(base, g))
    res = build_antipode(d, C, make_counit(C, eps))
    assert isinstance(res, Antipode)
    assert np.array_equal(res.S, s3_inversion())


def test_fusion_operator_invertibility():
    C, _ = cyclic_group_bialgebra(2)
    assert isinstance(solve_or_invert(fusion_operator(C), QQ), Inverse)
    M, _ = matrix_flip_comagma(2)
    assert not isinstance(solve_or_invert(fusion_operator(M), QQ), Inverse)
    B, _ = bool_monoid_bialgebra()
    assert not isinstance(solve_or_invert(fusion_operator(B), QQ), Inverse)


small = st.lists(st.integers(-2, 2), min_size=16, max_size=16).map(lambda xs: QQ.array(xs).reshape(4, 4))


@settings(max_examples=25, deadline=None)
@given(small, small, small)
def test_convolution_associative_with_unit(f, g, h):
    C, eps, _ = sweedler_h4()
    e = make_counit(C, eps)
    assert np.array_equal(convolution(convolution(f, g, C), h, C), convolution(f, convolution(g, h, C), C))
    unit = convolution_unit(C, e)
    assert np.array_equal(convolution(unit, f, C), f)
    assert np.array_equal(convolution(f, unit, C), f)
