import itertools

import numpy as np
import pytest

from slackhopf.algebra import (
    ComagmaAlgebra,
    EnvInverse,
    FinDimAlgebra,
    NotInvertible,
    conjugate_coproduct,
    env_invert,
    env_product,
    validate_algebra,
    validate_comagma,
)
from slackhopf.catalog import (
    cyclic_group_bialgebra,
    flip_element,
    left_trivial_comagma,
    matrix_algebra,
    matrix_flip_comagma,
)
from slackhopf.errors import InvalidStructure, NotAUnit
from slackhopf.exactlin import QQ


@pytest.fixture
def z2():
    C, _ = cyclic_group_bialgebra(2)
    return C


def test_group_algebra_valid(z2):
    assert validate_algebra(z2.alg).ok
    assert validate_comagma(z2).ok


def test_matrix_units_valid():
    assert validate_algebra(matrix_algebra(2)).ok


def test_perturbed_unit_reported(z2):
    mult = z2.alg.mult.copy()
    mult[0, 0, 0] += 1
    B = FinDimAlgebra(QQ, mult, z2.alg.unit, check=False)
    rep = validate_algebra(B)
    assert not rep.ok
    assert rep.failed("unit")


def test_matrix_flip_comagma_valid():
    C, t = matrix_flip_comagma(2)
    assert validate_comagma(C).ok
    A = C.alg
    # Δ_t(x) = 1 ⊗ x
    for i in range(A.dim):
        assert np.array_equal(C.apply_delta(A.e(i)), A.tensor(A.one, A.e(i)))


def test_nonmultiplicative_coproduct_fails_at_g_g(z2):
    A = z2.alg
    one, g = A.one, A.e(1)
    bad = np.array([A.tensor(one, one), QQ.reduce(A.tensor(one, g) + A.tensor(g, one))], dtype=object)
    with pytest.raises(InvalidStructure):
        ComagmaAlgebra(A, bad)
    rep = validate_comagma(ComagmaAlgebra(A, bad, check=False))
    assert [c.name for c in rep.violations] == ["delta_multiplicative[g,g]"]


def test_env_unit(z2):
    A = z2.alg
    xi = QQ.array([[1, 2], [3, 4]])
    assert np.array_equal(env_product(A, A.tensor_one(2), xi), xi)
    assert np.array_equal(env_product(A, xi, A.tensor_one(2)), xi)


def test_env_product_flip_squares_to_twice_flip():
    A = matrix_algebra(2)
    t = flip_element(2)
    # (e_ij⊗e_ji)(e_kl⊗e_lk) = e_kl e_ij ⊗ e_ji e_lk, summed by hand
    expected = QQ.zeros((4, 4))
    for i, j, k, l in itertools.product(range(2), repeat=4):
        if l == i:
            expected[k * 2 + j, j * 2 + k] += 1
    assert np.array_equal(env_product(A, t, t), expected)
    assert np.array_equal(expected, 2 * t)


def test_env_product_group_like(z2):
    A = z2.alg
    g1 = A.tensor(A.e(1), A.one)
    assert np.array_equal(env_product(A, g1, g1), A.tensor_one(2))


def test_env_invert(z2):
    A = z2.alg
    res = env_invert(A, A.tensor_one(2))
    assert isinstance(res, EnvInverse) and np.array_equal(res.element, A.tensor_one(2))
    gg = A.tensor(A.e(1), A.e(1))
    res = env_invert(A, gg)
    assert isinstance(res, EnvInverse) and np.array_equal(res.element, gg)
    assert env_invert(matrix_algebra(2), flip_element(2)) == NotInvertible()


def test_env_product_noncommutative_order():
    A = matrix_algebra(2)
    e12, e21 = A.e(1), A.e(2)
    x = A.tensor(e12, A.one)
    y = A.tensor(e21, A.one)
    # first legs multiply in the opposite order
    assert np.array_equal(env_product(A, x, y), A.tensor(A.mul(e21, e12), A.one))


def test_conjugate_by_unit_is_identity(z2):
    one = z2.alg.tensor_one(2)
    assert np.array_equal(conjugate_coproduct(z2, one, one).delta, z2.delta)


def test_conjugate_by_gg_is_identity(z2):
    A = z2.alg
    gg = A.tensor(A.e(1), A.e(1))
    assert np.array_equal(conjugate_coproduct(z2, gg, gg).delta, z2.delta)


def test_conjugate_left_trivial_by_flip():
    A = matrix_algebra(2)
    C = left_trivial_comagma(A)
    t = flip_element(2)
    Ct = conjugate_coproduct(C, t, t)
    for i in range(A.dim):
        assert np.array_equal(Ct.apply_delta(A.e(i)), A.tensor(A.one, A.e(i)))


def test_conjugate_rejects_non_inverse(z2):
    one = z2.alg.tensor_one(2)
    with pytest.raises(NotAUnit):
        conjugate_coproduct(z2, one, 2 * one)
