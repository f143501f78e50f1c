"""Ready-made algebras used as fixtures, CLI data and documentation examples."""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .algebra import ComagmaAlgebra, FinDimAlgebra, conjugate_coproduct
from .exactlin import QQ, Field


def algebra_from_table(field: Field, elements, op, unit) -> FinDimAlgebra:
    """Monoid algebra ``k[M]`` from a finite multiplication table."""
    elements = list(elements)
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    mult = field.zeros((n, n, n))
    for a, b in itertools.product(elements, repeat=2):
        mult[index[a], index[b], index[op(a, b)]] = field.one
    unit_vec = field.basis_vector(n, index[unit])
    return FinDimAlgebra(field, mult, unit_vec, [str(x) for x in elements])


def grouplike_comagma(A: FinDimAlgebra) -> ComagmaAlgebra:
    """``Δ(e_i) = e_i ⊗ e_i`` on every basis element."""
    n = A.dim
    delta = A.field.zeros((n, n, n))
    for i in range(n):
        delta[i, i, i] = A.field.one
    return ComagmaAlgebra(A, delta)


def grouplike_counit(A: FinDimAlgebra) -> np.ndarray:
    return A.field.array([1] * A.dim)


def monoid_bialgebra(field: Field, elements, op, unit):
    A = algebra_from_table(field, elements, op, unit)
    return grouplike_comagma(A), grouplike_counit(A)


def cyclic_group(m: int):
    return list(range(m)), (lambda a, b: (a + b) % m), 0


def cyclic_group_bialgebra(m: int, field: Field = QQ):
    """``k[Z/m]`` with basis ``g^0, ..., g^{m-1}``."""
    C, eps = monoid_bialgebra(field, *cyclic_group(m))
    names = ["1"] + [f"g{i}" if i > 1 else "g" for i in range(1, m)]
    C.alg.basis_names = tuple(names)
    return C, eps


def s3_elements():
    return list(itertools.permutations(range(3)))


def s3_bialgebra(field: Field = QQ):
    def compose(p, q):
        return tuple(p[q[x]] for x in range(3))

    C, eps = monoid_bialgebra(field, s3_elements(), compose, (0, 1, 2))
    # one-line notation, e.g. "102" swaps 0 and 1
    C.alg.basis_names = tuple("".join(map(str, p)) for p in s3_elements())
    return C, eps


def bool_monoid():
    """The multiplicative monoid {1, 0}."""
    return ["1", "z"], (lambda a, b: "z" if "z" in (a, b) else "1"), "1"


def bool_monoid_bialgebra(field: Field = QQ):
    return monoid_bialgebra(field, *bool_monoid())


def matrix_algebra(m: int, field: Field = QQ) -> FinDimAlgebra:
    """``M_m(k)`` on matrix units; ``e_ij`` has index ``i*m + j``."""
    n = m * m
    mult = field.zeros((n, n, n))
    for i, j, l in itertools.product(range(m), repeat=3):
        mult[i * m + j, j * m + l, i * m + l] = field.one
    unit = field.zeros(n)
    for i in range(m):
        unit[i * m + i] = field.one
    names = [f"e{i + 1}{j + 1}" for i in range(m) for j in range(m)]
    return FinDimAlgebra(field, mult, unit, names)


def flip_element(m: int, field: Field = QQ) -> np.ndarray:
    """``t = Σ e_ij ⊗ e_ji``: the swap of ``k^m ⊗ k^m`` inside ``M_m ⊗ M_m``."""
    n = m * m
    t = field.zeros((n, n))
    for i, j in itertools.product(range(m), repeat=2):
        t[i * m + j, j * m + i] = field.one
    return t


def left_trivial_comagma(A: FinDimAlgebra) -> ComagmaAlgebra:
    """``Δ = A ⊗ u``, i.e. ``Δ(x) = x ⊗ 1``."""
    n = A.dim
    delta = A.field.einsum("ij,k->ijk", A.field.eye(n), A.unit)
    return ComagmaAlgebra(A, delta)


def matrix_flip_comagma(m: int = 2, field: Field = QQ):
    """``(M_m, Δ_t)`` with ``Δ = A ⊗ u`` conjugated by the flip ``t``.

    Returns ``(comagma, t)``; ``Δ_t(x) = 1 ⊗ x``.
    """
    A = matrix_algebra(m, field)
    t = flip_element(m, field)
    return conjugate_coproduct(left_trivial_comagma(A), t, t), t


def sweedler_h4(field: Field = QQ):
    """Sweedler's four-dimensional Hopf algebra, basis ``1, g, x, gx``.

    ``g² = 1``, ``x² = 0``, ``xg = -gx``, ``Δg = g⊗g``, ``Δx = x⊗1 + g⊗x``.
    Returns ``(comagma, counit, antipode_matrix)``.
    """
    # basis g^a x^b has index a + 2b
    def idx(a, b):
        return a + 2 * b

    mult = field.zeros((4, 4, 4))
    for a, b, c, d in itertools.product(range(2), repeat=4):
        if b + d >= 2:
            continue
        sign = -1 if (b * c) % 2 else 1
        mult[idx(a, b), idx(c, d), idx((a + c) % 2, b + d)] = field.coerce(sign)
    A = FinDimAlgebra(field, mult, field.basis_vector(4, 0), ["1", "g", "x", "gx"])
    g, x = A.e(1), A.e(2)
    dg = A.tensor(g, g)
    dx = A.field.reduce(A.tensor(x, A.one) + A.tensor(g, x))
    one2 = A.tensor_one(2)
    rows = [one2, dg, dx, A.tmul(dg, dx)]
    C = ComagmaAlgebra(A, np.array(rows, dtype=object))
    eps = field.array([1, 1, 0, 0])
    # S(1)=1, S(g)=g, S(x)=-gx, S(gx)=S(x)S(g)=x ; column j = S(e_j)
    S = field.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    return C, eps, S


def z2_quasi_associator(field: Field = QQ):
    """Associator ``φ = 1⊗1⊗1 − 2 p⊗p⊗p`` on ``k[Z/2]`` with ``p = (1 − g)/2``.

    ``φ² = 1`` so ``φ⁻¹ = φ``.  Needs characteristic ≠ 2.
    """
    half = field.coerce(Fraction(1, 2))
    p = field.array([half, -half])
    one = field.array([1, 0])
    phi = field.reduce(np.multiply.outer(np.multiply.outer(one, one), one)
                       - 2 * np.multiply.outer(np.multiply.outer(p, p), p))
    return phi, phi.copy()


def _s3_inversion(field: Field) -> np.ndarray:
    el = s3_elements()
    S = field.zeros((6, 6))
    for j, p in enumerate(el):
        inv = tuple(sorted(range(3), key=lambda x: p[x]))
        S[el.index(inv), j] = field.one
    return S


def twisted_s3_quasi(field: Field = QQ):
    """Drinfeld twist of ``k[S₃]`` by ``F = 1⊗1 + (1 − s)⊗(1 − t)``.

    ``s, t`` are the transpositions ``102`` and ``021`` in one-line notation; ``F⁻¹ = 1⊗1 − N/5``
    because ``N² = 4N``.  Twisting gives a noncommutative quasi-Hopf algebra with
    nontrivial associator.  Returns ``(comagma, counit, phi, phi_inv, S, alpha, beta)``
    with the twisted quasi-antipode ``α = S(F⁻¹₁)F⁻¹₂``, ``β = F₁S(F₂)``.
    """
    C, eps = s3_bialgebra(field)
    A = C.alg
    names = list(A.basis_names)
    s = A.e(names.index("102"))
    t = A.e(names.index("021"))
    N = A.tensor(A.one - s, A.one - t)
    one2 = A.tensor_one(2)
    F = field.reduce(one2 + N)
    Fi = field.reduce(one2 - field.coerce(Fraction(1, 5)) * N)
    CF = conjugate_coproduct(C, F, Fi)
    phi = A.tprod(A.tensor(A.one, F), C.delta_on_slot(F, 1), C.delta_on_slot(Fi, 0), A.tensor(Fi, A.one))
    phi_inv = A.tprod(A.tensor(F, A.one), C.delta_on_slot(F, 0), C.delta_on_slot(Fi, 1), A.tensor(A.one, Fi))
    S = _s3_inversion(field)
    n = A.dim
    alpha = field.reduce(sum((Fi[i, j] * A.mul(S[:, i], A.e(j)) for i in range(n) for j in range(n)), A.zero()))
    beta = field.reduce(sum((F[i, j] * A.mul(A.e(i), S[:, j]) for i in range(n) for j in range(n)), A.zero()))
    return CF, eps, phi, phi_inv, S, alpha, beta
