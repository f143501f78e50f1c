"""Finite-dimensional algebras and comagma algebras given by structure constants.

Elements of ``A`` are length-``n`` coefficient vectors.  Elements of
``A ⊗ A`` (and of the enveloping algebra ``Aᵉ = A^op ⊗ A``, which shares the
same underlying space) are ``n x n`` arrays ``X[i, j]`` standing for
``Σ X[i, j] e_i ⊗ e_j``.  Two products live on that space:

* the tensor-product algebra:  ``(x ⊗ y)(z ⊗ t) = xz ⊗ yt``
* the enveloping algebra:      ``(x ⊗ y)·(z ⊗ t) = zx ⊗ yt``
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidStructure, NotAUnit
from .exactlin import Field, Inverse, equal, is_zero, matmul, solve_or_invert
from .report import ValidationReport


class FinDimAlgebra:
    """Associative unital algebra ``e_i e_j = Σ_k mult[i, j, k] e_k``."""

    def __init__(self, field: Field, mult, unit, basis_names=None, check: bool = True):
        self.field = field
        self.mult = field.array(mult)
        self.unit = field.array(unit)
        n = self.unit.shape[0]
        if self.mult.shape != (n, n, n):
            raise DimensionMismatch(f"structure tensor has shape {self.mult.shape}, expected {(n, n, n)}")
        self.dim = n
        self.basis_names = tuple(basis_names) if basis_names else tuple(f"e{i}" for i in range(n))
        if len(self.basis_names) != n:
            raise DimensionMismatch("one basis label per basis vector is required")
        if check:
            report = validate_algebra(self)
            if not report.ok:
                raise InvalidStructure(str(report), report)

    def __repr__(self):
        return f"FinDimAlgebra({self.field}, dim={self.dim}, basis={list(self.basis_names)})"

    # -- elements of A ------------------------------------------------------

    @property
    def one(self) -> np.ndarray:
        return self.unit.copy()

    def e(self, i: int) -> np.ndarray:
        return self.field.basis_vector(self.dim, i)

    def element(self, coeffs) -> np.ndarray:
        return self.field.array(coeffs)

    def zero(self) -> np.ndarray:
        return self.field.zeros(self.dim)

    def mul(self, x, y) -> np.ndarray:
        table = self._sparse_table()
        out = [0] * self.dim
        ys = [(j, b) for j, b in enumerate(y) if b != 0]
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, b in ys:
                for k, c in table[i][j]:
                    out[k] += a * b * c
        return self.field.array(out)

    def prod(self, *xs) -> np.ndarray:
        out = self.one
        for x in xs:
            out = self.mul(out, x)
        return out

    def left_regular(self, x) -> np.ndarray:
        """Matrix of ``y ↦ x y``."""
        return self.field.einsum("i,ijk->kj", x, self.mult)

    def right_regular(self, x) -> np.ndarray:
        """Matrix of ``y ↦ y x``."""
        return self.field.einsum("j,ijk->ki", x, self.mult)

    def inverse(self, x):
        """Two-sided inverse of ``x`` or ``None``.

        Decided on the left regular representation: in finite dimension a
        one-sided inverse is two-sided.
        """
        res = solve_or_invert(self.left_regular(x), self.field)
        if not isinstance(res, Inverse):
            return None
        return self.field.reduce(np.dot(res.matrix, self.unit))

    def is_commutative(self) -> bool:
        return equal(self.mult, np.transpose(self.mult, (1, 0, 2)))

    # -- tensor powers ------------------------------------------------------

    def tensor(self, *xs) -> np.ndarray:
        """Pure tensor ``x_1 ⊗ ... ⊗ x_k``."""
        out = np.asarray(xs[0], dtype=object)
        for x in xs[1:]:
            out = np.multiply.outer(out, np.asarray(x, dtype=object))
        return self.field.reduce(out)

    def tensor_one(self, rank: int = 2) -> np.ndarray:
        return self.tensor(*([self.unit] * rank))

    def tmul(self, X, Y) -> np.ndarray:
        """Product in the tensor-power algebra ``A^{⊗k}`` (slotwise).

        Loops over nonzero entries; dense einsum on exact scalars is far
        slower for rank three and up.
        """
        X = np.asarray(X, dtype=object)
        Y = np.asarray(Y, dtype=object)
        if X.shape != Y.shape:
            raise DimensionMismatch(f"{X.shape} vs {Y.shape}")
        table = self._sparse_table()
        out = {}
        ys = [(J, b) for J, b in np.ndenumerate(Y) if b != 0]
        for I, a in np.ndenumerate(X):
            if a == 0:
                continue
            for J, b in ys:
                terms = [((), a * b)]
                for i, j in zip(I, J):
                    row = table[i][j]
                    if not row:
                        terms = []
                        break
                    terms = [(K + (k,), c * d) for K, c in terms for k, d in row]
                for K, c in terms:
                    out[K] = out.get(K, 0) + c
        res = self.field.zeros(X.shape)
        for K, c in out.items():
            res[K] = c
        return self.field.reduce(res)

    def _sparse_table(self):
        table = self.__dict__.get("_table")
        if table is None:
            n = self.dim
            table = [[[(k, self.mult[i, j, k]) for k in range(n) if self.mult[i, j, k] != 0]
                      for j in range(n)] for i in range(n)]
            self._table = table
        return table

    def tprod(self, *Xs) -> np.ndarray:
        out = Xs[0]
        for X in Xs[1:]:
            out = self.tmul(out, X)
        return out

    def tensor_inverse(self, X):
        """Inverse in ``A^{⊗k}`` or ``None`` (left regular representation)."""
        X = np.asarray(X, dtype=object)
        k = X.ndim
        N = self.dim**k
        cols = []
        for idx in np.ndindex(*X.shape):
            E = self.field.zeros(X.shape)
            E[idx] = self.field.one
            cols.append(self.tmul(X, E).reshape(-1))
        L = np.array(cols, dtype=object).T
        res = solve_or_invert(L, self.field)
        if not isinstance(res, Inverse):
            return None
        one = self.tensor_one(k).reshape(-1)
        return self.field.reduce(np.dot(res.matrix, one)).reshape((self.dim,) * k)

    # -- enveloping algebra -------------------------------------------------

    def emul(self, X, Y) -> np.ndarray:
        """Enveloping-algebra product ``(x⊗y)·(z⊗t) = zx ⊗ yt``."""
        return self.field.einsum("ij,ab,aik,jbl->kl", X, Y, self.mult, self.mult)

    def eprod(self, *Xs) -> np.ndarray:
        out = Xs[0]
        for X in Xs[1:]:
            out = self.emul(out, X)
        return out

    def env_left_regular(self, X) -> np.ndarray:
        """``n² x n²`` matrix of ``ξ ↦ X · ξ`` in ``Aᵉ``."""
        n = self.dim
        # column (a, b) = X · (e_a ⊗ e_b)
        T = self.field.einsum("ij,aik,jbl->klab", X, self.mult, self.mult)
        return T.reshape(n * n, n * n)


def env_product(A: FinDimAlgebra, x, y) -> np.ndarray:
    x = np.asarray(x, dtype=object)
    y = np.asarray(y, dtype=object)
    if x.shape != (A.dim, A.dim) or y.shape != (A.dim, A.dim):
        raise DimensionMismatch("enveloping elements must be n x n arrays")
    return A.emul(x, y)


@dataclass(frozen=True)
class EnvInverse:
    element: np.ndarray


class NotInvertible:
    def __repr__(self):
        return "NotInvertible"

    def __eq__(self, other):
        return isinstance(other, NotInvertible)

    def __hash__(self):
        return hash("NotInvertible")


def env_invert(A: FinDimAlgebra, x) -> EnvInverse | NotInvertible:
    """Invert ``x`` in ``Aᵉ`` via its left regular representation."""
    x = np.asarray(x, dtype=object)
    n = A.dim
    res = solve_or_invert(A.env_left_regular(x), A.field)
    if not isinstance(res, Inverse):
        return NotInvertible()
    one = A.tensor_one(2).reshape(-1)
    return EnvInverse(matmul(res.matrix, one, A.field).reshape(n, n))


def validate_algebra(A: FinDimAlgebra) -> ValidationReport:
    rep = ValidationReport("algebra")
    F = A.field
    c = A.mult
    n = A.dim
    # (e_i e_j) e_k vs e_i (e_j e_k)
    left = F.einsum("ijm,mkl->ijkl", c, c)
    right = F.einsum("jkm,iml->ijkl", c, c)
    bad = [idx for idx in itertools.product(range(n), repeat=3) if not equal(left[idx], right[idx])]
    for i, j, k in bad:
        names = A.basis_names
        rep.record(f"associativity[{names[i]},{names[j]},{names[k]}]", False)
    if not bad:
        rep.record("associativity", True)
    u_left = F.einsum("i,ijk->jk", A.unit, c)
    u_right = F.einsum("j,ijk->ik", A.unit, c)
    eye = F.eye(n)
    unit_ok = True
    for i in range(n):
        if not equal(u_left[i], eye[i]):
            rep.record(f"unit_left[{A.basis_names[i]}]", False)
            unit_ok = False
        if not equal(u_right[i], eye[i]):
            rep.record(f"unit_right[{A.basis_names[i]}]", False)
            unit_ok = False
    if unit_ok:
        rep.record("unit", True)
    return rep


class ComagmaAlgebra:
    """An algebra with an algebra morphism ``Δ: A → A ⊗ A``.

    ``delta[i, j, k]`` is the coefficient of ``e_j ⊗ e_k`` in ``Δ(e_i)``.
    No coassociativity is assumed.
    """

    def __init__(self, algebra: FinDimAlgebra, delta, check: bool = True):
        self.alg = algebra
        self.field = algebra.field
        self.delta = self.field.array(delta)
        n = algebra.dim
        if self.delta.shape != (n, n, n):
            raise DimensionMismatch(f"Δ tensor has shape {self.delta.shape}, expected {(n, n, n)}")
        if check:
            report = validate_comagma(self)
            if not report.ok:
                raise InvalidStructure(str(report), report)

    @property
    def dim(self) -> int:
        return self.alg.dim

    def __repr__(self):
        return f"ComagmaAlgebra({self.field}, dim={self.dim}, basis={list(self.alg.basis_names)})"

    def apply_delta(self, x) -> np.ndarray:
        return self.field.einsum("i,ijk->jk", x, self.delta)

    def delta_matrix(self) -> np.ndarray:
        """``n² x n`` matrix of Δ in the flat basis."""
        n = self.dim
        return np.transpose(self.delta, (1, 2, 0)).reshape(n * n, n)

    def delta_on_slot(self, T, slot: int) -> np.ndarray:
        """Apply Δ to one leg of a tensor, raising its rank by one."""
        T = np.asarray(T, dtype=object)
        k = T.ndim
        letters = string.ascii_letters
        src = letters[:k]
        out = src[:slot] + "yz" + src[slot + 1 :]
        return self.field.einsum(f"{src},{src[slot]}yz->{out}", T, self.delta)


def validate_comagma(C: ComagmaAlgebra) -> ValidationReport:
    rep = ValidationReport("comagma")
    A = C.alg
    n = A.dim
    ok = True
    for i, j in itertools.product(range(n), repeat=2):
        lhs = C.apply_delta(A.mul(A.e(i), A.e(j)))
        rhs = A.tmul(C.apply_delta(A.e(i)), C.apply_delta(A.e(j)))
        if not equal(lhs, rhs):
            ok = False
            rep.record(f"delta_multiplicative[{A.basis_names[i]},{A.basis_names[j]}]", False)
    if ok:
        rep.record("delta_multiplicative", True)
    rep.record("delta_unital", equal(C.apply_delta(A.one), A.tensor_one(2)))
    return rep


def conjugate_coproduct(C: ComagmaAlgebra, t, t_inv) -> ComagmaAlgebra:
    """The comagma algebra ``(A, Δ_t)`` with ``Δ_t(x) = t Δ(x) t⁻¹`` in ``A ⊗ A``."""
    A = C.alg
    t = A.field.array(t)
    t_inv = A.field.array(t_inv)
    if not equal(A.tmul(t, t_inv), A.tensor_one(2)):
        raise NotAUnit("t · t_inv is not 1 ⊗ 1 in A ⊗ A")
    rows = [A.tprod(t, C.apply_delta(A.e(i)), t_inv) for i in range(A.dim)]
    return ComagmaAlgebra(A, np.array(rows, dtype=object))


__all__ = [
    "FinDimAlgebra",
    "ComagmaAlgebra",
    "EnvInverse",
    "NotInvertible",
    "env_product",
    "env_invert",
    "validate_algebra",
    "validate_comagma",
    "conjugate_coproduct",
    "is_zero",
]
