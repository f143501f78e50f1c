"""Exact scalar fields and dense linear/tensor algebra over them.

Two kinds of field are supported: the rationals (elements are
:class:`fractions.Fraction`) and prime fields GF(p) (elements are
canonical residues stored as Python ``int`` in ``[0, p)``).  Matrices and
tensors are numpy arrays of ``dtype=object`` so every entry stays exact.

Tensor conventions are global: a rank-k tensor over an n-dimensional
space is an array of shape ``(n,) * k`` and the flat index of
``(i_1, ..., i_k)`` is row-major, ``sum(i_j * n**(k - j))``.  A linear map
is an ``m x n`` matrix whose column ``j`` is the image of basis vector
``j``.
"""

from __future__ import annotations

import functools
import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import DimensionMismatch, NonSquare, SlotOutOfRange, ZeroInverse

__all__ = [
    "Field",
    "RationalField",
    "PrimeField",
    "QQ",
    "GF",
    "parse_field",
    "scalar_invert",
    "Inverse",
    "Singular",
    "solve_or_invert",
    "rank",
    "kernel_basis",
    "matmul",
    "tensor_contract",
    "flat_index",
    "batch_invertible_mod_p",
    "enumerate_vectors",
]


class Field:
    """An exact field.  Subclasses fix the element representation."""

    tag: str
    order: int | None = None

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def coerce(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def reduce(self, arr):
        """Bring an object array produced by ring operations back to canonical form."""
        return arr

    def parse(self, token: str):
        raise NotImplementedError

    def format(self, x) -> str:
        return str(x)

    def random_element(self, rng: random.Random | np.random.Generator):
        raise NotImplementedError

    def array(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        return _map_object(arr, self.coerce)

    def zeros(self, shape) -> np.ndarray:
        arr = np.empty(shape, dtype=object)
        arr.fill(self.zero)
        return arr

    def eye(self, n: int) -> np.ndarray:
        m = self.zeros((n, n))
        for i in range(n):
            m[i, i] = self.one
        return m

    def basis_vector(self, n: int, i: int) -> np.ndarray:
        e = self.zeros(n)
        e[i] = self.one
        return e

    def einsum(self, subscripts: str, *operands) -> np.ndarray:
        out = np.einsum(subscripts, *operands, optimize="greedy")
        if not isinstance(out, np.ndarray):
            out = np.array(out, dtype=object)
        return self.reduce(out)

    def __repr__(self):
        return self.tag


class RationalField(Field):
    tag = "QQ"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, np.integer)):
            return Fraction(int(x))
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def inv(self, x):
        x = self.coerce(x)
        if x == 0:
            raise ZeroInverse("0 has no inverse in QQ")
        return 1 / x

    _TOKEN = re.compile(r"^[+-]?\d+(/\d+)?$")

    def parse(self, token: str):
        token = token.strip()
        if not self._TOKEN.match(token):
            raise ValueError(f"not an exact rational: {token!r}")
        value = Fraction(token)
        return value

    def format(self, x) -> str:
        x = self.coerce(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def einsum(self, subscripts: str, *operands) -> np.ndarray:
        # Contract integer numerators and divide once: int arithmetic is an
        # order of magnitude cheaper than Fraction arithmetic.
        scaled, scale = [], 1
        for op in operands:
            arr = np.asarray(op, dtype=object)
            den = 1
            for x in arr.flat:
                if isinstance(x, Fraction) and x.denominator != 1:
                    den = math.lcm(den, x.denominator)
            scaled.append(_map_object(arr, lambda x, d=den: x.numerator * (d // x.denominator)))
            scale *= den
        out = np.einsum(subscripts, *scaled, optimize="greedy")
        out = np.asarray(out, dtype=object)
        return _map_object(out, lambda x: Fraction(x, scale))

    def random_element(self, rng, low=-3, high=3):
        if isinstance(rng, np.random.Generator):
            return Fraction(int(rng.integers(low, high + 1)))
        return Fraction(rng.randint(low, high))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or not _is_prime(p):
            raise ValueError(f"GF(p) needs a prime p, got {p}")
        self.p = p
        self.order = p
        self.tag = f"GF({p})"

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroInverse(f"{x} has no image in {self.tag}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, (int, np.integer)):
            return int(x) % self.p
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into {self.tag}")

    def inv(self, x):
        x = self.coerce(x)
        if x == 0:
            raise ZeroInverse(f"0 has no inverse in {self.tag}")
        return pow(x, -1, self.p)

    def reduce(self, arr):
        if isinstance(arr, np.ndarray):
            return arr % self.p
        return arr % self.p

    def parse(self, token: str):
        token = token.strip()
        if not re.match(r"^[+-]?\d+$", token):
            raise ValueError(f"not an integer residue: {token!r}")
        return int(token) % self.p

    def random_element(self, rng):
        if isinstance(rng, np.random.Generator):
            return int(rng.integers(0, self.p))
        return rng.randrange(self.p)

    def elements(self) -> list[int]:
        return list(range(self.p))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(text: str) -> Field:
    text = text.strip()
    if text in ("QQ", "Q"):
        return QQ
    m = re.fullmatch(r"GF\((\d+)\)", text)
    if m:
        return GF(int(m.group(1)))
    raise ValueError(f"unknown field {text!r}; expected QQ or GF(p)")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _map_object(arr: np.ndarray, fn) -> np.ndarray:
    out = np.empty(arr.shape, dtype=object)
    flat_in = arr.reshape(-1)
    flat_out = out.reshape(-1)
    for i, x in enumerate(flat_in):
        flat_out[i] = fn(x)
    return out


def scalar_invert(x, field: Field):
    """Exact multiplicative inverse; raises :class:`ZeroInverse` on zero."""
    return field.inv(x)


# -- matrices ---------------------------------------------------------------


def matmul(a: np.ndarray, b: np.ndarray, field: Field) -> np.ndarray:
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatch(f"cannot compose {a.shape} with {b.shape}")
    return field.einsum("ij,j...->i...", a, b)


@dataclass(frozen=True)
class Inverse:
    matrix: np.ndarray


@dataclass(frozen=True)
class Singular:
    kernel: list  # list of nonzero vectors spanning ker M

    @property
    def nullity(self) -> int:
        return len(self.kernel)


def solve_or_invert(M: np.ndarray, field: Field) -> Inverse | Singular:
    """Invert a square matrix exactly, or return a basis of its kernel.

    Over QQ rows are cleared of denominators and reduced with fraction-free
    (Bareiss) Gauss-Jordan elimination; over GF(p) plain elimination is used.
    """
    M = np.asarray(M, dtype=object)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {M.shape}")
    n = M.shape[0]
    if n == 0:
        return Inverse(field.zeros((0, 0)))
    if isinstance(field, PrimeField):
        return _gauss_jordan_mod_p(M, field)
    return _bareiss_rational(M)


def rank(M: np.ndarray, field: Field) -> int:
    M = np.asarray(M, dtype=object)
    rows, cols = M.shape
    if isinstance(field, PrimeField):
        p = field.p
        A = [[int(x) % p for x in row] for row in M]
        _, pivots = _rref_mod_p(A, p, cols)
        return len(pivots)
    A = [_clear_denominators(row)[0] for row in M]
    _, pivots, _ = _fraction_free_rref(A, cols)
    return len(pivots)


def kernel_basis(M: np.ndarray, field: Field) -> list[np.ndarray]:
    """Basis of the right kernel of a (possibly rectangular) matrix."""
    M = np.asarray(M, dtype=object)
    rows, cols = M.shape
    if isinstance(field, PrimeField):
        p = field.p
        A, pivots = _rref_mod_p([[int(x) % p for x in row] for row in M], p, cols)

        def entry(r, f):
            return (-A[r][f]) % p

        unit = 1
    else:
        A, pivots, _ = _fraction_free_rref([_clear_denominators(row)[0] for row in M], cols)

        def entry(r, f):
            return Fraction(-A[r][f], A[r][pivots[r]])

        unit = Fraction(1)
    kernel = []
    for f in (c for c in range(cols) if c not in pivots):
        vec = field.zeros(cols)
        vec[f] = unit
        for r, c in enumerate(pivots):
            vec[c] = entry(r, f)
        kernel.append(vec)
    return kernel


def _clear_denominators(row) -> tuple[list[int], int]:
    row = [Fraction(x) for x in row]
    d = 1
    for x in row:
        d = d * x.denominator // math.gcd(d, x.denominator)
    return [int(x * d) for x in row], d


def _fraction_free_rref(A: list[list[int]], ncols: int):
    """Bareiss-style Gauss-Jordan on integer rows, in place.

    Every pivot row ends with the same pivot value (the last pivot used);
    all intermediate divisions are exact.
    """
    nrows = len(A)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv_row = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if piv_row is None:
            continue
        if piv_row != r:
            A[r], A[piv_row] = A[piv_row], A[r]
        piv = A[r][c]
        rowr = A[r]
        for i in range(nrows):
            if i == r:
                continue
            rowi = A[i]
            f = rowi[c]
            new = []
            for x, y in zip(rowi, rowr):
                num = piv * x - f * y
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("inexact Bareiss division")
                new.append(q)
            A[i] = new
        prev = piv
        pivots.append(c)
        r += 1
    return A, pivots, prev


def _bareiss_rational(M: np.ndarray) -> Inverse | Singular:
    n = M.shape[0]
    A = []
    for i in range(n):
        ints, d = _clear_denominators(M[i])
        aug = [0] * n
        aug[i] = d
        A.append(ints + aug)
    A, pivots, last = _fraction_free_rref(A, n)
    if len(pivots) == n:
        inv = np.empty((n, n), dtype=object)
        for i in range(n):
            piv = A[i][i]
            for j in range(n):
                inv[i, j] = Fraction(A[i][n + j], piv)
        return Inverse(inv)
    free = [c for c in range(n) if c not in pivots]
    kernel = []
    for f in free:
        vec = np.empty(n, dtype=object)
        vec.fill(Fraction(0))
        vec[f] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = Fraction(-A[r][f], A[r][c])
        kernel.append(vec)
    return Singular(kernel)


def _rref_mod_p(A: list[list[int]], p: int, ncols: int):
    nrows = len(A)
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv_row = next((i for i in range(r, nrows) if A[i][c] % p), None)
        if piv_row is None:
            continue
        A[r], A[piv_row] = A[piv_row], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        rowr = A[r]
        for i in range(nrows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], rowr)]
        pivots.append(c)
        r += 1
    return A, pivots


def _gauss_jordan_mod_p(M: np.ndarray, field: PrimeField) -> Inverse | Singular:
    p = field.p
    n = M.shape[0]
    A = []
    for i in range(n):
        aug = [0] * n
        aug[i] = 1
        A.append([int(x) % p for x in M[i]] + aug)
    A, pivots = _rref_mod_p(A, p, n)
    if len(pivots) == n:
        inv = np.array([row[n:] for row in A], dtype=object)
        return Inverse(inv)
    free = [c for c in range(n) if c not in pivots]
    kernel = []
    for f in free:
        vec = np.zeros(n, dtype=object)
        vec[:] = 0
        vec[f] = 1
        for r, c in enumerate(pivots):
            vec[c] = (-A[r][f]) % p
        kernel.append(vec)
    return Singular(kernel)


def batch_invertible_mod_p(stack: np.ndarray, p: int) -> np.ndarray:
    """Decide invertibility mod p for a stack of square matrices at once.

    ``stack`` has shape ``(batch, n, n)``; returns a boolean array.  This is a
    vectorised screen for enumeration; callers re-certify hits with
    :func:`solve_or_invert`.
    """
    A = np.asarray(stack, dtype=np.int64) % p
    if p >= 1 << 31:
        raise ValueError("batched screening only supports p < 2**31")
    batch, n, _ = A.shape
    inv_table = np.array([0] + [pow(i, -1, p) for i in range(1, p)], dtype=np.int64)
    alive = np.ones(batch, dtype=bool)
    idx = np.arange(batch)
    for c in range(n):
        sub = A[:, c:, c]
        nz = sub != 0
        has = nz.any(axis=1)
        alive &= has
        piv = c + np.argmax(nz, axis=1)
        # swap pivot row into position c
        row_c = A[idx, c, :].copy()
        row_p = A[idx, piv, :].copy()
        A[idx, c, :] = row_p
        A[idx, piv, :] = row_c
        pv = A[:, c, c]
        inv = inv_table[pv]
        A[:, c, :] = A[:, c, :] * inv[:, None] % p
        factors = A[:, c + 1 :, c].copy()
        A[:, c + 1 :, :] = (A[:, c + 1 :, :] - factors[:, :, None] * A[:, c, None, :]) % p
    return alive


def enumerate_vectors(field: PrimeField, length: int, limit: int | None = None) -> np.ndarray:
    """All vectors of GF(p)^length in lexicographic order, as an int64 array."""
    p = field.p
    total = p**length
    if limit is not None and total > limit:
        from .errors import BoundExceeded

        raise BoundExceeded(f"{total} candidates exceed the bound {limit}")
    grid = np.indices((p,) * length).reshape(length, -1).T if length else np.zeros((1, 0), np.int64)
    return grid.astype(np.int64)


# -- tensors ----------------------------------------------------------------


def flat_index(idx: Sequence[int], n: int) -> int:
    out = 0
    for i in idx:
        out = out * n + i
    return out


def tensor_contract(t: np.ndarray, maps: Mapping[int, np.ndarray], field: Field) -> np.ndarray:
    """Apply linear maps slotwise to a tensor.

    ``maps`` sends a 0-based slot to an ``m x n`` matrix.  Maps with ``m == 1``
    (functionals such as a counit) remove their slot, so the rank drops.
    """
    t = np.asarray(t, dtype=object)
    k = t.ndim
    out = t
    squeeze = []
    for slot, M in maps.items():
        if not 0 <= slot < k:
            raise SlotOutOfRange(f"slot {slot} out of range for rank {k}")
        M = np.asarray(M, dtype=object)
        if M.ndim == 1:
            M = M.reshape(1, -1)
        if M.shape[1] != t.shape[slot]:
            raise DimensionMismatch(
                f"map with {M.shape[1]} columns applied to slot of dimension {t.shape[slot]}"
            )
        out = np.moveaxis(np.tensordot(M, out, axes=([1], [slot])), 0, slot)
        if M.shape[0] == 1:
            squeeze.append(slot)
    if squeeze:
        out = out.reshape([d for s, d in enumerate(out.shape) if s not in squeeze])
    return field.reduce(out) if isinstance(out, np.ndarray) else out


def is_zero(arr) -> bool:
    return all(x == 0 for x in np.asarray(arr, dtype=object).reshape(-1))


def equal(a, b) -> bool:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    return a.shape == b.shape and all(x == y for x, y in zip(a.reshape(-1), b.reshape(-1)))


def iter_nonzero(t: np.ndarray) -> Iterator[tuple[tuple[int, ...], object]]:
    for idx in np.ndindex(*t.shape):
        if t[idx] != 0:
            yield idx, t[idx]


def from_sparse(field: Field, shape, entries: Iterable[tuple]) -> np.ndarray:
    out = field.zeros(shape)
    for *idx, c in entries:
        out[tuple(idx)] = field.coerce(out[tuple(idx)] + field.coerce(c))
    return field.reduce(out)
