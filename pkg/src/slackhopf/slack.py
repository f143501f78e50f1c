"""Slack left Hopf structures on comagma algebras.

For ``v ∈ A ⊗ A`` the operator ``H^v(x ⊗ y) = x₍₁₎v⁽¹⁾ ⊗ x₍₂₎v⁽²⁾y`` is
materialised as an ``n² x n²`` matrix; ``v`` is a slack left Hopf structure
exactly when that matrix is invertible.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import ComagmaAlgebra, FinDimAlgebra
from .errors import BoundExceeded, DimensionMismatch, IdentityViolation
from .exactlin import (
    Field,
    Inverse,
    PrimeField,
    batch_invertible_mod_p,
    enumerate_vectors,
    equal,
    matmul,
    solve_or_invert,
)
from .report import ValidationReport

DEFAULT_MAX_EXHAUSTIVE = 2**20


def max_exhaustive() -> int:
    raw = os.environ.get("SLACKHOPF_MAX_EXHAUSTIVE")
    return int(raw) if raw else DEFAULT_MAX_EXHAUSTIVE


def build_Hv(C: ComagmaAlgebra, v) -> np.ndarray:
    A = C.alg
    n = A.dim
    v = A.field.array(v)
    if v.shape != (n, n):
        raise DimensionMismatch(f"v must be an {n}x{n} array, got {v.shape}")
    c = A.mult
    # X[i] = Δ(e_i) · v in A ⊗ A, then multiply the second leg by e_j on the right
    X = A.field.einsum("iab,pq,apk,bqm->ikm", C.delta, v, c, c)
    H = A.field.einsum("ikm,mjl->klij", X, c)
    return H.reshape(n * n, n * n)


def apply(M: np.ndarray, T, field: Field) -> np.ndarray:
    """Apply an ``n² x n²`` operator to an element of ``A ⊗ A``."""
    T = np.asarray(T, dtype=object)
    return matmul(M, T.reshape(-1), field).reshape(T.shape)


@dataclass(eq=False)
class SlackHopfCertificate:
    comagma: ComagmaAlgebra
    v: np.ndarray
    Hv: np.ndarray
    Hv_inv: np.ndarray
    w: np.ndarray
    nabla: np.ndarray  # nabla[i] = ∇(e_i) as an n x n array
    checks: ValidationReport = dc_field(default=None, repr=False)

    @property
    def alg(self) -> FinDimAlgebra:
        return self.comagma.alg

    @property
    def field(self) -> Field:
        return self.comagma.field

    def H(self, T) -> np.ndarray:
        return apply(self.Hv, T, self.field)

    def H_inv(self, T) -> np.ndarray:
        return apply(self.Hv_inv, T, self.field)

    def nabla_of(self, x) -> np.ndarray:
        return self.field.einsum("i,ijk->jk", x, self.nabla)

    def nabla_matrix(self) -> np.ndarray:
        n = self.alg.dim
        return np.transpose(self.nabla, (1, 2, 0)).reshape(n * n, n)


@dataclass(frozen=True)
class NotSlack:
    kernel: list  # nonzero witnesses in ker H^v, as n x n arrays


def _derive(C: ComagmaAlgebra, v, Hv, Hv_inv) -> SlackHopfCertificate:
    A = C.alg
    F = A.field
    n = A.dim
    w = apply(Hv_inv, A.tensor_one(2), F)
    rows = []
    for i in range(n):
        # v⁽¹⁾ e_i ⊗ v⁽²⁾
        src = F.einsum("pq,pk->kq", v, A.mult[:, i, :])
        rows.append(apply(Hv_inv, src, F))
    nabla = np.array(rows, dtype=object)
    return SlackHopfCertificate(C, v, Hv, Hv_inv, w, nabla)


def certificate_invariants(cert: SlackHopfCertificate) -> ValidationReport:
    rep = ValidationReport("certificate")
    A = cert.alg
    F = A.field
    n = A.dim
    N = n * n
    rep.record("Hv_inverse", equal(matmul(cert.Hv, cert.Hv_inv, F), F.eye(N))
               and equal(matmul(cert.Hv_inv, cert.Hv, F), F.eye(N)))
    rep.record("w_definition", equal(cert.w, cert.H_inv(A.tensor_one(2))))
    for i in range(n):
        src = F.einsum("pq,pk->kq", cert.v, A.mult[:, i, :])
        rep.record(f"nabla_definition[{A.basis_names[i]}]", equal(cert.nabla[i], cert.H_inv(src)))
    rep.extend(nabla_antihomomorphism(cert))
    return rep


def nabla_antihomomorphism(cert: SlackHopfCertificate) -> ValidationReport:
    """``∇(xy) = ∇(y)·∇(x)`` in ``Aᵉ`` and ``∇(1) = 1⊗1``."""
    rep = ValidationReport("nabla antimorphism")
    A = cert.alg
    n = A.dim
    for i in range(n):
        for j in range(n):
            lhs = cert.nabla_of(A.mul(A.e(i), A.e(j)))
            rhs = A.emul(cert.nabla[j], cert.nabla[i])
            rep.record(f"nabla_antimorphism[{A.basis_names[i]},{A.basis_names[j]}]", equal(lhs, rhs))
    rep.record("nabla_unit", equal(cert.nabla_of(A.one), A.tensor_one(2)))
    return rep


def check_slack_hopf(C: ComagmaAlgebra, v) -> SlackHopfCertificate | NotSlack:
    A = C.alg
    v = A.field.array(v)
    Hv = build_Hv(C, v)
    res = solve_or_invert(Hv, A.field)
    if not isinstance(res, Inverse):
        n = A.dim
        return NotSlack([k.reshape(n, n) for k in res.kernel])
    cert = _derive(C, v, Hv, res.matrix)
    cert.checks = certificate_invariants(cert)
    if not cert.checks.ok:
        raise IdentityViolation(str(cert.checks), cert.checks)
    return cert


# -- search -----------------------------------------------------------------


@dataclass(frozen=True)
class Found:
    certificate: SlackHopfCertificate
    trial: int | None = None  # index of the successful candidate


@dataclass(frozen=True)
class NoneExists:
    candidates: int


@dataclass(frozen=True)
class Unknown:
    trials: int


def _linear_operator_basis(C: ComagmaAlgebra) -> np.ndarray:
    """``basis[p*n+q] = H^{e_p ⊗ e_q}``; ``H^v`` is linear in ``v``."""
    A = C.alg
    n = A.dim
    out = []
    for p in range(n):
        for q in range(n):
            e = A.field.zeros((n, n))
            e[p, q] = A.field.one
            out.append(build_Hv(C, e))
    return np.array(out, dtype=object)


def _require_exhaustive(field: Field, length: int, bound: int | None) -> int:
    bound = max_exhaustive() if bound is None else bound
    if not isinstance(field, PrimeField):
        raise BoundExceeded(f"exhaustive enumeration is impossible over {field}")
    total = field.p**length
    if total > bound:
        raise BoundExceeded(f"{field.p}^{length} = {total} candidates exceed the bound {bound}")
    return total


def screen_linear_family(basis: np.ndarray, field: PrimeField, bound: int | None = None,
                         chunk: int = 4096):
    """Yield ``(index, coords)`` for every coordinate vector whose combination
    ``Σ coords[r] basis[r]`` is invertible mod p, in lexicographic order."""
    basis64 = np.asarray(basis, dtype=np.int64)
    length = basis64.shape[0]
    total = _require_exhaustive(field, length, bound)
    coords = enumerate_vectors(field, length)
    for start in range(0, total, chunk):
        block = coords[start : start + chunk]
        stack = np.tensordot(block, basis64, axes=([1], [0])) % field.p
        hits = np.nonzero(batch_invertible_mod_p(stack, field.p))[0]
        for h in hits:
            yield start + int(h), block[h]


def enumerate_slack_structures(C: ComagmaAlgebra, bound: int | None = None) -> list[np.ndarray]:
    """Every slack left Hopf structure, by complete enumeration of ``A ⊗ A`` over GF(p)."""
    n = C.dim
    basis = _linear_operator_basis(C)
    return [C.field.array(c.reshape(n, n)) for _, c in screen_linear_family(basis, C.field, bound)]


def find_slack_hopf(C: ComagmaAlgebra, strategy: str = "exhaustive", seed: int = 0,
                    max_trials: int = 64, bound: int | None = None) -> Found | NoneExists | Unknown:
    """Search for a slack left Hopf structure.

    ``exhaustive`` enumerates all of ``A ⊗ A`` over a prime field and is the
    only strategy that can report :class:`NoneExists`.  ``randomized`` draws
    coordinates uniformly (from ``[-3, 3]`` over QQ) and reports
    :class:`Unknown` after ``max_trials`` misses; the hit returned is always
    the lowest trial index.
    """
    A = C.alg
    n = A.dim
    if strategy == "exhaustive":
        basis = _linear_operator_basis(C)
        total = _require_exhaustive(A.field, n * n, bound)
        for index, coords in screen_linear_family(basis, A.field, bound):
            cert = check_slack_hopf(C, coords.reshape(n, n))
            if isinstance(cert, SlackHopfCertificate):
                return Found(cert, index)
        return NoneExists(total)
    if strategy == "randomized":
        rng = np.random.default_rng(seed)
        for trial in range(max_trials):
            v = A.field.zeros((n, n))
            for idx in np.ndindex(n, n):
                v[idx] = A.field.random_element(rng)
            res = check_slack_hopf(C, v)
            if isinstance(res, SlackHopfCertificate):
                return Found(res, trial)
        return Unknown(max_trials)
    raise ValueError(f"unknown strategy {strategy!r}")


# -- torsor and identities --------------------------------------------------


def torsor_act(cert: SlackHopfCertificate, g) -> np.ndarray:
    """``v ◁ g = H^v(g)``."""
    return cert.H(cert.field.array(g))


def enumerate_env_units(A: FinDimAlgebra, bound: int | None = None) -> list[np.ndarray]:
    """All invertible elements of ``Aᵉ`` over a prime field."""
    n = A.dim
    basis = []
    for p in range(n):
        for q in range(n):
            e = A.field.zeros((n, n))
            e[p, q] = A.field.one
            basis.append(A.env_left_regular(e))
    basis = np.array(basis, dtype=object)
    return [A.field.array(c.reshape(n, n)) for _, c in screen_linear_family(basis, A.field, bound)]


def verify_adjoint_identities(cert: SlackHopfCertificate, C: ComagmaAlgebra | None = None) -> ValidationReport:
    C = C or cert.comagma
    A = C.alg
    F = A.field
    n = A.dim
    rep = ValidationReport("adjunction identities")
    one2 = A.tensor_one(2)
    for i in range(n):
        x = A.e(i)
        name = A.basis_names[i]
        x1 = A.tensor(x, A.one)
        # (1) (x⊗1)·v = H^v ∇(x)
        rep.record(f"(1)[{name}]", equal(A.emul(x1, cert.v), cert.H(cert.nabla[i])))
        # (2) w·(x⊗1) = (H^v)⁻¹ Δ(x)
        rep.record(f"(2)[{name}]", equal(A.emul(cert.w, x1), cert.H_inv(C.apply_delta(x))))
    rep.record("(3)", equal(cert.H(cert.w), one2))
    rep.record("(4)", equal(cert.H_inv(cert.v), one2))
    for i in range(n):
        for j in range(n):
            lhs = cert.H_inv(A.tensor(A.e(i), A.e(j)))
            rhs = A.eprod(cert.nabla[i], cert.w, A.tensor(A.one, A.e(j)))
            rep.record(f"inverse_closed_form[{A.basis_names[i]},{A.basis_names[j]}]", equal(lhs, rhs))
    return rep


def bimodule_property(cert: SlackHopfCertificate) -> ValidationReport:
    """``H^v(a x ⊗ y b) = Δ(a) · H^v(x ⊗ y) · (1 ⊗ b)`` on basis elements."""
    C = cert.comagma
    A = C.alg
    n = A.dim
    rep = ValidationReport("H^v bimodule")
    for a in range(n):
        for b in range(n):
            for x in range(n):
                for y in range(n):
                    ea, eb, ex, ey = A.e(a), A.e(b), A.e(x), A.e(y)
                    lhs = cert.H(A.tensor(A.mul(ea, ex), A.mul(ey, eb)))
                    rhs = A.tprod(C.apply_delta(ea), cert.H(A.tensor(ex, ey)), A.tensor(A.one, eb))
                    rep.record(f"bimodule[{a},{b},{x},{y}]", equal(lhs, rhs))
    return rep


def Q_operator(cert: SlackHopfCertificate, s) -> np.ndarray:
    """Matrix of ``Q^s(x ⊗ y) = ∇(x)·s·(1 ⊗ y)``."""
    A = cert.alg
    n = A.dim
    F = A.field
    cols = []
    for a in range(n):
        ns = A.emul(cert.nabla[a], s)
        for b in range(n):
            cols.append(F.einsum("km,ml->kl", ns, A.mult[:, b, :]).reshape(-1))
    return np.array(cols, dtype=object).T


def _constraint_solutions(rows_fn, n: int, field: PrimeField, bound: int | None):
    """Enumerate all ``t ∈ A ⊗ A`` with ``L(t) = rhs`` for an affine ``rows_fn``.

    ``rows_fn(t)`` returns the stacked residual vector; it must be affine in
    ``t``.  Returns the list of solutions as ``n x n`` arrays.
    """
    length = n * n
    _require_exhaustive(field, length, bound)
    zero = field.zeros((n, n))
    offset = np.asarray(rows_fn(zero), dtype=np.int64)
    cols = []
    for r in range(length):
        e = field.zeros(length)
        e[r] = 1
        cols.append((np.asarray(rows_fn(e.reshape(n, n)), dtype=np.int64) - offset) % field.p)
    L = np.array(cols, dtype=np.int64).T
    coords = enumerate_vectors(field, length)
    out = []
    for start in range(0, coords.shape[0], 8192):
        block = coords[start : start + 8192]
        resid = (block @ L.T + offset) % field.p
        for h in np.nonzero(~resid.any(axis=1))[0]:
            out.append(field.array(block[h].reshape(n, n)))
    return out


def verify_vw_duality(cert: SlackHopfCertificate, C: ComagmaAlgebra | None = None,
                      bound: int | None = None) -> ValidationReport:
    """Confirm by enumeration that ``v`` and ``w`` are the unique solutions of
    their characterising equation pairs."""
    C = C or cert.comagma
    A = C.alg
    F = A.field
    n = A.dim
    _require_exhaustive(F, n * n, bound)
    one2 = A.tensor_one(2)

    def v_conditions(t):
        H = build_Hv(C, t)
        parts = []
        for i in range(n):
            lhs = apply(H, cert.nabla[i], F)
            rhs = A.emul(A.tensor(A.e(i), A.one), t)
            parts.append(F.reduce(lhs - rhs).reshape(-1))
        parts.append(F.reduce(apply(H, cert.w, F) - one2).reshape(-1))
        return np.concatenate(parts)

    def w_conditions(s):
        Q = Q_operator(cert, s)
        parts = []
        for i in range(n):
            lhs = apply(Q, C.apply_delta(A.e(i)), F)
            rhs = A.emul(s, A.tensor(A.e(i), A.one))
            parts.append(F.reduce(lhs - rhs).reshape(-1))
        parts.append(F.reduce(apply(Q, cert.v, F) - one2).reshape(-1))
        return np.concatenate(parts)

    rep = ValidationReport("(Δ,v)/(∇,w) duality")
    ts = _constraint_solutions(v_conditions, n, F, bound)
    rep.record("v_unique", len(ts) == 1 and equal(ts[0], cert.v), f"{len(ts)} solution(s)")
    ss = _constraint_solutions(w_conditions, n, F, bound)
    rep.record("w_unique", len(ss) == 1 and equal(ss[0], cert.w), f"{len(ss)} solution(s)")
    return rep


__all__ = [
    "build_Hv",
    "SlackHopfCertificate",
    "NotSlack",
    "check_slack_hopf",
    "Found",
    "NoneExists",
    "Unknown",
    "find_slack_hopf",
    "enumerate_slack_structures",
    "enumerate_env_units",
    "torsor_act",
    "verify_adjoint_identities",
    "verify_vw_duality",
    "bimodule_property",
    "Q_operator",
    "max_exhaustive",
]
