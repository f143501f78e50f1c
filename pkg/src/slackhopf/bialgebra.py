"""Counits, the data (σ, 𝔞, 𝔟) extracted from a slack structure, convolution
and the antipode it produces on a bialgebra."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import ComagmaAlgebra
from .errors import IdentityViolation, PreconditionError
from .exactlin import Field, equal, tensor_contract
from .report import ValidationReport
from .slack import SlackHopfCertificate, build_Hv


@dataclass(eq=False)
class CounitData:
    epsilon: np.ndarray  # ε(e_i)
    is_left_counit: bool
    is_bialgebra_counit: bool
    is_algebra_morphism: bool
    field: Field

    def __call__(self, x):
        return self.field.reduce(np.dot(self.epsilon, np.asarray(x, dtype=object)))


def make_counit(C: ComagmaAlgebra, epsilon) -> CounitData:
    A = C.alg
    F = A.field
    eps = F.array(epsilon)
    n = A.dim
    alg_ok = F.reduce(np.dot(eps, A.unit)) == F.one
    prods = F.einsum("ijk,k->ij", A.mult, eps)
    alg_ok = alg_ok and equal(prods, F.reduce(np.multiply.outer(eps, eps)))
    left = F.einsum("i,kij->kj", eps, C.delta)
    right = F.einsum("j,kij->ki", eps, C.delta)
    eye = F.eye(n)
    is_left = alg_ok and equal(left, eye)
    return CounitData(eps, is_left, is_left and equal(right, eye), alg_ok, F)


def counit_report(C: ComagmaAlgebra, eps: CounitData) -> ValidationReport:
    rep = ValidationReport("counit")
    rep.record("counit_algebra_morphism", eps.is_algebra_morphism)
    rep.record("left_counit", eps.is_left_counit)
    rep.record("right_counit", eps.is_bialgebra_counit)
    return rep


@dataclass(eq=False)
class AntipodeData:
    sigma: np.ndarray  # column j = σ(e_j)
    a_elem: np.ndarray
    b_elem: np.ndarray
    checks: ValidationReport | None = None
    S: np.ndarray | None = None

    def sigma_of(self, x):
        return np.dot(self.sigma, x)


def _first_leg_counit(C: ComagmaAlgebra, eps: CounitData, T) -> np.ndarray:
    F = C.field
    return tensor_contract(T, {0: eps.epsilon.reshape(1, -1)}, F)


def extract_antipode_data(cert: SlackHopfCertificate, eps: CounitData) -> AntipodeData:
    """σ = (ε⊗A)∇, 𝔞 = (ε⊗A)w, 𝔟 = (ε⊗A)v, with the four derived identities checked."""
    if not eps.is_left_counit:
        raise PreconditionError("extract_antipode_data needs at least a left counit")
    C = cert.comagma
    A = C.alg
    F = A.field
    n = A.dim
    sigma = np.array([_first_leg_counit(C, eps, cert.nabla[j]) for j in range(n)], dtype=object).T
    a = _first_leg_counit(C, eps, cert.w)
    b = _first_leg_counit(C, eps, cert.v)
    data = AntipodeData(F.reduce(sigma), a, b)
    rep = antipode_data_identities(cert, eps, data)
    data.checks = rep
    if not rep.ok:
        raise IdentityViolation(str(rep), rep)
    return data


def apply_map(M, x, field):
    return field.reduce(np.dot(M, x))


def antipode_data_identities(cert: SlackHopfCertificate, eps: CounitData,
                             data: AntipodeData) -> ValidationReport:
    C = cert.comagma
    A = C.alg
    F = A.field
    n = A.dim
    a, b, sig = data.a_elem, data.b_elem, data.sigma
    rep = ValidationReport("antipode data")
    for i in range(n):
        name = A.basis_names[i]
        ex = eps(A.e(i))
        D = C.delta[i]
        # (1) σ(x₍₁₎) 𝔞 x₍₂₎ = 𝔞 ε(x)
        lhs1 = _sum_legs(A, D, lambda p, q: A.prod(apply_map(sig, A.e(p), F), a, A.e(q)))
        rep.record(f"(1)[{name}]", equal(lhs1, F.reduce(a * ex)))
        # (2) ∇⁽¹⁾(x) 𝔟 ∇⁽²⁾(x) = 𝔟 ε(x)
        lhs2 = _sum_legs(A, cert.nabla[i], lambda p, q: A.prod(A.e(p), b, A.e(q)))
        rep.record(f"(2)[{name}]", equal(lhs2, F.reduce(b * ex)))
    # (3) w⁽¹⁾ 𝔟 w⁽²⁾ = 1
    rep.record("(3)", equal(_sum_legs(A, cert.w, lambda p, q: A.prod(A.e(p), b, A.e(q))), A.one))
    # (4) σ(v⁽¹⁾) 𝔞 v⁽²⁾ = 1
    lhs4 = _sum_legs(A, cert.v, lambda p, q: A.prod(apply_map(sig, A.e(p), F), a, A.e(q)))
    rep.record("(4)", equal(lhs4, A.one))
    for i in range(n):
        for j in range(n):
            x, y = A.e(i), A.e(j)
            lhs = apply_map(sig, A.mul(x, y), F)
            rhs = A.mul(apply_map(sig, y, F), apply_map(sig, x, F))
            rep.record(f"sigma_antimorphism[{A.basis_names[i]},{A.basis_names[j]}]", equal(lhs, rhs))
    rep.record("sigma_unit", equal(apply_map(sig, A.one, F), A.one))
    return rep


def _sum_legs(A, T, term):
    """``Σ T[p, q] term(p, q)`` skipping zero coefficients."""
    out = A.zero()
    for (p, q), c in np.ndenumerate(T):
        if c != 0:
            out = out + c * term(p, q)
    return A.field.reduce(out)


def convolution(f: np.ndarray, g: np.ndarray, C: ComagmaAlgebra, eps: CounitData | None = None) -> np.ndarray:
    """``f ∗ g = m (f ⊗ g) Δ`` as an ``n x n`` matrix."""
    A = C.alg
    F = A.field
    # (f*g)(e_i) = Σ Δ[i,a,b] f(e_a) g(e_b)
    return F.einsum("iab,ka,lb,klm->mi", C.delta, f, g, A.mult)


def convolution_unit(C: ComagmaAlgebra, eps: CounitData) -> np.ndarray:
    """``u ∘ ε``."""
    return C.field.reduce(np.multiply.outer(C.alg.unit, eps.epsilon))


@dataclass(frozen=True)
class Antipode:
    S: np.ndarray


@dataclass(frozen=True)
class LeftInverseOnly:
    S: np.ndarray


class NoAntipode:
    def __repr__(self):
        return "NoAntipode"

    def __eq__(self, other):
        return isinstance(other, NoAntipode)

    def __hash__(self):
        return hash("NoAntipode")


def build_antipode(data: AntipodeData, C: ComagmaAlgebra, eps: CounitData):
    """``S(x) = 𝔞⁻¹ σ(x) 𝔞`` when 𝔞 is invertible, with both convolution axioms checked."""
    if not eps.is_bialgebra_counit:
        raise PreconditionError("build_antipode needs a bialgebra counit")
    A = C.alg
    F = A.field
    a_inv = A.inverse(data.a_elem)
    if a_inv is None:
        return NoAntipode()
    n = A.dim
    S = np.array(
        [A.prod(a_inv, apply_map(data.sigma, A.e(j), F), data.a_elem) for j in range(n)], dtype=object
    ).T
    S = F.reduce(S)
    ident = F.eye(n)
    unit = convolution_unit(C, eps)
    left = equal(convolution(S, ident, C), unit)
    right = equal(convolution(ident, S, C), unit)
    if left and right:
        return Antipode(S)
    if left:
        return LeftInverseOnly(S)
    raise IdentityViolation("S is not even a left convolution inverse of id")


def fusion_operator(C: ComagmaAlgebra) -> np.ndarray:
    """``H^l = H^{1⊗1}``."""
    return build_Hv(C, C.alg.tensor_one(2))


__all__ = [
    "CounitData",
    "make_counit",
    "counit_report",
    "AntipodeData",
    "extract_antipode_data",
    "antipode_data_identities",
    "convolution",
    "convolution_unit",
    "Antipode",
    "LeftInverseOnly",
    "NoAntipode",
    "build_antipode",
    "fusion_operator",
]
