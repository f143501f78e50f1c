"""Quasi-bialgebras, quasi-antipodes, slackness and the torsor decomposition.

The associator follows Drinfeld's conventions:

* pentagon  ``(A⊗A⊗Δ)(φ) (Δ⊗A⊗A)(φ) = (1⊗φ) (A⊗Δ⊗A)(φ) (φ⊗1)``
* quasi-coassociativity  ``φ (Δ⊗A)Δ(x) = (A⊗Δ)Δ(x) φ``
* counit triangles  ``(ε⊗A⊗A)φ = (A⊗ε⊗A)φ = (A⊗A⊗ε)φ = 1⊗1``
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import ComagmaAlgebra, EnvInverse, FinDimAlgebra, env_invert
from .bialgebra import CounitData, extract_antipode_data, make_counit
from .errors import IdentityViolation, InvalidStructure, InverseMismatch, PreconditionError
from .exactlin import equal, matmul, tensor_contract
from .report import ValidationReport
from .slack import SlackHopfCertificate, check_slack_hopf, torsor_act


class QuasiBialgebra:
    def __init__(self, comagma: ComagmaAlgebra, eps, phi, phi_inv, check: bool = True):
        self.comagma = comagma
        self.field = comagma.field
        if not isinstance(eps, CounitData):
            eps = make_counit(comagma, eps)
        if not eps.is_bialgebra_counit:
            raise PreconditionError("a quasi-bialgebra needs a two-sided counit that is an algebra morphism")
        self.eps = eps
        self.phi = self.field.array(phi)
        self.phi_inv = self.field.array(phi_inv)
        n = comagma.dim
        if self.phi.shape != (n, n, n) or self.phi_inv.shape != (n, n, n):
            raise InvalidStructure("φ and φ⁻¹ must be rank-3 tensors over A")
        if check:
            rep = validate_quasibialgebra(self)
            if not rep.ok:
                raise InvalidStructure(str(rep), rep)

    @property
    def alg(self) -> FinDimAlgebra:
        return self.comagma.alg

    @property
    def dim(self) -> int:
        return self.comagma.dim

    def __repr__(self):
        return f"QuasiBialgebra({self.field}, dim={self.dim})"


def trivial_associator(A: FinDimAlgebra) -> np.ndarray:
    return A.tensor_one(3)


def _counit_on(Q: QuasiBialgebra, T, slot: int) -> np.ndarray:
    return tensor_contract(T, {slot: Q.eps.epsilon.reshape(1, -1)}, Q.field)


def validate_quasibialgebra(Q: QuasiBialgebra) -> ValidationReport:
    rep = ValidationReport("quasi-bialgebra")
    C = Q.comagma
    A = C.alg
    n = A.dim
    phi, phi_inv = Q.phi, Q.phi_inv
    one2, one3 = A.tensor_one(2), A.tensor_one(3)
    rep.record("phi_invertible", equal(A.tmul(phi, phi_inv), one3) and equal(A.tmul(phi_inv, phi), one3))
    lhs = A.tmul(C.delta_on_slot(phi, 2), C.delta_on_slot(phi, 0))
    one = A.one
    one_phi = A.field.reduce(np.multiply.outer(one, phi))
    phi_one = A.field.reduce(np.multiply.outer(phi, one))
    rhs = A.tprod(one_phi, C.delta_on_slot(phi, 1), phi_one)
    rep.record("pentagon", equal(lhs, rhs))
    for i in range(n):
        dd = C.apply_delta(A.e(i))
        left = A.tmul(phi, C.delta_on_slot(dd, 0))
        right = A.tmul(C.delta_on_slot(dd, 1), phi)
        rep.record(f"quasi_coassociativity[{A.basis_names[i]}]", equal(left, right))
    for slot in range(3):
        rep.record(f"counit_triangle[{slot}]", equal(_counit_on(Q, phi, slot), one2))
    rep.record("counit", Q.eps.is_bialgebra_counit)
    return rep


@dataclass(eq=False)
class QuasiAntipode:
    S: np.ndarray  # column j = S(e_j)
    a_elem: np.ndarray
    b_elem: np.ndarray


def _S(field, S, x):
    return field.reduce(np.dot(S, x))


def _sum3(A: FinDimAlgebra, T, term):
    out = A.zero()
    for (i, j, k), c in np.ndenumerate(T):
        if c != 0:
            out = out + c * term(i, j, k)
    return A.field.reduce(out)


def _sum2(A: FinDimAlgebra, T, term):
    out = None
    for (i, j), c in np.ndenumerate(T):
        if c != 0:
            t = c * term(i, j)
            out = t if out is None else out + t
    if out is None:
        return term(0, 0) * 0
    return A.field.reduce(out)


def check_quasi_antipode(Q: QuasiBialgebra, qa: QuasiAntipode) -> ValidationReport:
    C = Q.comagma
    A = C.alg
    F = A.field
    n = A.dim
    S, a, b = F.array(qa.S), F.array(qa.a_elem), F.array(qa.b_elem)
    rep = ValidationReport("quasi-antipode")
    for i in range(n):
        for j in range(n):
            x, y = A.e(i), A.e(j)
            rep.record(f"S_antimorphism[{A.basis_names[i]},{A.basis_names[j]}]",
                       equal(_S(F, S, A.mul(x, y)), A.mul(_S(F, S, y), _S(F, S, x))))
    rep.record("S_unit", equal(_S(F, S, A.one), A.one))
    for i in range(n):
        name = A.basis_names[i]
        ex = Q.eps(A.e(i))
        D = C.delta[i]
        qa1 = _sum2(A, D, lambda p, q: A.prod(_S(F, S, A.e(p)), a, A.e(q)))
        rep.record(f"QA1[{name}]", equal(qa1, F.reduce(a * ex)))
        qa2 = _sum2(A, D, lambda p, q: A.prod(A.e(p), b, _S(F, S, A.e(q))))
        rep.record(f"QA2[{name}]", equal(qa2, F.reduce(b * ex)))
    qa3 = _sum3(A, Q.phi, lambda i, j, k: A.prod(A.e(i), b, _S(F, S, A.e(j)), a, A.e(k)))
    rep.record("QA3", equal(qa3, A.one))
    qa4 = _sum3(A, Q.phi_inv, lambda i, j, k: A.prod(_S(F, S, A.e(i)), a, A.e(j), b, _S(F, S, A.e(k))))
    rep.record("QA4", equal(qa4, A.one))
    return rep


def schauenburg_v(Q: QuasiBialgebra, S, b) -> np.ndarray:
    """``φ⁽⁻¹⁾ ⊗ φ⁽⁻²⁾ 𝔟 S(φ⁽⁻³⁾)``."""
    A = Q.alg
    F = A.field
    out = F.zeros((A.dim, A.dim))
    for (i, j, k), c in np.ndenumerate(Q.phi_inv):
        if c != 0:
            out = out + c * A.tensor(A.e(i), A.prod(A.e(j), b, _S(F, S, A.e(k))))
    return F.reduce(out)


def schauenburg_w(Q: QuasiBialgebra, S, a) -> np.ndarray:
    """``φ⁽¹⁾ ⊗ S(φ⁽²⁾) 𝔞 φ⁽³⁾``."""
    A = Q.alg
    F = A.field
    out = F.zeros((A.dim, A.dim))
    for (i, j, k), c in np.ndenumerate(Q.phi):
        if c != 0:
            out = out + c * A.tensor(A.e(i), A.prod(_S(F, S, A.e(j)), a, A.e(k)))
    return F.reduce(out)


def closed_form_inverse(Q: QuasiBialgebra, S, w) -> np.ndarray:
    """Matrix of ``x ⊗ y ↦ w⁽¹⁾x₍₁₎ ⊗ S(x₍₂₎) w⁽²⁾ y``."""
    C = Q.comagma
    A = C.alg
    F = A.field
    n = A.dim
    c = A.mult
    # result[k,l] over basis x=e_i, y=e_j
    T = F.einsum("pq,iab,pak,rb,rqm,mjl->klij", w, C.delta, c, S, c, c)
    return T.reshape(n * n, n * n)


def left_hopf_from_antipode(Q: QuasiBialgebra, qa: QuasiAntipode) -> SlackHopfCertificate:
    F = Q.field
    S, a, b = F.array(qa.S), F.array(qa.a_elem), F.array(qa.b_elem)
    v = schauenburg_v(Q, S, b)
    w = schauenburg_w(Q, S, a)
    cert = check_slack_hopf(Q.comagma, v)
    if not isinstance(cert, SlackHopfCertificate):
        raise InverseMismatch("H^v is singular for the structure built from this quasi-antipode")
    if not equal(closed_form_inverse(Q, S, w), cert.Hv_inv):
        raise InverseMismatch("closed-form (H^v)⁻¹ disagrees with the matrix inverse")
    if not equal(w, cert.w):
        raise InverseMismatch("w from the quasi-antipode disagrees with (H^v)⁻¹(1⊗1)")
    return cert


# -- slackness --------------------------------------------------------------


@dataclass(eq=False)
class Slackness:
    value: np.ndarray  # sl(v) ∈ Aᵉ
    wbar: np.ndarray
    sigma: np.ndarray
    a_elem: np.ndarray
    b_elem: np.ndarray


def wbar_element(Q: QuasiBialgebra, sigma, a) -> np.ndarray:
    return schauenburg_w(Q, sigma, a)


def vbar_element(Q: QuasiBialgebra, sigma, b) -> np.ndarray:
    return schauenburg_v(Q, sigma, b)


def K_operator(Q: QuasiBialgebra, sigma, t) -> np.ndarray:
    """Matrix of ``K^t(x ⊗ y) = t⁽¹⁾x₍₁₎ ⊗ σ(x₍₂₎) t⁽²⁾ y``."""
    C = Q.comagma
    A = C.alg
    n = A.dim
    c = A.mult
    T = A.field.einsum("ij,pab,iak,rb,rjm,mql->klpq", t, C.delta, c, sigma, c, c)
    return T.reshape(n * n, n * n)


def slackness(Q: QuasiBialgebra, cert: SlackHopfCertificate) -> Slackness:
    """``sl(v) = K^{w̄}(v)`` with ``w̄ = φ⁽¹⁾ ⊗ σ(φ⁽²⁾) 𝔞 φ⁽³⁾``."""
    A = Q.alg
    F = A.field
    data = extract_antipode_data(cert, Q.eps)
    wbar = wbar_element(Q, data.sigma, data.a_elem)
    K = K_operator(Q, data.sigma, wbar)
    sl = matmul(K, cert.v.reshape(-1), F).reshape(cert.v.shape)
    if not equal(_counit_on(Q, sl, 0), A.one):
        raise IdentityViolation("(ε⊗A) sl(v) ≠ 1")
    return Slackness(sl, wbar, data.sigma, data.a_elem, data.b_elem)


@dataclass(eq=False)
class LeftHopf:
    antipode: QuasiAntipode
    slackness: Slackness


@dataclass(eq=False)
class SlackOnly:
    slackness: Slackness
    invertible: bool


def sigma_delta(Q: QuasiBialgebra, sigma, x) -> np.ndarray:
    """``(A ⊗ σ)Δ(x)``."""
    C = Q.comagma
    F = Q.field
    return F.einsum("i,iab,rb->ar", x, C.delta, sigma)


def classify_slack_structure(Q: QuasiBialgebra, cert: SlackHopfCertificate) -> LeftHopf | SlackOnly:
    A = Q.alg
    sl = slackness(Q, cert)
    if not equal(sl.value, A.tensor_one(2)):
        inv = env_invert(A, sl.value)
        return SlackOnly(sl, isinstance(inv, EnvInverse))
    rep = ValidationReport("left Hopf conditions")
    for i in range(A.dim):
        rep.record(f"nabla_is_sigma_delta[{A.basis_names[i]}]",
                   equal(cert.nabla[i], sigma_delta(Q, sl.sigma, A.e(i))))
    rep.record("w_is_wbar", equal(cert.w, sl.wbar))
    rep.record("v_is_vbar", equal(cert.v, vbar_element(Q, sl.sigma, sl.b_elem)))
    qa = QuasiAntipode(sl.sigma, sl.a_elem, sl.b_elem)
    rep.extend(check_quasi_antipode(Q, qa), "qa.")
    if not rep.ok:
        raise IdentityViolation(str(rep), rep)
    return LeftHopf(qa, sl)


@dataclass(eq=False)
class Decomposition:
    v0: np.ndarray
    gamma: np.ndarray
    antipode: QuasiAntipode
    certificate0: SlackHopfCertificate


class NotQuasiHopf:
    def __repr__(self):
        return "NotQuasiHopf"

    def __eq__(self, other):
        return isinstance(other, NotQuasiHopf)

    def __hash__(self):
        return hash("NotQuasiHopf")


def torsor_decompose(Q: QuasiBialgebra, cert: SlackHopfCertificate) -> Decomposition | NotQuasiHopf:
    """Write ``v = v₀ ◁ γ`` with ``v₀`` left Hopf and ``(ε⊗A)γ = 1``."""
    if not isinstance(Q, QuasiBialgebra):
        raise PreconditionError("torsor_decompose needs a quasi-bialgebra")
    A = Q.alg
    F = A.field
    sl = slackness(Q, cert)
    gamma = sl.value
    inv = env_invert(A, gamma)
    if not isinstance(inv, EnvInverse):
        return NotQuasiHopf()
    gbar = inv.element
    v0 = torsor_act(cert, gbar)
    b0 = _sum2(A, gbar, lambda p, q: A.prod(A.e(p), sl.b_elem, A.e(q)))
    qa0 = QuasiAntipode(sl.sigma, sl.a_elem, b0)
    rep = ValidationReport("torsor decomposition")
    rep.record("gamma_in_G0", equal(_counit_on(Q, gamma, 0), A.one))
    rep.extend(check_quasi_antipode(Q, qa0), "qa0.")
    cert0 = None
    if rep.ok:
        cert0 = left_hopf_from_antipode(Q, qa0)
        rep.record("v0_regenerated", equal(cert0.v, v0))
        rep.record("round_trip", equal(torsor_act(cert0, gamma), cert.v))
    if not rep.ok:
        raise IdentityViolation(str(rep), rep)
    return Decomposition(v0, gamma, qa0, cert0)


def check_v_change(Q: QuasiBialgebra, cert: SlackHopfCertificate, gamma) -> ValidationReport:
    """``sl(v ◁ γ) = (1 ⊗ γ₀⁻¹) · sl(v) · γ`` with ``γ₀ = (ε⊗A)γ``."""
    A = Q.alg
    gamma = A.field.array(gamma)
    rep = ValidationReport("slackness under v ↦ v◁γ")
    g0_inv = A.inverse(_counit_on(Q, gamma, 0))
    if g0_inv is None:
        raise PreconditionError("γ is not invertible in Aᵉ")
    moved = check_slack_hopf(Q.comagma, torsor_act(cert, gamma))
    if not isinstance(moved, SlackHopfCertificate):
        raise PreconditionError("γ is not invertible in Aᵉ")
    lhs = slackness(Q, moved).value
    rhs = A.eprod(A.tensor(A.one, g0_inv), slackness(Q, cert).value, gamma)
    rep.record("v_change", equal(lhs, rhs))
    return rep


def check_sigma_delta(Q: QuasiBialgebra, cert: SlackHopfCertificate) -> ValidationReport:
    """``sl(v) · ∇(x) = ((A⊗σ)Δ(x)) · sl(v)`` in ``Aᵉ`` for every basis ``x``.

    This is the A-linearity of the comparison morphism: ``(A⊗σ)Δ`` acts on
    its source and ``∇`` on its target.
    """
    A = Q.alg
    sl = slackness(Q, cert)
    rep = ValidationReport("slackness intertwines")
    for i in range(A.dim):
        lhs = A.emul(sl.value, cert.nabla[i])
        rhs = A.emul(sigma_delta(Q, sl.sigma, A.e(i)), sl.value)
        rep.record(f"sigma_delta[{A.basis_names[i]}]", equal(lhs, rhs))
    return rep


def check_wbar_identity(Q: QuasiBialgebra, cert: SlackHopfCertificate) -> ValidationReport:
    """``w̄ · (x ⊗ 1) = K^{w̄}(Δ(x))`` in ``Aᵉ`` for every basis ``x``."""
    A = Q.alg
    F = A.field
    sl = slackness(Q, cert)
    K = K_operator(Q, sl.sigma, sl.wbar)
    rep = ValidationReport("w̄ identity")
    for i in range(A.dim):
        x = A.e(i)
        rhs = matmul(K, Q.comagma.apply_delta(x).reshape(-1), F).reshape(A.dim, A.dim)
        rep.record(f"wbar[{A.basis_names[i]}]", equal(A.emul(sl.wbar, A.tensor(x, A.one)), rhs))
    return rep


def random_G0_element(A: FinDimAlgebra, eps: CounitData, rng, max_tries: int = 100) -> np.ndarray:
    """A seeded random invertible ``γ ∈ Aᵉ`` normalised so that ``(ε⊗A)γ = 1``."""
    F = A.field
    n = A.dim
    for _ in range(max_tries):
        g = F.zeros((n, n))
        for idx in np.ndindex(n, n):
            g[idx] = F.random_element(rng)
        if not isinstance(env_invert(A, g), EnvInverse):
            continue
        g0 = tensor_contract(g, {0: eps.epsilon.reshape(1, -1)}, F)
        g0_inv = A.inverse(g0)
        return A.emul(g, A.tensor(A.one, g0_inv))
    raise RuntimeError("no invertible element found")


def random_env_unit(A: FinDimAlgebra, rng, max_tries: int = 100) -> np.ndarray:
    F = A.field
    n = A.dim
    for _ in range(max_tries):
        g = F.zeros((n, n))
        for idx in np.ndindex(n, n):
            g[idx] = F.random_element(rng)
        if isinstance(env_invert(A, g), EnvInverse):
            return g
    raise RuntimeError("no invertible element found")


__all__ = [
    "QuasiBialgebra",
    "QuasiAntipode",
    "Slackness",
    "LeftHopf",
    "SlackOnly",
    "Decomposition",
    "NotQuasiHopf",
    "trivial_associator",
    "validate_quasibialgebra",
    "check_quasi_antipode",
    "left_hopf_from_antipode",
    "closed_form_inverse",
    "schauenburg_v",
    "schauenburg_w",
    "slackness",
    "K_operator",
    "sigma_delta",
    "classify_slack_structure",
    "torsor_decompose",
    "check_v_change",
    "check_sigma_delta",
    "check_wbar_identity",
    "random_G0_element",
    "random_env_unit",
]
