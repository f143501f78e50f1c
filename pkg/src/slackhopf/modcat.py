"""Finite-dimensional modules, internal Homs from a slack structure, and duals.

A linear map ``F: V → W`` is a ``d_W x d_V`` matrix, flattened row-major when
it is a vector of the carrier ``Hom(V, W)``.  With that convention the
canonical map ``W ⊗ V* → Hom(V, W)``, ``x ⊗ f ↦ x∘f``, is the identity matrix,
and ``vec(P F R) = (P ⊗ Rᵀ) vec(F)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import ComagmaAlgebra, EnvInverse, FinDimAlgebra, env_invert
from .errors import DimensionMismatch, ModuleAxiomViolation
from .exactlin import Field, Inverse, equal, kernel_basis, matmul, solve_or_invert
from .report import ValidationReport
from .slack import SlackHopfCertificate


def kron(a, b, field: Field) -> np.ndarray:
    return field.reduce(np.kron(np.asarray(a, dtype=object), np.asarray(b, dtype=object)))


class AModule:
    """``rho[i]`` is the ``d x d`` matrix of ``e_i`` acting on ``V``."""

    def __init__(self, algebra: FinDimAlgebra, rho, name: str = "V", check: bool = True):
        self.alg = algebra
        self.field = algebra.field
        self.rho = self.field.array(rho)
        if self.rho.ndim != 3 or self.rho.shape[0] != algebra.dim or self.rho.shape[1] != self.rho.shape[2]:
            raise DimensionMismatch(f"action must have shape (n, d, d), got {self.rho.shape}")
        self.dim = self.rho.shape[1]
        self.name = name
        if check:
            rep = validate_module(self)
            if not rep.ok:
                raise ModuleAxiomViolation(str(rep))

    def act(self, x) -> np.ndarray:
        """Matrix of an arbitrary element ``x ∈ A``."""
        return self.field.einsum("i,ijk->jk", x, self.rho)

    def __repr__(self):
        return f"AModule({self.name}, dim={self.dim})"


def validate_module(V: AModule) -> ValidationReport:
    A = V.alg
    F = V.field
    rep = ValidationReport(f"module {V.name}")
    rep.record("unit", equal(V.act(A.unit), F.eye(V.dim)))
    prods = F.einsum("iab,jbc->ijac", V.rho, V.rho)
    expected = F.einsum("ijk,kac->ijac", A.mult, V.rho)
    rep.record("associativity", equal(prods, expected))
    return rep


def regular_module(A: FinDimAlgebra) -> AModule:
    return AModule(A, [A.left_regular(A.e(i)) for i in range(A.dim)], "A")


def trivial_module(A: FinDimAlgebra, epsilon) -> AModule:
    F = A.field
    return AModule(A, F.array(epsilon).reshape(A.dim, 1, 1), "𝟙")


def character_module(A: FinDimAlgebra, chi, name: str = "χ") -> AModule:
    """One-dimensional module on which ``e_i`` acts by ``chi[i]``."""
    return AModule(A, A.field.array(chi).reshape(A.dim, 1, 1), name)


def direct_sum(V: AModule, W: AModule) -> AModule:
    F = V.field
    d = V.dim + W.dim
    rho = F.zeros((V.alg.dim, d, d))
    rho[:, :V.dim, :V.dim] = V.rho
    rho[:, V.dim:, V.dim:] = W.rho
    return AModule(V.alg, rho, f"({V.name}⊕{W.name})", check=False)


def tensor_module(C: ComagmaAlgebra, V: AModule, W: AModule) -> AModule:
    """``V ⊗ W`` with ``a`` acting by ``Δ(a)``; basis ``(x, y) ↦ x*d_W + y``."""
    F = C.field
    rho = [F.reduce(sum(
        (C.delta[i, p, q] * kron(V.rho[p], W.rho[q], F)
         for p in range(C.dim) for q in range(C.dim) if C.delta[i, p, q] != 0),
        F.zeros((V.dim * W.dim, V.dim * W.dim))))
        for i in range(C.dim)]
    return AModule(C.alg, rho, f"({V.name}⊗{W.name})", check=False)


def is_module_map(V: AModule, W: AModule, M) -> bool:
    M = V.field.array(M)
    if M.shape != (W.dim, V.dim):
        raise DimensionMismatch(f"map must be {W.dim}x{V.dim}")
    F = V.field
    return all(equal(matmul(M, V.rho[i], F), matmul(W.rho[i], M, F)) for i in range(V.alg.dim))


def module_maps(V: AModule, W: AModule) -> list[np.ndarray]:
    """A basis of ``Hom_A(V, W)``."""
    F = V.field
    blocks = [kron(F.eye(W.dim), V.rho[i].T, F) - kron(W.rho[i], F.eye(V.dim), F) for i in range(V.alg.dim)]
    K = kernel_basis(F.reduce(np.vstack(blocks)), F)
    return [k.reshape(W.dim, V.dim) for k in K]


def triangle_matrix(xi, V: AModule, W: AModule) -> np.ndarray:
    """Matrix on ``Hom(V, W)`` of ``f ↦ f ◁ ξ``, ``(f ◁ ξ)(x) = ξ⁽¹⁾ f(ξ⁽²⁾ x)``."""
    F = V.field
    out = F.zeros((W.dim * V.dim, W.dim * V.dim))
    for (p, q), c in np.ndenumerate(xi):
        if c != 0:
            out = out + c * kron(W.rho[p], V.rho[q].T, F)
    return F.reduce(out)


@dataclass(eq=False)
class InternalHom:
    source: AModule
    target: AModule
    module: AModule  # Hom(V, W) with a·f = f ◁ ∇(a)
    evaluation: np.ndarray  # [V,W] ⊗ V → W
    checks: ValidationReport


def _action_on_hom(cert: SlackHopfCertificate, V: AModule, W: AModule) -> AModule:
    rho = [triangle_matrix(cert.nabla[i], V, W) for i in range(cert.alg.dim)]
    return AModule(V.alg, rho, f"[{V.name},{W.name}]", check=False)


def evaluation_matrix(cert: SlackHopfCertificate, V: AModule, W: AModule) -> np.ndarray:
    """``e(f ⊗ x) = w⁽¹⁾ f(w⁽²⁾ x)``; columns indexed by ``f*d_V + x``."""
    F = V.field
    R = triangle_matrix(cert.w, V, W)
    dV, dW = V.dim, W.dim
    ev = F.zeros((dW, dW * dV * dV))
    for f in range(dW * dV):
        image = R[:, f].reshape(dW, dV)
        for x in range(dV):
            ev[:, f * dV + x] = image[:, x]
    return ev


def coevaluation_matrix(cert: SlackHopfCertificate, V: AModule, W: AModule) -> np.ndarray:
    """``h(y)(x) = v⁽¹⁾y ⊗ v⁽²⁾x`` as a map ``W → Hom(V, W⊗V)``."""
    F = V.field
    dV, dW = V.dim, W.dim
    h = F.zeros((dW * dV * dV, dW))
    for y in range(dW):
        ey = F.basis_vector(dW, y).reshape(dW, 1)
        img = F.zeros((dW * dV, dV))
        for (p, q), c in np.ndenumerate(cert.v):
            if c != 0:
                img = img + c * kron(matmul(W.rho[p], ey, F), V.rho[q], F)
        h[:, y] = F.reduce(img).reshape(-1)
    return h


def internal_hom(cert: SlackHopfCertificate, V: AModule, W: AModule,
                 C: ComagmaAlgebra | None = None) -> InternalHom:
    C = C or cert.comagma
    for M in (V, W):
        rep = validate_module(M)
        if not rep.ok:
            raise ModuleAxiomViolation(str(rep))
    F = V.field
    H = _action_on_hom(cert, V, W)
    rep = ValidationReport(f"[{V.name},{W.name}]")
    rep.extend(validate_module(H), "carrier.")
    ev = evaluation_matrix(cert, V, W)
    rep.record("evaluation_linear", is_module_map(tensor_module(C, H, V), W, ev))
    WV = tensor_module(C, W, V)
    h = coevaluation_matrix(cert, V, W)
    rep.record("coevaluation_linear", is_module_map(W, _action_on_hom(cert, V, WV), h))
    return InternalHom(V, W, H, ev, rep)


def triangle_identities(cert: SlackHopfCertificate, V: AModule, W: AModule,
                        C: ComagmaAlgebra | None = None) -> ValidationReport:
    """Both triangle identities of ``? ⊗ V ⊣ [V, ?]`` at ``W``."""
    C = C or cert.comagma
    F = V.field
    dV, dW = V.dim, W.dim
    rep = ValidationReport("adjunction")
    # [V, e_W] ∘ h_{[V,W]} = id
    H = _action_on_hom(cert, V, W)
    h = coevaluation_matrix(cert, V, H)
    ev = evaluation_matrix(cert, V, W)
    dH = H.dim
    ok = True
    for f in range(dH):
        g = h[:, f].reshape(dH * dV, dV)
        if not equal(matmul(ev, g, F).reshape(-1), F.basis_vector(dH, f)):
            ok = False
    rep.record("hom_triangle", ok)
    # e_{W⊗V} ∘ (h_W ⊗ V) = id
    WV = tensor_module(C, W, V)
    hW = coevaluation_matrix(cert, V, W)
    evWV = evaluation_matrix(cert, V, WV)
    lhs = matmul(evWV, kron(hW, F.eye(dV), F), F)
    rep.record("tensor_triangle", equal(lhs, F.eye(dW * dV)))
    return rep


def comparison_morphism(Q, cert: SlackHopfCertificate, V: AModule, W: AModule, sl=None) -> np.ndarray:
    """``c_{V,W}(x ⊗ f) = (x∘f) ◁ sl(v)`` as a matrix ``W ⊗ V* → Hom(V, W)``.

    ``sl`` may carry a precomputed :class:`Slackness` for ``cert``.
    """
    from .quasihopf import slackness

    sl = sl if sl is not None else slackness(Q, cert)
    return triangle_matrix(sl.value, V, W)


def canonical_comparison(V: AModule, W: AModule) -> np.ndarray:
    return V.field.eye(V.dim * W.dim)


@dataclass(eq=False)
class Dual:
    module: AModule  # ˇV = [V, 𝟙]
    evaluation: np.ndarray  # ˇV ⊗ V → 𝟙
    coevaluation: np.ndarray  # 𝟙 → V ⊗ ˇV
    checks: ValidationReport


class NoDual:
    def __repr__(self):
        return "NoDual"

    def __eq__(self, other):
        return isinstance(other, NoDual)

    def __hash__(self):
        return hash("NoDual")


def associator_matrix(Q, X: AModule, Y: AModule, Z: AModule, inverse: bool = False) -> np.ndarray:
    """``a_{X,Y,Z}: (X⊗Y)⊗Z → X⊗(Y⊗Z)``, acting by ``φ`` (``φ⁻¹`` for the inverse)."""
    F = X.field
    phi = Q.phi_inv if inverse else Q.phi
    d = X.dim * Y.dim * Z.dim
    out = F.zeros((d, d))
    for (i, j, k), c in np.ndenumerate(phi):
        if c != 0:
            out = out + c * kron(kron(X.rho[i], Y.rho[j], F), Z.rho[k], F)
    return F.reduce(out)


def zigzags(Q, V: AModule, D: AModule, ev, coev, with_associator: bool = True) -> ValidationReport:
    F = V.field
    d = V.dim
    rep = ValidationReport("zig-zag")
    a = associator_matrix(Q, V, D, V) if with_associator else F.eye(d * d * d)
    a_inv = associator_matrix(Q, D, V, D, inverse=True) if with_associator else F.eye(d * d * d)
    # (V ⊗ ev) a (coev ⊗ V) = id_V
    first = matmul(kron(F.eye(d), ev, F), matmul(a, kron(coev, F.eye(d), F), F), F)
    rep.record("zigzag_V", equal(first, F.eye(d)))
    # (ev ⊗ ˇV) a⁻¹ (ˇV ⊗ coev) = id_ˇV
    second = matmul(kron(ev, F.eye(d), F), matmul(a_inv, kron(F.eye(d), coev, F), F), F)
    rep.record("zigzag_dual", equal(second, F.eye(d)))
    return rep


def left_dual(Q, cert: SlackHopfCertificate, V: AModule) -> Dual | NoDual:
    """``ˇV = [V, 𝟙]`` with evaluation ``e`` and coevaluation ``c_{V,V}⁻¹(h_𝟙(1))``."""
    from .quasihopf import slackness

    A = Q.alg
    F = A.field
    sl = slackness(Q, cert)
    if not isinstance(env_invert(A, sl.value), EnvInverse):
        return NoDual()
    unit = trivial_module(A, Q.eps.epsilon)
    D = _action_on_hom(cert, V, unit)
    D.name = f"ˇ{V.name}"
    ev = evaluation_matrix(cert, V, unit)
    name_of_id = coevaluation_matrix(cert, V, unit)  # Hom(V, 𝟙⊗V) = End(V)
    c = triangle_matrix(sl.value, V, V)
    inv = solve_or_invert(c, F)
    if not isinstance(inv, Inverse):
        return NoDual()
    coev = matmul(inv.matrix, name_of_id, F)
    rep = ValidationReport(f"dual of {V.name}")
    rep.extend(validate_module(D), "carrier.")
    C = Q.comagma
    rep.record("evaluation_linear", is_module_map(tensor_module(C, D, V), unit, ev))
    rep.record("coevaluation_linear", is_module_map(unit, tensor_module(C, V, D), coev))
    rep.extend(zigzags(Q, V, D, ev, coev))
    return Dual(D, ev, coev, rep)


def precompose_matrix(f, V: AModule, V2: AModule, W: AModule) -> np.ndarray:
    """``Hom(V2, W) → Hom(V, W)``, ``g ↦ g∘f`` for ``f: V → V2``."""
    F = V.field
    return kron(F.eye(W.dim), F.array(f).T, F)


def postcompose_matrix(g, V: AModule, W: AModule, W2: AModule) -> np.ndarray:
    """``Hom(V, W) → Hom(V, W2)``, ``h ↦ g∘h`` for ``g: W → W2``."""
    F = V.field
    return kron(F.array(g), F.eye(V.dim), F)


def naturality(cert: SlackHopfCertificate, f, V: AModule, V2: AModule, g, W: AModule, W2: AModule) -> ValidationReport:
    """Pre- and post-composition with module maps are module maps of internal Homs."""
    rep = ValidationReport("naturality")
    rep.record("precompose", is_module_map(_action_on_hom(cert, V2, W), _action_on_hom(cert, V, W),
                                           precompose_matrix(f, V, V2, W)))
    rep.record("postcompose", is_module_map(_action_on_hom(cert, V, W), _action_on_hom(cert, V, W2),
                                            postcompose_matrix(g, V, W, W2)))
    return rep


def torsor_isomorphism(cert: SlackHopfCertificate, moved: SlackHopfCertificate, gamma,
                       V: AModule, W: AModule) -> ValidationReport:
    """``f ↦ f ◁ γ`` from ``[V,W]`` for ``v`` to ``[V,W]`` for ``v ◁ γ``."""
    F = V.field
    M = triangle_matrix(gamma, V, W)
    rep = ValidationReport("torsor isomorphism")
    rep.record("linear", is_module_map(_action_on_hom(cert, V, W), _action_on_hom(moved, V, W), M))
    rep.record("invertible", isinstance(solve_or_invert(M, F), Inverse))
    return rep


__all__ = [
    "AModule",
    "InternalHom",
    "Dual",
    "NoDual",
    "validate_module",
    "regular_module",
    "trivial_module",
    "character_module",
    "direct_sum",
    "tensor_module",
    "is_module_map",
    "module_maps",
    "triangle_matrix",
    "internal_hom",
    "evaluation_matrix",
    "coevaluation_matrix",
    "triangle_identities",
    "comparison_morphism",
    "canonical_comparison",
    "associator_matrix",
    "zigzags",
    "left_dual",
    "naturality",
    "torsor_isomorphism",
]
