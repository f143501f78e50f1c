import itertools
from dataclasses import dataclass

import numpy as np
import pytest

from slackhopf.catalog import (
    cyclic_group_bialgebra,
    matrix_flip_comagma,
    sweedler_h4,
    twisted_s3_quasi,
    z2_quasi_associator,
)
from slackhopf.catalog import s3_elements
from slackhopf.exactlin import QQ
from slackhopf.modcat import character_module, direct_sum, regular_module, trivial_module, AModule
from slackhopf.quasihopf import (
    QuasiAntipode,
    QuasiBialgebra,
    check_quasi_antipode,
    left_hopf_from_antipode,
    trivial_associator,
)


@dataclass
class QuasiFixture:
    name: str
    Q: QuasiBialgebra
    qa: QuasiAntipode
    cert: object
    solutions: tuple = ()


def solve_quasi_antipode_grid(Q, grid=(-1, 0, 1)):
    """All quasi-antipodes on a 2-dimensional algebra with coordinates in ``grid``.

    Independent of the library's antipode extraction: candidates are filtered
    by hand-written algebra-antimorphism conditions, then QA1–QA4.
    """
    A = Q.alg
    assert A.dim == 2
    found = []
    for s0, s1 in itertools.product(grid, repeat=2):
        Sg = QQ.array([s0, s1])
        if not np.array_equal(A.mul(Sg, Sg), A.one):
            continue
        S = QQ.array([[1, s0], [0, s1]])
        for a in itertools.product(grid, repeat=2):
            for b in itertools.product(grid, repeat=2):
                qa = QuasiAntipode(S, QQ.array(a), QQ.array(b))
                if check_quasi_antipode(Q, qa).ok:
                    found.append(qa)
    return found


@pytest.fixture(scope="session")
def kz2():
    return cyclic_group_bialgebra(2)


@pytest.fixture(scope="session")
def kz2_quasi():
    C, eps = cyclic_group_bialgebra(2)
    phi, phi_inv = z2_quasi_associator()
    Q = QuasiBialgebra(C, eps, phi, phi_inv)
    sols = tuple(solve_quasi_antipode_grid(Q))
    qa = next(q for q in sols if list(q.a_elem) == [1, 0])
    return QuasiFixture("kZ2-phi", Q, qa, left_hopf_from_antipode(Q, qa), sols)


@pytest.fixture(scope="session")
def kz3_hopf():
    C, eps = cyclic_group_bialgebra(3)
    A = C.alg
    Q = QuasiBialgebra(C, eps, trivial_associator(A), trivial_associator(A))
    S = QQ.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    qa = QuasiAntipode(S, A.one, A.one)
    return QuasiFixture("kZ3", Q, qa, left_hopf_from_antipode(Q, qa))


@pytest.fixture(scope="session")
def h4_quasi():
    C, eps, S = sweedler_h4()
    A = C.alg
    Q = QuasiBialgebra(C, eps, trivial_associator(A), trivial_associator(A))
    qa = QuasiAntipode(S, A.one, A.one)
    return QuasiFixture("H4", Q, qa, left_hopf_from_antipode(Q, qa))


@pytest.fixture(scope="session")
def s3_twisted():
    CF, eps, phi, phi_inv, S, alpha, beta = twisted_s3_quasi()
    Q = QuasiBialgebra(CF, eps, phi, phi_inv)
    qa = QuasiAntipode(S, alpha, beta)
    return QuasiFixture("S3-twisted", Q, qa, left_hopf_from_antipode(Q, qa))


@pytest.fixture(scope="session")
def quasi_fixtures(kz2_quasi, kz3_hopf, h4_quasi, s3_twisted):
    return [kz2_quasi, kz3_hopf, h4_quasi, s3_twisted]


@pytest.fixture(scope="session")
def m2_flip():
    return matrix_flip_comagma(2)


def _s3_permutation_module(A):
    rho = QQ.zeros((6, 3, 3))
    for k, p in enumerate(s3_elements()):
        for i in range(3):
            rho[k, p[i], i] = 1
    return AModule(A, rho, "perm")


def _s3_sign(p):
    return 1 if sum(p[i] > p[j] for i in range(3) for j in range(i + 1, 3)) % 2 == 0 else -1


def small_modules(fx):
    """Modules of dimension at most 3 for a quasi fixture."""
    A = fx.Q.alg
    one = trivial_module(A, fx.Q.eps.epsilon)
    if fx.name.startswith("kZ2"):
        sign = character_module(A, [1, -1], "sgn")
        reg = regular_module(A)
        return [one, sign, reg, direct_sum(one, sign), direct_sum(sign, sign),
                direct_sum(one, reg), direct_sum(sign, reg)]
    if fx.name == "kZ3":
        rot = AModule(A, [QQ.eye(2), QQ.array([[0, -1], [1, -1]]), QQ.array([[-1, 1], [-1, 0]])], "rot")
        return [one, rot, regular_module(A), direct_sum(one, rot)]
    if fx.name == "H4":
        neg = character_module(A, [1, -1, 0, 0], "χ-")
        g = QQ.array([[1, 0], [0, -1]])
        x = QQ.array([[0, 0], [1, 0]])
        P = AModule(A, [QQ.eye(2), g, x, QQ.reduce(g.dot(x))], "P")
        return [one, neg, P, direct_sum(one, neg), direct_sum(P, neg)]
    if fx.name == "S3-twisted":
        sign = character_module(A, [_s3_sign(p) for p in s3_elements()], "sgn")
        return [one, sign, _s3_permutation_module(A), direct_sum(one, sign)]
    raise KeyError(fx.name)


ACCEPTANCE = {}


def record_criterion(number, ok, detail=""):
    """Store and print one pass/fail line for an acceptance criterion."""
    ACCEPTANCE[number] = (ok, detail)
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
