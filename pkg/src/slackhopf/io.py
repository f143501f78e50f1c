"""Line-oriented sparse text formats and JSON reports.

Every file starts with ``schema <name>/<version>``; blank lines and ``#``
comments are ignored.  See ``docs/format.md`` for the full grammar.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .algebra import ComagmaAlgebra, FinDimAlgebra
from .errors import ParseError, SlackHopfError
from .exactlin import Field, iter_nonzero, parse_field
from .fincat import FinCategory, FinMonoid

ALG_SCHEMA = "slackhopf-alg/1"
TENSOR_SCHEMA = "slackhopf-tensor/1"
QA_SCHEMA = "slackhopf-qa/1"
CAT_SCHEMA = "slackhopf-cat/1"
MON_SCHEMA = "slackhopf-mon/1"
REPORT_SCHEMA = "slackhopf-report/1"

SCHEMAS = (ALG_SCHEMA, TENSOR_SCHEMA, QA_SCHEMA, CAT_SCHEMA, MON_SCHEMA)


@dataclass
class Line:
    number: int
    key: str
    args: list[str]


def _lines(text: str) -> list[Line]:
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            key, *args = body.split()
            out.append(Line(number, key, args))
    return out


def read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def detect_schema(text: str) -> str:
    lines = _lines(text)
    if not lines or lines[0].key != "schema" or len(lines[0].args) != 1:
        raise ParseError("first statement must be 'schema <name>/<version>'",
                         lines[0].number if lines else 1, "schema")
    schema = lines[0].args[0]
    if schema not in SCHEMAS:
        raise ParseError(f"unknown schema {schema!r}", lines[0].number, "schema")
    return schema


class _Reader:
    def __init__(self, text: str, schema: str):
        self.lines = _lines(text)
        found = detect_schema(text)
        if found != schema:
            raise ParseError(f"expected schema {schema}, found {found}", self.lines[0].number, "schema")
        self.lines = self.lines[1:]
        self.field: Field | None = None
        self.dim: int | None = None

    def single(self, key: str, required: bool = True) -> Line | None:
        hits = [ln for ln in self.lines if ln.key == key]
        if len(hits) > 1:
            raise ParseError(f"'{key}' given more than once", hits[1].number, key)
        if not hits:
            if required:
                raise ParseError(f"missing '{key}'", None, key)
            return None
        return hits[0]

    def many(self, key: str) -> list[Line]:
        return [ln for ln in self.lines if ln.key == key]

    def reject_unknown(self, allowed) -> None:
        for ln in self.lines:
            if ln.key not in allowed:
                raise ParseError(f"unknown key '{ln.key}'", ln.number, ln.key)

    def read_field(self) -> Field:
        ln = self.single("field")
        if len(ln.args) != 1:
            raise ParseError("'field' takes one argument", ln.number, "field")
        try:
            self.field = parse_field(ln.args[0])
        except (ValueError, SlackHopfError) as exc:
            raise ParseError(str(exc), ln.number, "field") from exc
        return self.field

    def read_dim(self) -> int:
        ln = self.single("dim")
        self.dim = self.int_arg(ln, 0, "dim")
        if self.dim < 1:
            raise ParseError("dim must be positive", ln.number, "dim")
        return self.dim

    def int_arg(self, ln: Line, pos: int, what: str) -> int:
        try:
            return int(ln.args[pos])
        except (IndexError, ValueError) as exc:
            raise ParseError(f"'{ln.key}' needs an integer {what}", ln.number, ln.key) from exc

    def index(self, ln: Line, pos: int, bound: int | None = None) -> int:
        bound = self.dim if bound is None else bound
        i = self.int_arg(ln, pos, "index")
        if not 0 <= i < bound:
            raise ParseError(f"index {i} out of range 0..{bound - 1}", ln.number, ln.key)
        return i

    def coeff(self, ln: Line, pos: int):
        try:
            return self.field.parse(ln.args[pos])
        except (IndexError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient in '{ln.key}'", ln.number, ln.key) from exc

    def sparse(self, key: str, rank: int):
        lines = self.many(key)
        if not lines:
            return None
        T = self.field.zeros((self.dim,) * rank)
        for ln in lines:
            if len(ln.args) != rank + 1:
                raise ParseError(f"'{key}' takes {rank} indices and a coefficient", ln.number, key)
            idx = tuple(self.index(ln, p) for p in range(rank))
            T[idx] = T[idx] + self.coeff(ln, rank)
        return self.field.reduce(T)


# -- algebras ---------------------------------------------------------------


@dataclass(eq=False)
class AlgebraFile:
    field: Field
    dim: int
    basis: list[str]
    mult: np.ndarray
    unit: np.ndarray
    delta: np.ndarray | None = None
    counit: np.ndarray | None = None
    phi: np.ndarray | None = None
    phi_inv: np.ndarray | None = None

    def algebra(self, check: bool = True) -> FinDimAlgebra:
        return FinDimAlgebra(self.field, self.mult, self.unit, self.basis, check=check)

    def comagma(self, check: bool = True) -> ComagmaAlgebra:
        if self.delta is None:
            raise ParseError("no 'delta' entries: not a comagma algebra", None, "delta")
        return ComagmaAlgebra(self.algebra(check), self.delta, check=check)


def parse_algebra(text: str) -> AlgebraFile:
    r = _Reader(text, ALG_SCHEMA)
    r.reject_unknown({"field", "dim", "basis", "mult", "unit", "delta", "counit", "phi", "phi_inv"})
    F = r.read_field()
    n = r.read_dim()
    ln = r.single("basis", required=False)
    basis = [f"e{i}" for i in range(n)]
    if ln is not None:
        if len(ln.args) != n:
            raise ParseError(f"'basis' needs {n} names", ln.number, "basis")
        if len(set(ln.args)) != n:
            raise ParseError("basis names must be distinct", ln.number, "basis")
        basis = ln.args
    mult = r.sparse("mult", 3)
    if mult is None:
        mult = F.zeros((n, n, n))
    unit = r.sparse("unit", 1)
    if unit is None:
        raise ParseError("missing 'unit'", None, "unit")
    phi, phi_inv = r.sparse("phi", 3), r.sparse("phi_inv", 3)
    if (phi is None) != (phi_inv is None):
        raise ParseError("'phi' and 'phi_inv' must be given together", None, "phi")
    return AlgebraFile(F, n, basis, mult, unit, r.sparse("delta", 3), r.sparse("counit", 1), phi, phi_inv)


def _sparse_lines(key: str, T, field: Field) -> list[str]:
    return [f"{key} {' '.join(map(str, idx))} {field.format(c)}" for idx, c in iter_nonzero(np.asarray(T))]


def format_algebra(a: AlgebraFile) -> str:
    if any(not name or any(ch.isspace() for ch in name) or name.startswith("#") for name in a.basis):
        raise ValueError("basis names must be non-empty tokens without whitespace")
    out = [f"schema {ALG_SCHEMA}", f"field {a.field.tag}", f"dim {a.dim}", "basis " + " ".join(a.basis)]
    out += _sparse_lines("unit", a.unit, a.field)
    out += _sparse_lines("mult", a.mult, a.field)
    for key in ("delta", "counit", "phi", "phi_inv"):
        T = getattr(a, key)
        if T is not None:
            out += _sparse_lines(key, T, a.field)
    return "\n".join(out) + "\n"


def algebra_file_from(C: ComagmaAlgebra, counit=None, phi=None, phi_inv=None) -> AlgebraFile:
    A = C.alg
    F = A.field
    return AlgebraFile(F, A.dim, list(A.basis_names), A.mult, A.unit, C.delta,
                       None if counit is None else F.array(counit),
                       None if phi is None else F.array(phi), None if phi_inv is None else F.array(phi_inv))


# -- tensors and quasi-antipodes --------------------------------------------


@dataclass(eq=False)
class TensorFile:
    field: Field
    dim: int
    tensor: np.ndarray


def parse_tensor(text: str) -> TensorFile:
    r = _Reader(text, TENSOR_SCHEMA)
    r.reject_unknown({"field", "dim", "rank", "entry"})
    F = r.read_field()
    n = r.read_dim()
    rank = r.int_arg(r.single("rank"), 0, "rank")
    if rank < 1:
        raise ParseError("rank must be positive", r.single("rank").number, "rank")
    T = r.sparse("entry", rank)
    return TensorFile(F, n, F.zeros((n,) * rank) if T is None else T)


def format_tensor(T, field: Field) -> str:
    T = np.asarray(T, dtype=object)
    out = [f"schema {TENSOR_SCHEMA}", f"field {field.tag}", f"dim {T.shape[0]}", f"rank {T.ndim}"]
    out += _sparse_lines("entry", T, field)
    return "\n".join(out) + "\n"


@dataclass(eq=False)
class QAFile:
    field: Field
    dim: int
    S: np.ndarray  # column j = S(e_j)
    a: np.ndarray
    b: np.ndarray


def parse_quasi_antipode(text: str) -> QAFile:
    r = _Reader(text, QA_SCHEMA)
    r.reject_unknown({"field", "dim", "S", "alpha", "beta"})
    F = r.read_field()
    n = r.read_dim()
    S = F.zeros((n, n))
    for ln in r.many("S"):
        if len(ln.args) != 3:
            raise ParseError("'S' takes source index, target index and coefficient", ln.number, "S")
        j, i = r.index(ln, 0), r.index(ln, 1)
        S[i, j] = S[i, j] + r.coeff(ln, 2)
    a = r.sparse("alpha", 1)
    b = r.sparse("beta", 1)
    return QAFile(F, n, F.reduce(S), F.zeros(n) if a is None else a, F.zeros(n) if b is None else b)


def format_quasi_antipode(S, a, b, field: Field) -> str:
    S = np.asarray(S, dtype=object)
    out = [f"schema {QA_SCHEMA}", f"field {field.tag}", f"dim {S.shape[0]}"]
    out += [f"S {j} {i} {field.format(c)}" for (i, j), c in iter_nonzero(S)]
    out += _sparse_lines("alpha", a, field)
    out += _sparse_lines("beta", b, field)
    return "\n".join(out) + "\n"


# -- categories and monoids -------------------------------------------------


def parse_category(text: str) -> FinCategory:
    r = _Reader(text, CAT_SCHEMA)
    r.reject_unknown({"name", "object", "morphism", "identity", "compose"})
    name_ln = r.single("name", required=False)
    objects = []
    for ln in r.many("object"):
        if len(ln.args) != 1:
            raise ParseError("'object' takes one name", ln.number, "object")
        objects.append(ln.args[0])
    mors = []
    names = set()
    for ln in r.many("morphism"):
        if len(ln.args) != 3:
            raise ParseError("'morphism' takes name, domain and codomain", ln.number, "morphism")
        m, d, c = ln.args
        if d not in objects or c not in objects:
            raise ParseError(f"unknown object in morphism {m}", ln.number, "morphism")
        if m in names:
            raise ParseError(f"duplicate morphism {m}", ln.number, "morphism")
        names.add(m)
        mors.append((m, d, c))
    ids = {}
    for ln in r.many("identity"):
        if len(ln.args) != 2 or ln.args[0] not in objects or ln.args[1] not in names:
            raise ParseError("'identity' takes an object and a morphism name", ln.number, "identity")
        ids[ln.args[0]] = ln.args[1]
    comp = {}
    for ln in r.many("compose"):
        if len(ln.args) != 3 or any(x not in names for x in ln.args):
            raise ParseError("'compose' takes three morphism names g f g∘f", ln.number, "compose")
        comp[(ln.args[0], ln.args[1])] = ln.args[2]
    return FinCategory(objects, mors, comp, ids, name=name_ln.args[0] if name_ln and name_ln.args else "C",
                       check=False)


def format_category(C: FinCategory) -> str:
    out = [f"schema {CAT_SCHEMA}", f"name {C.name}"]
    out += [f"object {s}" for s in C.objects]
    out += [f"morphism {m.name} {m.dom} {m.cod}" for m in C.morphisms.values()]
    out += [f"identity {s} {i}" for s, i in C.identities.items()]
    out += [f"compose {g} {f} {v}" for (g, f), v in C.compose_table.items()]
    return "\n".join(out) + "\n"


def parse_monoid(text: str) -> FinMonoid:
    r = _Reader(text, MON_SCHEMA)
    r.reject_unknown({"name", "elements", "unit", "product"})
    name_ln = r.single("name", required=False)
    el = r.single("elements")
    labels = el.args
    if not labels or len(set(labels)) != len(labels):
        raise ParseError("'elements' needs distinct names", el.number, "elements")
    index = {x: i for i, x in enumerate(labels)}
    u = r.single("unit")
    if len(u.args) != 1 or u.args[0] not in index:
        raise ParseError("'unit' must name an element", u.number, "unit")
    n = len(labels)
    table = [[None] * n for _ in range(n)]
    for ln in r.many("product"):
        if len(ln.args) != 3 or any(x not in index for x in ln.args):
            raise ParseError("'product' takes three element names x y xy", ln.number, "product")
        x, y, z = (index[t] for t in ln.args)
        table[x][y] = z
    missing = [(labels[x], labels[y]) for x in range(n) for y in range(n) if table[x][y] is None]
    if missing:
        raise ParseError(f"product table incomplete, e.g. {missing[0][0]}·{missing[0][1]}", None, "product")
    return FinMonoid(table, index[u.args[0]], labels, name=name_ln.args[0] if name_ln and name_ln.args else "M",
                     check=False)


def format_monoid(M: FinMonoid) -> str:
    out = [f"schema {MON_SCHEMA}", f"name {M.name}", "elements " + " ".join(M.labels), f"unit {M.labels[M.unit]}"]
    out += [f"product {M.labels[x]} {M.labels[y]} {M.labels[M.mul(x, y)]}"
            for x in range(M.order) for y in range(M.order)]
    return "\n".join(out) + "\n"


# -- reports ----------------------------------------------------------------


def tensor_to_json(T, field: Field) -> dict:
    T = np.asarray(T, dtype=object)
    return {"shape": list(T.shape), "entries": [[*idx, field.format(c)] for idx, c in iter_nonzero(T)]}


def tensor_from_json(data: dict, field: Field) -> np.ndarray:
    T = field.zeros(tuple(data["shape"]))
    for *idx, c in data["entries"]:
        T[tuple(idx)] = field.parse(c)
    return T


@dataclass
class Report:
    command: str
    subject: str
    verdict: str
    field: Field | None = None
    certificates: dict = dc_field(default_factory=dict)
    ledger: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "subject": self.subject,
            "verdict": self.verdict,
            "field": None if self.field is None else self.field.tag,
            "certificates": {k: tensor_to_json(v, self.field) for k, v in self.certificates.items()},
            "ledger": dict(self.ledger),
            "notes": list(self.notes),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    def text(self) -> str:
        out = [f"{self.command}: {self.subject}", f"verdict: {self.verdict}"]
        out += [f"note: {n}" for n in self.notes]
        for name, T in self.certificates.items():
            entries = ", ".join(f"{list(idx)}={self.field.format(c)}" for idx, c in iter_nonzero(np.asarray(T)))
            out.append(f"{name}: {entries or '0'}")
        for name, ok in self.ledger.items():
            out.append(f"  {'pass' if ok else 'FAIL'} {name}")
        return "\n".join(out)


def load_report(text: str) -> Report:
    data = json.loads(text)
    if data.get("schema") != REPORT_SCHEMA:
        raise ParseError(f"expected schema {REPORT_SCHEMA}", None, "schema")
    F = parse_field(data["field"]) if data.get("field") else None
    certs = {k: tensor_from_json(v, F) for k, v in data.get("certificates", {}).items()}
    return Report(data["command"], data["subject"], data["verdict"], F, certs, data.get("ledger", {}),
                  data.get("notes", []))


__all__ = [
    "ALG_SCHEMA",
    "TENSOR_SCHEMA",
    "QA_SCHEMA",
    "CAT_SCHEMA",
    "MON_SCHEMA",
    "REPORT_SCHEMA",
    "AlgebraFile",
    "TensorFile",
    "QAFile",
    "Report",
    "read_text",
    "detect_schema",
    "parse_algebra",
    "format_algebra",
    "algebra_file_from",
    "parse_tensor",
    "format_tensor",
    "parse_quasi_antipode",
    "format_quasi_antipode",
    "parse_category",
    "format_category",
    "parse_monoid",
    "format_monoid",
    "tensor_to_json",
    "tensor_from_json",
    "load_report",
]
