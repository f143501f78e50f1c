"""Finite categories and monoids, and the groupoid criterion for slack Hopf structures.

A slack structure on a finite category is a family of endomorphisms
``(a_s, b_s)``; it is slack left Hopf when for every ``h: t → s`` and
``k: u → s`` there is exactly one pair ``f: t → s``, ``g: u → t`` with
``f∘a_t = h`` and ``f∘b_t∘g = k``.  For a monoid this says that
``(x, y) ↦ (xa, xby)`` is a bijection of ``M²``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .errors import BoundExceeded, InvalidStructure
from .report import ValidationReport
from .slack import max_exhaustive


@dataclass(frozen=True)
class Morphism:
    name: str
    dom: str
    cod: str


class FinCategory:
    """``compose[(g, f)]`` is ``g∘f`` for ``f: x → y``, ``g: y → z`` (names)."""

    def __init__(self, objects, morphisms, compose, identities, name: str = "C", check: bool = True):
        self.objects = list(objects)
        self.morphisms = {m.name: m for m in (Morphism(*m) if not isinstance(m, Morphism) else m for m in morphisms)}
        self.compose_table = dict(compose)
        self.identities = dict(identities)
        self.name = name
        self._homs = {}
        for m in self.morphisms.values():
            self._homs.setdefault((m.dom, m.cod), []).append(m.name)
        if check:
            rep = validate_category(self)
            if not rep.ok:
                raise InvalidStructure(str(rep), rep)

    def hom(self, dom: str, cod: str) -> list[str]:
        return self._homs.get((dom, cod), [])

    def compose(self, g: str, f: str) -> str:
        return self.compose_table[(g, f)]

    def __len__(self):
        return len(self.morphisms)

    def __repr__(self):
        return f"FinCategory({self.name}, objects={len(self.objects)}, morphisms={len(self)})"


def validate_category(C: FinCategory) -> ValidationReport:
    rep = ValidationReport(f"category {C.name}")
    mors = C.morphisms
    composable = {(g, f) for g, f in itertools.product(mors, repeat=2) if mors[f].cod == mors[g].dom}
    rep.record("domain_of_composition", set(C.compose_table) == composable)
    typed = all(
        (g, f) in C.compose_table
        and C.compose_table[(g, f)] in mors
        and mors[C.compose_table[(g, f)]].dom == mors[f].dom
        and mors[C.compose_table[(g, f)]].cod == mors[g].cod
        for g, f in composable
    )
    rep.record("composite_types", typed)
    if not (typed and set(C.compose_table) == composable):
        return rep
    ids_ok = all(
        C.identities.get(s) in C.hom(s, s) for s in C.objects
    ) and all(
        C.compose(C.identities[m.cod], n) == n and C.compose(n, C.identities[m.dom]) == n
        for n, m in mors.items()
    )
    rep.record("identities", ids_ok)
    assoc = all(
        C.compose(C.compose(h, g), f) == C.compose(h, C.compose(g, f))
        for f, m in mors.items()
        for g in (x for x in mors if mors[x].dom == m.cod)
        for h in (x for x in mors if mors[x].dom == mors[g].cod)
    )
    rep.record("associativity", assoc)
    return rep


def is_groupoid(C: FinCategory) -> bool:
    for f, m in C.morphisms.items():
        if not any(
            C.compose(g, f) == C.identities[m.dom] and C.compose(f, g) == C.identities[m.cod]
            for g in C.hom(m.cod, m.dom)
        ):
            return False
    return True


def category_slack_hopf(C: FinCategory, a: dict, b: dict) -> bool:
    for s in C.objects:
        if a[s] not in C.hom(s, s) or b[s] not in C.hom(s, s):
            raise InvalidStructure(f"a and b must be endomorphisms of {s}")
    for s, t, u in itertools.product(C.objects, repeat=3):
        source = list(itertools.product(C.hom(t, s), C.hom(u, t)))
        target_size = len(C.hom(t, s)) * len(C.hom(u, s))
        if len(source) != target_size:
            return False
        image = Counter((C.compose(f, a[t]), C.compose(C.compose(f, b[t]), g)) for f, g in source)
        if any(c != 1 for c in image.values()) or len(image) != target_size:
            return False
    return True


@dataclass(frozen=True)
class Witness:
    a: object
    b: object


def _family_count(C: FinCategory) -> int:
    count = 1
    for s in C.objects:
        count *= len(C.hom(s, s)) ** 2
    return count


def exists_category_slack_hopf(C: FinCategory, bound: int | None = None) -> Witness | None:
    """Lexicographically least ``(a, b)`` family, objects in declared order."""
    bound = max_exhaustive() if bound is None else bound
    total = _family_count(C)
    if total > bound:
        raise BoundExceeded(f"{total} candidate families exceed the budget {bound}")
    ends = [sorted(C.hom(s, s)) for s in C.objects]
    for a_choice in itertools.product(*ends):
        for b_choice in itertools.product(*ends):
            a = dict(zip(C.objects, a_choice))
            b = dict(zip(C.objects, b_choice))
            if category_slack_hopf(C, a, b):
                return Witness(a, b)
    return None


def identity_family(C: FinCategory) -> dict:
    return {s: C.identities[s] for s in C.objects}


def fusion_bijective(C: FinCategory) -> bool:
    """The plain fusion map: the criterion with ``a = b = identities``."""
    ids = identity_family(C)
    return category_slack_hopf(C, ids, ids)


# -- monoids ----------------------------------------------------------------


class FinMonoid:
    """Elements ``0..n-1`` with ``table[x][y] = xy``; labels are cosmetic."""

    def __init__(self, table, unit: int, labels=None, name: str = "M", check: bool = True):
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.order = len(self.table)
        self.unit = unit
        self.labels = tuple(labels) if labels else tuple(str(i) for i in range(self.order))
        self.name = name
        if check:
            rep = validate_monoid(self)
            if not rep.ok:
                raise InvalidStructure(str(rep), rep)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    @classmethod
    def from_operation(cls, elements, op, unit, name: str = "M"):
        elements = list(elements)
        index = {x: i for i, x in enumerate(elements)}
        table = [[index[op(x, y)] for y in elements] for x in elements]
        return cls(table, index[unit], [str(x) for x in elements], name)

    def __repr__(self):
        return f"FinMonoid({self.name}, order={self.order})"


def validate_monoid(M: FinMonoid) -> ValidationReport:
    rep = ValidationReport(f"monoid {M.name}")
    n = M.order
    rep.record("closed", all(len(row) == n and all(0 <= v < n for v in row) for row in M.table))
    if not rep.ok:
        return rep
    rep.record("unit", all(M.mul(M.unit, x) == x == M.mul(x, M.unit) for x in range(n)))
    rep.record("associativity", all(
        M.mul(M.mul(x, y), z) == M.mul(x, M.mul(y, z)) for x, y, z in itertools.product(range(n), repeat=3)
    ))
    return rep


def is_group(M: FinMonoid) -> bool:
    return all(any(M.mul(x, y) == M.unit == M.mul(y, x) for y in range(M.order)) for x in range(M.order))


def monoid_map_bijective(M: FinMonoid, a: int, b: int) -> bool:
    n = M.order
    image = {(M.mul(x, a), M.mul(M.mul(x, b), y)) for x in range(n) for y in range(n)}
    return len(image) == n * n


def monoid_slack_hopf(M: FinMonoid) -> Witness | None:
    for a, b in itertools.product(range(M.order), repeat=2):
        if monoid_map_bijective(M, a, b):
            return Witness(a, b)
    return None


def category_of_monoid(M: FinMonoid) -> FinCategory:
    mors = [(M.labels[x], "*", "*") for x in range(M.order)]
    comp = {(M.labels[g], M.labels[f]): M.labels[M.mul(g, f)] for g in range(M.order) for f in range(M.order)}
    return FinCategory(["*"], mors, comp, {"*": M.labels[M.unit]}, name=f"B{M.name}")


def enumerate_monoids(order: int) -> list[FinMonoid]:
    """Every monoid structure on ``{0, ..., order-1}`` with unit ``0`` (labelled, not up to isomorphism)."""
    n = order
    if n == 1:
        return [FinMonoid([[0]], 0, name="M1_0")]
    free = [(x, y) for x in range(1, n) for y in range(1, n)]
    out = []
    for values in itertools.product(range(n), repeat=len(free)):
        table = [[y if x == 0 else (x if y == 0 else 0) for y in range(n)] for x in range(n)]
        for (x, y), v in zip(free, values):
            table[x][y] = v
        M = FinMonoid(table, 0, name=f"M{n}_{len(out)}", check=False)
        if validate_monoid(M).ok:
            out.append(M)
    return out


# -- category builders ------------------------------------------------------


def poset_category(objects, leq, name: str = "P") -> FinCategory:
    """Thin category with an arrow ``x → y`` iff ``leq(x, y)``."""
    objects = list(objects)
    mors = [(f"{x}<{y}" if x != y else f"id{x}", x, y) for x in objects for y in objects if leq(x, y)]
    by_ends = {(d, c): n for n, d, c in mors}
    comp = {}
    for n1, d1, c1 in mors:
        for n2, d2, c2 in mors:
            if c1 == d2:
                comp[(n2, n1)] = by_ends[(d1, c2)]
    return FinCategory(objects, mors, comp, {x: f"id{x}" for x in objects}, name=name)


def interval_category() -> FinCategory:
    return poset_category(["0", "1"], lambda x, y: x <= y, name="interval")


def pair_groupoid(objects, name: str = "pair") -> FinCategory:
    """Exactly one arrow between any two objects."""
    objects = list(objects)
    return poset_category(objects, lambda x, y: True, name=name)


def action_groupoid(group: FinMonoid, points, act, name: str = "action") -> FinCategory:
    """Objects ``points``; an arrow ``(g, x): x → g·x`` for each ``g``."""
    points = list(points)
    mors = [(f"{group.labels[g]}@{x}", x, act(g, x)) for g in range(group.order) for x in points]
    comp = {}
    for g in range(group.order):
        for x in points:
            y = act(g, x)
            for h in range(group.order):
                comp[(f"{group.labels[h]}@{y}", f"{group.labels[g]}@{x}")] = f"{group.labels[group.mul(h, g)]}@{x}"
    ids = {x: f"{group.labels[group.unit]}@{x}" for x in points}
    return FinCategory(points, mors, comp, ids, name=name)


def disjoint_union(C: FinCategory, D: FinCategory, name: str | None = None) -> FinCategory:
    def tag(prefix, cat):
        objs = [f"{prefix}{s}" for s in cat.objects]
        mors = [(f"{prefix}{m.name}", f"{prefix}{m.dom}", f"{prefix}{m.cod}") for m in cat.morphisms.values()]
        comp = {(f"{prefix}{g}", f"{prefix}{f}"): f"{prefix}{v}" for (g, f), v in cat.compose_table.items()}
        ids = {f"{prefix}{s}": f"{prefix}{v}" for s, v in cat.identities.items()}
        return objs, mors, comp, ids

    o1, m1, c1, i1 = tag("L.", C)
    o2, m2, c2, i2 = tag("R.", D)
    return FinCategory(o1 + o2, m1 + m2, {**c1, **c2}, {**i1, **i2}, name=name or f"{C.name}+{D.name}")


def cyclic_monoid(m: int) -> FinMonoid:
    return FinMonoid([[(x + y) % m for y in range(m)] for x in range(m)], 0,
                     ["1"] + [f"g{i}" if i > 1 else "g" for i in range(1, m)], name=f"Z{m}")


def bool_monoid() -> FinMonoid:
    return FinMonoid([[0, 1], [1, 1]], 0, ["1", "z"], name="bool")


def truncated_addition(cap: int = 2) -> FinMonoid:
    n = cap + 1
    return FinMonoid([[min(x + y, cap) for y in range(n)] for x in range(n)], 0, name=f"trunc{cap}")


def klein_four() -> FinMonoid:
    return FinMonoid([[x ^ y for y in range(4)] for x in range(4)], 0, ["1", "a", "b", "ab"], name="V4")


def category_corpus() -> list[FinCategory]:
    z2, z3 = cyclic_monoid(2), cyclic_monoid(3)
    swap = action_groupoid(z2, ["p", "q"], lambda g, x: x if g == 0 else {"p": "q", "q": "p"}[x], name="Z2⋉2")
    fixed = action_groupoid(z2, ["p", "q"], lambda g, x: x, name="Z2×2")
    return [
        category_of_monoid(z2),
        category_of_monoid(z3),
        category_of_monoid(bool_monoid()),
        category_of_monoid(truncated_addition()),
        interval_category(),
        poset_category(["0", "1", "2"], lambda x, y: x <= y, name="chain3"),
        poset_category(["0", "1", "2"], lambda x, y: x == y, name="discrete3"),
        pair_groupoid(["0", "1"], name="pair2"),
        pair_groupoid(["0", "1", "2"], name="pair3"),
        swap,
        fixed,
        disjoint_union(category_of_monoid(z2), interval_category()),
        disjoint_union(category_of_monoid(z3), pair_groupoid(["0", "1"])),
        poset_category(["0", "1", "2"], lambda x, y: x == y or (x == "0"), name="span"),
    ]


def monoid_corpus(max_enumerated: int = 3) -> list[FinMonoid]:
    out = []
    for n in range(1, max_enumerated + 1):
        out.extend(enumerate_monoids(n))
    out.extend([cyclic_monoid(4), klein_four(), truncated_addition(3),
                FinMonoid([[x * y % 4 for y in range(4)] for x in range(4)], 1, name="mult4")])
    return out


__all__ = [
    "Morphism",
    "FinCategory",
    "FinMonoid",
    "Witness",
    "validate_category",
    "validate_monoid",
    "is_groupoid",
    "is_group",
    "category_slack_hopf",
    "exists_category_slack_hopf",
    "identity_family",
    "fusion_bijective",
    "monoid_map_bijective",
    "monoid_slack_hopf",
    "category_of_monoid",
    "enumerate_monoids",
    "poset_category",
    "interval_category",
    "pair_groupoid",
    "action_groupoid",
    "disjoint_union",
    "cyclic_monoid",
    "bool_monoid",
    "truncated_addition",
    "klein_four",
    "category_corpus",
    "monoid_corpus",
]
