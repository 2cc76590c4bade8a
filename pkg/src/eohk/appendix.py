"""The arity-8 signature f8 and a checker for its merge structure."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .factorization import associates, delta_property, in_B, int_B, upf
from .gadgets import merge_labeled
from .scalar import ONE, ZERO, Scalar
from .signature import Signature, neq2, popcount

# merged pair -> the three disequality pairs its merge should factor into
MERGE_TABLE: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {
    (1, 2): ((3, 4), (5, 6), (7, 8)),
    (3, 4): ((1, 2), (5, 6), (7, 8)),
    (5, 6): ((1, 2), (3, 4), (7, 8)),
    (7, 8): ((1, 2), (3, 4), (5, 6)),
    (1, 3): ((2, 4), (5, 7), (6, 8)),
    (2, 4): ((1, 3), (5, 7), (6, 8)),
    (5, 7): ((1, 3), (2, 4), (6, 8)),
    (6, 8): ((1, 3), (2, 4), (5, 7)),
    (1, 4): ((2, 3), (5, 8), (6, 7)),
    (2, 3): ((1, 4), (5, 8), (6, 7)),
    (5, 8): ((1, 4), (2, 3), (6, 7)),
    (6, 7): ((1, 4), (2, 3), (5, 8)),
    (1, 5): ((2, 6), (3, 7), (4, 8)),
    (2, 6): ((1, 5), (3, 7), (4, 8)),
    (3, 7): ((1, 5), (2, 6), (4, 8)),
    (4, 8): ((1, 5), (2, 6), (3, 7)),
    (1, 6): ((2, 5), (3, 8), (4, 7)),
    (2, 5): ((1, 6), (3, 8), (4, 7)),
    (3, 8): ((1, 6), (2, 5), (4, 7)),
    (4, 7): ((1, 6), (2, 5), (3, 8)),
    (1, 7): ((2, 8), (3, 5), (4, 6)),
    (2, 8): ((1, 7), (3, 5), (4, 6)),
    (3, 5): ((1, 7), (2, 8), (4, 6)),
    (4, 6): ((1, 7), (2, 8), (3, 5)),
    (1, 8): ((2, 7), (3, 6), (4, 5)),
    (2, 7): ((1, 8), (3, 6), (4, 5)),
    (3, 6): ((2, 7), (1, 8), (4, 5)),
    (4, 5): ((2, 7), (3, 6), (1, 8)),
}


def _bits8(x: int) -> list[int]:
    return [(x >> (8 - k)) & 1 for k in range(1, 9)]


def in_f8_support(x: int) -> bool:
    b = _bits8(x)
    return (
        (b[0] + b[1] + b[2] + b[3]) % 2 == 0
        and (b[4] + b[5] + b[6] + b[7]) % 2 == 0
        and (b[0] + b[1] + b[4] + b[5]) % 2 == 0
        and (b[0] + b[2] + b[4] + b[6]) % 2 == 0
        and popcount(x) == 4
    )


def build_f8() -> Signature:
    return Signature(8, (ONE if in_f8_support(x) else ZERO for x in range(256)))


@dataclass
class F8Row:
    pair: tuple[int, int]
    expected: tuple[tuple[int, int], ...]
    observed: tuple[tuple[int, int], ...]
    scale: Scalar | None
    ok: bool


@dataclass
class F8Report:
    support_size: int
    is_eo: bool
    is_ars: bool
    factorization_table: list[F8Row] = field(default_factory=list)
    delta_property_absent: bool = False
    commutativity_checked: bool = False
    in_B: bool = True
    int_B: bool = False
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            not self.failures
            and self.support_size == 14
            and self.is_eo
            and self.is_ars
            and len(self.factorization_table) == 28
            and all(r.ok for r in self.factorization_table)
            and self.delta_property_absent
            and self.commutativity_checked
            and not self.in_B
            and self.int_B
        )


def _check_row(f: Signature, pair: tuple[int, int]) -> F8Row:
    labels = tuple(range(1, 9))
    d, rest = merge_labeled(f, labels, *pair)
    expected = tuple(sorted(MERGE_TABLE[pair]))
    if d.is_zero():
        return F8Row(pair, expected, (), None, False)
    fact = upf(d)
    observed = tuple(sorted(tuple(rest[k - 1] for k in vs) for vs, _ in fact.factors))
    binary_neq = all(len(vs) == 2 and associates(g, neq2()) for vs, g in fact.factors)
    ok = binary_neq and observed == expected and not fact.scale.is_zero()
    return F8Row(pair, expected, observed, fact.scale, ok)


def _commutes(f: Signature) -> bool:
    labels = tuple(range(1, 9))
    for p, q in combinations(combinations(labels, 2), 2):
        if set(p) & set(q):
            continue
        a, la = merge_labeled(f, labels, *p)
        a, la = merge_labeled(a, la, *q)
        b, lb = merge_labeled(f, labels, *q)
        b, lb = merge_labeled(b, lb, *p)
        if la != lb or a != b:
            return False
    return True


def verify_f8() -> F8Report:
    f = build_f8()
    rep = F8Report(len(f.support), f.is_eo, f.is_ars)
    for pair in sorted(MERGE_TABLE):
        row = _check_row(f, pair)
        rep.factorization_table.append(row)
        if not row.ok:
            rep.failures.append(f"merge {pair}: expected {row.expected}, observed {row.observed}")
    rep.delta_property_absent = delta_property(f) is None
    if not rep.delta_property_absent:
        rep.failures.append("a delta-property witness exists")
    rep.commutativity_checked = _commutes(f)
    if not rep.commutativity_checked:
        rep.failures.append("some disjoint merges do not commute")
    rep.in_B = in_B(f)
    rep.int_B = int_B(f)[0]
    return rep
