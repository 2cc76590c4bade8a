"""Unique prime factorization of signatures and the divisibility diagnostics built on it."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .gadgets import MateMatrix, mate, merge_labeled
from .scalar import I, ONE, ZERO, Scalar
from .signature import PreconditionError, Signature, neq2


# ---------------------------------------------------------------------------
# splitting


@lru_cache(maxsize=4096)
def _offsets(n: int, subset: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Index offsets so that f-index = rows[r] | cols[c] for the (subset | rest) flattening."""
    rest = [k for k in range(1, n + 1) if k not in subset]

    def table(vars_):
        m = len(vars_)
        out = []
        for y in range(1 << m):
            idx = 0
            for pos, k in enumerate(vars_):
                if (y >> (m - 1 - pos)) & 1:
                    idx |= 1 << (n - k)
            out.append(idx)
        return tuple(out)

    return table(subset), table(rest)


def _normalize(values: Sequence[Scalar]) -> tuple[list[Scalar], Scalar]:
    """Scale so the first nonzero entry is 1; returns (normalized, that entry)."""
    for v in values:
        if not v.is_zero():
            inv = v.inverse()
            return [x * inv for x in values], v
    raise PreconditionError("cannot normalize a zero table")


def try_split(f: Signature, subset: Sequence[int]) -> tuple[Signature, Signature, Scalar] | None:
    """Split ``f = scale * g(x_S) (x) h(x_rest)`` when the flattening has rank <= 1.

    ``g`` and ``h`` both have first nonzero entry 1.
    """
    n = f.arity
    S = tuple(sorted(subset))
    if not S or len(S) >= n or len(set(S)) != len(S) or S[0] < 1 or S[-1] > n:
        raise PreconditionError(f"split subset must be a proper nonempty subset of 1..{n}: {subset}")
    supp = f.support
    if not supp:
        raise PreconditionError("cannot split the zero signature")
    rows, cols = _offsets(n, S)
    vals = f.values
    # pivot: first nonzero in lexicographic order of (row, col)
    r0 = c0 = None
    for r, ro in enumerate(rows):
        for c, co in enumerate(cols):
            if not vals[ro | co].is_zero():
                r0, c0 = r, c
                break
        if r0 is not None:
            break
    ro0, co0 = rows[r0], cols[c0]
    pivot = vals[ro0 | co0]
    live_rows = [r for r, ro in enumerate(rows) if not vals[ro | co0].is_zero()]
    live_cols = [c for c, co in enumerate(cols) if not vals[ro0 | co].is_zero()]
    if len(live_rows) * len(live_cols) != len(supp):
        return None
    col_vals = [vals[ro0 | cols[c]] for c in live_cols]
    for r in live_rows:
        ro = rows[r]
        rv = vals[ro | co0]
        for c, cv in zip(live_cols, col_vals):
            x = vals[ro | cols[c]]
            if x.is_zero() or x * pivot != rv * cv:
                return None
    g_vals, _ = _normalize([vals[ro | co0] for ro in rows])
    h_vals, h_lead = _normalize([vals[ro0 | co] for co in cols])
    g = Signature(len(S), g_vals)
    h = Signature(n - len(S), h_vals)
    # f = g_r * pivot_col_r ... : f[r][c] = g[r] * f[r0][c] = g[r] * h[c] * h_lead
    return g, h, h_lead


# ---------------------------------------------------------------------------
# factorizations


@dataclass
class Factorization:
    scale: Scalar
    factors: list[tuple[tuple[int, ...], Signature]] = field(default_factory=list)

    @property
    def arity(self) -> int:
        return sum(len(vs) for vs, _ in self.factors)

    def partition(self) -> list[tuple[int, ...]]:
        return [vs for vs, _ in self.factors]

    def reconstruct(self) -> Signature:
        n = self.arity
        out = []
        maps = []
        for vs, g in self.factors:
            maps.append((vs, g))
        for idx in range(1 << n):
            acc = self.scale
            for vs, g in maps:
                sub = 0
                for k in vs:
                    sub = (sub << 1) | ((idx >> (n - k)) & 1)
                acc = acc * g.values[sub]
                if acc.is_zero():
                    break
            out.append(acc)
        return Signature(n, out)


def upf(f: Signature) -> Factorization:
    """Finest tensor factorization; factors ordered by smallest variable, each with first nonzero entry 1."""
    if f.is_zero():
        raise PreconditionError("the zero signature has no prime factorization")
    remaining = list(range(1, f.arity + 1))
    h = f
    scale = ONE
    factors: list[tuple[tuple[int, ...], Signature]] = []
    while remaining:
        m = len(remaining)
        found = None
        for size in range(1, m):
            for rest in combinations(range(2, m + 1), size - 1):
                local = (1,) + rest
                split = try_split(h, local)
                if split is not None:
                    found = local, split
                    break
            if found:
                break
        if found is None:
            norm, lead = _normalize(h.values)
            factors.append((tuple(remaining), Signature(m, norm)))
            scale = scale * lead
            break
        local, (g, h, s) = found
        factors.append((tuple(remaining[k - 1] for k in local), g))
        scale = scale * s
        remaining = [x for k, x in enumerate(remaining, 1) if k not in local]
    return Factorization(scale, factors)


def is_irreducible(f: Signature) -> bool:
    return not f.is_zero() and len(upf(f).factors) == 1


def associates(g: Signature, h: Signature) -> bool:
    """Nonzero constant multiples of each other."""
    if g.arity != h.arity or g.is_zero() or h.is_zero():
        return False
    if g.support != h.support:
        return False
    return _normalize(g.values)[0] == _normalize(h.values)[0]


def _ars_unit(g: Signature) -> Scalar:
    """A scalar mu with mu * g satisfying ARS, assuming |g(a)| = |g(~a)| on the support."""
    full = (1 << g.arity) - 1
    a = g.support[0]
    u = g.values[full ^ a] / g.values[a].conj()
    if u == -1:
        return I
    return 1 + u.conj()


def ars_normalize(fact: Factorization) -> Factorization:
    """Rescale factors of an EO+ARS signature's factorization so each factor satisfies ARS.

    The residual scale, real for ARS inputs, is folded into the last factor.
    """
    scale = fact.scale
    out = []
    for vs, g in fact.factors:
        if not g.is_eo:
            raise PreconditionError("ars_normalize needs an EO signature (factor is not EO)")
        mu = _ars_unit(g)
        out.append((vs, g.scale(mu)))
        scale = scale / mu
    if not scale.is_real():
        raise PreconditionError("factorization does not come from an ARS signature")
    vs0, g0 = out[-1]
    out[-1] = (vs0, g0.scale(scale))
    for _, g in out:
        if not g.is_ars:
            raise PreconditionError("factor cannot be normalized to ARS; input is not ARS")
    return Factorization(ONE, out)


# ---------------------------------------------------------------------------
# the class B and divisibility


def _binary_factor_on(fact: Factorization, u: int, v: int) -> Signature | None:
    key = (min(u, v), max(u, v))
    for vs, g in fact.factors:
        if vs == key:
            return g
    return None


def divides_binary(b: Signature, f: Signature, u: int, v: int) -> bool:
    """Whether ``f = b(x_u, x_v) (x) g`` for some ``g``."""
    if b.arity != 2 or b.is_zero():
        raise PreconditionError("divisor must be a nonzero binary signature")
    if u == v:
        raise PreconditionError("divisor ports must differ")
    if f.is_zero():
        return True
    if f.arity == 2:
        return associates(b if u < v else b.permute([2, 1]), f)
    g = _binary_factor_on(upf(f), u, v)
    if g is None:
        return False
    return associates(b if u < v else b.permute([2, 1]), g)


def in_B(f: Signature | Scalar) -> bool:
    """Tensor product of binary EO signatures with ARS (the zero signature included)."""
    if isinstance(f, Scalar):
        return False
    if f.arity % 2:
        return False
    if f.is_zero():
        return True
    if not (f.is_eo and f.is_ars):
        return False
    return all(len(vs) == 2 for vs, _ in upf(f).factors)


def merges(f: Signature) -> dict[tuple[int, int], Signature | Scalar]:
    n = f.arity
    labels = tuple(range(1, n + 1))
    return {(i, j): merge_labeled(f, labels, i, j)[0] for i, j in combinations(labels, 2)}


def int_B(f: Signature) -> tuple[bool, bool]:
    """(every merge lies in B, every merge lies in B and is nonzero)."""
    if f.arity < 4:
        raise PreconditionError("merge diagnostics need arity >= 4")
    ok, nonzero = True, True
    for d in merges(f).values():
        if not in_B(d):
            return False, False
        if d.is_zero():
            nonzero = False
    return ok, nonzero


@dataclass(frozen=True)
class DeltaWitness:
    u: int
    v: int
    r: int
    s: int
    t: int
    b: Signature


def delta_property(f: Signature) -> DeltaWitness | None:
    """First (u,v,r,s,t) in lexicographic order where one binary signature divides all three triangle merges."""
    n = f.arity
    if n < 5:
        return None
    labels = tuple(range(1, n + 1))
    info: dict[tuple[int, int], tuple[tuple[int, ...], Signature | Scalar, Factorization | None]] = {}
    for i, j in combinations(labels, 2):
        d, rest = merge_labeled(f, labels, i, j)
        fact = None if isinstance(d, Scalar) or d.is_zero() else upf(d)
        info[(i, j)] = (rest, d, fact)

    def factor_on(pair, u, v):
        rest, d, fact = info[pair]
        if fact is None:
            return "any"
        pu, pv = rest.index(u) + 1, rest.index(v) + 1
        g = _binary_factor_on(fact, pu, pv)
        return g

    for u, v in combinations(labels, 2):
        others = [x for x in labels if x not in (u, v)]
        for r, s, t in combinations(others, 3):
            found = [factor_on(p, u, v) for p in ((r, s), (s, t), (r, t))]
            if any(g is None for g in found):
                continue
            concrete = [g for g in found if g != "any"]
            if not concrete:
                return DeltaWitness(u, v, r, s, t, neq2())
            if all(associates(concrete[0], g) for g in concrete[1:]):
                return DeltaWitness(u, v, r, s, t, concrete[0])
    return None


# ---------------------------------------------------------------------------
# mating diagnostics


def mate_form(mm: MateMatrix) -> str:
    """Name the shape of a mate matrix.

    ``outer`` / ``inner``: support-2 forms realizing the arity-4 disequality;
    ``orthogonal``: lambda * N(x)N; ``reducible``: inner block with equality
    in Cauchy-Schwarz; ``hard``: the arity-4 signature is outside the
    product-type class; ``zero`` / ``invalid`` should never occur for
    nonzero ARS inputs.
    """
    A, B, C = mm[0, 3], mm[1, 2], mm[1, 1]
    if mm[3, 0] != A or mm[2, 1] != B or mm[2, 2] != C.conj():
        return "invalid"
    nz = (not A.is_zero(), not B.is_zero(), not C.is_zero())
    if nz == (False, False, False):
        return "zero"
    if nz == (True, False, False):
        return "outer"
    if nz == (False, True, False):
        return "inner"
    if nz == (True, True, False):
        return "orthogonal" if A == B else "hard"
    if nz == (False, True, True):
        return "reducible" if C.abs2() == B * B else "hard"
    if nz == (True, True, True):
        return "hard"
    return "invalid"


def orthogonality(f: Signature) -> Scalar | None:
    """Common lambda with M(m_ij f) = lambda N(x)N for all pairs, if it exists."""
    if f.arity < 4:
        raise PreconditionError("orthogonality needs arity >= 4")
    if not (f.is_eo and f.is_ars):
        raise PreconditionError("orthogonality needs an EO signature with ARS")
    if not is_irreducible(f):
        raise PreconditionError("orthogonality needs an irreducible signature")
    lam = None
    for i, j in combinations(range(1, f.arity + 1), 2):
        _, mm = mate(f, i, j)
        if mate_form(mm) != "orthogonal":
            return None
        if lam is None:
            lam = mm[0, 3]
        elif mm[0, 3] != lam:
            return None
    return lam


@dataclass
class TwoCase:
    alternative: str  # "hard", "neq4" or "orthogonal"
    forms: dict[tuple[int, int], str]
    lam: Scalar | None = None


def twocase(f: Signature) -> TwoCase:
    """Sort a nonzero irreducible EO+ARS signature into the mating trichotomy."""
    if f.is_zero() or not (f.is_eo and f.is_ars):
        raise PreconditionError("twocase needs a nonzero EO signature with ARS")
    forms = {}
    lams = set()
    for i, j in combinations(range(1, f.arity + 1), 2):
        _, mm = mate(f, i, j)
        forms[(i, j)] = mate_form(mm)
        if forms[(i, j)] == "orthogonal":
            lams.add(mm[0, 3])
    kinds = set(forms.values())
    if "hard" in kinds:
        return TwoCase("hard", forms)
    if kinds & {"outer", "inner"}:
        return TwoCase("neq4", forms)
    if kinds == {"orthogonal"} and len(lams) == 1:
        return TwoCase("orthogonal", forms, lams.pop())
    return TwoCase("invalid", forms)


def full_mating_value(f: Signature) -> Scalar:
    """Mate two copies of ``f`` on every variable: sum of f(a) f(~a)."""
    full = (1 << f.arity) - 1
    acc = ZERO
    for a in f.support:
        acc = acc + f.values[a] * f.values[full ^ a]
    return acc


@dataclass
class DiagnosticReport:
    in_B: bool
    int_B: bool | None = None
    int_B_nonzero: bool | None = None
    delta_witness: DeltaWitness | None = None
    orthogonality_lambda: Scalar | None = None


def diagnose(f: Signature) -> DiagnosticReport:
    rep = DiagnosticReport(in_B=in_B(f))
    if f.arity >= 4:
        rep.int_B, rep.int_B_nonzero = int_B(f)
        rep.delta_witness = delta_property(f)
        if f.is_eo and f.is_ars and is_irreducible(f):
            rep.orthogonality_lambda = orthogonality(f)
    return rep
