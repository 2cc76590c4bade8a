"""Membership tests for the affine class and the product-type class, with witnesses.

Also the pairing construction showing that an affine support of half
Hamming weight splits its variables into opposite pairs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import gf2
from .factorization import upf
from .scalar import ONE, ZERO, Scalar
from .signature import PreconditionError, Signature, popcount


class InternalError(AssertionError):
    """A construction violated one of its own checked identities."""


# ---------------------------------------------------------------------------
# affine subspaces


@dataclass(frozen=True)
class AffineSpace:
    arity: int
    basepoint: int
    basis: tuple[int, ...]  # RREF, decreasing leading bit; basepoint has zeros at pivots

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivots(self) -> list[int]:
        """1-based variables holding the leading bit of each basis vector."""
        return [self.arity - gf2.leading_bit(b) for b in self.basis]

    def points(self) -> list[int]:
        return sorted(self.basepoint ^ x for x in gf2.span(list(self.basis)))

    def point(self, t: int) -> int:
        """Point with free coordinates ``t`` (bit j-1 of t, counted from the top, selects basis[j])."""
        x = self.basepoint
        d = self.dim
        for j, b in enumerate(self.basis):
            if (t >> (d - 1 - j)) & 1:
                x ^= b
        return x

    def __contains__(self, x: int) -> bool:
        return gf2.in_span(x ^ self.basepoint, list(self.basis))

    def constraints(self) -> list[tuple[int, int]]:
        """Constraint form: rows ``(mask, rhs)`` with ``<mask, x> = rhs`` exactly on the space."""
        return [(h, gf2.dot(h, self.basepoint)) for h in gf2.nullspace(list(self.basis), self.arity)]

    def forms(self) -> list[tuple[int, int]]:
        """Each variable as an affine form in the free coordinates: (constant, mask over basis indices)."""
        n, d = self.arity, self.dim
        out = []
        for k in range(1, n + 1):
            c = (self.basepoint >> (n - k)) & 1
            lam = 0
            for j, b in enumerate(self.basis):
                if (b >> (n - k)) & 1:
                    lam |= 1 << (d - 1 - j)
            out.append((c, lam))
        return out


def affine_support(support, arity: int) -> AffineSpace | None:
    """The affine space equal to ``support``, or None when it is empty or not affine."""
    pts = sorted(set(support))
    if not pts:
        return None
    base = pts[0]
    basis = gf2.rref(p ^ base for p in pts)
    if len(pts) != 1 << len(basis):
        return None
    # every point lies in the coset and the sizes agree, so the sets coincide
    return AffineSpace(arity, gf2.reduce(base, basis), tuple(basis))


def space_of(f: Signature) -> AffineSpace | None:
    return affine_support(f.support, f.arity)


# ---------------------------------------------------------------------------
# affine class


@dataclass
class AffineRep:
    """``f(x) = lam * [x in space] * i^{Q(x)}`` with Q over Z4 and even cross terms.

    ``q_linear[0]`` is the constant term, ``q_linear[k]`` the coefficient of
    x_k; ``q_cross[(j, k)]`` is the (even) Z4 coefficient of x_j x_k.
    """

    lam: Scalar
    space: AffineSpace | None
    q_linear: list[int] = field(default_factory=list)
    q_cross: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def arity(self) -> int:
        return len(self.q_linear) - 1

    def phase(self, x: int) -> int:
        n = self.arity
        xs = [0] + [(x >> (n - k)) & 1 for k in range(1, n + 1)]
        q = self.q_linear[0] + sum(a * xs[k] for k, a in enumerate(self.q_linear) if k and xs[k])
        q += sum(c for (j, k), c in self.q_cross.items() if xs[j] and xs[k])
        return q % 4

    def value(self, x: int) -> Scalar:
        if self.space is None or self.lam.is_zero() or x not in self.space:
            return ZERO
        return self.lam.times_i(self.phase(x))

    def reconstruct(self) -> Signature:
        n = self.arity
        return Signature(n, (self.value(x) for x in range(1 << n)))


def _phase_of(v: Scalar, lam: Scalar) -> int | None:
    for k in range(4):
        if lam.times_i(k) == v:
            return k
    return None


def recognize_affine(f: Signature) -> AffineRep | None:
    n = f.arity
    if f.is_zero():
        return AffineRep(ZERO, None, [0] * (n + 1), {})
    space = space_of(f)
    if space is None:
        return None
    lam = f.values[space.basepoint]
    pivots = space.pivots()
    d = space.dim

    def phi(t: int) -> int | None:
        return _phase_of(f.values[space.point(t)], lam)

    lin = [0] * (n + 1)
    single = []
    for j in range(d):
        p = phi(1 << (d - 1 - j))
        if p is None:
            return None
        single.append(p)
        lin[pivots[j]] = p
    cross = {}
    for j, k in combinations(range(d), 2):
        p = phi((1 << (d - 1 - j)) | (1 << (d - 1 - k)))
        if p is None:
            return None
        c = (p - single[j] - single[k]) % 4
        if c % 2:
            return None
        if c:
            cross[(pivots[j], pivots[k])] = c
    rep = AffineRep(lam, space, lin, cross)
    for x in space.points():
        if rep.value(x) != f.values[x]:
            return None
    return rep


# ---------------------------------------------------------------------------
# product type


@dataclass
class ProductRep:
    """Pointwise product of ``("unary", (k,), (w0, w1))``, ``("eq2", (j, k), None)``
    and ``("diseq2", (j, k), None)`` factors, ports 1-based and possibly shared."""

    arity: int
    factors: list[tuple[str, tuple[int, ...], tuple[Scalar, Scalar] | None]] = field(default_factory=list)

    def value(self, x: int) -> Scalar:
        n = self.arity
        acc = ONE
        for kind, ports, w in self.factors:
            bs = [(x >> (n - k)) & 1 for k in ports]
            if kind == "unary":
                acc = acc * w[bs[0]]
            elif kind == "eq2":
                if bs[0] != bs[1]:
                    return ZERO
            elif kind == "diseq2":
                if bs[0] == bs[1]:
                    return ZERO
            else:
                raise PreconditionError(f"unknown product factor kind {kind!r}")
            if acc.is_zero():
                return ZERO
        return acc

    def reconstruct(self) -> Signature:
        n = self.arity
        return Signature(n, (self.value(x) for x in range(1 << n)))


def recognize_product(f: Signature) -> ProductRep | None:
    n = f.arity
    if f.is_zero():
        return ProductRep(n, [("unary", (1,), (ZERO, ZERO))])
    space = space_of(f)
    if space is None:
        return None
    d = space.dim
    pivots = space.pivots()
    factors: list = []
    for k, (c, lam) in enumerate(space.forms(), 1):
        if lam == 0:
            factors.append(("unary", (k,), (ONE, ZERO) if c == 0 else (ZERO, ONE)))
            continue
        if lam & (lam - 1):
            return None  # coordinate depends on two or more free bits
        j = d - lam.bit_length()
        if pivots[j] != k:
            factors.append(("eq2" if c == 0 else "diseq2", (pivots[j], k), None))
    if d == 0:
        v = f.values[space.basepoint]
        factors.append(("unary", (1,), (v, v)))
        return ProductRep(n, factors)
    quotient = Signature(d, (f.values[space.point(t)] for t in range(1 << d)))
    fact = upf(quotient)
    if any(len(vs) != 1 for vs, _ in fact.factors):
        return None
    for t, (vs, u) in enumerate(fact.factors):
        w0, w1 = u.values
        if t == 0:
            w0, w1 = w0 * fact.scale, w1 * fact.scale
        factors.append(("unary", (pivots[vs[0] - 1],), (w0, w1)))
    rep = ProductRep(n, factors)
    if rep.reconstruct() != f:
        raise InternalError("product witness does not reproduce its signature")
    return rep


# ---------------------------------------------------------------------------
# pairwise opposite supports


@dataclass
class OppositePairing:
    pairs: list[tuple[int, int]]
    identities_checked: int = 0

    def is_valid_for(self, points, arity: int) -> bool:
        used = sorted(k for p in self.pairs for k in p)
        if used != list(range(1, arity + 1)):
            return False
        for x in points:
            for i, j in self.pairs:
                if ((x >> (arity - i)) & 1) == ((x >> (arity - j)) & 1):
                    return False
        return True


def _subsets(mask: int):
    """All submasks of ``mask``, including 0 and ``mask``."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def pairwise_opposite(space: AffineSpace) -> OppositePairing:
    """Pair each variable with a complementary one, following the affine-form construction.

    Variables are split by the constant term of their affine form (U: 0,
    V: 1) and grouped by the set of free coordinates they depend on; groups
    with equal dependency sets are matched in increasing variable order.
    The counting identities behind the construction are checked along the way.
    """
    n2 = space.arity
    if n2 % 2:
        raise PreconditionError("pairing needs an even number of variables")
    n = n2 // 2
    for x in space.points():
        if popcount(x) != n:
            raise PreconditionError("affine space is not contained in the half-weight strings")
    k = space.dim
    forms = space.forms()
    U = [(v, lam) for v, (c, lam) in enumerate(forms, 1) if c == 0]
    V = [(v, lam) for v, (c, lam) in enumerate(forms, 1) if c == 1]
    full = (1 << k) - 1
    checked = 0

    def fail(msg):
        raise InternalError(msg)

    if len(U) != n or len(V) != n:
        fail("linear and affine variable classes differ in size")

    def count_sup(cls, I):
        return sum(1 for _, lam in cls if lam & I == I)

    def count_eq(cls, I):
        return sum(1 for _, lam in cls if lam == I)

    def count_odd(cls, I):
        return sum(1 for _, lam in cls if popcount(lam & I) & 1)

    sup_u = {I: count_sup(U, I) for I in range(1 << k)}
    sup_v = {I: count_sup(V, I) for I in range(1 << k)}
    for I in range(1 << k):
        ou, ov = count_odd(U, I), count_odd(V, I)
        if ou != ov:
            fail(f"odd counts differ for I={I:b}")
        for cls_odd, sup in ((ou, sup_u), (ov, sup_v)):
            rhs = sum((-2) ** (popcount(J) - 1) * sup[J] for J in _subsets(I) if J)
            if rhs != cls_odd:
                fail(f"odd-count expansion fails for I={I:b}")
        if sup_u[I] != sup_v[I]:
            fail(f"superset counts differ for I={I:b}")
        for cls, sup in ((U, sup_u), (V, sup_v)):
            mob = sum((-1) ** popcount(J) * sup[J | I] for J in _subsets(full ^ I))
            if mob != count_eq(cls, I):
                fail(f"inversion formula fails for I={I:b}")
        if count_eq(U, I) != count_eq(V, I):
            fail(f"exact-set counts differ for I={I:b}")
        checked += 1
    groups_u: dict[int, list[int]] = {}
    groups_v: dict[int, list[int]] = {}
    for v, lam in U:
        groups_u.setdefault(lam, []).append(v)
    for v, lam in V:
        groups_v.setdefault(lam, []).append(v)
    pairs = []
    for lam, us in groups_u.items():
        for a, b in zip(sorted(us), sorted(groups_v[lam])):
            pairs.append((min(a, b), max(a, b)))
    pairs.sort()
    out = OppositePairing(pairs, checked)
    if not out.is_valid_for(space.points(), n2):
        fail("constructed pairing is not opposite on the space")
    return out


def hamming_dual_support() -> list[int]:
    """Strings a followed by its complement, for a in the dual of the Hamming (7,4) code."""
    gens = [0b0001111, 0b0110011, 0b1010101]  # parity-check rows of the (7,4) code
    code = gf2.span(gens)
    return sorted((a << 7) | (0x7F ^ a) for a in code)
