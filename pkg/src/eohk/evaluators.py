"""Polynomial-time partition functions for grids whose labels are all affine or all product type."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import gf2
from .gadgets import SignatureGrid
from .recognizers import AffineRep, ProductRep, recognize_affine, recognize_product
from .scalar import I, ONE, ZERO, Scalar
from .signature import PreconditionError

ONE_PLUS_I = ONE + I
ONE_MINUS_I = ONE - I


def _port_literals(grid: SignatureGrid) -> dict[tuple[int, int], tuple[int, int]]:
    """Map every port to (edge index, negation bit) so that port value = x_edge xor neg."""
    grid.validate()
    flip = 1 if grid.mode == "eo" else 0
    lits = {}
    for t, (a, b) in enumerate(grid.edges):
        lits[a] = (t, 0)
        lits[b] = (t, flip)
    return lits


def _reps_for(grid: SignatureGrid, reps, recognize, check):
    """Resolve per-vertex witnesses: a list (per vertex), a dict (per label) or None (recognize)."""
    out = []
    cache = {}
    for v, name in enumerate(grid.vertices):
        if isinstance(reps, (list, tuple)):
            rep = reps[v]
        elif isinstance(reps, dict):
            rep = reps.get(name)
        else:
            rep = None
        key = (name, id(rep))
        if key not in cache:
            f = grid.signatures[name]
            if rep is None:
                rep = recognize(f)
                if rep is None:
                    raise PreconditionError(f"signature {name!r} has no {check} witness")
            elif rep.reconstruct() != f:
                raise PreconditionError(f"witness for {name!r} does not reproduce its signature")
            cache[key] = rep
        out.append(cache[key])
    return out


# ---------------------------------------------------------------------------
# affine grids


@dataclass
class QuadraticSystem:
    """``prefactor * sum over x with A x = b of i^{Q(x)}`` over variables ``0..nvars-1``.

    Q = const + sum lin[k] x_k + 2 * sum over pairs marked in the symmetric
    bitmask rows ``cross`` of x_j x_k; constraints are (mask, rhs) over GF(2).
    """

    nvars: int
    const: int = 0
    lin: list[int] = field(default_factory=list)
    cross: list[int] = field(default_factory=list)
    constraints: list[tuple[int, int]] = field(default_factory=list)
    prefactor: Scalar = ONE
    empty: bool = False

    def __post_init__(self):
        if not self.lin:
            self.lin = [0] * self.nvars
        if not self.cross:
            self.cross = [0] * self.nvars

    # ---- building -------------------------------------------------------
    def add_linear(self, lit: tuple[int, int], a: int) -> None:
        x, neg = lit
        if neg:
            self.const += a
            self.lin[x] -= a
        else:
            self.lin[x] += a

    def add_cross(self, l1: tuple[int, int], l2: tuple[int, int]) -> None:
        """Add 2 * l1 * l2 for literals l = x or 1 - x (signs vanish mod 4)."""
        (x1, n1), (x2, n2) = l1, l2
        self.const += 2 * (n1 & n2)
        if n1:
            self.lin[x2] += 2
        if n2:
            self.lin[x1] += 2
        if x1 == x2:
            self.lin[x1] += 2
        else:
            self.cross[x1] ^= 1 << x2
            self.cross[x2] ^= 1 << x1

    def add_constraint(self, mask: int, rhs: int) -> None:
        self.constraints.append((mask, rhs))

    # ---- elimination ----------------------------------------------------
    def _toggle_clique(self, s: int) -> None:
        k = s
        while k:
            low = k & -k
            j = low.bit_length() - 1
            self.cross[j] ^= s ^ low
            k ^= low

    def substitute(self, m: int, c: int, s: int) -> None:
        """Replace x_m by c xor (xor of x_k for k in s); m must not be in s."""
        am = self.lin[m] % 4
        self.lin[m] = 0
        if am:
            self.const += am * c
            sign = 1 - 2 * c
            k = s
            while k:
                low = k & -k
                self.lin[low.bit_length() - 1] += am * sign
                k ^= low
            if am & 1:
                self._toggle_clique(s)
        nb = self.cross[m]
        self.cross[m] = 0
        if nb:
            k = nb
            while k:
                low = k & -k
                j = low.bit_length() - 1
                self.cross[j] &= ~(1 << m)
                self.cross[j] ^= s
                if c:
                    self.lin[j] += 2
                if s & low:
                    self.lin[j] += 2
                k ^= low
            k = s
            while k:
                low = k & -k
                self.cross[low.bit_length() - 1] ^= nb
                k ^= low
            k = nb | s
            while k:
                low = k & -k
                j = low.bit_length() - 1
                self.cross[j] &= ~low
                k ^= low

    def _apply_constraint(self, mask: int, rhs: int) -> bool:
        if mask == 0:
            return rhs == 0
        m = mask.bit_length() - 1
        self.substitute(m, rhs, mask ^ (1 << m))
        self.alive &= ~(1 << m)
        return True

    def evaluate(self) -> Scalar:
        if self.empty or self.prefactor.is_zero():
            return ZERO
        # constraints: reduced echelon over (mask << 1 | rhs)
        rows = gf2.rref((mask << 1) | (rhs & 1) for mask, rhs in self.constraints)
        self.alive = (1 << self.nvars) - 1
        for r in rows:
            if r == 1:
                return ZERO
            self._apply_constraint(r >> 1, r & 1)
        self.constraints = []
        acc = self.prefactor
        while self.alive:
            low = self.alive & -self.alive
            j = low.bit_length() - 1
            self.alive ^= low
            aj = self.lin[j] % 4
            nb = self.cross[j]
            self.cross[j] = 0
            self.lin[j] = 0
            k = nb
            while k:
                b = k & -k
                self.cross[b.bit_length() - 1] &= ~low
                k ^= b
            if aj % 2 == 0:
                if nb == 0:
                    if aj:
                        return ZERO
                    acc = acc * 2
                    continue
                acc = acc * 2
                m = nb.bit_length() - 1
                self.substitute(m, aj // 2, nb ^ (1 << m))
                self.alive &= ~(1 << m)
            elif aj == 1:
                acc = acc * ONE_PLUS_I
                k = nb
                while k:
                    b = k & -k
                    self.lin[b.bit_length() - 1] += 3
                    k ^= b
                self._toggle_clique(nb)
            else:
                acc = acc * ONE_MINUS_I
                k = nb
                while k:
                    b = k & -k
                    self.lin[b.bit_length() - 1] += 1
                    k ^= b
                self._toggle_clique(nb)
        return acc.times_i(self.const % 4)


def build_quadratic_system(grid: SignatureGrid, reps) -> QuadraticSystem:
    lits = _port_literals(grid)
    qs = QuadraticSystem(len(grid.edges), prefactor=grid.scale)
    for v, rep in enumerate(reps):
        if rep.space is None or rep.lam.is_zero():
            qs.prefactor = ZERO
            return qs
        qs.prefactor = qs.prefactor * rep.lam
        port = [None] + [lits[(v, k)] for k in range(1, rep.arity + 1)]
        qs.const += rep.q_linear[0]
        for k in range(1, rep.arity + 1):
            if rep.q_linear[k] % 4:
                qs.add_linear(port[k], rep.q_linear[k])
        for (j, k), c in rep.q_cross.items():
            if c % 4:
                qs.add_cross(port[j], port[k])
        n = rep.arity
        for mask, rhs in rep.space.constraints():
            emask, erhs = 0, rhs
            for k in range(1, n + 1):
                if (mask >> (n - k)) & 1:
                    x, neg = port[k]
                    emask ^= 1 << x
                    erhs ^= neg
            qs.add_constraint(emask, erhs)
    return qs


def eval_affine_grid(grid: SignatureGrid, reps=None) -> Scalar:
    """Exact partition function of a closed grid whose labels all have affine witnesses."""
    reps = _reps_for(grid, reps, recognize_affine, "affine")
    return build_quadratic_system(grid, reps).evaluate()


# ---------------------------------------------------------------------------
# product grids


class ParityUnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.parity = [0] * n  # parity to parent
        self.contradiction = False

    def find(self, x: int) -> tuple[int, int]:
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # compress, accumulating parity from the top down
        acc = 0
        for y in reversed(path):
            acc ^= self.parity[y]
            self.parity[y] = acc
            self.parent[y] = root
        return (root, self.parity[path[0]]) if path else (root, 0)

    def union(self, a: int, b: int, p: int) -> bool:
        """Record x_a xor x_b = p; returns False (and sets the flag) on contradiction."""
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            if pa ^ pb != p:
                self.contradiction = True
                return False
            return True
        if self.rank[ra] < self.rank[rb]:
            ra, rb, pa, pb = rb, ra, pb, pa
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ p
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def eval_product_grid(grid: SignatureGrid, reps=None) -> Scalar:
    """Exact partition function of a closed grid whose labels all have product witnesses."""
    reps = _reps_for(grid, reps, recognize_product, "product")
    lits = _port_literals(grid)
    uf = ParityUnionFind(len(grid.edges))
    unaries = []
    for v, rep in enumerate(reps):
        for kind, ports, w in rep.factors:
            if kind == "unary":
                x, neg = lits[(v, ports[0])]
                unaries.append((x, (w[1], w[0]) if neg else (w[0], w[1])))
            else:
                (x1, n1), (x2, n2) = lits[(v, ports[0])], lits[(v, ports[1])]
                p = n1 ^ n2 ^ (1 if kind == "diseq2" else 0)
                if not uf.union(x1, x2, p):
                    return ZERO
    weights: dict[int, list[Scalar]] = {}
    for x, (w0, w1) in unaries:
        r, p = uf.find(x)
        pair = weights.setdefault(r, [ONE, ONE])
        if p:
            w0, w1 = w1, w0
        pair[0] = pair[0] * w0
        pair[1] = pair[1] * w1
    acc = grid.scale
    for x in range(len(grid.edges)):
        r, _ = uf.find(x)
        if r != x:
            continue
        if r in weights:
            acc = acc * (weights[r][0] + weights[r][1])
        else:
            acc = acc * 2
        if acc.is_zero():
            return ZERO
    return acc
