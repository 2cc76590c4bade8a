"""Gadget calculus and brute-force partition functions.

Edges of an EO grid (and internal edges of an EO gate) carry the binary
disequality: their two ends always take opposite values.  Grids with
``mode="holant"`` instead use plain Holant edges whose two ends agree.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence

from .scalar import ONE, ZERO, Scalar
from .signature import (
    FormatError,
    PreconditionError,
    Signature,
    bit,
    neq2,
    tensor,
)

Port = tuple[int, int]  # (vertex index, 1-based variable index)
Edge = tuple[Port, Port]

DEFAULT_MAX_EDGES = 24


def max_edges() -> int:
    return int(os.environ.get("EOHK_MAX_EDGES", DEFAULT_MAX_EDGES))


# ---------------------------------------------------------------------------
# local operations


def _check_port(f: Signature, i: int) -> None:
    if not (1 <= i <= f.arity):
        raise PreconditionError(f"port {i} out of range 1..{f.arity}")


def restrict(f: Signature, fixed: dict[int, int]) -> Signature | Scalar:
    """Set the variables in ``fixed`` (1-based -> bit); remaining order is kept."""
    n = f.arity
    for k in fixed:
        _check_port(f, k)
    rest = [k for k in range(1, n + 1) if k not in fixed]
    base = 0
    for k, b in fixed.items():
        base |= b << (n - k)
    m = len(rest)
    out = []
    for y in range(1 << m):
        idx = base
        for pos, k in enumerate(rest):
            if (y >> (m - 1 - pos)) & 1:
                idx |= 1 << (n - k)
        out.append(f.values[idx])
    if m == 0:
        return out[0]
    return Signature(m, out)


def pin(f: Signature, i: int, b: int) -> Signature | Scalar:
    """Fix ``x_i = b``; arity-1 inputs collapse to a Scalar."""
    if b not in (0, 1):
        raise PreconditionError(f"pin value must be 0 or 1, got {b!r}")
    return restrict(f, {i: b})


def merge(f: Signature, i: int, j: int) -> Signature | Scalar:
    """Join ``x_i`` and ``x_j`` through a binary disequality: ``f^{01}_{ij} + f^{10}_{ij}``."""
    _check_port(f, i)
    _check_port(f, j)
    if i == j:
        raise PreconditionError("merge needs two distinct ports")
    a = restrict(f, {i: 0, j: 1})
    b = restrict(f, {i: 1, j: 0})
    if isinstance(a, Scalar):
        return a + b
    return Signature(a.arity, (x + y for x, y in zip(a.values, b.values)))


def merge_labeled(
    f: Signature, labels: Sequence[int], u: int, v: int
) -> tuple[Signature | Scalar, tuple[int, ...]]:
    """Merge by *labels* (e.g. original variable names) and return the surviving labels."""
    labels = tuple(labels)
    i, j = labels.index(u) + 1, labels.index(v) + 1
    rest = tuple(x for x in labels if x not in (u, v))
    return merge(f, i, j), rest


@dataclass(frozen=True)
class MateMatrix:
    """4x4 matrix of a mated signature; rows/cols indexed by (x_i, x_j) in 00,01,10,11."""

    rows: tuple[tuple[Scalar, ...], ...]

    def __getitem__(self, rc: tuple[int, int]) -> Scalar:
        r, c = rc
        return self.rows[r][c]

    def signature(self) -> Signature:
        return Signature(4, [self.rows[r][c] for r in range(4) for c in range(4)])

    def is_zero(self) -> bool:
        return all(v.is_zero() for row in self.rows for v in row)

    # positions allowed by the block pattern
    PATTERN = frozenset({(0, 3), (1, 1), (1, 2), (2, 1), (2, 2), (3, 0)})

    def matches_block_pattern(self) -> bool:
        for r in range(4):
            for c in range(4):
                if (r, c) not in self.PATTERN and not self.rows[r][c].is_zero():
                    return False
        for r, c in ((0, 3), (1, 2), (2, 1), (3, 0)):
            v = self.rows[r][c]
            if not v.is_real() or v.real_sign() < 0:
                return False
        return True

    def cauchy_schwarz_holds(self) -> bool:
        inner = self.rows[1][1]
        bound = self.rows[1][2] * self.rows[2][1]
        diff = bound - inner.abs2()
        return diff.real_sign() >= 0


def mate(f: Signature, i: int, j: int) -> tuple[Signature, MateMatrix]:
    """Mate two copies of ``f`` on all variables but ``x_i, x_j``.

    The result has variable order (x_i, x_j) of the first copy followed by
    (x_i, x_j) of the second copy.
    """
    n = f.arity
    if n < 3:
        raise PreconditionError("mating needs arity >= 3")
    _check_port(f, i)
    _check_port(f, j)
    if i == j:
        raise PreconditionError("mate needs two distinct ports")
    if not f.is_ars:
        raise PreconditionError("mate is only defined for signatures satisfying ARS")
    rows = []
    for r in range(4):
        rows.append(restrict(f, {i: r >> 1, j: r & 1}).values)
    m = n - 2
    full = (1 << m) - 1
    mat = []
    for r in range(4):
        out = []
        for c in range(4):
            acc = ZERO
            fr, fc = rows[r], rows[c]
            for y in range(1 << m):
                a = fr[y]
                if a.is_zero():
                    continue
                b = fc[full ^ y]
                if not b.is_zero():
                    acc = acc + a * b
            out.append(acc)
        mat.append(tuple(out))
    mm = MateMatrix(tuple(mat))
    return mm.signature(), mm


# ---------------------------------------------------------------------------
# grids and gates


@dataclass
class SignatureGrid:
    signatures: dict[str, Signature]
    vertices: list[str]
    edges: list[Edge]
    mode: str = "eo"
    scale: Scalar = field(default_factory=lambda: ONE)

    def arity(self, v: int) -> int:
        return self.signatures[self.vertices[v]].arity

    def sig(self, v: int) -> Signature:
        return self.signatures[self.vertices[v]]

    def bound_ports(self) -> list[Port]:
        return [p for e in self.edges for p in e]

    def validate(self, dangling: Sequence[Port] = ()) -> None:
        if self.mode not in ("eo", "holant"):
            raise FormatError(f"unknown grid mode {self.mode!r}")
        for name in self.vertices:
            if name not in self.signatures:
                raise FormatError(f"vertex label {name!r} names no signature")
        seen: dict[Port, int] = {}
        for p in list(self.bound_ports()) + list(dangling):
            v, k = p
            if not (0 <= v < len(self.vertices)):
                raise FormatError(f"vertex index {v} out of range")
            if not (1 <= k <= self.arity(v)):
                raise FormatError(f"port {k} out of range for vertex {v}")
            seen[p] = seen.get(p, 0) + 1
        for v in range(len(self.vertices)):
            for k in range(1, self.arity(v) + 1):
                c = seen.get((v, k), 0)
                if c != 1:
                    raise FormatError(f"port ({v},{k}) is used {c} times (expected exactly once)")


@dataclass
class Gate(SignatureGrid):
    dangling: list[Port] = field(default_factory=list)

    def validate(self, dangling: Sequence[Port] = ()) -> None:
        super().validate(self.dangling)


def _end_values(mode: str):
    # value at the second end given value x at the first end
    return 1 if mode == "eo" else 0


def brute_force(grid: SignatureGrid, *, cap: int | None = None) -> Scalar:
    """Sum over all 0/1 edge assignments with depth-first zero pruning."""
    grid.validate()
    cap = max_edges() if cap is None else cap
    edges = grid.edges
    if len(edges) > cap:
        raise PreconditionError(f"{len(edges)} edges exceeds the brute-force cap {cap}")
    flip = _end_values(grid.mode)
    nv = len(grid.vertices)
    sigs = [grid.sig(v) for v in range(nv)]
    arity = [s.arity for s in sigs]
    last = [-1] * nv
    for t, ((v, _), (w, _)) in enumerate(edges):
        last[v] = max(last[v], t)
        last[w] = max(last[w], t)
    done_at: list[list[int]] = [[] for _ in edges]
    for v in range(nv):
        if last[v] >= 0:
            done_at[last[v]].append(v)
    idx = [0] * nv
    total = ZERO

    def rec(t: int, acc: Scalar) -> None:
        nonlocal total
        if t == len(edges):
            total = total + acc
            return
        (v, p), (w, q) = edges[t]
        sv, sw = 1 << (arity[v] - p), 1 << (arity[w] - q)
        for x in (0, 1):
            y = x ^ flip
            if x:
                idx[v] |= sv
            if y:
                idx[w] |= sw
            a = acc
            for u in done_at[t]:
                val = sigs[u].values[idx[u]]
                if val.is_zero():
                    a = None
                    break
                a = a * val
            if a is not None:
                rec(t + 1, a)
            if x:
                idx[v] &= ~sv
            if y:
                idx[w] &= ~sw

    rec(0, ONE)
    # vertices with no edges (arity 0 cannot occur, so this only guards malformed input)
    return total * grid.scale


def eval_eo_grid(grid: SignatureGrid) -> Scalar:
    """#EO partition function: sum over Eulerian orientations."""
    if grid.mode != "eo":
        raise PreconditionError("eval_eo_grid needs an EO grid (mode='eo')")
    for name in set(grid.vertices):
        if not grid.signatures[name].is_eo:
            raise PreconditionError(f"signature {name!r} is not EO")
    return brute_force(grid)


def is_bipartite(grid: SignatureGrid) -> bool:
    nv = len(grid.vertices)
    adj: list[list[int]] = [[] for _ in range(nv)]
    for (v, _), (w, _) in grid.edges:
        if v == w:
            return False
        adj[v].append(w)
        adj[w].append(v)
    color = [-1] * nv
    for s in range(nv):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if color[w] < 0:
                    color[w] = color[u] ^ 1
                    stack.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def eval_holant_bipartite(grid: SignatureGrid) -> Scalar:
    """Holant partition function of a bipartite grid with plain edges."""
    if grid.mode != "holant":
        raise PreconditionError("eval_holant_bipartite needs a Holant grid (mode='holant')")
    if not is_bipartite(grid):
        raise PreconditionError("grid is not bipartite")
    return brute_force(grid)


NEQ2_NAME = "_neq2"


def two_stretch(grid: SignatureGrid) -> SignatureGrid:
    """Insert a binary-disequality vertex in the middle of every edge."""
    if grid.mode != "eo":
        raise PreconditionError("two_stretch expects an EO grid")
    sigs = dict(grid.signatures)
    name = NEQ2_NAME
    while name in sigs and sigs[name] != neq2():
        name = "_" + name
    sigs[name] = neq2()
    verts = list(grid.vertices)
    edges: list[Edge] = []
    for a, b in grid.edges:
        k = len(verts)
        verts.append(name)
        edges.append((a, (k, 1)))
        edges.append(((k, 2), b))
    return SignatureGrid(sigs, verts, edges, mode="holant", scale=grid.scale)


# ---------------------------------------------------------------------------
# sparse contraction (gates)


def contract(grid: SignatureGrid, dangling: Sequence[Port] = ()) -> dict[tuple[int, ...], Scalar]:
    """Sparse variable elimination; returns a map from dangling assignments to values."""
    flip = _end_values(grid.mode)
    partner: dict[Port, Port] = {}
    for a, b in grid.edges:
        partner[a] = b
        partner[b] = a
    dangling = list(dangling)
    open_ports: list[Port] = []
    state: dict[tuple[int, ...], Scalar] = {(): ONE}
    for v in range(len(grid.vertices)):
        f = grid.sig(v)
        n = f.arity
        entries = [(tuple(bit(idx, k, n) for k in range(1, n + 1)), f.values[idx]) for idx in f.support]
        new_ports = [(v, k) for k in range(1, n + 1)]
        ports = open_ports + new_ports
        pos = {p: t for t, p in enumerate(ports)}
        closing = [
            (pos[p], pos[partner[p]])
            for p in new_ports
            if p in partner and partner[p] in pos and (partner[p][0] < v or (partner[p][0] == v and partner[p][1] > p[1]))
        ]
        drop = {t for pair in closing for t in pair}
        keep = [t for t in range(len(ports)) if t not in drop]
        nxt: dict[tuple[int, ...], Scalar] = {}
        for key, val in state.items():
            for bits_, fv in entries:
                full = key + bits_
                if any(full[s] ^ full[t] != flip for s, t in closing):
                    continue
                k2 = tuple(full[t] for t in keep)
                prod = val * fv
                prev = nxt.get(k2)
                nxt[k2] = prod if prev is None else prev + prod
        state = {k: x for k, x in nxt.items() if not x.is_zero()}
        open_ports = [ports[t] for t in keep]
        if not state:
            break
    if set(open_ports) != set(dangling) and state:
        raise FormatError("gate has unbound ports that are not declared dangling")
    order = [open_ports.index(p) for p in dangling] if state else []
    out: dict[tuple[int, ...], Scalar] = {}
    for key, val in state.items():
        out[tuple(key[t] for t in order)] = val * grid.scale
    return out


def eval_gate(g: Gate) -> Signature | Scalar:
    """Signature of a gate on its dangling ports (declaration order)."""
    g.validate()
    table = contract(g, g.dangling)
    d = len(g.dangling)
    if d == 0:
        return table.get((), ZERO)
    out = [ZERO] * (1 << d)
    for key, val in table.items():
        idx = 0
        for b in key:
            idx = (idx << 1) | b
        out[idx] = val
    return Signature(d, out)


def eval_grid_sparse(grid: SignatureGrid) -> Scalar:
    grid.validate()
    return contract(grid).get((), ZERO)


def gate_from_tensor(sigs: Sequence[Signature]) -> Gate:
    names = {f"s{k}": s for k, s in enumerate(sigs)}
    verts = list(names)
    dangling = [(v, p) for v, s in enumerate(sigs) for p in range(1, s.arity + 1)]
    return Gate(names, verts, [], dangling=dangling)


# ---------------------------------------------------------------------------
# disequality family


def build_diseq(arity: int) -> Signature:
    """Canonical disequality of even arity 2k: 1 on 0^k 1^k and 1^k 0^k."""
    if arity < 2 or arity % 2:
        raise PreconditionError(f"disequality needs a positive even arity, got {arity}")
    k = arity // 2
    vals = [ZERO] * (1 << arity)
    low = (1 << k) - 1
    vals[low] = ONE
    vals[low << k] = ONE
    return Signature(arity, vals)


def realize_diseq_chain(k: int) -> Gate:
    """Chain of k copies of the arity-4 disequality realizing arity 2k+2.

    Dangling ports are ordered so that the gate evaluates to the canonical
    disequality of arity 2k+2 exactly.
    """
    if k < 1:
        raise PreconditionError("chain length must be >= 1")
    sigs = {"neq4": build_diseq(4)}
    verts = ["neq4"] * k
    edges = [((t, 4), (t + 1, 1)) for t in range(k - 1)]
    first = [(0, 1), (0, 2)] + [(t, 2) for t in range(1, k)]
    second = [(t, 3) for t in range(k)] + [(k - 1, 4)]
    return Gate(sigs, verts, edges, dangling=first + second)


def realize_lhs_diseq(k: int) -> Gate:
    """Left-hand-side disequality of arity 2k from 2k binary disequalities and one right-hand copy."""
    sigs = {"neq2": neq2(), "deq": build_diseq(2 * k)}
    verts = ["deq"] + ["neq2"] * (2 * k)
    edges = [((0, t), (t, 1)) for t in range(1, 2 * k + 1)]
    dangling = [(t, 2) for t in range(1, 2 * k + 1)]
    return Gate(sigs, verts, edges, mode="holant", dangling=dangling)


def mate_gate(f: Signature, i: int, j: int) -> Gate:
    """The two-copy gadget behind :func:`mate`, for independent evaluation."""
    n = f.arity
    edges = [((0, k), (1, k)) for k in range(1, n + 1) if k not in (i, j)]
    return Gate({"f": f}, ["f", "f"], edges, dangling=[(0, i), (0, j), (1, i), (1, j)])


__all__ = [
    "Gate",
    "MateMatrix",
    "SignatureGrid",
    "brute_force",
    "build_diseq",
    "contract",
    "eval_eo_grid",
    "eval_gate",
    "eval_grid_sparse",
    "eval_holant_bipartite",
    "gate_from_tensor",
    "is_bipartite",
    "mate",
    "mate_gate",
    "merge",
    "merge_labeled",
    "pin",
    "realize_diseq_chain",
    "realize_lhs_diseq",
    "restrict",
    "tensor",
    "two_stretch",
]
