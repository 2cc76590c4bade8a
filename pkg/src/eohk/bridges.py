"""Instance-level encodings between #CSP, #EO and bipartite Holant problems."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .evaluators import ParityUnionFind
from .gadgets import NEQ2_NAME, SignatureGrid, build_diseq
from .recognizers import pairwise_opposite, space_of
from .scalar import ONE, ZERO, Scalar
from .signature import MAX_ARITY, FormatError, PreconditionError, Signature, neq2, norm_square, tilde, untilde

MAX_CSP_VARS = 24


@dataclass
class CspInstance:
    num_vars: int
    signatures: dict[str, Signature]
    constraints: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)

    def validate(self) -> None:
        if self.num_vars < 0:
            raise FormatError("num_vars must be nonnegative")
        for name, vs in self.constraints:
            if name not in self.signatures:
                raise FormatError(f"constraint names unknown signature {name!r}")
            f = self.signatures[name]
            if len(vs) != f.arity:
                raise FormatError(f"constraint {name!r} has {len(vs)} variables, arity is {f.arity}")
            for x in vs:
                if not (0 <= x < self.num_vars):
                    raise FormatError(f"variable index {x} out of range 0..{self.num_vars - 1}")

    def degree(self, x: int) -> int:
        return sum(vs.count(x) for _, vs in self.constraints)


def csp_eval_bruteforce(inst: CspInstance, cap: int = MAX_CSP_VARS) -> Scalar:
    inst.validate()
    m = inst.num_vars
    if m > cap:
        raise PreconditionError(f"{m} variables exceeds the brute-force cap {cap}")
    cons = [(inst.signatures[name], vs) for name, vs in inst.constraints]
    total = ZERO
    for xs in product((0, 1), repeat=m):
        acc = ONE
        for f, vs in cons:
            idx = 0
            for x in vs:
                idx = (idx << 1) | xs[x]
            acc = acc * f.values[idx]
            if acc.is_zero():
                break
        total = total + acc
    return total


# ---------------------------------------------------------------------------
# #CSP -> #EO


def _tilde_name(name: str) -> str:
    return f"~{name}"


def csp_to_eo(inst: CspInstance) -> SignatureGrid:
    """Split each variable into a ring of binary disequalities; constraints become tilde images.

    Occurrence i of variable u (in instance order) is edge e^i from u^i to
    the constraint's first-half port; its partner edge runs from u^{i+1}
    (cyclically) to the matching second-half port.  Variables that occur
    nowhere contribute a factor 2 each to the grid scale.
    """
    inst.validate()
    sigs: dict[str, Signature] = {NEQ2_NAME: neq2()}
    verts: list[str] = []
    for name, _ in inst.constraints:
        tn = _tilde_name(name)
        if tn not in sigs:
            sigs[tn] = tilde(inst.signatures[name])
        verts.append(tn)
    occ: dict[int, list[tuple[int, int]]] = {x: [] for x in range(inst.num_vars)}
    for c, (_, vs) in enumerate(inst.constraints):
        for p, x in enumerate(vs, 1):
            occ[x].append((c, p))
    edges = []
    free = 0
    for x in range(inst.num_vars):
        k = len(occ[x])
        if k == 0:
            free += 1
            continue
        first = len(verts)
        verts.extend([NEQ2_NAME] * k)
        for i, (c, p) in enumerate(occ[x]):
            n = inst.signatures[inst.constraints[c][0]].arity
            edges.append(((first + i, 1), (c, p)))  # e^i
            edges.append(((first + (i + 1) % k, 2), (c, n + p)))  # partner of e^i
    used = {n: s for n, s in sigs.items() if n in verts}
    return SignatureGrid(used, verts, edges, mode="eo", scale=ONE * (2 ** free))


# ---------------------------------------------------------------------------
# #EO -> #CSP


def _pair_port(arity: int, q: int) -> int:
    n = arity // 2
    return q + n if q <= n else q - n


def eo_to_csp(grid: SignatureGrid) -> CspInstance:
    """Decompose a grid over tilde images into circuits, one Boolean variable per circuit."""
    grid.validate()
    if grid.mode != "eo":
        raise PreconditionError("eo_to_csp expects an EO grid")
    base: dict[str, Signature] = {}
    for name in set(grid.vertices):
        g = untilde(grid.signatures[name])
        if g is None:
            raise PreconditionError(f"label {name!r} is not recognized as a tilde image")
        base[name] = g
    partner = {}
    for a, b in grid.edges:
        partner[a] = b
        partner[b] = a
    role: dict[tuple[int, int], tuple[int, int]] = {}  # port -> (circuit, 1 if in-port)
    ncirc = 0
    for v in range(len(grid.vertices)):
        for p in range(1, grid.arity(v) + 1):
            if (v, p) in role:
                continue
            out = (v, p)
            while out not in role:
                role[out] = (ncirc, 0)
                inp = partner[out]
                role[inp] = (ncirc, 1)
                w, q = inp
                out = (w, _pair_port(grid.arity(w), q))
            ncirc += 1
    sigs: dict[str, Signature] = {}
    constraints: list[tuple[str, tuple[int, ...]]] = []
    num_vars = ncirc
    flipped: dict[int, int] = {}

    def literal(c: int, neg: int) -> int:
        nonlocal num_vars
        if not neg:
            return c
        if c not in flipped:
            flipped[c] = num_vars
            num_vars += 1
            sigs["neq2"] = neq2()
            constraints.append(("neq2", (c, flipped[c])))
        return flipped[c]

    passthrough = Signature(1, [1, 1])
    for v, name in enumerate(grid.vertices):
        g = base[name]
        if g == passthrough:
            continue
        sigs[name] = g
        vs = tuple(literal(*role[(v, j)]) for j in range(1, g.arity + 1))
        constraints.append((name, vs))
    if grid.scale != ONE:
        sigs["_scale"] = Signature(1, [grid.scale / 2, grid.scale / 2])
        constraints.append(("_scale", (num_vars,)))
        num_vars += 1
    return CspInstance(num_vars, sigs, constraints)


# ---------------------------------------------------------------------------
# #CSP(|F|^2) -> Holant(DEQ | F)


def _deq_name(k: int) -> str:
    return f"_deq{2 * k}"


def _deq(k: int) -> Signature:
    if 2 * k > MAX_ARITY:
        raise PreconditionError(f"a variable of degree {k} needs a disequality of arity {2 * k} > {MAX_ARITY}")
    return build_diseq(2 * k)


def square_reduction(inst: CspInstance, base: dict[str, Signature]) -> SignatureGrid:
    """Each constraint |f|^2 becomes two copies of f, one reading x and one reading its complement."""
    inst.validate()
    for name, _ in inst.constraints:
        if name not in base:
            raise PreconditionError(f"no base signature given for {name!r}")
        if not base[name].is_ars:
            raise PreconditionError(f"base {name!r} must satisfy ARS so that |f|^2(x) = f(x) f(~x)")
        if norm_square(base[name]) != inst.signatures[name]:
            raise PreconditionError(f"norm square of base {name!r} does not match the instance table")
    deg = [inst.degree(x) for x in range(inst.num_vars)]
    sigs: dict[str, Signature] = {}
    verts: list[str] = []
    var_vertex = {}
    for x in range(inst.num_vars):
        if deg[x]:
            sigs[_deq_name(deg[x])] = _deq(deg[x])
            var_vertex[x] = len(verts)
            verts.append(_deq_name(deg[x]))
    used = [0] * inst.num_vars
    edges = []
    for name, vs in inst.constraints:
        sigs[name] = base[name]
        a, b = len(verts), len(verts) + 1
        verts.extend([name, name])
        for p, x in enumerate(vs, 1):
            used[x] += 1
            vx = var_vertex[x]
            edges.append(((vx, used[x]), (a, p)))
            edges.append(((vx, deg[x] + used[x]), (b, p)))
    free = sum(1 for d in deg if d == 0)
    return SignatureGrid(sigs, verts, edges, mode="holant", scale=ONE * (2 ** free))


# ---------------------------------------------------------------------------
# #CSP(F) -> Holant(DEQ | F) for pairwise opposite supports


@dataclass
class VariableClassMap:
    representative: list[int]
    parity: list[int]
    bipartite: dict[int, bool]

    @property
    def consistent(self) -> bool:
        return all(self.bipartite.values())


def opposite_class_map(inst: CspInstance) -> VariableClassMap:
    inst.validate()
    uf = ParityUnionFind(inst.num_vars)
    bad = set()
    pairings = {}
    for name, vs in inst.constraints:
        f = inst.signatures[name]
        if name not in pairings:
            if f.is_zero():
                pairings[name] = []
                continue
            space = space_of(f)
            if space is None:
                raise PreconditionError(f"support of {name!r} is not affine")
            pairings[name] = pairwise_opposite(space).pairs
        for i, j in pairings[name]:
            u, w = vs[i - 1], vs[j - 1]
            if not uf.union(u, w, 1):
                bad.add(u)
    reps, pars = [], []
    for x in range(inst.num_vars):
        r, p = uf.find(x)
        reps.append(r)
        pars.append(p)
    bip = {r: True for r in set(reps)}
    for x in bad:
        bip[uf.find(x)[0]] = False
    return VariableClassMap(reps, pars, bip)


def opposite_reduction(inst: CspInstance) -> SignatureGrid:
    """Collapse opposite-pair classes to one representative variable each (Holant over DEQ | F)."""
    cmap = opposite_class_map(inst)
    if not cmap.consistent or any(inst.signatures[n].is_zero() for n, _ in inst.constraints):
        return SignatureGrid({}, [], [], mode="holant", scale=ZERO)
    ports: dict[int, list[list[tuple[int, int]]]] = {}
    sigs: dict[str, Signature] = {}
    verts: list[str] = []
    for name, vs in inst.constraints:
        sigs[name] = inst.signatures[name]
        c = len(verts)
        verts.append(name)
        for p, x in enumerate(vs, 1):
            r = cmap.representative[x]
            ports.setdefault(r, [[], []])[cmap.parity[x]].append((c, p))
    edges = []
    free = 0
    for r in sorted(set(cmap.representative)):
        if r not in ports:
            free += 1
            continue
        same, opp = ports[r]
        if len(same) != len(opp):
            raise AssertionError("opposite classes are unbalanced")
        k = len(same)
        dn = _deq_name(k)
        sigs[dn] = _deq(k)
        vx = len(verts)
        verts.append(dn)
        for t, port in enumerate(same + opp, 1):
            edges.append(((vx, t), port))
    return SignatureGrid(sigs, verts, edges, mode="holant", scale=ONE * (2 ** free))
