"""Seeded random generators for signatures, grids and CSP instances (test and selftest fodder)."""
from __future__ import annotations

import random
from itertools import combinations

from . import gf2
from .gadgets import SignatureGrid  # noqa: F401  (re-exported for tests)
from .scalar import I, ONE, ZERO, Scalar
from .signature import Signature, popcount, tensor, tilde

UNITS = (ONE, I, -ONE, -I)
SMALL = (ONE, -ONE, I, -I, ONE * 2, ONE + I, 2 - I, ONE * 3)


def random_scalar(rng: random.Random, pool=SMALL, zero_prob: float = 0.0) -> Scalar:
    if zero_prob and rng.random() < zero_prob:
        return ZERO
    return rng.choice(pool)


def random_signature(rng: random.Random, n: int, zero_prob: float = 0.3) -> Signature:
    return Signature(n, (random_scalar(rng, zero_prob=zero_prob) for _ in range(1 << n)))


def random_eo(rng: random.Random, n2: int, zero_prob: float = 0.3) -> Signature:
    vals = [random_scalar(rng, zero_prob=zero_prob) if popcount(x) * 2 == n2 else ZERO for x in range(1 << n2)]
    return Signature(n2, vals)


def random_eo_ars(rng: random.Random, n2: int, zero_prob: float = 0.3) -> Signature:
    full = (1 << n2) - 1
    vals = [ZERO] * (1 << n2)
    for x in range(1 << n2):
        if popcount(x) * 2 != n2 or x > full ^ x:
            continue
        v = random_scalar(rng, zero_prob=zero_prob)
        vals[x] = v
        vals[full ^ x] = v.conj()
    return Signature(n2, vals)


def random_affine(rng: random.Random, n: int, lam: Scalar | None = None) -> Signature:
    """lam * chi_{affine space} * i^{Q(x)} with random space and random Q (even cross terms)."""
    dim = rng.randint(0, n)
    basis = gf2.rref(rng.randrange(1, 1 << n) for _ in range(dim)) if n else []
    base = rng.randrange(1 << n)
    pts = {base ^ x for x in gf2.span(basis)}
    lin = [rng.randrange(4) for _ in range(n + 1)]
    cross = {p: 2 for p in combinations(range(1, n + 1), 2) if rng.random() < 0.4}
    lam = lam if lam is not None else rng.choice(SMALL)
    vals = []
    for x in range(1 << n):
        if x not in pts:
            vals.append(ZERO)
            continue
        xs = [0] + [(x >> (n - k)) & 1 for k in range(1, n + 1)]
        q = lin[0] + sum(lin[k] for k in range(1, n + 1) if xs[k])
        q += sum(c for (j, k), c in cross.items() if xs[j] and xs[k])
        vals.append(lam.times_i(q))
    return Signature(n, vals)


def random_product(rng: random.Random, n: int) -> Signature:
    """Pointwise product of random unary, equality and disequality factors."""
    vals = [ONE] * (1 << n)
    for _ in range(rng.randint(0, n + 1)):
        kind = rng.choice(("unary", "eq", "neq")) if n >= 2 else "unary"
        if kind == "unary":
            k = rng.randint(1, n)
            w = (random_scalar(rng), random_scalar(rng))
            vals = [v * w[(x >> (n - k)) & 1] for x, v in enumerate(vals)]
        else:
            j, k = rng.sample(range(1, n + 1), 2)
            want = 0 if kind == "eq" else 1
            vals = [v if ((x >> (n - j)) ^ (x >> (n - k))) & 1 == want else ZERO for x, v in enumerate(vals)]
    return Signature(n, vals)


def random_permutation(rng: random.Random, f: Signature) -> Signature:
    order = list(range(1, f.arity + 1))
    rng.shuffle(order)
    return f.permute(order)


def random_irreducible(rng: random.Random, n: int, tries: int = 50) -> Signature:
    from .factorization import is_irreducible

    for _ in range(tries):
        f = random_signature(rng, n, zero_prob=0.2)
        if is_irreducible(f):
            return f
    raise RuntimeError("could not sample an irreducible signature")


def random_grid(
    rng: random.Random,
    sigs: dict[str, Signature],
    max_edges: int = 10,
    mode: str = "eo",
    max_vertices: int = 4,
) -> SignatureGrid:
    """Random closed grid (loops and multi-edges allowed) with at most ``max_edges`` edges."""
    names = sorted(sigs)
    for _ in range(1000):
        k = rng.randint(1, max_vertices)
        verts = [rng.choice(names) for _ in range(k)]
        total = sum(sigs[v].arity for v in verts)
        if total % 2 or total // 2 > max_edges or total == 0:
            continue
        ports = [(v, p) for v, name in enumerate(verts) for p in range(1, sigs[name].arity + 1)]
        rng.shuffle(ports)
        edges = [(ports[t], ports[t + 1]) for t in range(0, len(ports), 2)]
        used = {n: sigs[n] for n in set(verts)}
        return SignatureGrid(used, verts, edges, mode=mode)
    raise RuntimeError("could not sample a grid with the requested size")


def tensor_all(sigs) -> Signature:
    out = sigs[0]
    for s in sigs[1:]:
        out = tensor(out, s)
    return out


def random_eo_affine(rng: random.Random, n: int) -> Signature:
    """EO signature of arity 2n in the affine class (a permuted tilde image)."""
    return random_permutation(rng, tilde(random_affine(rng, n)))


def random_eo_product(rng: random.Random, n: int) -> Signature:
    return random_permutation(rng, tilde(random_product(rng, n)))


def random_ars(rng: random.Random, n: int, zero_prob: float = 0.3) -> Signature:
    """Random signature with f(~x) = conj(f(x)) (not necessarily EO)."""
    full = (1 << n) - 1
    vals = [ZERO] * (1 << n)
    for x in range(1 << n):
        if x > full ^ x:
            continue
        v = random_scalar(rng, zero_prob=zero_prob)
        vals[x] = v
        vals[full ^ x] = v.conj()
    return Signature(n, vals)


def half_weight_affine_spaces(n2: int):
    """Every affine subspace of GF(2)^{n2} whose points all have weight n2/2."""
    from .recognizers import AffineSpace

    half = n2 // 2
    out = []
    for basis in gf2.all_subspaces(n2):
        reps = sorted({gf2.reduce(v, list(basis)) for v in range(1 << n2)})
        for base in reps:
            if all(popcount(base ^ x) == half for x in gf2.span(list(basis))):
                out.append(AffineSpace(n2, base, basis))
    return out


def random_csp(rng: random.Random, sigs: dict[str, Signature], max_vars: int = 6, max_cons: int = 6, max_degree: int | None = None):
    """Random CSP instance over ``sigs``; resampled until every variable degree is within ``max_degree``."""
    from .bridges import CspInstance

    names = sorted(sigs)
    while True:
        m = rng.randint(1, max_vars)
        cons = []
        for _ in range(rng.randint(0, max_cons)):
            name = rng.choice(names)
            cons.append((name, tuple(rng.randrange(m) for _ in range(sigs[name].arity))))
        inst = CspInstance(m, dict(sigs), cons)
        if max_degree is None or all(inst.degree(x) <= max_degree for x in range(m)):
            return inst


def random_opposite_csp(rng: random.Random, sigs: dict[str, Signature], max_vars: int = 6, max_cons: int = 4, max_ports: int = 16):
    """CSP instance over tilde images whose paired ports read differently coloured variables.

    Colouring makes the opposite-pair graph bipartite, so the instance is
    usually not forced to zero.  ``sigs`` must be tilde images (pairing (i, i+n)).
    At most ``max_ports`` constraint ports in total keeps every class degree
    within the dense disequality limit.
    """
    from .bridges import CspInstance

    names = sorted(sigs)
    while True:
        m = rng.randint(2, max_vars)
        colour = [rng.randrange(2) for _ in range(m)]
        colour[0], colour[1] = 0, 1
        side = [[x for x in range(m) if colour[x] == c] for c in (0, 1)]
        cons = []
        for _ in range(rng.randint(1, max_cons)):
            name = rng.choice(names)
            n = sigs[name].arity // 2
            first, second = [], []
            for _ in range(n):
                c = rng.randrange(2)
                first.append(rng.choice(side[c]))
                second.append(rng.choice(side[1 - c]))
            cons.append((name, tuple(first + second)))
        if sum(len(vs) for _, vs in cons) <= max_ports:
            return CspInstance(m, dict(sigs), cons)
