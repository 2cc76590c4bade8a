"""Reduced-size property checks behind ``eohk selftest``."""
from __future__ import annotations

import random

from . import sampling as S
from .bridges import csp_eval_bruteforce, csp_to_eo, eo_to_csp
from .evaluators import eval_affine_grid, eval_product_grid
from .factorization import ars_normalize, upf
from .gadgets import brute_force, eval_eo_grid, eval_grid_sparse, eval_holant_bipartite, two_stretch
from .recognizers import pairwise_opposite, space_of
from .signature import z_transform


def _check(name, rounds, body):
    failures = 0
    for _ in range(rounds):
        if not body():
            failures += 1
    return {"name": name, "cases": rounds, "failures": failures, "ok": failures == 0}


def run_selftest(rng: random.Random, rounds: int = 20) -> list[dict]:
    out = []

    def ars_real():
        f = S.random_signature(rng, rng.randint(1, 4)) if rng.random() < 0.5 else S.random_ars(rng, rng.randint(1, 4))
        return f.is_ars == z_transform(f).is_real() and z_transform(z_transform(f), "inverse") == f

    def upf_roundtrip():
        parts = [S.random_irreducible(rng, rng.randint(1, 3)) for _ in range(rng.randint(2, 3))]
        f = S.random_permutation(rng, S.tensor_all(parts))
        fact = upf(f)
        return fact.reconstruct() == f and len(fact.factors) == len(parts)

    def ars_factors():
        parts = [S.random_eo_ars(rng, 2, zero_prob=0.0) for _ in range(rng.randint(2, 3))]
        f = S.random_permutation(rng, S.tensor_all(parts))
        fact = ars_normalize(upf(f))
        return fact.reconstruct() == f and all(g.is_ars for _, g in fact.factors)

    def affine_eval():
        sigs = {f"s{k}": S.random_eo_affine(rng, rng.randint(1, 2)) for k in range(2)}
        g = S.random_grid(rng, sigs, 8)
        return eval_affine_grid(g) == brute_force(g)

    def product_eval():
        sigs = {f"s{k}": S.random_eo_product(rng, rng.randint(1, 2)) for k in range(2)}
        g = S.random_grid(rng, sigs, 8)
        return eval_product_grid(g) == brute_force(g)

    def stretch():
        sigs = {f"s{k}": S.random_eo(rng, 2 * rng.randint(1, 2)) for k in range(2)}
        g = S.random_grid(rng, sigs, 6)
        return eval_eo_grid(g) == eval_holant_bipartite(two_stretch(g))

    def csp_roundtrip():
        sigs = {f"g{k}": S.random_signature(rng, rng.randint(1, 2)) for k in range(2)}
        inst = S.random_csp(rng, sigs, max_vars=4, max_cons=4)
        v = csp_eval_bruteforce(inst)
        grid = csp_to_eo(inst)
        return v == eval_grid_sparse(grid) == csp_eval_bruteforce(eo_to_csp(grid))

    def pairing():
        f = S.random_eo_affine(rng, rng.randint(1, 3))
        space = space_of(f)
        return space is None or pairwise_opposite(space).is_valid_for(space.points(), f.arity)

    for name, body in (
        ("ars_real", ars_real),
        ("upf_roundtrip", upf_roundtrip),
        ("ars_normalize", ars_factors),
        ("affine_evaluator", affine_eval),
        ("product_evaluator", product_eval),
        ("two_stretch", stretch),
        ("csp_roundtrip", csp_roundtrip),
        ("opposite_pairing", pairing),
    ):
        out.append(_check(name, rounds, body))
    return out
