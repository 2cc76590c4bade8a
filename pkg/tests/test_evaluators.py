import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from conftest import looped, neq4, sig
from eohk import sampling as S
from eohk.evaluators import ParityUnionFind, QuadraticSystem, eval_affine_grid, eval_product_grid
from eohk.gadgets import SignatureGrid, brute_force
from eohk.recognizers import recognize_affine, recognize_product
from eohk.scalar import I, ONE, ZERO
from eohk.signature import PreconditionError, b_i, neq2

seeds = st.integers(0, 2**32 - 1)


def test_affine_examples():
    assert eval_affine_grid(looped(b_i(), [(1, 2)])) == ZERO
    assert eval_affine_grid(looped(neq4(), [(1, 3), (2, 4)])) == 2 * ONE
    assert eval_affine_grid(looped(neq4(), [(1, 2), (3, 4)])) == ZERO


def test_product_examples():
    assert eval_product_grid(looped(neq4(), [(1, 2), (3, 4)])) == ZERO
    assert eval_product_grid(looped(neq4(), [(1, 3), (2, 4)])) == 2 * ONE
    # an odd cycle of disequalities over plain edges
    tri = SignatureGrid({"n": neq2()}, ["n"] * 3, [((0, 2), (1, 1)), ((1, 2), (2, 1)), ((2, 2), (0, 1))], mode="holant")
    assert eval_product_grid(tri) == ZERO == brute_force(tri)


def test_bad_witness_rejected():
    g = looped(neq4(), [(1, 3), (2, 4)])
    with pytest.raises(PreconditionError):
        eval_affine_grid(g, [recognize_affine(b_i())])
    with pytest.raises(PreconditionError):
        eval_product_grid(looped(sig(2, ONE, ONE, ONE, ZERO), [(1, 2)]))
    # explicit witnesses are accepted
    assert eval_product_grid(g, {"f": recognize_product(neq4())}) == 2 * ONE


@settings(max_examples=150)
@given(seeds, st.sampled_from(["eo", "holant"]))
def test_affine_oracle(seed, mode):
    rng = random.Random(seed)
    sigs = {f"a{k}": S.random_eo_affine(rng, rng.randint(1, 2)) for k in range(3)}
    g = S.random_grid(rng, sigs, 10, mode=mode)
    assert eval_affine_grid(g) == brute_force(g)


@settings(max_examples=150)
@given(seeds, st.sampled_from(["eo", "holant"]))
def test_product_oracle(seed, mode):
    rng = random.Random(seed)
    sigs = {f"p{k}": S.random_eo_product(rng, rng.randint(1, 2)) for k in range(3)}
    g = S.random_grid(rng, sigs, 10, mode=mode)
    assert eval_product_grid(g) == brute_force(g)


def _ars_version(rng, make):
    for _ in range(200):
        f = make()
        if f.is_ars:
            return f
    return neq2()


@settings(max_examples=80)
@given(seeds)
def test_eo_ars_grids_are_real(seed):
    rng = random.Random(seed)
    sigs = {
        "a": _ars_version(rng, lambda: S.random_eo_affine(rng, 2)),
        "b": _ars_version(rng, lambda: S.random_eo_affine(rng, 1)),
        "c": S.random_eo_ars(rng, 4),
    }
    g = S.random_grid(rng, sigs, 10)
    v = brute_force(g)
    assert v.is_real()
    if all(recognize_affine(s) for s in g.signatures.values()):
        assert eval_affine_grid(g) == v
    if all(recognize_product(s) for s in g.signatures.values()):
        assert eval_product_grid(g) == v


def test_large_ring_is_fast():
    n = 1000
    sigs = {"b": b_i(), "d": neq4()}
    verts = ["b"] * (n - 2) + ["d"]
    # d's ports 1,2 close a chain of b vertices; ports 3,4 form a loop
    edges = [((k, 2), (k + 1, 1)) for k in range(n - 3)]
    edges += [((n - 3, 2), (n - 2, 1)), ((n - 2, 2), (0, 1)), ((n - 2, 3), (n - 2, 4))]
    g = SignatureGrid(sigs, verts, edges)
    t = time.perf_counter()
    va = eval_affine_grid(g)
    vp = eval_product_grid(g)
    assert time.perf_counter() - t < 2.0
    assert va == vp


def test_quadratic_system_gauss_sums():
    # sum over x of i^x = 1 + i ; sum of i^{3x} = 1 - i ; sum of i^{2x} = 0
    for a, want in ((1, ONE + I), (3, ONE - I), (2, ZERO), (0, 2 * ONE)):
        qs = QuadraticSystem(1)
        qs.add_linear((0, 0), a)
        assert qs.evaluate() == want
    qs = QuadraticSystem(2)
    qs.add_cross((0, 0), (1, 0))  # sum of (-1)^{xy} = 2
    assert qs.evaluate() == 2 * ONE
    qs = QuadraticSystem(2)
    qs.add_constraint(0b11, 1)
    qs.add_linear((0, 0), 1)  # x0 + x1 = 1: i^0 + i^1 ... with x0 in {0,1}
    assert qs.evaluate() == ONE + I


def test_parity_union_find():
    uf = ParityUnionFind(4)
    assert uf.union(0, 1, 1) and uf.union(1, 2, 1)
    assert uf.find(2)[1] ^ uf.find(0)[1] == 0
    assert not uf.union(0, 2, 1)
    assert uf.contradiction
