import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import neq4, sig, six_vertex
from eohk import sampling as S
from eohk.bridges import (
    CspInstance,
    csp_eval_bruteforce,
    csp_to_eo,
    eo_to_csp,
    opposite_class_map,
    opposite_reduction,
    square_reduction,
)
from eohk.gadgets import NEQ2_NAME, brute_force, eval_eo_grid, eval_grid_sparse, is_bipartite
from eohk.scalar import I, ONE, ZERO
from eohk.signature import FormatError, PreconditionError, b_i, eq2, neq2, norm_square, tilde

seeds = st.integers(0, 2**32 - 1)
U12 = sig(1, ONE, 2 * ONE)


def test_csp_bruteforce_examples():
    assert csp_eval_bruteforce(CspInstance(1, {"u": U12}, [("u", (0,))])) == 3 * ONE
    assert csp_eval_bruteforce(CspInstance(2, {"e": eq2()}, [("e", (0, 1)), ("e", (0, 1))])) == 2 * ONE
    with pytest.raises(FormatError):
        CspInstance(1, {"u": U12}, [("u", (3,))]).validate()


def test_csp_to_eo_examples():
    g = csp_to_eo(CspInstance(1, {"u": U12}, [("u", (0,))]))
    assert sorted(g.vertices) == sorted([NEQ2_NAME, "~u"])
    assert len(g.edges) == 2 and all({a[0], b[0]} == {0, 1} for a, b in g.edges)
    assert eval_eo_grid(g) == 3 * ONE
    g = csp_to_eo(CspInstance(2, {"e": eq2()}, [("e", (0, 1))]))
    assert eval_eo_grid(g) == 2 * ONE
    g = csp_to_eo(CspInstance(3, {}, []))
    assert g.scale == 8 * ONE and eval_grid_sparse(g) == 8 * ONE


@settings(max_examples=100)
@given(seeds)
def test_csp_to_eo_structure_and_value(seed):
    rng = random.Random(seed)
    sigs = {f"g{k}": S.random_signature(rng, rng.randint(1, 3)) for k in range(3)}
    inst = S.random_csp(rng, sigs, max_vars=5, max_cons=4)
    g = csp_to_eo(inst)
    # every split vertex has degree 2 and every constraint vertex twice its constraint's arity
    deg = [0] * len(g.vertices)
    for (v, _), (w, _) in g.edges:
        deg[v] += 1
        deg[w] += 1
    for v, name in enumerate(g.vertices):
        assert deg[v] == g.signatures[name].arity
    want = csp_eval_bruteforce(inst)
    assert eval_grid_sparse(g) == want
    if len(g.edges) <= 16:
        assert eval_eo_grid(g) == want
    back = eo_to_csp(g)
    assert csp_eval_bruteforce(back) == want


def test_eo_to_csp_examples():
    g = csp_to_eo(CspInstance(1, {"u": U12}, [("u", (0,))]))
    back = eo_to_csp(g)
    assert back.num_vars == 1 and csp_eval_bruteforce(back) == 3 * ONE
    # traverse the unary's tilde image against its orientation: a flip is needed
    t = tilde(U12)
    grid = S.SignatureGrid({"t": t}, ["t"], [((0, 2), (0, 1))])
    back = eo_to_csp(grid)
    assert csp_eval_bruteforce(back) == eval_eo_grid(grid)
    with pytest.raises(PreconditionError):
        eo_to_csp(S.SignatureGrid({"f": six_vertex(1, 1, 1)}, ["f"], [((0, 1), (0, 3)), ((0, 2), (0, 4))]))


@settings(max_examples=60)
@given(seeds)
def test_eo_to_csp_random_grids(seed):
    rng = random.Random(seed)
    sigs = {f"t{k}": tilde(S.random_signature(rng, rng.randint(1, 2))) for k in range(2)}
    sigs["n"] = neq2()
    g = S.random_grid(rng, sigs, 8)
    assert csp_eval_bruteforce(eo_to_csp(g)) == eval_eo_grid(g)


def test_square_examples():
    inst = CspInstance(2, {"b": neq2()}, [("b", (0, 1))])
    g = square_reduction(inst, {"b": b_i()})
    assert is_bipartite(g)
    assert brute_force(g) == 2 * ONE == csp_eval_bruteforce(inst)
    empty = square_reduction(CspInstance(2, {}, []), {})
    assert eval_grid_sparse(empty) == 4 * ONE
    with pytest.raises(PreconditionError):
        square_reduction(inst, {"b": sig(2, ZERO, ONE, 2 * ONE, ZERO)})


@settings(max_examples=60)
@given(seeds)
def test_square_random(seed):
    rng = random.Random(seed)
    base = {f"f{k}": S.random_ars(rng, rng.randint(1, 3)) for k in range(2)}
    sigs = {n: norm_square(f) for n, f in base.items()}
    inst = S.random_csp(rng, sigs, max_vars=5, max_cons=4, max_degree=8)
    g = square_reduction(inst, base)
    assert eval_grid_sparse(g) == csp_eval_bruteforce(inst)


def test_opposite_examples():
    t = neq4()
    chain = CspInstance(4, {"t": t}, [("t", (0, 1, 2, 3)), ("t", (2, 3, 0, 1))])
    g = opposite_reduction(chain)
    assert eval_grid_sparse(g) == csp_eval_bruteforce(chain)
    assert opposite_class_map(chain).consistent
    odd = CspInstance(3, {"n": neq2()}, [("n", (0, 1)), ("n", (1, 2)), ("n", (2, 0))])
    assert not opposite_class_map(odd).consistent
    g = opposite_reduction(odd)
    assert g.scale == ZERO and eval_grid_sparse(g) == ZERO == csp_eval_bruteforce(odd)
    with pytest.raises(PreconditionError):
        opposite_reduction(CspInstance(1, {"u": U12}, [("u", (0,))]))


@settings(max_examples=60)
@given(seeds)
def test_opposite_random(seed):
    rng = random.Random(seed)
    sigs = {f"t{k}": tilde(S.random_affine(rng, rng.randint(1, 3))) for k in range(2)}
    inst = S.random_opposite_csp(rng, sigs)
    g = opposite_reduction(inst)
    assert eval_grid_sparse(g) == csp_eval_bruteforce(inst)
