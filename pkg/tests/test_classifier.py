import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import neq4, six_vertex
from eohk import sampling as S
from eohk.classifier import AFFINE, HARD, PRODUCT, classify, classify_single_arity4
from eohk.evaluators import eval_affine_grid, eval_product_grid
from eohk.gadgets import brute_force
from eohk.recognizers import recognize_affine, recognize_product
from eohk.scalar import I, ONE, ZERO
from eohk.signature import PreconditionError, b_i, neq2

seeds = st.integers(0, 2**32 - 1)
VALUES = (ZERO, ONE, -ONE, I, -I, 2 * ONE, ONE + I, 2 * I)


def _reconstructs(v, F):
    return all(v.witnesses[n].reconstruct() == f for n, f in F.items())


def test_smoke_examples():
    F = {"neq4": neq4(), "bi": b_i()}
    v = classify(F)
    assert v.outcome == AFFINE and v.both_classes and _reconstructs(v, F)
    v = classify({"f": six_vertex(1, 1, 1)})
    assert v.outcome == HARD and v.diagnostic["reason"] == "support not affine"
    v = classify({"f": six_vertex(1, 2, 0)})
    assert v.outcome == HARD
    assert v.diagnostic["affine"] == "norm mismatch"


def test_product_only_set():
    # support {0011, 0110, 1001, 1100}: product type iff the two norms agree
    for s in (six_vertex(1, 0, 2 * ONE + I), six_vertex(ONE + I, 0, 2 * ONE), six_vertex(ONE, 0, 2 * ONE)):
        assert recognize_product(s) is None
    p = six_vertex(ONE, 0, I)
    assert recognize_product(p) is not None
    # a product signature with a non-unit phase ratio is product type only
    q = six_vertex(ONE, 0, (3 * ONE + 4 * I) / 5)
    v = classify({"q": q})
    assert v.outcome == PRODUCT and not v.both_classes and _reconstructs(v, {"q": q})


def test_mixed_set_is_hard():
    q = six_vertex(ONE, 0, (3 * ONE + 4 * I) / 5)  # product only
    a = _affine_not_product()
    v = classify({"q": q, "a": a})
    assert v.outcome == HARD
    assert set(v.diagnostic["signatures"]) == {"q", "a"}


def _affine_not_product():
    # arity 6, EO and ARS, support of dimension 3 with a genuine cross term in its phase
    from eohk.signature import Signature

    table = {
        "000111": -ONE - I, "001110": ONE - I, "010101": ONE - I, "011100": -ONE - I,
        "100011": -ONE + I, "101010": ONE + I, "110001": ONE + I, "111000": -ONE + I,
    }
    vals = [ZERO] * 64
    for k, v in table.items():
        vals[int(k, 2)] = v
    f = Signature(6, vals)
    assert f.is_eo and f.is_ars
    assert recognize_affine(f) is not None and recognize_product(f) is None
    return f


def test_input_checks():
    from conftest import sig

    with pytest.raises(PreconditionError):
        classify({"u": sig(1, ONE, ZERO)})
    with pytest.raises(PreconditionError):
        classify({"x": sig(2, ZERO, ONE, 2 * ONE, ZERO)})  # EO but not ARS
    with pytest.raises(PreconditionError):
        classify({})


def test_arity4_examples():
    assert classify_single_arity4(six_vertex(1, 1, 0)).outcome == PRODUCT
    assert classify_single_arity4(six_vertex(1, 2, 0)).outcome == HARD
    assert classify_single_arity4(neq4()).tractable
    with pytest.raises(PreconditionError):
        classify_single_arity4(neq2())


def test_arity4_affine_inside_product():
    # every arity-4 EO+ARS signature over a small value set: affine implies product type
    for a, b, c in product(VALUES, repeat=3):
        f = six_vertex(a, b, c)
        if recognize_affine(f) is not None:
            assert recognize_product(f) is not None
        v = classify_single_arity4(f)
        assert v.tractable == (recognize_product(f) is not None)


@settings(max_examples=60)
@given(seeds)
def test_tractable_verdicts_evaluate(seed):
    rng = random.Random(seed)
    pool = [neq4(), b_i(), neq2(), six_vertex(1, 0, I), six_vertex(1, 1, 0), six_vertex(1, 2, 1)]
    F = {f"s{k}": f for k, f in enumerate(rng.sample(pool, rng.randint(1, 3)))}
    v = classify(F)
    if not v.tractable:
        return
    assert _reconstructs(v, F)
    g = S.random_grid(rng, F, 8)
    ev = eval_affine_grid if v.outcome == AFFINE else eval_product_grid
    assert ev(g) == brute_force(g)
