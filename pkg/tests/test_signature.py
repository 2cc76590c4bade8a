import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import sig
from eohk import sampling as S
from eohk.gadgets import pin
from eohk.scalar import I, ONE, ZERO
from eohk.signature import (
    FormatError,
    Signature,
    Z_MATRIX,
    b_i,
    check_ars_real_equivalence,
    eq2,
    neq2,
    norm_square,
    row_transform,
    tilde,
    untilde,
    z_transform,
)

seeds = st.integers(0, 2**32 - 1)


def test_constructors():
    f = sig(2, ZERO, ONE, ONE, ZERO)
    assert f == neq2() and f.is_eo and f.is_ars
    g = sig(2, ZERO, I, -I, ZERO)
    assert g == b_i() and g.is_eo and g.is_ars
    assert not sig(1, ONE, 2 * ONE).is_eo


def test_length_mismatch():
    with pytest.raises(FormatError):
        Signature(2, [ONE, ONE, ONE])


def test_z_examples():
    assert row_transform(eq2(), Z_MATRIX) == neq2()
    assert z_transform(b_i()).is_real()
    assert neq2().is_ars and z_transform(neq2()).is_real()
    u = sig(1, ONE, ZERO)
    assert not u.is_ars and not z_transform(u).is_real()
    assert check_ars_real_equivalence(u)


@settings(max_examples=200)
@given(seeds, st.integers(1, 5), st.booleans())
def test_ars_iff_real(seed, n, ars):
    rng = random.Random(seed)
    f = S.random_ars(rng, n) if ars else S.random_signature(rng, n)
    assert f.is_ars == z_transform(f).is_real()
    assert z_transform(z_transform(f), "inverse") == f
    assert z_transform(z_transform(f, "inverse")) == f


def test_norm_square():
    assert norm_square(neq2()) == neq2()
    assert norm_square(b_i()) == neq2()
    assert norm_square(sig(2, ZERO, 2 * I, -2 * I, ZERO)) == sig(2, ZERO, 4 * ONE, 4 * ONE, ZERO)


@given(seeds, st.integers(1, 4))
def test_norm_square_props(seed, n):
    f = S.random_signature(random.Random(seed), n)
    g = norm_square(f)
    assert g.is_real() and g.support == f.support


def test_tilde_examples():
    assert tilde(sig(1, ONE, 2 * ONE)) == sig(2, ZERO, ONE, 2 * ONE, ZERO)
    t = tilde(eq2())
    assert t.support == (0b0011, 0b1100)
    assert all(t.values[x] == ONE for x in t.support)


@given(seeds, st.integers(1, 4))
def test_tilde_recovers(seed, n):
    g = S.random_signature(random.Random(seed), n)
    t = tilde(g)
    assert t.is_eo
    assert untilde(t) == g
    # pin the second half to the complement of the first
    for x in range(1 << n):
        h = t
        for k in range(n, 0, -1):
            h = pin(h, n + k, 1 - ((x >> (n - k)) & 1))
        assert h.values[x] == g.values[x]


def test_permute_roundtrip():
    rng = random.Random(5)
    f = S.random_signature(rng, 4)
    assert f.permute([2, 3, 4, 1]).permute([4, 1, 2, 3]) == f
    g = f.permute([3, 1, 4, 2])
    assert g.at(0, 1, 1, 0) == f.at(1, 0, 0, 1)
