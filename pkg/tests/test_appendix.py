from itertools import combinations

from eohk.appendix import MERGE_TABLE, build_f8, in_f8_support, verify_f8
from eohk.factorization import upf
from eohk.gadgets import merge_labeled
from eohk.scalar import ONE
from eohk.signature import popcount


def test_support():
    f = build_f8()
    assert len(f.support) == 14
    assert f.is_eo and f.is_ars
    assert set(f.values) <= {ONE, ONE - ONE}
    # the support is closed under complement and sits inside weight four
    assert all(popcount(x) == 4 and in_f8_support(255 ^ x) for x in f.support)
    assert in_f8_support(0b00001111)


def test_table_shape():
    assert len(MERGE_TABLE) == 28
    assert set(MERGE_TABLE) == set(combinations(range(1, 9), 2))
    for pair, rest in MERGE_TABLE.items():
        used = sorted(set(pair) | {k for p in rest for k in p})
        assert used == list(range(1, 9))


def test_spot_rows():
    f = build_f8()
    labels = tuple(range(1, 9))
    for pair in ((1, 3), (4, 5), (1, 2)):
        d, rest = merge_labeled(f, labels, *pair)
        got = sorted(tuple(sorted(rest[k - 1] for k in vs)) for vs, _ in upf(d).factors)
        assert got == sorted(tuple(sorted(p)) for p in MERGE_TABLE[pair])


def test_verify_f8():
    rep = verify_f8()
    assert rep.ok, rep.failures
    assert len(rep.factorization_table) == 28
    assert rep.delta_property_absent and rep.commutativity_checked
    assert not rep.in_B and rep.int_B
