import random

import pytest

from eohk.gadgets import SignatureGrid
from eohk.scalar import I, ONE, ZERO
from eohk.signature import Signature, popcount


def sig(n, *vals):
    return Signature(n, list(vals))


def six_vertex(a, b, c):
    """Arity-4 EO+ARS signature with a on 0011, b on 0101, c on 0110 and conjugates on complements."""
    from eohk.scalar import as_scalar

    a, b, c = as_scalar(a), as_scalar(b), as_scalar(c)
    vals = [ZERO] * 16
    for x, v in ((0b0011, a), (0b0101, b), (0b0110, c)):
        vals[x] = v
        vals[15 ^ x] = v.conj()
    return Signature(4, vals)


def neq4():
    vals = [ZERO] * 16
    vals[0b0011] = vals[0b1100] = ONE
    return Signature(4, vals)


def looped(f, pairs, name="f"):
    """Single vertex labelled f with the given port pairs joined."""
    return SignatureGrid({name: f}, [name], [((0, p), (0, q)) for p, q in pairs])


@pytest.fixture
def rng():
    return random.Random(20261019)


from hypothesis import settings as _settings

_settings.register_profile("eohk", deadline=None)
_settings.load_profile("eohk")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
