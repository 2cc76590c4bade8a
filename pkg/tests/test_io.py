import json

import pytest

from eohk import io
from eohk.classifier import classify
from eohk.scalar import I, ONE, SQRT2
from eohk.signature import FormatError, b_i, neq2


def test_signature_roundtrip():
    f = b_i()
    assert io.signature_from_json(io.signature_to_json(f)) == f
    obj = {"arity": 1, "values": [{"re": ["1/2", "1"], "im": ["0", "-3"]}, "2"]}
    g = io.signature_from_json(obj)
    assert g.values[0] == ONE / 2 + SQRT2 - 3 * SQRT2 * I


@pytest.mark.parametrize(
    "obj, field",
    [
        ({"values": [1, 2]}, "arity"),
        ({"arity": 1}, "values"),
        ({"arity": 1, "values": [1, "x"]}, "values[1]"),
        ({"arity": 1, "values": [0.5, 1]}, "values[0]"),
    ],
)
def test_signature_errors_name_field(obj, field):
    with pytest.raises(FormatError, match=field.replace("[", r"\[").replace("]", r"\]")):
        io.signature_from_json(obj)


def test_grid_and_csp_roundtrip():
    obj = {
        "signatures": {"n": io.signature_to_json(neq2())},
        "vertices": [{"sig": "n"}, {"sig": "n"}],
        "edges": [[[0, 1], [1, 2]], [[0, 2], [1, 1]]],
    }
    g = io.grid_from_json(obj)
    assert io.grid_to_json(g)["edges"] == obj["edges"]
    csp = {"num_vars": 2, "signatures": {"n": io.signature_to_json(neq2())}, "constraints": [{"sig": "n", "vars": [0, 1]}]}
    assert io.csp_to_json(io.csp_from_json(csp)) == csp
    with pytest.raises(FormatError):
        io.grid_from_json({"signatures": {}, "vertices": [{"sig": "zz"}], "edges": []})


def test_verdict_json_is_serializable():
    v = classify({"b": b_i()})
    json.dumps(io.verdict_to_json(v))
    json.dumps(io.verdict_to_json(v, floats=True))
