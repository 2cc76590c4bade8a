from fractions import Fraction

from hypothesis import given, strategies as st

from eohk.io import parse_scalar_text, scalar_from_json, scalar_to_json
from eohk.scalar import I, ONE, SQRT2, ZERO, Scalar

fracs = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12))
scalars = st.builds(Scalar, fracs, fracs, fracs, fracs)


def test_basic_identities():
    assert I * I == -ONE
    assert SQRT2 * SQRT2 == 2 * ONE
    assert (ONE + I).conj() == ONE - I
    assert (ONE + I).abs2() == 2 * ONE
    assert ZERO.is_zero() and not ONE.is_zero()


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b).conj() == a.conj() * b.conj()


@given(scalars)
def test_inverse_and_abs(a):
    if not a.is_zero():
        assert a * a.inverse() == ONE
    assert a.abs2().is_real()
    assert abs(complex(a.to_complex()) - a.to_complex()) == 0
    assert abs(a.abs2().to_complex().real - abs(a.to_complex()) ** 2) < 1e-6


@given(scalars)
def test_text_roundtrip(a):
    assert parse_scalar_text(scalar_to_json(a)) == a


def test_parse_forms():
    assert scalar_from_json("3/2") == Scalar(Fraction(3, 2))
    assert scalar_from_json("-i") == -I
    assert scalar_from_json("(1+sqrt2)+3/2*i") == ONE + SQRT2 + I * Fraction(3, 2)
    assert scalar_from_json(4) == 4 * ONE
    assert scalar_to_json(ONE / SQRT2, floats=True) == "0.707106781187"
