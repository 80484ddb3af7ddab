import pytest
import sympy
from hypothesis import given

from smallres.algebra import (
    GaussRational,
    I,
    Poly,
    PolySyntaxError,
    Ring,
    discriminant,
    gauss,
    parse_scalar,
    rational,
    resultant,
)

from strategies import XYZ, polys


def to_sympy(p: Poly):
    syms = sympy.symbols(p.ring.names)
    return sympy.sympify(str(p).replace("^", "**"), locals=dict(zip(p.ring.names, syms)))


def test_scalar_normalisation():
    assert gauss(3, 0) == rational(3)
    assert isinstance(gauss(1, 1), GaussRational)
    assert I * I == -1
    assert (gauss(1, 2) * gauss(1, -2)) == 5
    assert parse_scalar("-1/2+1/3*i") == gauss(rational("-1/2"), rational("1/3"))


@given(polys())
def test_parse_roundtrip(p):
    assert XYZ.parse(str(p)) == p


def test_parse_errors():
    with pytest.raises(PolySyntaxError):
        XYZ.parse("x +* y")
    with pytest.raises((PolySyntaxError, KeyError, ValueError)):
        XYZ.parse("w + 1")


def test_arithmetic_against_sympy():
    R = Ring.of("x", "y")
    a = R.parse("(x + i*y)^3 - 2/3*x*y")
    b = R.parse("x^2 - y + 1")
    for ours, theirs in ((a * b, to_sympy(a) * to_sympy(b)), (a - b, to_sympy(a) - to_sympy(b))):
        assert sympy.expand(to_sympy(ours) - theirs) == 0
    assert sympy.expand(to_sympy(a.diff("y")) - sympy.diff(to_sympy(a), sympy.Symbol("y"))) == 0


def test_exact_division():
    R = Ring.of("x", "y")
    f = R.parse("x^2 - y^2")
    assert f.exact_div(R.parse("x - y")) == R.parse("x + y")
    assert f.exact_div(R.parse("x + 2*y")) is None


def test_resultant_and_discriminant_against_sympy():
    R = Ring.of("z", "a", "b")
    p = R.parse("z^4 + a*z^2 + b*z + 1")
    q = R.parse("z^2 - a*z + b")
    za, aa, bb = sympy.symbols("z a b")
    assert sympy.expand(to_sympy(resultant(p, q, "z")) - sympy.resultant(to_sympy(p), to_sympy(q), za)) == 0
    assert sympy.expand(to_sympy(discriminant(p, "z")) - sympy.discriminant(to_sympy(p), za)) == 0


def test_subs_and_evaluate():
    R = Ring.of("x", "y")
    f = R.parse("x^2*y + i")
    assert f.evaluate({"x": 2, "y": rational("1/4")}) == gauss(1, 1)
    assert f.subs({"y": R("x")}) == R.parse("x^3 + i")
