import math

import pytest
import sympy

from smallres.algebra import Ring
from smallres.groebner import (
    BudgetExceeded,
    Ideal,
    MonomialOrder,
    buchberger_criterion_holds,
    eliminate,
    groebner_basis,
    ideal_membership,
    is_smooth_affine,
    jacobian_algebra_dim,
    radical_membership,
    saturate,
    singular_locus,
)

from test_algebra import to_sympy

R = Ring.of("x", "y", "z")


def sympy_basis(gens, names, order="grevlex"):
    syms = sympy.symbols(names)
    gb = sympy.groebner([to_sympy(g) for g in gens], *syms, order=order)
    return {sympy.expand(g / sympy.Poly(g, *syms).LC(order=order)) for g in gb.exprs}


@pytest.mark.parametrize("texts", [
    ["x^2 + y*z - 1", "x*y - z^2", "y^3 - x"],
    ["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"],
    ["x*y*z - 1", "x + y + z", "x*y + y*z + z*x - 3"],
])
def test_reduced_basis_matches_sympy(texts):
    gens = [R.parse(t) for t in texts]
    ours = groebner_basis(Ideal(R, tuple(gens)))
    assert buchberger_criterion_holds(ours)
    assert {sympy.expand(to_sympy(g)) for g in ours} == sympy_basis(gens, R.names)


def test_lex_elimination_matches_sympy():
    gens = [R.parse("x^2 + y^2 + z^2 - 1"), R.parse("x - y*z"), R.parse("y - z^2")]
    elim = eliminate(Ideal(R, tuple(gens)), ["x", "y"])
    assert elim.ring.names == ("z",)
    lex = sympy_basis(gens, R.names, "lex")
    z = sympy.Symbol("z")
    pure = {g for g in lex if g.free_symbols <= {z}}
    assert {sympy.expand(to_sympy(g)) for g in elim.gens} == pure


def test_membership_and_unit():
    I = Ideal(R, (R.parse("x*y - 1"), R.parse("x")))
    assert I.is_unit()
    J = Ideal(R, (R.parse("x^2"), R.parse("y")))
    assert ideal_membership(R.parse("x^2*z + y^5"), J)
    assert not ideal_membership(R("x"), J)
    assert radical_membership(R("x"), J)


def test_saturation_removes_component():
    # <x*y, x*z> = <x> cap <y, z>; saturating by x leaves <y, z>
    I = Ideal(R, (R.parse("x*y"), R.parse("x*z")))
    sat = saturate(I, R("x"))
    assert ideal_membership(R("y"), sat) and ideal_membership(R("z"), sat)
    assert not ideal_membership(R("x"), sat)


def test_budget_exceeded():
    gens = [R.parse("x^5 + y^4 + z^3 - 1"), R.parse("x^3 + y^3 + z^2 - 1"), R.parse("x*y*z - 2")]
    with pytest.raises(BudgetExceeded):
        groebner_basis(Ideal(R, tuple(gens)), budget=3)


def test_block_order_must_cover_ring():
    with pytest.raises(ValueError):
        Ideal(R, (R("x"),), MonomialOrder.block(["x"], ["y"]))


@pytest.mark.parametrize("text, mu", [
    ("x^2 + y^2 + z^2", 1),
    ("x^5 + y^2 + z^2", 4),                    # A4
    ("x^2*y + y^3 + z^2", 4),                  # D4
    ("x^3 + y^4 + z^2", 6),                    # E6
    ("x^3 + x*y^3 + z^2", 7),                  # E7
    ("x^3 + y^5 + z^2", 8),                    # E8
    ("x^3 + y^3 + z^4 + x*y*z", 9),            # T(3,3,4)
])
def test_milnor_numbers(text, mu):
    assert jacobian_algebra_dim(R.parse(text)) == mu


def test_non_isolated_is_infinite():
    assert jacobian_algebra_dim(R.parse("x^2 + y^2")) == math.inf


def test_smoothness():
    assert is_smooth_affine([R.parse("x^2 + y^2 + z^2 - 1")], R.names)
    assert not is_smooth_affine([R.parse("x^2 + y^2 - z^2")], R.names)
    assert Ideal(R, singular_locus(R.parse("x^2 + y^2 + z^2 - 1")).gens).is_unit()
