"""Randomized algebraic laws (200 cases each, derandomized)."""

from hypothesis import given, strategies as st

from smallres.algebra import Poly, resultant
from smallres.groebner import Ideal, buchberger_criterion_holds, eliminate, groebner_basis, ideal_membership

from strategies import XYZ, polys, real_polys

P = polys()


@given(P, P, P)
def test_ring_axioms(a, b, c):
    zero, one = Poly.zero(XYZ), Poly.const(XYZ, 1)
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + zero == a and a * one == a and a * zero == zero
    assert a - a == zero and a + (-a) == zero


@given(P, P, polys(max_terms=3, max_deg=2), polys(max_terms=3, max_deg=2))
def test_substitution_is_homomorphism(a, b, gx, gy):
    s = {"x": gx, "y": gy}
    assert (a + b).subs(s) == a.subs(s) + b.subs(s)
    assert (a * b).subs(s) == a.subs(s) * b.subs(s)
    assert Poly.const(XYZ, 3).subs(s) == Poly.const(XYZ, 3)


@given(P, P, st.sampled_from(XYZ.names))
def test_leibniz_rule(a, b, v):
    assert (a * b).diff(v) == a.diff(v) * b + a * b.diff(v)
    assert (a + b).diff(v) == a.diff(v) + b.diff(v)


@given(st.lists(real_polys(), min_size=1, max_size=3))
def test_groebner_buchberger_criterion(gens):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    gb = groebner_basis(Ideal(XYZ, tuple(gens)))
    assert buchberger_criterion_holds(gb)
    ideal = Ideal(XYZ, tuple(gb))
    for g in gens:
        assert ideal_membership(g, ideal)


@given(real_polys(), real_polys())
def test_elimination_purity(f, g):
    if f.is_zero() or g.is_zero():
        return
    I = Ideal(XYZ, (f, g))
    elim = eliminate(I, ["x"])
    assert "x" not in elim.ring.names
    for e in elim.gens:
        assert "x" not in e.variables()
        assert ideal_membership(e.to_ring(XYZ), I)
    if f.degree("x") > 0 and g.degree("x") > 0:
        r = resultant(f, g, "x").to_ring(elim.ring)
        assert r.is_zero() or ideal_membership(r, elim)
