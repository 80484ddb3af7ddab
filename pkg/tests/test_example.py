import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from smallres.algebra import gauss, rational
from smallres.example import (
    EXAMPLE_RING,
    ExampleParams,
    build_f,
    build_h,
    certify_one_singular_point,
    derive_quadratic,
    f_value,
    limit_p,
    oval_vanishing_t,
    oval_vanishing_t_exact,
    quadratic_coefficients,
    s_p_sphere,
    s_p_values,
    sphere_coordinates,
    sphere_point,
)


def test_params_invariants():
    with pytest.raises(ValueError):
        ExampleParams(2, 3, 1)
    with pytest.raises(ValueError):
        ExampleParams(0, 5, 1)
    assert ExampleParams(1, 3, "-1/4").eps == rational("-1/4")


def test_build_h():
    assert build_h(ExampleParams(2, 6, 0)) == build_f(2)
    h = build_h(ExampleParams(2, 6, 1))
    origin = {v: 0 for v in EXAMPLE_RING.names}
    assert h.evaluate(origin) == 0
    assert all(d.evaluate(origin) == 0 for d in h.partials())
    assert h - build_f(2) == EXAMPLE_RING.parse("t^12")


@pytest.mark.parametrize("k, m", [(1, 3), (1, 5), (2, 5), (2, 6), (3, 7), (3, 9)])
def test_quadratic_derivation(k, m):
    assert tuple(derive_quadratic(k, m)) == tuple(rational(c) for c in quadratic_coefficients(k, m))


def test_quadratic_example_values():
    assert quadratic_coefficients(2, 6) == (18, -9, 0)


@pytest.mark.parametrize("k, m", [(1, 3), (2, 6)])
def test_m_equals_3k_bad_value(k, m):
    rep = certify_one_singular_point(ExampleParams(k, m, 1))
    assert rep.passed
    assert rep["bad_eps.m=3k"].witness["roots"] == [rational("-1/4"), 0]


def test_bad_value_is_detected():
    rep = certify_one_singular_point(ExampleParams(2, 6, "-1/4"))
    assert not rep["bad_eps"].passed
    assert not rep["groebner.origin_only"].passed


def test_eps_zero_control():
    rep = certify_one_singular_point(ExampleParams(2, 5, 1))
    assert rep["control.eps=0"].passed and rep["control.discriminant_curve"].passed
    assert rep.passed


def test_oval_vanishing_t():
    assert oval_vanishing_t(ExampleParams(2, 6, 1)) == 1.0
    assert oval_vanishing_t(ExampleParams(1, 3, 1)) == 1.0
    assert oval_vanishing_t_exact(ExampleParams(2, 6, 2 ** 6)) == rational("1/2")
    assert oval_vanishing_t_exact(ExampleParams(2, 6, 3)) is None
    assert math.isclose(oval_vanishing_t(ExampleParams(2, 6, 3)), 3 ** (-1 / 6))
    with pytest.raises(ValueError):
        oval_vanishing_t(ExampleParams(2, 6, -1))


def test_sphere_equator_and_pole():
    pt = sphere_point(0.01, 2, gauss(0, 1))
    assert pt.y == 0 and pt.z == 0
    big = sphere_point(0.01, 2, 1e6)
    assert math.isclose(big.y, 0.01 ** 2 * math.sqrt(0.01), rel_tol=1e-6)


@settings(max_examples=200)
@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 9))
def test_sphere_exact_and_residual(u, v, d):
    if u == 0 and v == 0:
        return
    w = gauss(Fraction(u, d), Fraction(v, d))
    t = Fraction(1, 1000)
    xi, eta, zeta = sphere_coordinates(t, 2, w)
    assert xi ** 2 + eta ** 2 + zeta ** 2 == t ** 4
    pt = sphere_point(t, 2, w)
    assert abs(f_value(pt.x, pt.y, pt.z, pt.t, 2)) < 1e-12


def test_limit_examples():
    assert limit_p(gauss(0, 1)) == gauss(0, -1)
    assert limit_p(gauss(2)) == rational("-3/4")
    for w in (gauss(2), gauss(1, 1), gauss(rational("-1/2"), rational("1/3"))):
        assert limit_p(w) == limit_p(-1 / w)


def test_two_routes_agree():
    pt = sphere_point(0.05, 2, 1 + 1j)
    a, b = s_p_values(pt, 2), s_p_sphere(pt, 2)
    assert abs(a[0] - b[0]) < 1e-12 and abs(a[1] - b[1]) < 1e-12
