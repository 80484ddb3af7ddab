"""The explicit example h = f + eps*t^(2m) and its boundary limit.

    h = x^2 + (t + z)y^2 + (t - z)z^2 - (t^2 - z^2)t^(2k) + eps*t^(2m),   m > k + 1

f (eps = 0) is the T(3,3,2k+2) family written in coordinates centred so that the
cD4 point sits at the origin.  Rings::

    EXAMPLE_RING = (x, y, z, t)
    EPS_RING     = (x, y, z, t, e)      e = eps kept symbolic
    CURVE_RING   = (t, e)               the z != 0 branch after eliminating z
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import gmpy2
import numpy as np
from gmpy2 import mpq

from .algebra import GaussRational, Poly, Ring, gauss, rational
from .contour import Layer, contour, critical_points, numeric, on_boundary, to_svg
from .deformation import eq3
from .groebner import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Ideal,
    eliminate,
    ideal_membership,
    radical_membership,
    saturate,
    singular_locus,
)
from .report import PARTIAL, VerificationReport

EXAMPLE_RING = Ring.of("x", "y", "z", "t")
EPS_RING = Ring.of("x", "y", "z", "t", "e")
CURVE_RING = Ring.of("t", "e")
SPACE = ("x", "y", "z", "t")

F_TEXT = "x^2 + (t + z)*y^2 + (t - z)*z^2 - (t^2 - z^2)*t^{2k}"
RESIDUAL_TOL = 1e-12
LIMIT_TOL = 1e-3
NOISE_FLOOR = 1e-14


@dataclass(frozen=True)
class ExampleParams:
    k: int
    m: int
    eps: object = 1

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"k must be an integer >= 1, got {self.k!r}")
        if not isinstance(self.m, int) or self.m <= self.k + 1:
            raise ValueError(f"need m > k + 1, got k={self.k}, m={self.m}")
        object.__setattr__(self, "eps", rational(self.eps))

    @classmethod
    def figures(cls) -> "ExampleParams":
        return cls(2, 6, 1)

    def to_dict(self) -> dict:
        return {"k": self.k, "m": self.m, "eps": str(self.eps)}


def _f_text(k: int) -> str:
    return F_TEXT.replace("{2k}", str(2 * k))


def build_f(k: int, ring: Ring = EXAMPLE_RING) -> Poly:
    return ring.parse(_f_text(k))


def build_h(p: ExampleParams, ring: Ring = EXAMPLE_RING) -> Poly:
    return build_f(p.k, ring) + Poly.const(ring, p.eps) * ring("t") ** (2 * p.m)


def build_h_symbolic(k: int, m: int, ring: Ring = EPS_RING) -> Poly:
    """h with eps replaced by the variable e."""
    return build_f(k, ring) + ring("e") * ring("t") ** (2 * m)


def h_bar(p: ExampleParams, ring: Ring = Ring.of("y", "z", "t")) -> Poly:
    """The real curve family h(0, y, z, t) drawn in the (y, z)-plane."""
    return build_h(p, EXAMPLE_RING).subs({"x": 0}, ring)


def f_bar(k: int, ring: Ring = Ring.of("y", "z", "t")) -> Poly:
    return build_f(k, EXAMPLE_RING).subs({"x": 0}, ring)


# singular locus -----------------------------------------------------------------

def z_branch(k: int, ring: Ring = CURVE_RING) -> Poly:
    """z on the branch z != 0, y = 0: 3z = 2t + 2t^(2k)."""
    return ring.parse(f"(2*t + 2*t^{2 * k})/3")


def eliminated_system(k: int, m: int) -> Tuple[Poly, Poly]:
    """(E1, E2) in (t, e): h and d_t h on the z != 0 branch, cleared of denominators."""
    R = CURVE_RING
    e1 = R.parse(f"(t - 2*t^{2 * k})^2*(4*t + t^{2 * k}) + 27*e*t^{2 * m}")
    e2 = R.parse(f"(t - 2*t^{2 * k})*(4*t - 2*t^{2 * k} - 2*{k}*(5*t + 2*t^{2 * k})*t^{2 * k - 1})"
                 f" + 18*{m}*e*t^{2 * m - 1}")
    return e1, e2


def quadratic_coefficients(k: int, m: int) -> Tuple[int, int, int]:
    """Closed form of the quadratic in T = t^(2k-1)."""
    return 4 * m - 6, 15 * k + 3 - 7 * m, 6 * k - 2 * m


def derive_quadratic(k: int, m: int) -> Optional[Tuple[object, object, object]]:
    """Eliminate e from (E1, E2), divide by 2t^2(t - 2t^(2k)) and read off the
    coefficients of 1, T, T^2.  None if the quotient is not a quadratic in T."""
    R = CURVE_RING
    e1, e2 = eliminated_system(k, m)
    comb = 2 * m * e1 - 3 * R("t") * e2
    if "e" in comb.variables():
        return None
    q = comb.exact_div(R.parse(f"2*t^2*(t - 2*t^{2 * k})"))
    if q is None:
        return None
    coeffs = q.coefficients_in("t")
    T = 2 * k - 1
    if any(d not in (0, T, 2 * T) for d in coeffs):
        return None
    return tuple(coeffs[d].constant_coefficient() if d in coeffs else rational(0) for d in (0, T, 2 * T))


def linear_relation(k: int, m: int) -> Poly:
    """The relation between eps and T valid when m != 3k."""
    R = CURVE_RING
    return R.parse(f"3*{(m - 3 * k) ** 2}*e*t^{2 * m - 3} + {(4 * m - 10 * k - 1) * (2 * k - 1)}*t^{2 * k - 1}"
                   f" - 2*({2 * m * k - m - 2 * k * k - k + 1})")


def bad_eps_polynomial(k: int, m: int, budget: int = DEFAULT_BUDGET) -> Poly:
    """Generator of the eps-values where h has singular points off the origin.

    Singular locus of h with e symbolic, saturated by z and t (the two branches
    that only meet the origin), projected to the e-line.
    """
    R = EPS_RING
    h = build_h_symbolic(k, m, R)
    crit = singular_locus(h, SPACE)
    sat = saturate(saturate(crit, R("z"), budget), R("t"), budget)
    elim = eliminate(sat, SPACE, budget)
    e_ring = Ring.of("e")
    gens = [g.to_ring(e_ring) for g in elim.gens]
    if len(gens) != 1:
        raise ValueError(f"expected a principal elimination ideal, got {len(gens)} generators")
    return gens[0].monic()


def _rational_roots(p: Poly) -> List[object]:
    """Rational roots of a univariate polynomial via the rational root test."""
    var = p.variables()[0] if p.variables() else None
    if var is None:
        return []
    coeffs = p.coefficients_in(var)
    lcm = 1
    for c in coeffs.values():
        lcm = math.lcm(lcm, int(rational(c.constant_coefficient()).denominator))
    ints = {d: int(rational(c.constant_coefficient()) * lcm) for d, c in coeffs.items()}
    low = min(ints)
    shift = {d - low: c for d, c in ints.items()}
    roots = [rational(0)] if low > 0 else []
    a0, an = shift[0], shift[max(shift)]

    def divisors(n):
        n = abs(n)
        return [d for d in range(1, n + 1) if n % d == 0]

    for num in divisors(a0):
        for den in divisors(an):
            for sign in (1, -1):
                r = mpq(sign * num, den)
                if r not in roots and p.evaluate({var: r}) == 0:
                    roots.append(r)
    return sorted(roots)


def certify_one_singular_point(p: ExampleParams, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    rep = VerificationReport("example-singularities", budget=budget)
    rep.notes.append(f"k={p.k}, m={p.m}, eps={p.eps}")
    k, m = p.k, p.m
    R = EPS_RING
    x, y, z, t, e = R.gens()
    h = build_h_symbolic(k, m, R)

    with rep.timed():
        hc = build_h(p)
        origin = {v: 0 for v in SPACE}
        rep.add("germ", "h(0) = 0 and grad h(0) = 0",
                hc.evaluate(origin) == 0 and all(d.evaluate(origin) == 0 for d in hc.partials(SPACE)))
        dz = R.parse(f"y^2 + 2*t*z - 3*z^2 + 2*z*t^{2 * k}")
        dt = R.parse(f"y^2 + z^2 - {2 * k + 2}*t^{2 * k + 1} + {2 * k}*z^2*t^{2 * k - 1} + {2 * m}*e*t^{2 * m - 1}")
        rep.add("partials", "d_z h and d_t h as displayed", h.diff("z") == dz and h.diff("t") == dt,
                d_z=h.diff("z"), d_t=h.diff("t"))

        # branch z + t = 0: d_y h = 2(t + z)y vanishes, x = 0 from d_x h
        on = {"x": 0, "z": -t}
        h1, dz1, dt1 = h.subs(on), h.diff("z").subs(on), h.diff("t").subs(on)
        rel_h = 2 * t ** 3 + e * t ** (2 * m)
        rel_z = y ** 2 - 5 * t ** 2 - 2 * t ** (2 * k + 1)
        ident = t * dt1 - (6 - 4 * m) * t ** 3 == t * rel_z + 2 * m * rel_h
        crit1 = Ideal(R, (h1, dz1, dt1))
        try:
            origin1 = (radical_membership(t, crit1, budget) and radical_membership(y, crit1, budget))
        except BudgetExceeded:
            origin1 = PARTIAL
        rep.add("branch.z+t=0", f"t d_t h - ({6 - 4 * m}) t^3 = t (d_z h) + {2 * m} h on x = 0, z = -t",
                ident and h1 == rel_h and dz1 == rel_z, h=h1, d_z=dz1)
        rep.add("branch.z+t=0.origin", "t, y in rad(h, d_z h, d_t h) on z = -t, for every eps", origin1)

        # branch z = 0, t != 0: d_y h = 2ty forces y = 0
        on = {"x": 0, "y": 0, "z": 0}
        h2, dt2 = h.subs(on), h.diff("t").subs(on)
        coef = 2 * (m - k - 1)
        ident2 = t * dt2 - coef * t ** (2 * k + 2) == 2 * m * h2
        rep.add("branch.z=0", f"t d_t h = {coef} t^{2 * k + 2} mod h on y = z = 0", ident2 and coef != 0,
                coefficient=coef)

        # branch z != 0: y = 0, 3z = 2t + 2t^2k
        C = CURVE_RING
        zb = z_branch(k)
        on = {"x": 0, "y": 0}
        dz3 = h.diff("z").subs(on).to_ring(Ring.of("z", "t", "e"))
        factor_ok = dz3 == Ring.of("z", "t", "e").parse(f"z*(2*t - 3*z + 2*t^{2 * k})")
        h3 = _on_branch(h, zb)
        dt3 = _on_branch(h.diff("t"), zb)
        e1, e2 = eliminated_system(k, m)
        rep.add("branch.z!=0.system", "E1 = 27 h and E2 = 9 d_t h at y = 0, 3z = 2t + 2t^2k",
                factor_ok and 27 * h3 == e1 and 9 * dt3 == e2, E1=e1, E2=e2)
        derived = derive_quadratic(k, m)
        expected = quadratic_coefficients(k, m)
        rep.add("branch.z!=0.quadratic", "(2m E1 - 3t E2) / (2t^2 (t - 2t^2k)) = a + bT + cT^2, T = t^(2k-1)",
                derived is not None and tuple(derived) == tuple(rational(c) for c in expected),
                derived=list(derived) if derived else None, expected=list(expected))
        rep.add("branch.z!=0.half", "E1 = 27 eps t^2m where T = 1/2",
                (e1 - 27 * C("e") * C("t") ** (2 * m)).exact_div(C.parse(f"(1 - 2*t^{2 * k - 1})^2")) is not None)

        if m != 3 * k:
            lin = linear_relation(k, m)
            quad = C.parse(f"({expected[0]}) + ({expected[1]})*t^{2 * k - 1} + ({expected[2]})*t^{4 * k - 2}")
            try:
                J = saturate(saturate(Ideal(C, (e1, quad)), C("t"), budget),
                             C.parse(f"1 - 2*t^{2 * k - 1}"), budget)
                ok = ideal_membership(lin, J, budget)
            except BudgetExceeded:
                ok = PARTIAL
            rep.add("branch.z!=0.linear", "3(m-3k)^2 eps t^(2m-3) + (4m-10k-1)(2k-1)T - 2(2mk-m-2k^2-k+1) in (E1, quadratic)",
                    ok, relation=lin)
        else:
            rep.add("branch.z!=0.m=3k", "quadratic = (6k - 3)(2 - T)",
                    tuple(expected) == (12 * k - 6, -(6 * k - 3), 0))

    # bad eps values for this (k, m)
    with rep.timed():
        try:
            bad = bad_eps_polynomial(k, m, budget)
            roots = _rational_roots(bad)
            avoid = bad.evaluate({"e": p.eps}) != 0
            claim = "eps avoids the roots of the projected singular locus"
            if m == 3 * k:
                expect = sorted([rational(0), mpq(-1, 4)])
                rep.add("bad_eps.m=3k", "bad eps values = {0, -1/4}; 0 is f itself",
                        roots == expect and bad.degree("e") == 2, polynomial=bad, roots=roots)
            rep.add("bad_eps", claim, avoid, polynomial=bad, rational_roots=roots)
        except BudgetExceeded as exc:
            rep.add("bad_eps", "eps avoids the projected singular locus", PARTIAL, error=str(exc))

    # concrete eps: the singular locus is the origin
    with rep.timed():
        try:
            crit = singular_locus(build_h(p), SPACE)
            sats = {v: saturate(crit, EXAMPLE_RING(v), budget).is_unit(budget) for v in SPACE}
            rep.add("groebner.origin_only", "crit(h) : v^inf = (1) for v = x, y, z, t",
                    all(sats.values()), saturations=sats)
        except BudgetExceeded as exc:
            rep.add("groebner.origin_only", "crit(h) supported at the origin", PARTIAL, error=str(exc))

    # eps = 0 control
    with rep.timed():
        f = build_f(k)
        try:
            crit_f = singular_locus(f, SPACE)
            pts = Ideal(EXAMPLE_RING, tuple(EXAMPLE_RING.parse(s) for s in
                                            ("x", "y", "z - t", f"2*t^{2 * k - 1} - 1")))
            contained = all(ideal_membership(g, pts, budget) for g in crit_f.gens)
            only = radical_membership(EXAMPLE_RING.parse(f"t*(2*t^{2 * k - 1} - 1)"), crit_f, budget)
            rep.add("control.eps=0", "f singular along x = y = 0, z = t, T = 1/2 and nowhere else off t = 0",
                    contained and only)
        except BudgetExceeded as exc:
            rep.add("control.eps=0", "f singular at T = 1/2", PARTIAL, error=str(exc))
        P = Ring.of("t")
        curve = eq3().subs({"b1": P.parse("-2*t"), "b2": 0, "g3": P.parse(f"i*t^{k}"), "b4": P("t")}, P)
        rep.add("control.discriminant_curve", "Eq3 along the T-series curve = t^4 - 2t^(2k+3)",
                curve == P.parse(f"t^4 - 2*t^{2 * k + 3}"), value=curve)
    return rep


def _on_branch(poly: Poly, zb: Poly) -> Poly:
    return poly.subs({"x": 0, "y": 0}).subs({"z": zb.to_ring(EPS_RING)}).to_ring(CURVE_RING)


# oval and stereographic parametrisation ---------------------------------------

def oval_vanishing_t(p: ExampleParams) -> float:
    """Positive root of t^(2k+2) = eps t^(2m): t* = eps^(-1/(2m-2k-2))."""
    if p.eps <= 0:
        raise ValueError("the oval only exists for eps > 0")
    exact = oval_vanishing_t_exact(p)
    if exact is not None:
        return float(exact)
    return float(p.eps) ** (-1.0 / (2 * p.m - 2 * p.k - 2))


def oval_vanishing_t_exact(p: ExampleParams):
    """t* as an exact rational when 1/eps is a perfect (2m-2k-2)-th power, else None."""
    if p.eps <= 0:
        raise ValueError("the oval only exists for eps > 0")
    n = 2 * p.m - 2 * p.k - 2
    inv = 1 / p.eps
    num, exact_n = gmpy2.iroot(gmpy2.mpz(inv.numerator), n)
    den, exact_d = gmpy2.iroot(gmpy2.mpz(inv.denominator), n)
    if not (exact_n and exact_d):
        return None
    root = mpq(num, den)
    assert root ** n == inv
    return root


@dataclass(frozen=True)
class SpherePoint:
    x: float
    y: float
    z: float
    t: float
    xi: object
    eta: object
    zeta: object
    residual: float


def _parts(w) -> Tuple[object, object]:
    if isinstance(w, GaussRational):
        return Fraction(int(w.re.numerator), int(w.re.denominator)), Fraction(int(w.im.numerator), int(w.im.denominator))
    if isinstance(w, (int, Fraction, mpq)):
        q = rational(w)
        return Fraction(int(q.numerator), int(q.denominator)), Fraction(0)
    w = complex(w)
    return w.real, w.imag


def sphere_coordinates(t, k: int, w) -> Tuple[object, object, object]:
    """(xi, eta, zeta) of the inverse stereographic projection, w = u + iv.

    Exact when t and w are rational (Fraction / GaussRational)."""
    u, v = _parts(w)
    if isinstance(t, (int, Fraction)) and isinstance(u, Fraction):
        t = Fraction(t)
    else:
        t, u, v = float(t), float(u), float(v)
    n = u * u + v * v
    if n == 0:
        raise ValueError("w must be nonzero")
    tk = t ** k
    return 2 * v * tk / (n + 1), (n - 1) * tk / (n + 1), 2 * u * tk / (n + 1)


def f_value(x: float, y: float, z: float, t: float, k: int) -> float:
    return x * x + (t + z) * y * y + (t - z) * z * z - (t * t - z * z) * t ** (2 * k)


def sphere_point(t, k: int, w, tol: float = RESIDUAL_TOL) -> SpherePoint:
    """Point (x, y, z) on V(f) over t for the sphere parameter w."""
    if t <= 0:
        raise ValueError("need t > 0")
    xi, eta, zeta = sphere_coordinates(t, k, w)
    tf, xf, ef, zf = float(t), float(xi), float(eta), float(zeta)
    z2 = zf * zf
    if zf == 0:
        z = 0.0
    else:
        z = (z2 + math.copysign(math.sqrt(z2 * z2 + 4 * z2 * tf), zf)) / 2
    if not (tf - z > 0 and tf + z > 0):
        raise ValueError(f"t +- z must be positive (t={tf}, z={z})")
    y = ef * math.sqrt(tf - z)
    x = xf * math.sqrt(tf * tf - z * z)
    res = abs(f_value(x, y, z, tf, k))
    if res > tol:
        raise ValueError(f"f-residual {res:.3e} exceeds {tol:.1e}")
    return SpherePoint(x, y, z, tf, xi, eta, zeta, res)


def s_p_values(pt: SpherePoint, k: int) -> Tuple[complex, complex]:
    """S and P from (x, y, z, t)."""
    x, y, z, t = pt.x, pt.y, pt.z, pt.t
    tk = t ** k
    den = y * y - (t - z) * t ** (2 * k)
    if den == 0:
        raise ZeroDivisionError("y^2 - (t - z)t^2k vanishes")
    return (y * x + 1j * z * (z - t) * tk) / den, (y * z + 1j * x * tk) / den


def s_p_sphere(pt: SpherePoint, k: int) -> Tuple[complex, complex]:
    """S and P through the sphere coordinates (second route)."""
    xi, eta, zeta, z, t = float(pt.xi), float(pt.eta), float(pt.zeta), pt.z, pt.t
    tk = t ** k
    den = eta * eta - tk * tk
    return ((eta * xi - 1j * zeta * tk) / den * math.sqrt(t + z),
            (eta * zeta + 1j * xi * tk) / den * math.sqrt((t + z) / (t - z)))


def _is_exact(w) -> bool:
    return isinstance(w, (GaussRational, int, Fraction, mpq))


def limit_p(w):
    """(1/w - w)/2, exact on rational or Gaussian-rational input."""
    if isinstance(w, GaussRational):
        return (w.inverse() - w) * mpq(1, 2)
    if _is_exact(w):
        q = rational(w)
        return (1 / q - q) / 2
    w = complex(w)
    return (1 / w - w) / 2


DEFAULT_W = (gauss(2), gauss(0, 1), gauss(1, 1), gauss(mpq(-1, 2), mpq(1, 3)))
DEFAULT_T = tuple(Fraction(1, 10 ** j) for j in range(1, 5))


def _orders(ts: Sequence[float], errs: Sequence[float]) -> List[Optional[float]]:
    out = []
    for (t0, e0), (t1, e1) in zip(zip(ts, errs), zip(ts[1:], errs[1:])):
        if e0 > 0 and e1 > 0:
            out.append(math.log(e1 / e0) / math.log(t1 / t0))
        else:
            out.append(None)
    return out


def _monotone(errs: Sequence[float], noise: float = 2.0, floor: float = NOISE_FLOOR) -> bool:
    """Non-increasing up to a factor `noise`; errors at rounding level count as zero."""
    return all(b <= noise * a or b <= floor for a, b in zip(errs, errs[1:]))


def _wlabel(w) -> str:
    if _is_exact(w):
        return str(gauss(rational(w)) if not isinstance(w, GaussRational) else w)
    w = complex(w)
    return f"{w.real}{w.imag:+}i"


def boundary_limit_check(k: int = 2, ws: Sequence = DEFAULT_W, ts: Sequence = DEFAULT_T,
                         tol: float = LIMIT_TOL, with_h: Optional[ExampleParams] = None) -> VerificationReport:
    """S -> 0 and P -> (1/w - w)/2 along V(f) as t -> 0."""
    rep = VerificationReport("boundary-limit")
    ts = list(ts)
    if any(b >= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t-sequence must be strictly decreasing")
    tf = [float(t) for t in ts]
    for w in ws:
        if complex(w) == 0:
            raise ValueError("w must be nonzero")
        label = _wlabel(w)
        lim = complex(limit_p(w))
        s_err, p_err, route, skipped, res, exact = [], [], 0.0, [], 0.0, True
        with rep.timed():
            for t in ts:
                if isinstance(t, Fraction) and _is_exact(w):
                    xi, eta, zeta = sphere_coordinates(t, k, w)
                    exact = exact and xi * xi + eta * eta + zeta * zeta == Fraction(t) ** (2 * k)
                try:
                    pt = sphere_point(t, k, w)
                    S, P = s_p_values(pt, k)
                except (ValueError, ZeroDivisionError) as exc:
                    skipped.append({"t": float(t), "reason": str(exc)})
                    s_err.append(math.nan)
                    p_err.append(math.nan)
                    continue
                S2, P2 = s_p_sphere(pt, k)
                scale = max(1.0, abs(S), abs(P))
                route = max(route, abs(S - S2) / scale, abs(P - P2) / scale)
                res = max(res, pt.residual)
                s_err.append(abs(S))
                p_err.append(abs(P - lim))
            rep.add(f"sphere.w={label}", "xi^2 + eta^2 + zeta^2 = t^2k exactly; |f| < 1e-12",
                    exact and res < RESIDUAL_TOL and not skipped, max_residual=res, skipped=skipped)
            rep.add(f"routes.w={label}", "S, P from (x, y, z) agree with the sphere-coordinate forms",
                    route < 1e-9, max_relative_difference=route)
            for name, errs, claim in (("S", s_err, "|S| < tol at the last t, monotone decay"),
                                      ("P", p_err, "|P - (1/w - w)/2| < tol at the last t, monotone decay")):
                ok = (not skipped) and errs[-1] < tol and _monotone(errs)
                rep.add(f"limit.{name}.w={label}", claim, ok, t=tf, errors=errs, orders=_orders(tf, errs),
                        tolerance=tol, limit=lim if name == "P" else 0.0)
    with rep.timed():
        pairs = {}
        ok = True
        for w in filter(_is_exact, ws):
            a, b = limit_p(w), limit_p(-1 / (w if isinstance(w, GaussRational) else rational(w)))
            pairs[_wlabel(w)] = {"P(w)": a, "P(-1/w)": b}
            ok = ok and a == b
        rep.add("two_to_one", "P(w) = P(-1/w) exactly for (1/w - w)/2", ok and bool(pairs), pairs=pairs)
    if with_h is not None:
        diffs = [abs(float(with_h.eps)) * t ** (2 * with_h.m) for t in tf]
        rep.add("h_difference", "h - f = eps t^2m along the sampled points (informational)", True,
                differences=diffs, orders=_orders(tf, diffs))
    return rep


# real pictures -------------------------------------------------------------------

FIGURE_T = (2 / 3, 0.5 ** (1 / 3), 19 / 20, 99 / 100, 1.0)
FIGURE_WINDOW = (-4.0, 4.0, -4.0, 4.0)
FIGURE_RESOLUTION = 800
PLANE = ("y", "z")


@dataclass
class CurveFrame:
    t: float
    window: Tuple[float, float, float, float]
    h: list
    f: list
    singular: list

    @property
    def ovals(self) -> list:
        return [pl for pl in self.h if pl.closed and pl.encloses((0.0, 0.0))]

    @property
    def branches(self) -> list:
        tol = 1e-9 * (self.window[1] - self.window[0])
        return [pl for pl in self.h if not pl.closed
                and on_boundary(pl.points[0], self.window, tol) and on_boundary(pl.points[-1], self.window, tol)]

    def oval_diameter(self) -> float:
        return max((pl.diameter() for pl in self.ovals), default=0.0)

    def distance_to(self, point: Tuple[float, float]) -> float:
        if not self.h:
            return math.inf
        pts = np.concatenate([pl.points for pl in self.h])
        return float(np.hypot(pts[:, 0] - point[0], pts[:, 1] - point[1]).min())

    def svg(self, title: str = "") -> str:
        layers = [Layer(self.f, stroke="#999999", width=1.0, dash="4,3"),
                  Layer(self.h, stroke="#000000", width=1.5,
                        points=[c.point for c in self.singular if c.kind == "isolated"])]
        return to_svg(layers, self.window, title=title)


def render_curve_family(p: ExampleParams, ts: Sequence[float] = FIGURE_T, window=FIGURE_WINDOW,
                        resolution: int = FIGURE_RESOLUTION, with_f: bool = True) -> List[CurveFrame]:
    """Contours of h(0, y, z, t) = 0 (and f for comparison) in the (y, z)-plane."""
    if resolution < 32:
        raise ValueError("resolution must be at least 32")
    hb, fb = h_bar(p), f_bar(p.k)
    frames = []
    for t in ts:
        t = float(t)
        fixed = {"t": t}
        h_lines = contour(numeric(hb, PLANE, fixed), window, resolution)
        f_lines = contour(numeric(fb, PLANE, fixed), window, resolution) if with_f else []
        sing = critical_points(hb, PLANE, fixed, window, min(resolution, 200))
        frames.append(CurveFrame(t, tuple(window), h_lines, f_lines, sing))
    return frames


def _tlabel(t: float) -> str:
    return f"{t:.6g}"


def figure_report(p: ExampleParams, ts: Sequence[float] = FIGURE_T, window=FIGURE_WINDOW,
                  resolution: int = FIGURE_RESOLUTION, out_dir=None) -> VerificationReport:
    rep = VerificationReport("figures")
    rep.notes.append(f"k={p.k}, m={p.m}, eps={p.eps}, window={list(window)}, resolution={resolution}")
    with rep.timed():
        frames = render_curve_family(p, ts, window, resolution)
    tstar = oval_vanishing_t(p) if p.eps > 0 else math.inf
    before = [fr for fr in frames if fr.t < tstar - 1e-12]
    at = [fr for fr in frames if abs(fr.t - tstar) <= 1e-12]
    for fr in frames:
        rep.add(f"frame.t={_tlabel(fr.t)}", "contour summary", True, ovals=len(fr.ovals),
                oval_diameter=fr.oval_diameter(), branches=len(fr.branches), components=len(fr.h),
                singular=[c.to_dict() for c in fr.singular])
    if before:
        rep.add("oval.present", "a closed component around (0, 0) for t < t*",
                all(fr.ovals for fr in before), t=[fr.t for fr in before])
        d = [fr.oval_diameter() for fr in before]
        if len(d) >= 3:
            top = int(np.argmax(d))
            unimodal = (0 < top < len(d) - 1 and all(a < b for a, b in zip(d[:top], d[1:top + 1]))
                        and all(a > b for a, b in zip(d[top:], d[top + 1:])))
            rep.add("oval.grows_then_shrinks", "oval diameter increases, then decreases", unimodal,
                    t=[fr.t for fr in before], diameters=d)
        first = before[0]
        rep.add(f"branches.t={_tlabel(first.t)}", "three unbounded branches cross the window",
                len(first.branches) == 3, branches=len(first.branches))
    for fr in at:
        near = [c for c in fr.singular if math.hypot(*c.point) < 1e-8]
        rep.add("t*.oval_absent", "no closed component around (0, 0) at t = t*",
                not fr.ovals, distance_to_origin=fr.distance_to((0.0, 0.0)), t=fr.t)
        rep.add("t*.singular_point", "h and its (y, z)-gradient vanish at (y, z) = (0, 0)",
                bool(near), points=[c.to_dict() for c in near])
        rep.add("t*.isolated", "Hessian definite at (0, 0) (numerical)",
                bool(near) and near[0].kind == "isolated",
                hessian=[list(r) for r in near[0].hessian] if near else None)
        rep.notes.append("isolatedness at t* is a numerical Hessian check")
    for fr in frames:
        if abs(2 * fr.t ** (2 * p.k - 1) - 1) < 1e-12:
            fb = f_bar(p.k)
            nodes = critical_points(fb, PLANE, {"t": fr.t}, window, min(resolution, 200))
            hit = [c for c in nodes if math.hypot(c.point[0], c.point[1] - fr.t) < 1e-8]
            rep.add(f"f.node.t={_tlabel(fr.t)}", "f singular at (y, z) = (0, t) where 2t^(2k-1) = 1",
                    bool(hit), points=[c.to_dict() for c in hit])
    if out_dir is not None:
        from pathlib import Path

        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = []
        for n, fr in enumerate(frames):
            title = f"h(0,y,z,t)=0, k={p.k}, m={p.m}, eps={p.eps}, t={_tlabel(fr.t)}"
            path = out / f"curve_k{p.k}_m{p.m}_{n}.svg"
            path.write_text(fr.svg(title))
            paths.append(str(path))
        rep.notes.append("svg: " + ", ".join(paths))
    return rep
