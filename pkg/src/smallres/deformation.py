"""The D4 versal family, its W0-invariant base change and the discriminant.

Rings used throughout::

    VERSAL_RING  = (x, y, z, t2, t4, t6, s4)
    FAMILY_RING  = (x, y, z, b1, b2, g3, b4)     b_i = beta_i, g3 = gamma_3
    ALPHA_RING   = (a1, a2, a3, a4)              coordinates on the Cartan torus
    PARAM_RING   = (b1, b2, g3, b4)
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .algebra import Poly, PolyMatrix, Ring, discriminant, minors2x2, poly_prod
from .groebner import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Ideal,
    eliminate,
    radical_membership,
    saturate,
    singular_locus,
)
from .report import PARTIAL, VerificationReport

VERSAL_RING = Ring.of("x", "y", "z", "t2", "t4", "t6", "s4")
FAMILY_RING = Ring.of("x", "y", "z", "b1", "b2", "g3", "b4")
ALPHA_RING = Ring.of("a1", "a2", "a3", "a4")
PARAM_RING = Ring.of("b1", "b2", "g3", "b4")
FAMILY_ALPHA_RING = Ring.of("x", "y", "z", "a1", "a2", "a3", "a4")

PARAMS = ("b1", "b2", "g3", "b4")
SPACE = ("x", "y", "z")

VERSAL_TEXT = "x^2 + y^2*z - z^3 - t2*z^2 - t4*z - t6 + 2*s4*y"
FAMILY_TEXT = ("x^2 - (z^2 + z*b1 + b2^2)*g3^2 + z*(y + b2)^2"
               " - 2*b2*(y + b2)*(z - b4) - (z + b1)*(z - b4)^2")
EQ3_TEXT = ("(b4^2 + b1*b4 + b2^2)^2 - g3^2*(b1*b2^2 + 4*b2^2*b4 + b1*b4^2)"
            " + b2^2*g3^4")


def versal_d4() -> Poly:
    """x^2 + y^2 z - z^3 - t2 z^2 - t4 z - t6 + 2 s4 y."""
    return VERSAL_RING.parse(VERSAL_TEXT)


def family_f(ring: Ring = FAMILY_RING) -> Poly:
    """The base-changed family F(x, y, z; b1, b2, g3, b4)."""
    return ring.parse(FAMILY_TEXT)


def eq3(ring: Ring = PARAM_RING) -> Poly:
    """The fifth discriminant component."""
    return ring.parse(EQ3_TEXT)


def rank_matrix(ring: Ring = FAMILY_RING) -> PolyMatrix:
    """Symmetric 3x3 matrix whose rank <= 1 locus (with x = 0) is the critical component."""
    return PolyMatrix.parse(ring, [
        ["z", "b2", "z - b4"],
        ["b2", "-z - b1", "y + b2"],
        ["z - b4", "y + b2", "-g3^2"],
    ])


# -- root system -------------------------------------------------------------

Vector = Tuple[int, int, int, int]


@dataclass(frozen=True)
class RootSystemD4:
    roots: Tuple[Vector, ...] = ((1, -1, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1), (0, 0, 1, 1))

    def reflection(self, i: int) -> Tuple[Tuple[Fraction, ...], ...]:
        """Matrix of s_v (x -> x - 2 (x.v)/(v.v) v) for root number ``i`` (1-based)."""
        v = self.roots[i - 1]
        vv = sum(c * c for c in v)
        return tuple(tuple(Fraction(int(r == c)) - Fraction(2 * v[r] * v[c], vv) for c in range(4))
                     for r in range(4))

    @property
    def reflections(self):
        return tuple(self.reflection(i) for i in range(1, 5))

    def positive_roots(self) -> List[Vector]:
        """The twelve roots e_i +- e_j, i < j."""
        out = []
        for i, j in combinations(range(4), 2):
            for s in (-1, 1):
                v = [0, 0, 0, 0]
                v[i], v[j] = 1, s
                out.append(tuple(v))
        return out

    def action(self, i: int, ring: Ring = ALPHA_RING) -> Dict[str, Poly]:
        """Substitution a -> s_v(a) on the coordinate functions."""
        m = self.reflection(i)
        names = ("a1", "a2", "a3", "a4")
        gens = [ring(n) for n in names]
        return {names[r]: sum((g * m[r][c] for c, g in enumerate(gens) if m[r][c]), Poly.zero(ring))
                for r in range(4)}


def _matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4)) for i in range(4))


def _identity():
    return tuple(tuple(Fraction(int(i == j)) for j in range(4)) for i in range(4))


@dataclass(frozen=True)
class BaseChange:
    invariants: Dict[str, Poly]
    images: Dict[str, Poly]

    @classmethod
    def standard(cls) -> "BaseChange":
        a = ALPHA_RING
        invariants = {
            "g3": a.parse("a1 + a2"),
            "b1": a.parse("a3^2 + a4^2"),
            "b2": a.parse("a3*a4"),
            "b4": a.parse("a1*a2"),
        }
        p = PARAM_RING
        images = {
            "t2": p.parse("b1 + g3^2 - 2*b4"),
            "t4": p.parse("b2^2 + b4^2 + b1*(g3^2 - 2*b4)"),
            "t6": p.parse("b1*b4^2 + b2^2*(g3^2 - 2*b4)"),
            "s4": p.parse("b2*b4"),
        }
        return cls(invariants, images)

    def images_in_alpha(self) -> Dict[str, Poly]:
        return {k: v.subs(self.invariants, ALPHA_RING) for k, v in self.images.items()}


def elementary_symmetric(values: Sequence[Poly], k: int, ring: Ring) -> Poly:
    total = Poly.zero(ring)
    for combo in combinations(values, k):
        total = total + poly_prod(combo, ring)
    return total


# -- verifications -----------------------------------------------------------

def verify_w0_invariance() -> VerificationReport:
    rs = RootSystemD4()
    bc = BaseChange.standard()
    rep = VerificationReport("w0-invariance")
    with rep.timed():
        for i in range(1, 5):
            m = rs.reflection(i)
            rep.add(f"s_v{i}.involution", "s_v o s_v = id", _matmul(m, m) == _identity())
            v = rs.roots[i - 1]
            rep.add(f"s_v{i}.root", "s_v(v) = -v",
                    all(sum(m[r][c] * v[c] for c in range(4)) == -v[r] for r in range(4)))
        expected = {
            1: {"a1": "a2", "a2": "a1", "a3": "a3", "a4": "a4"},
            2: {"a1": "a1", "a2": "a3", "a3": "a2", "a4": "a4"},
            3: {"a1": "a1", "a2": "a2", "a3": "a4", "a4": "a3"},
            4: {"a1": "a1", "a2": "a2", "a3": "-a4", "a4": "-a3"},
        }
        for i in range(1, 5):
            act = rs.action(i)
            want = {k: ALPHA_RING.parse(v) for k, v in expected[i].items()}
            rep.add(f"s_v{i}.coordinates", "action on (a1, a2, a3, a4)", act == want,
                    action={k: str(v) for k, v in act.items()})
        for i in (1, 3, 4):
            act = rs.action(i)
            for name, inv in bc.invariants.items():
                img = inv.subs(act)
                rep.add(f"{name}.fixed_by.s_v{i}", f"s_v{i}*{name} = {name}", img == inv,
                        invariant=inv, image=img)
        alpha_images = bc.images_in_alpha()
        for i in range(1, 5):
            act = rs.action(i)
            for name in ("t2", "t4", "t6", "s4"):
                p = alpha_images[name]
                img = p.subs(act)
                rep.add(f"{name}.fixed_by.s_v{i}", f"s_v{i}*{name} = {name}", img == p)
        # s_v2 mixes the groups: it must move at least one W0 invariant
        moved = [n for n, inv in bc.invariants.items() if inv.subs(rs.action(2)) != inv]
        rep.add("s_v2.not_in_W0", "s_v2 moves some W0 invariant", bool(moved), moved=moved)
    identities = sum(1 for c in rep.checks if ".fixed_by." in c.name)
    rep.notes.append(f"{identities} invariance identities (4 W0 invariants x 3 reflections"
                     " + 4 W invariants x 4 reflections)")
    return rep


def base_change_substitution() -> Dict[str, Poly]:
    """t2, t4, t6, s4 as polynomials in FAMILY_RING."""
    bc = BaseChange.standard()
    return {k: v.to_ring(FAMILY_RING) for k, v in bc.images.items()}


def base_change_identity() -> VerificationReport:
    rep = VerificationReport("base-change")
    with rep.timed():
        pulled = versal_d4().subs(base_change_substitution(), FAMILY_RING)
        target = family_f()
        diff = pulled - target
        rep.add("versal.pullback", "versal(t(b, g)) - F = 0", diff.is_zero(),
                difference=diff, F=target)

        spec = {"b2": 0, "b4": 0, "g3": 0}
        lhs, rhs = pulled.subs(spec), target.subs(spec)
        rep.add("versal.pullback.b2=b4=g3=0", "specialised identity", lhs == rhs, value=rhs)

        bc = BaseChange.standard()
        alpha = bc.images_in_alpha()
        sq = [ALPHA_RING(n) ** 2 for n in ("a1", "a2", "a3", "a4")]
        for i, name in ((1, "t2"), (2, "t4"), (3, "t6")):
            sigma = elementary_symmetric(sq, i, ALPHA_RING)
            rep.add(f"{name}.sigma{i}", f"{name}(a) = sigma_{i}(a^2)", alpha[name] == sigma,
                    value=alpha[name])
        s4 = elementary_symmetric(ALPHA_RING.gens(), 4, ALPHA_RING)
        rep.add("s4.sigma4", "s4(a) = sigma_4(a)", alpha["s4"] == s4, value=alpha["s4"])
    return rep


def discriminant_components(ring: Ring = PARAM_RING) -> List[Poly]:
    """[4 b4 - g3^2, b1 - 2 b2, b1 + 2 b2, g3, Eq3].

    The images of the hyperplanes a3 = a4 and a3 = -a4 are b1 = 2 b2 and
    b1 = -2 b2 (b1 = a3^2 + a4^2, b2 = a3 a4).  The labelling with b1 and b2
    exchanged does not annihilate the critical image; ``verify_discriminant``
    certifies both statements.
    """
    return [ring.parse(s) for s in ("4*b4 - g3^2", "b1 - 2*b2", "b1 + 2*b2", "g3")] + [eq3(ring)]


def swapped_components(ring: Ring = PARAM_RING) -> List[Poly]:
    """The alternative labelling b2 = +-2 b1 for the second and third components."""
    return [ring.parse(s) for s in ("4*b4 - g3^2", "b2 - 2*b1", "b2 + 2*b1", "g3")] + [eq3(ring)]


# Hyperplanes a_i +- a_j = 0 as substitutions, with a lift of a singular point.
HYPERPLANES: Dict[str, Tuple[Dict[str, str], Tuple[str, str, str] | None]] = {
    "a1-a2": ({"a2": "a1"}, ("0", "a3*a4", "-a1^2")),
    "a1+a2": ({"a2": "-a1"}, ("0", "-a3*a4", "-a1^2")),
    "a3-a4": ({"a4": "a3"}, ("0", "a1*a2", "-a3^2")),
    "a3+a4": ({"a4": "-a3"}, ("0", "-a1*a2", "-a3^2")),
    "a1+a3": ({"a3": "-a1"}, ("0", "-a2*a4", "-a1^2")),
    "a1-a3": ({"a3": "a1"}, None),
    "a1+a4": ({"a4": "-a1"}, None),
    "a1-a4": ({"a4": "a1"}, None),
    "a2+a3": ({"a3": "-a2"}, None),
    "a2-a3": ({"a3": "a2"}, None),
    "a2+a4": ({"a4": "-a2"}, None),
    "a2-a4": ({"a4": "a2"}, None),
}


def _hyperplane_params(sub: Dict[str, str]) -> Dict[str, Poly]:
    assign = {k: ALPHA_RING.parse(v) for k, v in sub.items()}
    bc = BaseChange.standard()
    return {k: v.subs(assign) for k, v in bc.invariants.items()}


def _multiplicity(p: Poly, factor: Poly) -> Tuple[int, Poly]:
    e = 0
    while True:
        q = p.exact_div(factor)
        if q is None:
            return e, p
        p, e = q, e + 1


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


def quartic_discriminant() -> Poly:
    """Discriminant route: F|_{x=0} = z Y^2 - 2 b2 (z - b4) Y + C with Y = y + b2.

    A singular point of the fibre forces a double root in z of the quartic
    b2^2 (z - b4)^2 - z C(z), so its z-discriminant vanishes on the image of
    the critical locus.
    """
    r = Ring.of("z", *PARAMS)
    c = r.parse("-(z^2 + z*b1 + b2^2)*g3^2 - (z + b1)*(z - b4)^2")
    quartic = r.parse("b2^2*(z - b4)^2") - r("z") * c
    return discriminant(quartic, "z").to_ring(r.without("z"))


def verify_discriminant(budget: int = DEFAULT_BUDGET, seed: int = 0) -> VerificationReport:
    rep = VerificationReport("discriminant", seed=seed, budget=budget)
    F = family_f()
    comps = discriminant_components()
    product = poly_prod(comps, PARAM_RING)
    rng = random.Random(seed)

    # (i) critical locus, saturation by g3, elimination of x, y, z
    crit = singular_locus(F, SPACE)
    e_full = e_sat = None
    try:
        with rep.timed():
            e_full = eliminate(crit, SPACE, budget=budget)
            e_sat = eliminate(saturate(crit, FAMILY_RING("g3"), budget=budget), SPACE, budget=budget)
            rep.add("elimination", "crit(F) eliminated over (x, y, z), with and without saturation by g3",
                    len(e_full.gens) == 1 and len(e_sat.gens) == 1,
                    eliminated=[g for g in e_full.gens], saturated=[g for g in e_sat.gens])
    except BudgetExceeded as exc:
        rep.add("elimination", "crit(F) eliminated over (x, y, z)", PARTIAL, error=str(exc))
        rep.notes.append("elimination budget exhausted; membership certificates below still run")

    if e_full is not None:
        g0 = e_full.gens[0].to_ring(PARAM_RING)
        gs = e_sat.gens[0].to_ring(PARAM_RING)
        with rep.timed():
            rest, mults = g0, []
            for c in comps:
                e, rest = _multiplicity(rest, c)
                mults.append(e)
            rep.add("factorisation", "E0 = u * prod(c_i^m_i), u constant",
                    rest.is_constant() and all(mults),
                    multiplicities=dict(zip([str(c) for c in comps], mults)), unit=rest.constant_coefficient())
            rep.notes.append(f"eliminated generator = {rest.constant_coefficient()} * "
                             + " * ".join(f"({c})^{m}" for c, m in zip(comps, mults)))
            rest_s, mults_s = gs, []
            for c in comps:
                e, rest_s = _multiplicity(rest_s, c)
                mults_s.append(e)
            rep.add("factorisation.saturated", "E = u * prod(c_i^m_i) with g3 removed",
                    rest_s.is_constant() and mults_s[3] == 0 and all(m for j, m in enumerate(mults_s) if j != 3),
                    multiplicities=dict(zip([str(c) for c in comps], mults_s)))

            # (ii) two-way radical membership
            e0_ideal = Ideal(PARAM_RING, (g0,))
            prod_ideal = Ideal(PARAM_RING, (product,))
            fwd = radical_membership(product, e0_ideal, budget=budget)
            back = radical_membership(g0, prod_ideal, budget=budget)
            rep.add("radical.product_in_E0", "prod(c_i) in rad(E0)", fwd)
            rep.add("radical.E0_in_product", "E0 in rad(prod(c_i))", back)
            four = poly_prod([c for j, c in enumerate(comps) if j != 3], PARAM_RING)
            rep.add("radical.saturated_two_way", "rad(E) = rad(prod(c_i, c_i != g3))",
                    radical_membership(four, Ideal(PARAM_RING, (gs,)), budget=budget)
                    and radical_membership(gs, Ideal(PARAM_RING, (four,)), budget=budget))
            needed = {}
            for j, c in enumerate(comps):
                others = poly_prod([d for i, d in enumerate(comps) if i != j], PARAM_RING)
                needed[str(c)] = not radical_membership(others, e0_ideal, budget=budget)
            rep.add("radical.minimal", "no component can be dropped", all(needed.values()), needed=needed)

            swapped = poly_prod(swapped_components(), PARAM_RING)
            swapped_ok = radical_membership(swapped, e0_ideal, budget=budget)
            rep.add("labelling", "b1 = +-2 b2 annihilates the critical image; b2 = +-2 b1 does not",
                    fwd and not swapped_ok,
                    resolved=["b1 - 2*b2", "b1 + 2*b2"], rejected=["b2 - 2*b1", "b2 + 2*b1"])
            rep.notes.append("components b1 = 2 b2 and b1 = -2 b2 (images of a3 = a4 and a3 = -a4)")

    # independent route: discriminant of the quartic in z
    with rep.timed():
        qd = quartic_discriminant()
        ok = False
        ratio = None
        if e_full is not None:
            ratio = qd.exact_div(e_full.gens[0].to_ring(PARAM_RING))
            ok = ratio is not None and ratio.is_constant()
        else:
            ok = radical_membership(product, Ideal(PARAM_RING, (qd,)), budget=budget)
        rep.add("quartic_discriminant", "disc_z(quartic) = const * E0", ok,
                discriminant_terms=len(qd.terms), ratio=ratio)

    # (iii) hyperplane a1 + a3 = 0 annihilates Eq3; every hyperplane lands in a component
    with rep.timed():
        e3 = eq3()
        params = _hyperplane_params({"a3": "-a1"})
        expected_param = {"g3": "a1 + a2", "b1": "a1^2 + a4^2", "b2": "-a1*a4", "b4": "a1*a2"}
        rep.add("hyperplane.a1+a3.parametrisation", "(g3, b1, b2, b4) on a1 + a3 = 0",
                all(params[k] == ALPHA_RING.parse(v) for k, v in expected_param.items()), params=params)
        rep.add("hyperplane.a1+a3.eq3", "Eq3(a1 + a3 = 0) = 0", e3.subs(params, ALPHA_RING).is_zero())
        hits = {}
        for name, (sub, _) in HYPERPLANES.items():
            p = _hyperplane_params(sub)
            hits[name] = [str(c) for c in comps if c.subs(p, ALPHA_RING).is_zero()]
        rep.add("hyperplane.images", "each reflection hyperplane maps into a component",
                all(hits.values()), components=hits)
        eq3_alpha = e3.subs(BaseChange.standard().invariants, ALPHA_RING)
        mixed = poly_prod([ALPHA_RING.parse(f"{a}{s}{b}") for a in ("a1", "a2")
                           for b in ("a3", "a4") for s in "+-"], ALPHA_RING)
        rep.add("eq3.alpha_factorisation", "Eq3(a) = prod(a_i +- a_j, i in {1,2}, j in {3,4})",
                eq3_alpha == mixed)

        # lifted singular points on the total space
        lifts = {}
        fa = None
        for name, (sub, lift) in HYPERPLANES.items():
            if lift is None:
                continue
            assign = {k: FAMILY_ALPHA_RING.parse(v) for k, v in sub.items()}
            inv = {k: v.to_ring(FAMILY_ALPHA_RING).subs(assign) for k, v in BaseChange.standard().invariants.items()}
            fa = family_f().subs({**inv}, FAMILY_ALPHA_RING)
            pt = {v: FAMILY_ALPHA_RING.parse(s).subs(assign) for v, s in zip(SPACE, lift)}
            vals = [g.subs(pt) for g in [fa] + fa.partials(SPACE)]
            lifts[name] = all(v.is_zero() for v in vals)
        rep.add("hyperplane.singular_lifts", "F = dF/dx = dF/dy = dF/dz = 0 at the lifted point",
                all(lifts.values()), lifts={k: HYPERPLANES[k][1] for k in lifts}, ok=lifts)

    # (iv) rank condition
    with rep.timed():
        m = rank_matrix()
        rep.add("rank.det", "F = x^2 - det(M3)", F == FAMILY_RING("x") ** 2 - m.det())
        rank_ideal = Ideal(FAMILY_RING, tuple(minors2x2(m)) + (FAMILY_RING("x"),))
        try:
            rank_elim = eliminate(rank_ideal, SPACE, budget=budget)
            gens = [g.to_ring(PARAM_RING) for g in rank_elim.gens]
            unit = gens[0].exact_div(e3) if len(gens) == 1 else None
            rep.add("rank.elimination", "<x, 2x2 minors of M3> eliminated over (x, y, z) = <Eq3>",
                    unit is not None and unit.is_constant(), unit=unit)
        except BudgetExceeded as exc:
            rep.add("rank.elimination", "<x, 2x2 minors of M3> eliminated over (x, y, z) = <Eq3>",
                    PARTIAL, error=str(exc))
        # crit : g3^inf still carries the critical loci over 4 b4 = g3^2 and b1 = +-2 b2
        sat = saturate(crit, FAMILY_RING("g3"), budget=budget)
        rank_locus_inside = all(radical_membership(g, rank_ideal, budget=budget) for g in sat.gens)
        others = FAMILY_RING.parse("(4*b4 - g3^2)*(b1 - 2*b2)*(b1 + 2*b2)")
        comp = saturate(sat, others, budget=budget)
        same = (all(radical_membership(g, rank_ideal, budget=budget) for g in comp.gens)
                and all(radical_membership(g, comp, budget=budget) for g in rank_ideal.gens))
        rep.add("rank.critical_component",
                "V(x, minors(M3)) is inside V(crit(F) : g3^inf) and equals its part off the other components",
                rank_locus_inside and same)

    # g3 = 0 component
    with rep.timed():
        pt = {"x": 0, "y": FAMILY_RING.parse("-b2"), "z": FAMILY_RING("b4"), "g3": 0}
        vals = [g.subs(pt) for g in [F] + F.partials(SPACE)]
        rep.add("g3=0.singular_point", "F = dF = 0 at x = y + b2 = z - b4 = 0 when g3 = 0",
                all(v.is_zero() for v in vals))

    # random rational points on Eq3 = 0 via the a1 + a3 = 0 lift
    with rep.timed():
        pts = []
        ok = True
        for _ in range(5):
            a1, a2, a4 = (_random_rational(rng) for _ in range(3))
            vals = {"a1": a1, "a2": a2, "a3": -a1, "a4": a4}
            beta = {k: v.evaluate(vals) for k, v in BaseChange.standard().invariants.items()}
            point = {"x": 0, "y": -a2 * a4, "z": -a1 * a1, **beta}
            fv = [g.evaluate(point) for g in [F] + F.partials(SPACE)]
            on = all(v == 0 for v in fv) and eq3().evaluate(beta) == 0
            if e_full is not None:
                on = on and e_full.gens[0].to_ring(PARAM_RING).evaluate(beta) == 0
            ok = ok and on
            pts.append({k: str(v) for k, v in point.items()})
        rep.add("random.critical_points", "random lifted points are critical and lie on Eq3 = 0", ok, points=pts)

    # random points off the discriminant give smooth fibres
    with rep.timed():
        results = []
        while len(results) < 5:
            beta = {k: _random_rational(rng) for k in PARAMS}
            if product.evaluate(beta) == 0:
                continue
            fiber = F.subs(beta)
            unit = singular_locus(fiber, SPACE).is_unit(budget=budget)
            results.append({"point": {k: str(v) for k, v in beta.items()}, "smooth": unit})
        rep.add("random.off_discriminant", "sing(F_b) = <1> for b off the discriminant",
                all(r["smooth"] for r in results), samples=results)
    return rep
