"""Determinantal small resolution of the quadric family

    F = X^2 + (ac - b^2) T^2 + a Y^2 - 2b YZ + c Z^2

obtained by blowing up the 2x2 minors of

    M = [[Z, -aT, X - bT, -aY],
         [T,   Z,      Y, X - bT]].

The blow-up is handled through its two affine charts R = 1 and P = 1, where
(P : Q : R : S) are the minors

    P = Z^2 + aT^2,  Q = (X - bT)^2 + aY^2,  R = ZY - T(X - bT),  S = Z(X - bT) + aTY.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .algebra import Poly, PolyMatrix, Ring, minors2x2
from .deformation import FAMILY_RING, BaseChange, family_f
from .groebner import (
    DEFAULT_BUDGET,
    Ideal,
    ideal_membership,
    is_smooth_affine,
)
from .report import VerificationReport

PAGODA_RING = Ring.of("X", "Y", "Z", "T", "a", "b", "c")
PAGODA_TEXT = "X^2 + (a*c - b^2)*T^2 + a*Y^2 - 2*b*Y*Z + c*Z^2"
MINOR_TEXT = {
    "P": "Z^2 + a*T^2",
    "Q": "(X - b*T)^2 + a*Y^2",
    "R": "Z*Y - T*(X - b*T)",
    "S": "Z*(X - b*T) + a*T*Y",
}
# Q eliminated through Q = 2bR - cP, valid on F = 0
SYZYGY_TEXT = (
    "Y*P - Z*R - T*S",
    "(X - b*T)*P + a*T*R - Z*S",
    "-c*T*P + (X + b*T)*R - Y*S",
    "(c*Z - b*Y)*P + (a*Y - b*Z)*R + X*S",
)
# the same four relations before eliminating Q (pure determinantal syzygies)
DETERMINANTAL_TEXT = (
    "Y*P - Z*R - T*S",
    "(X - b*T)*P + a*T*R - Z*S",
    "T*Q + (X - b*T)*R - Y*S",
    "-Z*Q - b*Y*P + (a*Y + b*Z)*R + X*S",
)

PRESEQ_RING = Ring.of("S", "P", "y", "b1", "b2", "g3", "b4")
PRESEQ_TEXT = "S^2 - (y + b2)*P^3 - (b1 + b4 - g3*S)*P^2 + (y - b2)*P + b4 - g3*S"


def pagoda_matrix(ring: Ring = PAGODA_RING) -> PolyMatrix:
    return PolyMatrix.parse(ring, [
        ["Z", "-a*T", "X - b*T", "-a*Y"],
        ["T", "Z", "Y", "X - b*T"],
    ])


@dataclass(frozen=True)
class PagodaForm:
    poly: Poly

    @classmethod
    def standard(cls) -> "PagodaForm":
        return cls(PAGODA_RING.parse(PAGODA_TEXT))

    def reid(self) -> Poly:
        """The b = 0 member X^2 + acT^2 + aY^2 + cZ^2."""
        return self.poly.subs({"b": 0})

    def minors(self) -> Dict[str, Poly]:
        return {k: PAGODA_RING.parse(v) for k, v in MINOR_TEXT.items()}


@dataclass(frozen=True)
class ChartPresentation:
    name: str
    ring: Ring
    coordinates: Tuple[str, ...]
    eliminated: Dict[str, Poly]
    residual: Poly
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "chart": self.name,
            "coordinates": list(self.coordinates),
            "eliminated": {k: str(v) for k, v in self.eliminated.items()},
            "residual": str(self.residual),
        }


# -- coordinate change -------------------------------------------------------

def pagoda_substitution() -> Dict[str, Poly]:
    """X = x, T = g3, Y = y + b2, Z = z - b4, a = z, b = b2, c = -z - b1."""
    r = FAMILY_RING
    return {k: r.parse(v) for k, v in
            {"X": "x", "T": "g3", "Y": "y + b2", "Z": "z - b4", "a": "z", "b": "b2", "c": "-z - b1"}.items()}


def inverse_pagoda_substitution() -> Dict[str, Poly]:
    r = PAGODA_RING
    return {k: r.parse(v) for k, v in
            {"x": "X", "g3": "T", "y": "Y - b", "z": "a", "b4": "a - Z", "b1": "-a - c", "b2": "b"}.items()}


def pagoda_coordinate_change() -> VerificationReport:
    rep = VerificationReport("pagoda-coordinates")
    with rep.timed():
        form = PagodaForm.standard()
        fwd = form.poly.subs(pagoda_substitution(), FAMILY_RING)
        rep.add("forward", "pagoda(X(x), ...) = F(x, y, z; b, g)", fwd == family_f(), difference=fwd - family_f())
        back = family_f().subs(inverse_pagoda_substitution(), PAGODA_RING)
        rep.add("inverse", "F(x(X), ...) = pagoda(X, Y, Z, T, a, b, c)", back == form.poly)
        reid = PAGODA_RING.parse("X^2 + a*c*T^2 + a*Y^2 + c*Z^2")
        rep.add("b=0", "pagoda at b = 0 is X^2 + acT^2 + aY^2 + cZ^2", form.reid() == reid)
        composite = {k: v.subs(pagoda_substitution(), FAMILY_RING) for k, v in inverse_pagoda_substitution().items()}
        rep.add("round_trip", "inverse o forward = id",
                all(composite[k] == FAMILY_RING(k) for k in composite), composite=composite)
    return rep


# -- minors and their relations ----------------------------------------------

def minor_subset() -> Tuple[List[str], Dict[str, str]]:
    """The four generators P, Q, R, S and how the remaining two minors arise."""
    return ["P", "Q", "R", "S"], {"minor(2,3)": "-S", "minor(2,4)": "a*R"}


def minor_relations(budget: int = DEFAULT_BUDGET) -> VerificationReport:
    rep = VerificationReport("minor-relations")
    form = PagodaForm.standard()
    F = form.poly
    mins = form.minors()
    P, Q, R, S = (mins[k] for k in "PQRS")
    a, b, c = (PAGODA_RING(v) for v in "abc")
    with rep.timed():
        six = minors2x2(pagoda_matrix())
        labels = ["minor(1,2)", "minor(1,3)", "minor(1,4)", "minor(2,3)", "minor(2,4)", "minor(3,4)"]
        table = dict(zip(labels, six))
        rep.add("minors.named", "minor(1,2) = P, minor(3,4) = Q, minor(1,3) = R, minor(1,4) = S",
                table["minor(1,2)"] == P and table["minor(3,4)"] == Q
                and table["minor(1,3)"] == R and table["minor(1,4)"] == S, minors=table)
        _, rest = minor_subset()
        rep.add("minors.dependent", "minor(2,3) = -S, minor(2,4) = aR",
                table["minor(2,3)"] == -S and table["minor(2,4)"] == a * R)
        four = Ideal(PAGODA_RING, (P, Q, R, S))
        full = Ideal(PAGODA_RING, tuple(six))
        two_way = (all(ideal_membership(g, four, budget) for g in six)
                   and all(ideal_membership(g, full, budget) for g in (P, Q, R, S)))
        rep.add("minors.four_generators", "<P, Q, R, S> = <all six minors>", two_way,
                generators=["P", "Q", "R", "S"], others=rest)

        rel = S ** 2 - P * Q + a * R ** 2
        rep.add("relation", "S^2 - PQ + aR^2 = 0", rel.is_zero(), difference=rel)
        prop = Q + c * P - 2 * b * R - F
        rep.add("proportional", "Q + cP - 2bR - F = 0 (constant 1)", prop.is_zero(), difference=prop)
        q_elim = S ** 2 + c * P ** 2 - 2 * b * P * R + a * R ** 2
        reduced = (S ** 2 - P * (2 * b * R - c * P) + a * R ** 2) - q_elim
        rep.add("relation.Q_eliminated", "S^2 + cP^2 - 2bPR + aR^2 = P F", reduced.is_zero()
                and q_elim.exact_div(F) == P, cofactor=q_elim.exact_div(F))

        sub = {"P": P, "Q": Q, "R": R, "S": S}
        syz_ring = PAGODA_RING.extend("P", "Q", "R", "S")
        for n, (text, det_text) in enumerate(zip(SYZYGY_TEXT, DETERMINANTAL_TEXT), 1):
            s = syz_ring.parse(text).subs(sub, PAGODA_RING)
            d = syz_ring.parse(det_text).subs(sub, PAGODA_RING)
            cof = s.exact_div(F) if not s.is_zero() else Poly.zero(PAGODA_RING)
            rep.add(f"syzygy{n}", f"{text} = 0 on F = 0 (determinantal form identically 0)",
                    d.is_zero() and cof is not None,
                    identically_zero=s.is_zero(), cofactor_of_F=cof, determinantal_form=det_text)
    rep.notes.append("syzygies 3 and 4 with Q replaced by 2bR - cP equal -T*F and Z*F")
    return rep


# -- charts ------------------------------------------------------------------

R_CHART_RING = Ring.of("Y", "P", "S", "T", "a", "b", "c")
P_CHART_RING = Ring.of("Z", "R", "S", "T", "a", "b", "c")


def chart(name: str) -> ChartPresentation:
    if name == "R=1":
        r = R_CHART_RING
        elim = {"Z": r.parse("Y*P - T*S"), "X": r.parse("c*T*P + Y*S - b*T")}
        residual = r.parse("S^2 + c*P^2 - 2*b*P + a")
        return ChartPresentation("R=1", r, ("Y", "P", "S", "T", "b", "c"), elim, residual,
                                 ["a = -(S^2 + cP^2 - 2bP) on the chart"])
    if name == "P=1":
        r = P_CHART_RING
        elim = {"Y": r.parse("Z*R + T*S"), "X": r.parse("-a*T*R + Z*S + b*T")}
        residual = r.parse("S^2 + c - 2*b*R + a*R^2")
        return ChartPresentation("P=1", r, ("Z", "R", "S", "T", "a", "b"), elim, residual,
                                 ["c = -(S^2 - 2bR + aR^2) on the chart"])
    raise ValueError(f"unknown chart {name!r}; expected 'R=1' or 'P=1'")


def _chart_point(ch: ChartPresentation) -> Dict[str, Poly]:
    """Ambient coordinates (X, Y, Z, T, a, b, c) as functions on the chart."""
    r = ch.ring
    solved = "a" if ch.name == "R=1" else "c"
    value = r(solved) - ch.residual
    out = {v: r(v) for v in ("X", "Y", "Z", "T", "a", "b", "c") if v in r}
    out.update({k: v.subs({solved: value}) for k, v in ch.eliminated.items()})
    out[solved] = value
    return out


def verify_charts(budget: int = DEFAULT_BUDGET) -> VerificationReport:
    rep = VerificationReport("charts")
    form = PagodaForm.standard()
    with rep.timed():
        for name, fixed, proj in (("R=1", "R", ("P", "S")), ("P=1", "P", ("R", "S"))):
            ch = chart(name)
            pt = _chart_point(ch)
            r = ch.ring
            Fv = form.poly.subs(pt, r)
            rep.add(f"{name}.on_F", "F vanishes on the chart image", Fv.is_zero())
            mins = {k: v.subs(pt, r) for k, v in form.minors().items()}
            lam = mins[fixed]
            ok = all((mins[k] - r(k) * lam).is_zero() for k in proj)
            rep.add(f"{name}.graph", f"minors proportional to the chart point ({fixed} = 1)", ok, scale=lam)
            syz_ring = PAGODA_RING.extend("P", "Q", "R", "S")
            proj_pt = {fixed: Poly.const(r, 1), **{k: r(k) for k in proj}}
            proj_pt["Q"] = 2 * r("b") * proj_pt["R"] - r("c") * proj_pt["P"]
            vals = [syz_ring.parse(t).subs({**pt, **proj_pt}, r) for t in SYZYGY_TEXT]
            rep.add(f"{name}.syzygies", "all four syzygies vanish on the chart", all(v.is_zero() for v in vals))
            rel = syz_ring.parse("S^2 + c*P^2 - 2*b*P*R + a*R^2").subs(proj_pt, r)
            rep.add(f"{name}.residual", f"S^2 + cP^2 - 2bPR + aR^2 at {fixed} = 1 is {ch.residual}",
                    rel == ch.residual, residual=ch.residual)

        # overlap: R-chart point with P invertible, mapped to the P-chart via R' = 1/P, S' = S/P
        over = R_CHART_RING.extend("Pinv")
        loc = Ideal(over, (over("P") * over("Pinv") - 1,))
        rpt = {k: v.to_ring(over) for k, v in _chart_point(chart("R=1")).items()}
        pch = chart("P=1")
        to_p = {"Z": rpt["Z"], "R": over("Pinv"), "S": over("S") * over("Pinv"),
                "T": over("T"), "a": rpt["a"], "b": over("b")}
        ppt = {k: v.subs(to_p, over) for k, v in _chart_point(pch).items()}
        agree = all(ideal_membership(ppt[k] - rpt[k], loc, budget) for k in ("X", "Y", "Z", "a", "c"))
        rep.add("overlap", "P=1 chart composed with (R, S) = (1/P, S/P) equals the R=1 chart", agree)
    return rep


# -- back to the original coordinates ---------------------------------------

ORIG_CHART_RING = Ring.of("S", "P", "y", "x", "z", "b1", "b2", "g3", "b4")


def formules(ring: Ring = ORIG_CHART_RING) -> Dict[str, Poly]:
    """x and z on the R = 1 chart, with z already inserted into x."""
    z = ring.parse("(y + b2)*P - g3*S + b4")
    x = ring.parse("(y + b2)*S - (z + b1)*g3*P - b2*g3").subs({"z": z})
    return {"x": x, "z": z}


def preseq(ring: Ring = PRESEQ_RING) -> Poly:
    return ring.parse(PRESEQ_TEXT)


def chart_R_original_coords() -> Poly:
    """The single chart equation in (S, P, y; b1, b2, g3, b4).

    Derived as the chart residual S^2 + cP^2 - 2bP + a with a = z and
    c = -z - b1 expressed through the chart formulas for z.
    """
    r = ORIG_CHART_RING
    z = formules(r)["z"]
    residual = r.parse("S^2 + (-z - b1)*P^2 - 2*b2*P + z").subs({"z": z})
    return residual.to_ring(PRESEQ_RING)


def verify_original_chart() -> VerificationReport:
    rep = VerificationReport("chart-original-coordinates")
    r = ORIG_CHART_RING
    with rep.timed():
        eq = chart_R_original_coords()
        target = preseq()
        rep.add("residual", "chart residual in original coordinates = preseq", eq == target, equation=eq)
        f = family_f(r)
        fx = formules(r)
        pulled = f.subs(fx)
        cof = pulled.exact_div(target.to_ring(r))
        rep.add("pullback", "F(x(S,P,y), y, z(S,P,y)) = U * preseq", cof is not None and not cof.is_zero(),
                cofactor=cof)
        # the formulas are the R = 1 eliminations Z = YP - TS, X + bT = cTP + YS read in x, y, z
        zchk = (r.parse("z - b4") - (r.parse("(y + b2)*P - g3*S"))).subs(fx)
        xchk = (r.parse("x + b2*g3") - r.parse("(-z - b1)*g3*P + (y + b2)*S")).subs(fx)
        rep.add("formules", "z - b4 = YP - TS and X + bT = cTP + YS in original coordinates",
                zchk.is_zero() and xchk.is_zero())
        k = 2
        fam = family_chart("-2*t", "0", f"i*t^{k}", "t")
        rep.add("specialisation", "preseq along (b1, b2, g3, b4) = (-2t, 0, i t^2, t)",
                fam == FAMILY_CHART_RING.parse(TSERIES_TEXT.replace("{k}", str(k))), value=fam)
        at0 = {k: v.subs({"S": 0, "P": 0}) for k, v in fx.items()}
        rep.add("P=S=0", "formulas give z = b4, x = -b2 g3 at P = S = 0",
                at0["z"] == r("b4") and at0["x"] == r.parse("-b2*g3"), values=at0)
    return rep


# -- smoothness --------------------------------------------------------------

TSERIES_TEXT = "S^2 - y*P^3 - (-t - i*t^{k}*S)*P^2 + y*P + t - i*t^{k}*S"
NEGATIVE_TEXT = "S^2 - y*P^3 - (-2*t + t^2 - i*t^2*S)*P^2 + y*P + t^2 - i*t^2*S"
DROPPED_TEXT = "S^2 - y*P^3 + t*P^2 + y*P + t"
FAMILY_CHART_RING = Ring.of("S", "P", "y", "t")


def family_chart(b1: str, b2: str, g3: str, b4: str) -> Poly:
    """preseq along a one-parameter family, in (S, P, y, t)."""
    r = FAMILY_CHART_RING
    sub = {"b1": r.parse(b1), "b2": r.parse(b2), "g3": r.parse(g3), "b4": r.parse(b4)}
    return preseq().subs(sub, r)


def verify_chart_smoothness(budget: int = DEFAULT_BUDGET, ks: Sequence[int] = (1, 2, 3)) -> VerificationReport:
    rep = VerificationReport("chart-smoothness", budget=budget)
    with rep.timed():
        for name in ("R=1", "P=1"):
            ch = chart(name)
            ok = is_smooth_affine([ch.residual], list(ch.ring.names), budget)
            rep.add(f"universal.{name}", f"{ch.residual} = 0 is smooth", ok)
        pre = preseq()
        rep.add("universal.preseq", "preseq = 0 is smooth in (S, P, y, b1, b2, g3, b4)",
                is_smooth_affine([pre], list(PRESEQ_RING.names), budget))
    for k in ks:
        with rep.timed():
            g = family_chart("-2*t", "0", f"i*t^{k}", "t")
            direct = FAMILY_CHART_RING.parse(TSERIES_TEXT.replace("{k}", str(k)))
            ok = is_smooth_affine([g], list(FAMILY_CHART_RING.names), budget)
            rep.add(f"family.k={k}", f"chart of (b1, b2, g3, b4) = (-2t, 0, i t^{k}, t) is smooth",
                    ok and g == direct, equation=g)
    with rep.timed():
        neg = family_chart("-2*t", "0", "i*t^2", "t^2")
        smooth = is_smooth_affine([neg], list(FAMILY_CHART_RING.names), budget)
        origin = {v: 0 for v in FAMILY_CHART_RING.names}
        vals = [neg.evaluate(origin)] + [d.evaluate(origin) for d in neg.partials()]
        rep.add("negative_control", "chart of (-2t, 0, i t^2, t^2) is singular",
                not smooth and all(v == 0 for v in vals),
                equation=neg, common_zero=origin, values=[str(v) for v in vals])
        dropped = FAMILY_CHART_RING.parse(DROPPED_TEXT)
        rep.add("dropped_g3S", "chart with the g3*S terms removed (k = 1 family) stays smooth",
                is_smooth_affine([dropped], list(FAMILY_CHART_RING.names), budget), equation=dropped)
    rep.notes.append("removing the g3*S terms does not create a singular point, so b4 = t^2 serves"
                     " as the negative control (b4'(0) = 0)")
    return rep


# -- exceptional fibres ------------------------------------------------------

CONIC_RING = Ring.of("S", "P", "b1", "b2", "b4")


def exceptional_conic() -> Poly:
    """Fibre over g3 = 0: preseq at y = -b2."""
    return preseq().subs({"g3": 0, "y": PRESEQ_RING.parse("-b2")}).to_ring(CONIC_RING)


def conic_matrix(conic: Poly) -> PolyMatrix:
    """Symmetric matrix of the conic homogenised in (S, P, W)."""
    ring = conic.ring.without("S", "P")

    def coeff(i: int, j: int) -> Poly:
        c = conic.coefficients_in("S").get(i, Poly.zero(conic.ring))
        return c.coefficients_in("P").get(j, Poly.zero(conic.ring)).to_ring(ring)

    return PolyMatrix.from_rows([
        [coeff(2, 0), coeff(1, 1) / 2, coeff(1, 0) / 2],
        [coeff(1, 1) / 2, coeff(0, 2), coeff(0, 1) / 2],
        [coeff(1, 0) / 2, coeff(0, 1) / 2, coeff(0, 0)],
    ])


def reducibility_criterion(ring: Ring = CONIC_RING) -> Poly:
    return ring.parse("b2^2 + b1*b4 + b4^2")


def is_conic_reducible(values: Dict[str, object]) -> bool:
    return reducibility_criterion().evaluate({"S": 0, "P": 0, **values}) == 0


def exceptional_fiber(locus: str) -> Dict[str, object]:
    if locus == "g3=0":
        conic = exceptional_conic()
        det = conic_matrix(conic).det()
        return {"curve": conic, "determinant": det, "criterion": reducibility_criterion()}
    if locus == "eq3":
        r = Ring.of("S", "P", "y", "a1", "a2", "a3", "a4")
        inv = {k: v.to_ring(r) for k, v in BaseChange.standard().invariants.items()}
        inv = {k: v.subs({"a3": -r("a1")}) for k, v in inv.items()}
        eq = preseq().subs({**inv, "y": r.parse("-a2*a4")}, r)
        left = r.parse("S + a4*P - a1")
        right = r.parse("S + (a1 + a2)*P^2 - a4*P - a2")
        return {"curve": left, "equation": eq, "factors": (left, right)}
    raise ValueError(f"unknown locus {locus!r}; expected 'g3=0' or 'eq3'")


def verify_exceptional_fibers() -> VerificationReport:
    rep = VerificationReport("exceptional-fibres")
    with rep.timed():
        g = exceptional_fiber("g3=0")
        expected = CONIC_RING.parse("S^2 - (b1 + b4)*P^2 - 2*b2*P + b4")
        rep.add("g3=0.conic", "fibre over g3 = 0 is S^2 - (b1 + b4)P^2 - 2b2 P + b4", g["curve"] == expected)
        crit = g["criterion"].to_ring(g["determinant"].ring)
        rep.add("g3=0.discriminant", "det(conic) = -(b2^2 + b1 b4 + b4^2)", g["determinant"] == -crit,
                determinant=g["determinant"])
        circle = expected.subs({"b1": 0, "b2": 0, "b4": -1})
        rep.add("g3=0.circle", "b = (0, 0, -1): S^2 + P^2 - 1, criterion 1", not is_conic_reducible(
            {"b1": 0, "b2": 0, "b4": -1}) and circle == CONIC_RING.parse("S^2 + P^2 - 1"))
        split = expected.subs({"b1": -2, "b2": 1, "b4": 1})
        lines = CONIC_RING.parse("(S + i*(P - 1))*(S - i*(P - 1))")
        rep.add("g3=0.split", "b = (-2, 1, 1): conic = (S + i(P - 1))(S - i(P - 1))",
                is_conic_reducible({"b1": -2, "b2": 1, "b4": 1}) and split == lines, conic=split)

        e = exceptional_fiber("eq3")
        left, right = e["factors"]
        rep.add("eq3.factorisation", "chart equation = (S + a4 P - a1)(S + (a1 + a2)P^2 - a4 P - a2)",
                e["equation"] == left * right, equation=e["equation"])
        fr = Ring.of("S", "P", "y", "a1", "a2", "a3", "a4", "x", "z", "b1", "b2", "g3", "b4")
        inv = {k: v.to_ring(fr).subs({"a3": -fr("a1")}) for k, v in BaseChange.standard().invariants.items()}
        fx = {k: v.to_ring(fr).subs({**inv, "y": fr.parse("-a2*a4")}) for k, v in formules().items()}
        want_x = fr.parse("(a1 + a2)*((a1 + a2)*P - a4)*(S + a4*P - a1)")
        want_z = fr.parse("-a1^2 - (a1 + a2)*(S + a4*P - a1)")
        rep.add("eq3.formulas", "x = (a1 + a2)((a1 + a2)P - a4)(S + a4P - a1), z = -a1^2 - (a1 + a2)(S + a4P - a1)",
                fx["x"] == want_x and fx["z"] == want_z, x=fx["x"], z=fx["z"])
        line = {"S": fr.parse("a1 - a4*P")}
        lifted = {"x": fx["x"].subs(line), "z": fx["z"].subs(line)}
        rep.add("eq3.contracted", "S + a4 P - a1 = 0 maps to the singular point (x, z) = (0, -a1^2)",
                lifted["x"].is_zero() and lifted["z"] == fr.parse("-a1^2"), image=lifted)
        # printed variant with -a4*S in the middle factor: agrees only on the exceptional line
        variant = fr.parse("(a1 + a2)*(-a4*S + (a1 + a2)*P)*(S + a4*P - a1)")
        gap = fx["x"] - variant
        rep.add("eq3.variant_x", "x - (a1 + a2)(-a4 S + (a1 + a2)P)(S + a4P - a1) = a4(a1 + a2)(S - 1)(S + a4P - a1)",
                gap == fr.parse("a4*(a1 + a2)*(S - 1)*(S + a4*P - a1)") and variant.subs(line).is_zero(),
                difference=gap)
    return rep
