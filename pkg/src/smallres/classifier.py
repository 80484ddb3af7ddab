"""Classification of one-parameter cD4 smoothings pulled back from F.

A family is four polynomials b1(t), b2(t), b4(t), g3(t) without constant
term.  After normalising b4 = t, with b_i = t*bbar_i and g3 = t*gbar3:

    q   = ord_t g3
    cusp iff 1 + b1'(0) + b2'(0)^2 = 0
    rho = ord_t(1 + bbar1 + bbar2^2)

and the type is T(3,3,2q+2) (no cusp), Q(6q+5) (cusp, 2q-1 < 2 rho) or
Q(rho+1, 2(q-rho)-1) (cusp, 2 rho < 2q-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from .algebra import Poly, Ring
from .deformation import family_f
from .groebner import DEFAULT_BUDGET, jacobian_algebra_dim
from .report import VerificationReport

T_RING = Ring.of("t")
GERM_RING = Ring.of("x", "y", "z", "t")
BLOWUP_RING = Ring.of("t", "eta", "zeta")
NORMAL_FORM_RING = Ring.of("w", "x", "y", "z")
PARAM_NAMES = ("b1", "b2", "b4", "g3")


class InadmissibleFamily(ValueError):
    """The family violates a smoothness condition; ``condition`` names it."""

    def __init__(self, condition: str, detail: str = ""):
        super().__init__(f"{condition}: {detail}" if detail else condition)
        self.condition = condition
        self.detail = detail


class FamilySyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class OneParamFamily:
    b1: Poly
    b2: Poly
    b4: Poly
    g3: Poly

    def __post_init__(self):
        for name in PARAM_NAMES:
            p = getattr(self, name)
            if not isinstance(p, Poly) or p.ring != T_RING:
                raise TypeError(f"{name} must be a polynomial in t")
            if p.constant_coefficient() != 0:
                raise InadmissibleFamily("constant term", f"{name}(0) = {p.constant_coefficient()} != 0")

    @classmethod
    def of(cls, b1, b2, b4, g3) -> "OneParamFamily":
        conv = lambda v: v if isinstance(v, Poly) else T_RING.parse(str(v))
        return cls(conv(b1), conv(b2), conv(b4), conv(g3))

    @classmethod
    def parse(cls, text: str) -> "OneParamFamily":
        """Read ``"b1=-2t,b2=0,b4=t,g3=i*t^2"`` (any order, all four keys)."""
        values: Dict[str, Poly] = {}
        for part in text.split(","):
            if not part.strip():
                continue
            if "=" not in part:
                raise FamilySyntaxError(f"expected name=polynomial, got {part.strip()!r}")
            key, _, rhs = part.partition("=")
            key = key.strip()
            if key not in PARAM_NAMES:
                raise FamilySyntaxError(f"unknown parameter {key!r}; expected {', '.join(PARAM_NAMES)}")
            if key in values:
                raise FamilySyntaxError(f"parameter {key!r} given twice")
            try:
                values[key] = T_RING.parse(rhs)
            except ValueError as exc:
                raise FamilySyntaxError(f"{key}: {exc}") from exc
        missing = [k for k in PARAM_NAMES if k not in values]
        if missing:
            raise FamilySyntaxError(f"missing parameters: {', '.join(missing)}")
        return cls(**values)

    def to_text(self) -> str:
        return ",".join(f"{k}={getattr(self, k)}" for k in PARAM_NAMES)

    def as_dict(self) -> Dict[str, Poly]:
        return {k: getattr(self, k) for k in PARAM_NAMES}

    def degree(self) -> int:
        return max(p.total_degree() if not p.is_zero() else 0 for p in self.as_dict().values())

    def linear(self, name: str):
        return getattr(self, name).coefficient((1,))

    def reparametrize(self, t_image: Poly) -> "OneParamFamily":
        return OneParamFamily(**{k: p.subs({"t": t_image}) for k, p in self.as_dict().items()})


@dataclass(frozen=True)
class SingularityType:
    kind: str                      # "T", "Q", "Qseries" or "NA"
    params: Tuple[int, ...] = ()
    reason: str = ""
    flags: Tuple[str, ...] = ()

    @property
    def name(self) -> str:
        if self.kind == "T":
            return "T(3,3,{})".format(*self.params)
        if self.kind == "Q":
            return "Q({})".format(*self.params)
        if self.kind == "Qseries":
            return "Q({},{})".format(*self.params)
        return f"NotApplicable({self.reason})"

    def __str__(self):
        return self.name

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": list(self.params), "name": self.name,
                "reason": self.reason, "flags": list(self.flags)}


def T_type(r: int) -> SingularityType:
    return SingularityType("T", (r,))


def Q_type(n: int, flags=()) -> SingularityType:
    return SingularityType("Q", (n,), flags=tuple(flags))


def Qseries_type(k: int, delta: int) -> SingularityType:
    if delta < 1 or delta % 2 == 0:
        raise ValueError(f"delta must be odd and positive, got {delta}")
    return SingularityType("Qseries", (k, delta))


def arnold_normal_form(st: SingularityType, ring: Ring = NORMAL_FORM_RING) -> Poly:
    """Normal form with w^2 added (coefficient of the modulus term set to 1)."""
    if st.kind == "T":
        (r,) = st.params
        return ring.parse(f"w^2 + x^3 + y^3 + z^{r} + x*y*z")
    if st.kind == "Q":
        (n,) = st.params
        if (n - 5) % 6:
            raise ValueError(f"Q({n}) is not of the form Q(6q+5)")
        q = (n - 5) // 6
        return ring.parse(f"w^2 + x^3 + y*z^2 + x*y^{2 * q + 1}")
    if st.kind == "Qseries":
        k, i = st.params
        return ring.parse(f"w^2 + x^3 + y*z^2 + x^2*y^{k} + y^{3 * k + i}")
    raise ValueError(f"no normal form for {st.name}")


# -- admissibility and normalisation -----------------------------------------

def _value_at_zero_of_derivative(p: Poly):
    return p.coefficient((1,))


def admissibility(fam: OneParamFamily) -> VerificationReport:
    """Check the conditions at t = 0; failures are reported, not raised."""
    rep = VerificationReport("admissibility")
    g3 = fam.g3
    rep.add("g3_nonzero", "g3(t) is not identically 0", not g3.is_zero())
    val = (2 * g3 * g3.diff("t") - 4 * fam.b4.diff("t")).evaluate({"t": 0})
    rep.add("P=0", "2 g3 g3' - 4 b4' != 0 at t = 0", val != 0, value=val)
    d1, d2 = _value_at_zero_of_derivative(fam.b1), _value_at_zero_of_derivative(fam.b2)
    plus, minus = d1 + 2 * d2, d1 - 2 * d2
    rep.add("P=+-1", "b1'(0) + 2 b2'(0) != 0 and b1'(0) - 2 b2'(0) != 0", plus != 0 and minus != 0,
            plus=plus, minus=minus)
    return rep


def check_admissible(fam: OneParamFamily) -> None:
    rep = admissibility(fam)
    names = {"g3_nonzero": "g3 identically zero", "P=0": "b4'(0) = 0", "P=+-1": "b1'(0) +- 2 b2'(0) = 0"}
    for chk in rep.checks:
        if not chk.passed:
            raise InadmissibleFamily(names[chk.name], chk.claim)


def truncation_degree(fam: OneParamFamily) -> int:
    q = fam.g3.order_in("t") if not fam.g3.is_zero() else 1
    return 2 * max(q, fam.degree()) + 4


def series_inverse(p: Poly, degree: int) -> Poly:
    """phi with p(phi(s)) = s + O(s^(degree+1)); p(0) = 0 and p'(0) != 0 (variable t)."""
    c1 = p.coefficient((1,))
    if p.constant_coefficient() != 0 or c1 == 0:
        raise ValueError("series inverse needs p(0) = 0 and p'(0) != 0")
    t = T_RING("t")
    phi = t / c1
    for _ in range(degree):
        err = (p.subs({"t": phi}) - t).truncate("t", degree)
        if err.is_zero():
            break
        phi = (phi - err / c1).truncate("t", degree)
    return phi


def normalize(fam: OneParamFamily, degree: Optional[int] = None) -> Tuple[OneParamFamily, int, bool]:
    """Reparametrise so b4 = t; returns (family, truncation degree, whether truncated)."""
    check_admissible(fam)
    t = T_RING("t")
    if fam.b4 == t:
        return fam, degree or truncation_degree(fam), False
    n = degree or truncation_degree(fam)
    phi = series_inverse(fam.b4, n)
    out = {k: p.subs({"t": phi}).truncate("t", n) for k, p in fam.as_dict().items()}
    out["b4"] = t
    return OneParamFamily(**out), n, True


# -- germs -------------------------------------------------------------------

def total_space(fam: OneParamFamily) -> Poly:
    """F along the family, a germ in (x, y, z, t)."""
    if fam.g3.is_zero():
        raise InadmissibleFamily("g3 identically zero", "the curve lies in the discriminant g3 = 0")
    sub = {k: p.to_ring(GERM_RING) for k, p in fam.as_dict().items()}
    return family_f().subs(sub, GERM_RING)


def germ_g(fam: OneParamFamily) -> Poly:
    """G with F = x^2 + G(y, z, t)."""
    f = total_space(fam)
    return f - GERM_RING("x") ** 2


def _homogeneous_part(p: Poly, degree: int) -> Poly:
    return Poly(p.ring, {m: c for m, c in p.terms.items() if sum(m) == degree})


@dataclass(frozen=True)
class ThreeJet:
    poly: Poly
    b1: object
    b2: object
    cusp: bool
    singular_point: Tuple[object, object, object]
    irreducible: bool
    pencil_resultant: object
    checks: Dict[str, bool] = field(default_factory=dict)


def three_jet_formula(b1, b2, ring: Ring = GERM_RING) -> Poly:
    y, z, t = ring("y"), ring("z"), ring("t")
    return z * (y + b2 * t) ** 2 - 2 * b2 * t * (y + b2 * t) * (z - t) + (-z - b1 * t) * (z - t) ** 2


def three_jet(fam: OneParamFamily) -> ThreeJet:
    fam, _, _ = normalize(fam)
    b1, b2 = fam.linear("b1"), fam.linear("b2")
    j3 = three_jet_formula(b1, b2)
    g = germ_g(fam)
    checks = {}
    checks["low_order_vanishes"] = all(_homogeneous_part(g, d).is_zero() for d in range(3))
    checks["matches_G"] = _homogeneous_part(g, 3) == j3
    point = {"x": 0, "y": -b2, "z": 1, "t": 1}
    checks["singular_point"] = all(p.evaluate(point) == 0 for p in [j3] + j3.partials(["y", "z", "t"]))

    # pencil lam*(y + b2 t) = mu*(z - t) through the singular point
    pr = Ring.of("Y", "z", "t", "lam", "mu")
    jy = j3.to_ring(pr.extend("y")).subs({"y": pr("Y") - b2 * pr("t")}, pr)
    coeffs = jy.coefficients_in("Y")
    w = pr("z") - pr("t")
    zero = Poly.zero(pr)
    lam, mu = pr("lam"), pr("mu")
    pencil = (coeffs.get(2, zero) * mu ** 2 * w ** 2 + coeffs.get(1, zero) * mu * lam * w
              + coeffs.get(0, zero) * lam ** 2)
    expected = w ** 2 * ((mu ** 2 - lam ** 2) * pr("z") - (2 * mu * b2 + b1 * lam) * lam * pr("t"))
    checks["pencil"] = pencil == expected
    # common factor of mu^2 - lam^2 and (2 mu b2 + b1 lam) lam: evaluate the second at mu = +-lam
    res = (b1 + 2 * b2) * (b1 - 2 * b2)
    cusp = (1 + b1 + b2 * b2) == 0
    return ThreeJet(j3, b1, b2, cusp, (-b2, 1, 1), res != 0, res, checks)


@dataclass(frozen=True)
class StrictTransform:
    poly: Poly
    completed_square: Poly
    bars: Dict[str, Poly]
    checks: Dict[str, bool]


def blowup_strict_transform(fam: OneParamFamily) -> StrictTransform:
    """G(eta t, zeta t, t) / t^3 in (t, eta, zeta), and zeta times it as a completed square."""
    fam, _, _ = normalize(fam)
    r = BLOWUP_RING
    t, eta, zeta = r("t"), r("eta"), r("zeta")
    g = germ_g(fam)
    pulled = g.subs({"x": 0, "y": eta * t, "z": zeta * t, "t": t}, r)
    st = pulled.exact_div(t ** 3)
    if st is None:  # pragma: no cover - G has order 3
        raise ArithmeticError("G(eta t, zeta t, t) not divisible by t^3")
    bars = {}
    for k, p in fam.as_dict().items():
        q = p.exact_div(T_RING("t"))
        bars[k] = q.to_ring(r)
    bb1, bb2, gg = bars["b1"], bars["b2"], bars["g3"]
    display = ((-zeta ** 2 - zeta * bb1 - bb2 ** 2) * t * gg ** 2 + zeta * (eta + bb2) ** 2
               - 2 * bb2 * (eta + bb2) * (zeta - 1) + (-zeta - bb1) * (zeta - 1) ** 2)
    square = (zeta * eta + bb2) ** 2 - (zeta ** 2 + zeta * bb1 + bb2 ** 2) * (zeta * t * gg ** 2 + (zeta - 1) ** 2)
    b2 = fam.linear("b2")
    pt = {"t": 0, "eta": -b2, "zeta": 1}
    # d_t at the point is -(1 + bb1 + bb2^2) gg^2: singular iff q >= 2 or cusp
    q = fam.g3.order_in("t")
    cusp = (1 + bb1 + bb2 ** 2).evaluate({"t": 0, "eta": 0, "zeta": 0}) == 0
    grad_zero = all(p.evaluate(pt) == 0 for p in st.partials())
    checks = {
        "display": st == display,
        "completed_square": zeta * st == square,
        "point_on_transform": st.evaluate(pt) == 0,
        "singular_iff_q>=2_or_cusp": grad_zero == (q >= 2 or cusp),
    }
    return StrictTransform(st, square, bars, checks)


def strict_transform_milnor(fam: OneParamFamily, budget: int = DEFAULT_BUDGET):
    """Milnor number of the strict transform at (t, eta, zeta) = (0, -b2, 1)."""
    s = blowup_strict_transform(fam)
    fam_n, _, _ = normalize(fam)
    b2 = fam_n.linear("b2")
    r = BLOWUP_RING
    shifted = s.poly.subs({"eta": r("eta") - b2, "zeta": r("zeta") + 1})
    return jacobian_algebra_dim(shifted, budget=budget)


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    family: OneParamFamily
    normalized: OneParamFamily
    type: SingularityType
    q: int
    rho: float
    cusp: bool
    truncation: int
    truncated: bool

    def to_dict(self) -> dict:
        return {
            "family": self.family.to_text(),
            "normalized": self.normalized.to_text(),
            "type": self.type.to_dict(),
            "q": self.q,
            "rho": "inf" if self.rho == math.inf else self.rho,
            "cusp": self.cusp,
            "truncation_degree": self.truncation,
            "reparametrized": self.truncated,
        }


def orders(fam: OneParamFamily) -> Tuple[OneParamFamily, int, float, bool, int, bool]:
    norm, n, truncated = normalize(fam)
    q = norm.g3.order_in("t")
    b1, b2 = norm.linear("b1"), norm.linear("b2")
    cusp = (1 + b1 + b2 * b2) == 0
    rho = math.inf
    if cusp:
        t = T_RING("t")
        bb1 = norm.b1.exact_div(t)
        bb2 = norm.b2.exact_div(t)
        expr = 1 + bb1 + bb2 * bb2
        if truncated:
            # bbar_i are known up to degree n - 1
            expr = expr.truncate("t", n - 1)
        rho = expr.order_in("t")
    return norm, q, rho, cusp, n, truncated


def classify(fam: OneParamFamily) -> Classification:
    norm, q, rho, cusp, n, truncated = orders(fam)
    if not cusp:
        st = T_type(2 * q + 2)
    elif 2 * q - 1 < 2 * rho:
        flags = ("rho_infinite",) if rho == math.inf else ()
        st = Q_type(6 * q + 5, flags)
    else:
        st = Qseries_type(rho + 1, 2 * (q - rho) - 1)
    return Classification(fam, norm, st, q, rho, cusp, n, truncated)


def milnor_comparison(fam: OneParamFamily, budget: int = DEFAULT_BUDGET) -> Dict[str, object]:
    """mu(total space) against mu(normal form of the classified type), each computed."""
    cl = classify(fam)
    mu_family = jacobian_algebra_dim(total_space(fam), budget=budget)
    mu_normal = jacobian_algebra_dim(arnold_normal_form(cl.type), budget=budget)
    return {"type": cl.type.name, "mu_total_space": mu_family, "mu_normal_form": mu_normal,
            "equal": mu_family == mu_normal and mu_family != math.inf}


def laufer_germ(q: int, ring: Ring = GERM_RING) -> Poly:
    """x^2 + y^3 + z t^2 + y z^(2q+1)."""
    return ring.parse(f"x^2 + y^3 + z*t^2 + y*z^{2 * q + 1}")


def tseries_family(k: int) -> OneParamFamily:
    return OneParamFamily.parse(f"b1=-2t,b2=0,b4=t,g3=i*t^{k}")


def cusp_family(q: int, rho: Optional[int] = None) -> OneParamFamily:
    """b1 = -5t (+ t^(rho+1)), b2 = 2t, g3 = t^q: 1 + b1 + b2^2 = 0 at first order."""
    b1 = "-5t" if rho is None else f"-5t+t^{rho + 1}"
    return OneParamFamily.parse(f"b1={b1},b2=2t,b4=t,g3=t^{q}")


def classification_report(fam: OneParamFamily, budget: int = DEFAULT_BUDGET,
                          with_oracle: bool = True) -> VerificationReport:
    rep = VerificationReport("classify", budget=budget)
    adm = admissibility(fam)
    rep.extend(adm, "admissibility")
    if not adm.passed:
        return rep
    with rep.timed():
        cl = classify(fam)
        jet = three_jet(fam)
        rep.add("three_jet", "j3 G = z(y + b2 t)^2 - 2 b2 t(y + b2 t)(z - t) + (-z - b1 t)(z - t)^2",
                all(jet.checks.values()), checks=jet.checks, jet=jet.poly)
        rep.add("three_jet.irreducible", "(b1 + 2b2)(b1 - 2b2) != 0", jet.irreducible,
                resultant=jet.pencil_resultant, cusp=jet.cusp)
        stt = blowup_strict_transform(fam)
        rep.add("strict_transform", "zeta*G~ = (zeta eta + bb2)^2 - (zeta^2 + zeta bb1 + bb2^2)(zeta t gg^2 + (zeta - 1)^2)",
                all(stt.checks.values()), checks=stt.checks)
        rho = "-" if not cl.cusp else cl.rho
        rep.add("type", f"q = {cl.q}, cusp = {cl.cusp}, rho = {rho} -> {cl.type.name}", True,
                classification=cl.to_dict())
        if "rho_infinite" in cl.type.flags:
            rep.notes.append("1 + bbar1 + bbar2^2 vanishes identically; min(2q-1, 2 rho) taken as 2q-1")
    if with_oracle:
        with rep.timed():
            cmp = milnor_comparison(fam, budget)
            rep.add("milnor_oracle", "mu(total space) = mu(normal form)", cmp["equal"], **cmp)
    return rep
