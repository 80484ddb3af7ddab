"""Acceptance criteria 1-10.  Each test records one PASS/FAIL line, printed in
the terminal summary; tolerances and time limits are the pinned ones."""

import time

from smallres.classifier import classification_report, classify, cusp_family, tseries_family
from smallres.deformation import base_change_identity, verify_discriminant, verify_w0_invariance
from smallres.example import (
    DEFAULT_T,
    DEFAULT_W,
    ExampleParams,
    boundary_limit_check,
    certify_one_singular_point,
    figure_report,
)
from smallres.resolution import (
    minor_relations,
    verify_chart_smoothness,
    verify_charts,
    verify_original_chart,
)

import test_properties


def _judge(acceptance, n, limit, fn):
    start = time.perf_counter()
    ok, detail = fn()
    secs = time.perf_counter() - start
    ok = ok and secs < limit
    acceptance(n, ok, secs, detail)
    assert ok, f"criterion {n}: {detail} ({secs:.2f} s, limit {limit} s)"


def test_criterion_01_base_change_identity(acceptance):
    def run():
        rep = base_change_identity()
        return rep["versal.pullback"].passed, "pullback of the versal family minus the family = 0"
    _judge(acceptance, 1, 1.0, run)


def test_criterion_02_invariance_suite(acceptance):
    def run():
        rep = verify_w0_invariance()
        fixed = [c for c in rep.checks if ".fixed_by." in c.name]
        params = [c for c in fixed if c.name.split(".")[0] in ("g3", "b1", "b2", "b4")]
        invs = [c for c in fixed if c.name.split(".")[0] in ("t2", "t4", "t6", "s4")]
        ok = len(params) == 12 and len(invs) == 16 and all(c.passed for c in fixed)
        return ok, f"{sum(c.passed for c in fixed)}/{len(fixed)} identities (12 for g3,b1,b2,b4; 16 for t2,t4,t6,s4)"
    _judge(acceptance, 2, 1.0, run)


def test_criterion_03_discriminant(acceptance):
    def run():
        rep = verify_discriminant(seed=0)
        names = ["radical.product_in_E0", "radical.E0_in_product", "radical.saturated_two_way",
                 "labelling", "hyperplane.a1+a3.eq3"]
        ok = all(rep[n].passed for n in names)
        return ok, "two-way radical membership, b1 = +-2 b2 labelling, a1 + a3 = 0 annihilates Eq3"
    _judge(acceptance, 3, 300.0, run)


def test_criterion_04_resolution_identities(acceptance):
    def run():
        mr, ch, orig = minor_relations(), verify_charts(), verify_original_chart()
        names = ["relation", "proportional"] + [f"syzygy{n}" for n in range(1, 5)]
        ok = (all(mr[n].passed for n in names) and ch["R=1.residual"].passed and ch["P=1.residual"].passed
              and orig["residual"].passed and orig["pullback"].passed)
        return ok, "S^2 - PQ + aR^2 = 0, Q + cP - 2bR = F, four syzygies, chart residuals"
    _judge(acceptance, 4, 5.0, run)


def test_criterion_05_smoothness(acceptance):
    def run():
        rep = verify_chart_smoothness(ks=(1, 2, 3))
        names = ["universal.R=1", "universal.P=1", "family.k=1", "family.k=2", "family.k=3"]
        control = rep["negative_control"]
        ok = all(rep[n].passed for n in names) and control.passed and "common_zero" in control.witness
        return ok, "unit Jacobian ideals for both charts and k = 1, 2, 3; control not smooth"
    _judge(acceptance, 5, 300.0, run)


def test_criterion_06_classification(acceptance):
    def run():
        cases = [(tseries_family(k), f"T(3,3,{2 * k + 2})") for k in (1, 2, 3)]
        cases += [(cusp_family(q), f"Q({6 * q + 5})") for q in (1, 2, 3)]
        cases += [(cusp_family(q, r), name) for q, r, name in
                  ((2, 1, "Q(2,1)"), (3, 1, "Q(2,3)"), (3, 2, "Q(3,1)"), (4, 1, "Q(2,5)"))]
        ok, got = True, []
        for fam, name in cases:
            rep = classification_report(fam)
            ok = ok and classify(fam).type.name == name and rep["milnor_oracle"].passed and rep.passed
            got.append(name)
        return ok, ", ".join(got) + " with matching Milnor numbers"
    _judge(acceptance, 6, 300.0, run)


def test_criterion_07_example_singular_locus(acceptance):
    def run():
        rep = certify_one_singular_point(ExampleParams(2, 6, 1))
        ok = (rep["groebner.origin_only"].passed and rep["branch.z!=0.quadratic"].passed
              and rep["bad_eps.m=3k"].passed and rep.passed)
        return ok, "origin only; quadratic (18, -9, 0); bad eps = -1/4"
    _judge(acceptance, 7, 300.0, run)


def test_criterion_08_figures(acceptance):
    def run():
        rep = figure_report(ExampleParams(2, 6, 1))
        names = ["oval.present", "oval.grows_then_shrinks", "t*.oval_absent", "t*.singular_point"]
        d = rep["oval.grows_then_shrinks"].witness["diameters"]
        return all(rep[n].passed for n in names), "diameters " + ", ".join(f"{x:.3f}" for x in d)
    _judge(acceptance, 8, 30.0, run)


def test_criterion_09_boundary_limit(acceptance):
    def run():
        rep = boundary_limit_check(2, DEFAULT_W, DEFAULT_T, tol=1e-3)
        bad = [c.name for c in rep.checks if not c.passed]
        worst = max(c.witness["errors"][-1] for c in rep.checks if c.name.startswith("limit.S"))
        return not bad, f"failed: {bad}; max |S| at t=1e-4 = {worst:.2e}" if bad else "all limits within 1e-3"
    _judge(acceptance, 9, 10.0, run)


def test_criterion_10_property_suites(acceptance):
    def run():
        suites = [test_properties.test_ring_axioms, test_properties.test_substitution_is_homomorphism,
                  test_properties.test_leibniz_rule, test_properties.test_groebner_buchberger_criterion,
                  test_properties.test_elimination_purity]
        for suite in suites:
            suite()
        return True, f"{len(suites)} suites x 200 derandomized cases"
    _judge(acceptance, 10, 60.0, run)
