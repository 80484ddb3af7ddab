import pytest

from smallres.resolution import (
    PAGODA_RING,
    PagodaForm,
    chart,
    exceptional_fiber,
    is_conic_reducible,
    minor_relations,
    pagoda_coordinate_change,
    preseq,
    verify_chart_smoothness,
    verify_charts,
    verify_exceptional_fibers,
    verify_original_chart,
)


def test_reid_relation():
    pf = PagodaForm.standard()
    R = PAGODA_RING
    m = pf.minors()
    S, P, Q, Rr = (m[k] for k in ("S", "P", "Q", "R"))
    assert S ** 2 - P * Q + R("a") * Rr ** 2 == 0


@pytest.mark.parametrize("fn", [pagoda_coordinate_change, minor_relations, verify_charts,
                                verify_original_chart, verify_exceptional_fibers])
def test_reports_pass(fn):
    rep = fn()
    assert rep.passed, [(c.name, c.witness) for c in rep.failures()]


def test_syzygies_vanish():
    rep = minor_relations()
    for n in range(1, 5):
        assert rep[f"syzygy{n}"].passed


def test_unknown_chart():
    with pytest.raises(ValueError):
        chart("Q=1")


def test_preseq_has_expected_variables():
    assert set(preseq().variables()) <= {"S", "P", "y", "b1", "b2", "g3", "b4"}


def test_smoothness_and_negative_control():
    rep = verify_chart_smoothness()
    assert rep["family.k=1"].passed and rep["family.k=2"].passed and rep["family.k=3"].passed
    assert rep["negative_control"].passed        # the control is recorded as "not smooth"
    assert rep.passed


def test_conic_reducibility():
    # S^2 + P^2 - 1 is a smooth conic; b = (-2, 1, 1) gives a line pair
    assert not is_conic_reducible({"b1": 0, "b2": 0, "b4": -1})
    assert is_conic_reducible({"b1": -2, "b2": 1, "b4": 1})
    assert exceptional_fiber("g3=0")
    with pytest.raises(ValueError):
        exceptional_fiber("nowhere")
