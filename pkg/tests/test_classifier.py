import pytest

from smallres.classifier import (
    FamilySyntaxError,
    InadmissibleFamily,
    OneParamFamily,
    Q_type,
    Qseries_type,
    T_type,
    arnold_normal_form,
    blowup_strict_transform,
    check_admissible,
    classification_report,
    classify,
    cusp_family,
    laufer_germ,
    tseries_family,
    strict_transform_milnor,
)
from smallres.groebner import jacobian_algebra_dim


@pytest.mark.parametrize("k", [1, 2, 3])
def test_tseries_family(k):
    cl = classify(tseries_family(k))
    assert cl.type.name == f"T(3,3,{2 * k + 2})"
    rep = classification_report(tseries_family(k))
    assert rep.passed and rep["milnor_oracle"].witness["mu_total_space"] == 2 * k + 7


@pytest.mark.parametrize("q", [1, 2, 3])
def test_cusp_families(q):
    rep = classification_report(cusp_family(q))
    assert classify(cusp_family(q)).type.name == f"Q({6 * q + 5})"
    assert rep.passed, [(c.name, c.witness) for c in rep.failures()]


@pytest.mark.parametrize("q, rho, name", [(2, 1, "Q(2,1)"), (3, 1, "Q(2,3)"), (3, 2, "Q(3,1)"), (4, 1, "Q(2,5)")])
def test_q_series_min_rule(q, rho, name):
    fam = cusp_family(q, rho)
    assert classify(fam).type.name == name
    assert classification_report(fam).passed


def test_parse_and_errors():
    fam = OneParamFamily.parse("b1=-2t,b2=0,b4=t,g3=i*t^2")
    assert classify(fam).type.name == "T(3,3,6)"
    with pytest.raises(FamilySyntaxError):
        OneParamFamily.parse("b1=-2t,b2=0,b4=t")
    with pytest.raises(FamilySyntaxError):
        OneParamFamily.parse("b1=-2t,b2=0,b4=t,g3=t,q=1")
    with pytest.raises(InadmissibleFamily):
        OneParamFamily.parse("b1=1-2t,b2=0,b4=t,g3=t")


def test_inadmissible_g3_zero():
    with pytest.raises(InadmissibleFamily):
        check_admissible(OneParamFamily.parse("b1=-2t,b2=0,b4=t,g3=0"))


def test_normal_form_milnor_numbers():
    assert jacobian_algebra_dim(arnold_normal_form(T_type(4))) == 9
    assert jacobian_algebra_dim(arnold_normal_form(Q_type(11))) == 11
    assert jacobian_algebra_dim(arnold_normal_form(Qseries_type(2, 1))) == 15


@pytest.mark.parametrize("q, mu", [(1, 11), (2, 17)])
def test_laufer_germ_milnor(q, mu):
    assert jacobian_algebra_dim(laufer_germ(q)) == mu


@pytest.mark.parametrize("k, mu", [(2, 2), (3, 4)])
def test_strict_transform_is_A(k, mu):
    fam = tseries_family(k)
    assert all(blowup_strict_transform(fam).checks.values())
    assert strict_transform_milnor(fam) == mu
