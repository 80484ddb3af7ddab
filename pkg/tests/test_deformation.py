import sympy

from smallres.algebra import poly_prod
from smallres.deformation import (
    HYPERPLANES,
    PARAM_RING,
    BaseChange,
    RootSystemD4,
    base_change_identity,
    discriminant_components,
    family_f,
    quartic_discriminant,
    swapped_components,
    verify_discriminant,
    verify_w0_invariance,
    versal_d4,
)

from test_algebra import to_sympy


def test_versal_and_family_texts():
    assert str(versal_d4()).count("s4") == 1
    F = family_f()
    assert F.evaluate({v: 0 for v in F.ring.names}) == 0


def test_base_change_identity_report():
    rep = base_change_identity()
    assert rep.passed, rep.failures()


def test_reflections_are_involutions():
    rs = RootSystemD4()
    for i in range(1, 5):
        M = rs.reflection(i)
        sq = [[sum(M[r][k] * M[k][c] for k in range(4)) for c in range(4)] for r in range(4)]
        assert sq == [[int(r == c) for c in range(4)] for r in range(4)]
    assert len(rs.positive_roots()) == 12


def test_w0_invariance_identities():
    rep = verify_w0_invariance()
    fixed = [c for c in rep.checks if ".fixed_by." in c.name]
    assert len(fixed) == 28 and all(c.passed for c in fixed)


def test_quartic_discriminant_matches_sympy():
    # independent oracle: sympy's discriminant of the same quartic in z
    z, b1, b2, g3, b4 = sympy.symbols("z b1 b2 g3 b4")
    c = -(z ** 2 + z * b1 + b2 ** 2) * g3 ** 2 - (z + b1) * (z - b4) ** 2
    quartic = sympy.expand(b2 ** 2 * (z - b4) ** 2 - z * c)
    assert sympy.expand(to_sympy(quartic_discriminant()) - sympy.discriminant(quartic, z)) == 0
    comps = discriminant_components()
    prod = poly_prod([comps[0], comps[1], comps[2], comps[3] ** 2, comps[4] ** 2], PARAM_RING)
    ratio = sympy.cancel(to_sympy(quartic_discriminant()) / to_sympy(prod))
    assert ratio.is_number and ratio != 0


def test_components_and_labelling():
    comps = [str(c) for c in discriminant_components()]
    assert "b1 - 2*b2" in comps and "b1 + 2*b2" in comps and "g3" in comps
    assert [str(c) for c in swapped_components()] != comps


def test_hyperplanes_cover_twelve_roots():
    assert len(HYPERPLANES) == 12


def test_invariants_in_alpha():
    images = BaseChange.standard().images_in_alpha()
    assert set(images) == {"t2", "t4", "t6", "s4"}
    swap = RootSystemD4().action(2)
    for name, img in images.items():
        assert img.subs(swap) == img, name


def test_eq3_vanishes_on_a1_plus_a3():
    from smallres.deformation import ALPHA_RING, _hyperplane_params

    sub, _ = HYPERPLANES["a1+a3"]
    params = _hyperplane_params(sub)
    hits = [str(c) for c in discriminant_components() if c.subs(params, ALPHA_RING).is_zero()]
    assert hits == [str(discriminant_components()[4])]


def test_discriminant_report():
    rep = verify_discriminant(seed=0)
    assert rep.passed, [c.name for c in rep.failures()]
    assert rep["labelling"].passed
    assert rep["radical.product_in_E0"].passed and rep["radical.E0_in_product"].passed
