"""Hypothesis strategies for small exact polynomials."""

from hypothesis import strategies as st

from smallres.algebra import Poly, Ring, gauss

XYZ = Ring.of("x", "y", "z")

rationals = st.builds(lambda a, b: gauss(a) / b, st.integers(-9, 9), st.integers(1, 5))
scalars = st.one_of(rationals, st.builds(gauss, rationals, rationals))


def monomials(nvars: int, max_deg: int):
    return st.tuples(*[st.integers(0, max_deg) for _ in range(nvars)])


def polys(ring: Ring = XYZ, max_terms: int = 4, max_deg: int = 3, coeffs=scalars):
    return st.dictionaries(monomials(ring.nvars, max_deg), coeffs, max_size=max_terms).map(
        lambda d: Poly(ring, d))


def real_polys(ring: Ring = XYZ, max_terms: int = 3, max_deg: int = 2):
    ints = st.integers(-5, 5).map(gauss)
    return polys(ring, max_terms, max_deg, ints)
