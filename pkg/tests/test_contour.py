import math

import numpy as np
from hypothesis import given, settings, strategies as st

from smallres.algebra import Ring
from smallres.contour import contour, critical_points, numeric, sample, segments, to_svg, Layer
from smallres.example import FIGURE_T, ExampleParams, figure_report, render_curve_family

YZ = Ring.of("y", "z")


def test_circle_control():
    lines = contour(numeric(YZ.parse("y^2 + z^2 - 1"), ("y", "z")), (-2, 2, -2, 2), 64)
    assert len(lines) == 1 and lines[0].closed
    r = np.hypot(lines[0].points[:, 0], lines[0].points[:, 1])
    assert np.abs(r - 1).max() < 0.01
    assert lines[0].encloses((0, 0)) and not lines[0].encloses((1.5, 0))


def test_empty_contour():
    assert contour(numeric(YZ.parse("y^2 + z^2 + 1"), ("y", "z")), (-1, 1, -1, 1), 32) == []


@settings(max_examples=200)
@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 4))
def test_sign_consistency(a, b, c, r):
    f = numeric(YZ.parse(f"y^2 - {r}*z^2 + {a}*y*z + {b}*y + {c}"), ("y", "z"))
    xs, ys, V = sample(f, (-2, 2, -2, 2), 33)
    P = V >= 0
    for e0, e1 in segments(xs, ys, V):
        for kind, i, j in (e0, e1):
            other = P[i, j + 1] if kind == "h" else P[i + 1, j]
            assert P[i, j] != other


def test_consecutive_points_within_a_cell():
    p = ExampleParams(2, 6, 1)
    fr = render_curve_family(p, [2 / 3], (-2, 2, -2, 2), 200, with_f=False)[0]
    cell = 4 / 200
    for pl in fr.h:
        steps = np.hypot(*np.diff(pl.points, axis=0).T)
        assert steps.max() <= math.sqrt(2) * cell + 1e-12


def test_t_two_thirds_oval_and_branches():
    fr = render_curve_family(ExampleParams(2, 6, 1), [2 / 3], resolution=400)[0]
    assert len(fr.ovals) == 1 and len(fr.branches) == 3


def test_isolated_point_at_t_one():
    p = ExampleParams(2, 6, 1)
    fr = render_curve_family(p, [1.0], resolution=200)[0]
    assert not fr.ovals
    near = [c for c in fr.singular if math.hypot(*c.point) < 1e-8]
    assert near and near[0].kind == "isolated"


def test_node_classification():
    cps = critical_points(YZ.parse("y^2 - z^2"), ("y", "z"), {}, (-1, 1, -1, 1), 20)
    assert len(cps) == 1 and cps[0].kind == "node"


def test_svg_deterministic(tmp_path):
    p = ExampleParams(2, 6, 1)
    a = figure_report(p, FIGURE_T[:1], resolution=100, out_dir=tmp_path / "a")
    b = figure_report(p, FIGURE_T[:1], resolution=100, out_dir=tmp_path / "b")
    sa = (tmp_path / "a" / "curve_k2_m6_0.svg").read_text()
    assert sa == (tmp_path / "b" / "curve_k2_m6_0.svg").read_text()
    assert sa.startswith("<svg") and "<polygon" in sa and "<polyline" in sa
    assert a.passed and b.passed
    assert to_svg([Layer([])], (-1, 1, -1, 1)).count("<line") == 2
