"""Marching-squares contours of real plane curves and SVG output.

A curve is given as a real :class:`Poly` in two plane variables (other
variables fixed to floats).  The grid has ``resolution`` cells per axis; a node
with value >= 0 counts as positive.  Saddle cells are split by the sign of the
cell-centre average.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .algebra import Poly

Window = Tuple[float, float, float, float]      # (xmin, xmax, ymin, ymax)
Func = Callable[[np.ndarray, np.ndarray], np.ndarray]
EdgeId = Tuple[str, int, int]


@dataclass
class Polyline:
    points: np.ndarray
    closed: bool

    def __len__(self):
        return len(self.points)

    def diameter(self) -> float:
        pts = self.points
        if len(pts) < 2:
            return 0.0
        d = pts[:, None, :] - pts[None, :, :]
        return float(np.sqrt((d ** 2).sum(-1)).max())

    def encloses(self, point: Tuple[float, float]) -> bool:
        """Even-odd ray casting; only meaningful for closed polylines."""
        if not self.closed:
            return False
        px, py = point
        x, y = self.points[:, 0], self.points[:, 1]
        x2, y2 = np.roll(x, -1), np.roll(y, -1)
        cross = (y > py) != (y2 > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            xi = x + (py - y) * (x2 - x) / (y2 - y)
        return bool(np.count_nonzero(cross & (px < xi)) % 2)


@dataclass
class CriticalPoint:
    point: Tuple[float, float]
    value: float
    gradient: float
    hessian: Tuple[Tuple[float, float], Tuple[float, float]]

    @property
    def kind(self) -> str:
        (a, b), (_, c) = self.hessian
        det = a * c - b * b
        scale = max(abs(a), abs(c), abs(b), 1e-300)
        if det > 1e-9 * scale * scale:
            return "isolated"
        if det < -1e-9 * scale * scale:
            return "node"
        return "degenerate"

    def to_dict(self) -> dict:
        return {"point": list(self.point), "value": self.value, "gradient": self.gradient,
                "hessian": [list(r) for r in self.hessian], "kind": self.kind}


# evaluation -----------------------------------------------------------------------

def numeric(p: Poly, plane: Tuple[str, str], fixed: Mapping[str, float] | None = None) -> Func:
    """Vectorised evaluator of a real polynomial on the plane variables."""
    fixed = dict(fixed or {})
    a, b = plane
    ia, ib = p.ring.index(a), p.ring.index(b)
    others = [(p.ring.index(v), float(val)) for v, val in fixed.items() if v in p.ring]
    merged: Dict[Tuple[int, int], float] = {}
    for mon, c in p.sorted_terms():
        cz = complex(c)
        if cz.imag:
            raise ValueError(f"curve has a non-real coefficient: {c}")
        coef = cz.real
        for i, val in others:
            coef *= val ** mon[i]
        extra = [n for i, n in enumerate(mon) if n and i not in (ia, ib) and i not in dict(others)]
        if extra:
            raise ValueError("every variable outside the plane must be fixed")
        key = (mon[ia], mon[ib])
        merged[key] = merged.get(key, 0.0) + coef
    terms = [(c, ea, eb) for (ea, eb), c in sorted(merged.items()) if c != 0.0]

    def f(A, B):
        A = np.asarray(A, dtype=float)
        B = np.asarray(B, dtype=float)
        out = np.zeros(np.broadcast(A, B).shape)
        for c, ea, eb in terms:
            out = out + c * A ** ea * B ** eb
        return out

    return f


def sample(func: Func, window: Window, resolution: int):
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    xs = np.linspace(window[0], window[1], resolution + 1)
    ys = np.linspace(window[2], window[3], resolution + 1)
    X, Y = np.meshgrid(xs, ys)
    return xs, ys, func(X, Y)


# marching squares -------------------------------------------------------------------

def _edge_point(eid: EdgeId, xs, ys, V) -> Tuple[float, float]:
    kind, i, j = eid
    if kind == "h":
        v0, v1 = V[i, j], V[i, j + 1]
        s = v0 / (v0 - v1)
        return xs[j] + s * (xs[j + 1] - xs[j]), ys[i]
    v0, v1 = V[i, j], V[i + 1, j]
    s = v0 / (v0 - v1)
    return xs[j], ys[i] + s * (ys[i + 1] - ys[i])


def segments(xs, ys, V) -> List[Tuple[EdgeId, EdgeId]]:
    """Cell segments as pairs of crossed edges.  Edge ("h", i, j) joins nodes
    (i, j)-(i, j+1); edge ("v", i, j) joins (i, j)-(i+1, j)."""
    P = V >= 0
    a, b, c, d = P[:-1, :-1], P[:-1, 1:], P[1:, 1:], P[1:, :-1]
    mixed = ~((a == b) & (b == c) & (c == d))
    out = []
    for i, j in zip(*np.nonzero(mixed)):
        i, j = int(i), int(j)
        pa, pb, pc, pd = P[i, j], P[i, j + 1], P[i + 1, j + 1], P[i + 1, j]
        bottom, right, top, left = ("h", i, j), ("v", i, j + 1), ("h", i + 1, j), ("v", i, j)
        crossed = [e for e, (p, q) in ((bottom, (pa, pb)), (right, (pb, pc)),
                                       (top, (pd, pc)), (left, (pa, pd))) if p != q]
        if len(crossed) == 2:
            out.append((crossed[0], crossed[1]))
            continue
        centre = (V[i, j] + V[i, j + 1] + V[i + 1, j + 1] + V[i + 1, j]) / 4 >= 0
        if centre == pa:
            out += [(bottom, right), (top, left)]
        else:
            out += [(left, bottom), (right, top)]
    return out


def _chain(segs: Sequence[Tuple[EdgeId, EdgeId]]) -> List[Tuple[List[EdgeId], bool]]:
    adj: Dict[EdgeId, List[int]] = {}
    for n, (e0, e1) in enumerate(segs):
        adj.setdefault(e0, []).append(n)
        adj.setdefault(e1, []).append(n)
    used = [False] * len(segs)

    def walk(start: EdgeId, seg: int) -> List[EdgeId]:
        path, cur = [start], start
        while True:
            used[seg] = True
            e0, e1 = segs[seg]
            nxt = e1 if e0 == cur else e0
            path.append(nxt)
            cur = nxt
            nexts = [s for s in adj[cur] if not used[s]]
            if not nexts:
                return path
            seg = nexts[0]

    chains = []
    for eid in sorted(adj):
        if len(adj[eid]) == 1 and not used[adj[eid][0]]:
            chains.append((walk(eid, adj[eid][0]), False))
    for n in range(len(segs)):
        if not used[n]:
            path = walk(segs[n][0], n)
            closed = path[0] == path[-1]
            chains.append((path[:-1] if closed else path, closed))
    return chains


def marching_squares(xs, ys, V) -> List[Polyline]:
    out = []
    for path, closed in _chain(segments(xs, ys, V)):
        pts = np.array([_edge_point(e, xs, ys, V) for e in path], dtype=float)
        out.append(Polyline(pts, closed))
    return out


def contour(func: Func, window: Window, resolution: int) -> List[Polyline]:
    xs, ys, V = sample(func, window, resolution)
    return marching_squares(xs, ys, V)


def on_boundary(pt, window: Window, tol: float) -> bool:
    x, y = pt
    return (abs(x - window[0]) < tol or abs(x - window[1]) < tol
            or abs(y - window[2]) < tol or abs(y - window[3]) < tol)


# singular points of the curve ---------------------------------------------------------

def critical_points(p: Poly, plane: Tuple[str, str], fixed: Mapping[str, float], window: Window,
                    resolution: int, tol: float = 1e-10) -> List[CriticalPoint]:
    """Real points where the curve and its gradient vanish.

    Candidates are local minima of |grad|^2 + value^2 on the grid, refined by
    Newton's method on the gradient."""
    a, b = plane
    f = numeric(p, plane, fixed)
    ga, gb = (numeric(p.diff(v), plane, fixed) for v in plane)
    haa, hab, hbb = (numeric(p.diff(u).diff(v), plane, fixed) for u, v in ((a, a), (a, b), (b, b)))
    xs, ys, _ = sample(f, window, resolution)
    X, Y = np.meshgrid(xs, ys)
    G = ga(X, Y) ** 2 + gb(X, Y) ** 2 + f(X, Y) ** 2
    inner = G[1:-1, 1:-1]
    mins = np.ones_like(inner, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                mins &= inner <= G[1 + di:G.shape[0] - 1 + di, 1 + dj:G.shape[1] - 1 + dj]
    found: List[CriticalPoint] = []
    for i, j in zip(*np.nonzero(mins)):
        u, v = float(X[i + 1, j + 1]), float(Y[i + 1, j + 1])
        for _ in range(50):
            g = np.array([ga(u, v), gb(u, v)], dtype=float)
            H = np.array([[haa(u, v), hab(u, v)], [hab(u, v), hbb(u, v)]], dtype=float)
            if np.linalg.norm(g) < 1e-15:
                break
            try:
                step = np.linalg.solve(H, g)
            except np.linalg.LinAlgError:
                break
            u, v = u - step[0], v - step[1]
            if np.linalg.norm(step) < 1e-16:
                break
        gn = float(np.hypot(ga(u, v), gb(u, v)))
        val = float(f(u, v))
        if gn > tol or abs(val) > tol:
            continue
        if not (window[0] <= u <= window[1] and window[2] <= v <= window[3]):
            continue
        if any(np.hypot(u - c.point[0], v - c.point[1]) < 1e-8 for c in found):
            continue
        H = ((float(haa(u, v)), float(hab(u, v))), (float(hab(u, v)), float(hbb(u, v))))
        found.append(CriticalPoint((float(u), float(v)), val, gn, H))
    return sorted(found, key=lambda c: c.point)


# svg ------------------------------------------------------------------------------------

@dataclass
class Layer:
    polylines: List[Polyline]
    stroke: str = "#000000"
    width: float = 1.5
    dash: Optional[str] = None
    points: List[Tuple[float, float]] = field(default_factory=list)


def to_svg(layers: Sequence[Layer], window: Window, size: int = 480, title: str = "") -> str:
    """Deterministic SVG: first plane variable to the right, second upwards."""
    x0, x1, y0, y1 = window
    sx = size / (x1 - x0)
    sy = size / (y1 - y0)

    def px(pt) -> str:
        return f"{(pt[0] - x0) * sx:.2f},{(y1 - pt[1]) * sy:.2f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">']
    if title:
        out.append(f"<title>{title}</title>")
    out.append(f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>')
    if x0 < 0 < x1:
        out.append(f'<line x1="{-x0 * sx:.2f}" y1="0" x2="{-x0 * sx:.2f}" y2="{size}" stroke="#cccccc"/>')
    if y0 < 0 < y1:
        out.append(f'<line x1="0" y1="{y1 * sy:.2f}" x2="{size}" y2="{y1 * sy:.2f}" stroke="#cccccc"/>')
    for layer in layers:
        dash = f' stroke-dasharray="{layer.dash}"' if layer.dash else ""
        for pl in layer.polylines:
            tag = "polygon" if pl.closed else "polyline"
            pts = " ".join(px(p) for p in pl.points)
            out.append(f'<{tag} points="{pts}" fill="none" stroke="{layer.stroke}" '
                       f'stroke-width="{layer.width}"{dash}/>')
        for pt in layer.points:
            x, y = px(pt).split(",")
            out.append(f'<circle cx="{x}" cy="{y}" r="3" fill="{layer.stroke}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
