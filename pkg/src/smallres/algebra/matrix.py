from __future__ import annotations

from itertools import combinations, permutations
from typing import List, Sequence, Tuple

from .poly import Poly, Ring, RingMismatch


class PolyMatrix:
    """Small dense matrix of polynomials sharing one ring (row-major)."""

    __slots__ = ("rows", "cols", "entries", "ring")

    def __init__(self, rows: int, cols: int, entries: Sequence[Poly]):
        if rows < 1 or cols < 1:
            raise ValueError("matrix dimensions must be positive")
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        ring = entries[0].ring
        for e in entries:
            if e.ring != ring:
                raise RingMismatch("matrix entries must share one ring")
        self.rows, self.cols, self.entries, self.ring = rows, cols, entries, ring

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Poly]]) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        ring = next((e.ring for r in rows for e in r if isinstance(e, Poly)), None)
        flat = [e if isinstance(e, Poly) else Poly.const(ring, e) for r in rows for e in r]
        return cls(len(rows), ncols, flat)

    @classmethod
    def parse(cls, ring: Ring, rows: Sequence[Sequence[str]]) -> "PolyMatrix":
        return cls.from_rows([[ring.parse(s) for s in r] for r in rows])

    def __getitem__(self, ij: Tuple[int, int]) -> Poly:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> List[Poly]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def det(self) -> Poly:
        """Determinant by cofactor expansion; :meth:`bareiss_det` is faster beyond 4x4."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 1:
            return self.entries[0]
        if n == 2:
            return self[0, 0] * self[1, 1] - self[0, 1] * self[1, 0]
        # cofactor expansion along the first row; matrices here are at most 4x4
        total = Poly.zero(self.ring)
        for j in range(n):
            if self[0, j].is_zero():
                continue
            minor = self.submatrix(range(1, n), [c for c in range(n) if c != j]).det()
            term = self[0, j] * minor
            total = total + term if j % 2 == 0 else total - term
        return total

    def bareiss_det(self) -> Poly:
        """Fraction-free Gaussian elimination; every division is exact."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = [self.row(i) for i in range(n)]
        sign = 1
        prev = Poly.const(self.ring, 1)
        for k in range(n - 1):
            if a[k][k].is_zero():
                swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
                if swap is None:
                    return Poly.zero(self.ring)
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                    q = num.exact_div(prev)
                    if q is None:  # pragma: no cover - Sylvester identity guarantees exactness
                        raise ArithmeticError("inexact Bareiss step")
                    a[i][j] = q
            prev = a[k][k]
        return a[n - 1][n - 1] * sign

    def minors(self, size: int) -> List[Poly]:
        """All ``size x size`` minors: row subsets lexicographic, then column subsets lexicographic."""
        if size > min(self.rows, self.cols):
            raise ValueError(f"no {size}x{size} minors in a {self.rows}x{self.cols} matrix")
        return [self.submatrix(rs, cs).det()
                for rs in combinations(range(self.rows), size)
                for cs in combinations(range(self.cols), size)]

    def subs(self, assignment, ring=None) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, [e.subs(assignment, ring) for e in self.entries])

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"PolyMatrix[{body}]"


def minors2x2(m: PolyMatrix) -> List[Poly]:
    """2x2 minors in lexicographic (row pair, column pair) order."""
    if m.rows < 2 or m.cols < 2:
        raise ValueError(f"matrix {m.rows}x{m.cols} has no 2x2 minors")
    return m.minors(2)


def jacobian(polys: Sequence[Poly], vars: Sequence[str]) -> PolyMatrix:
    return PolyMatrix(len(polys), len(vars), [p.diff(v) for p in polys for v in vars])


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def leibniz_det(m: PolyMatrix) -> Poly:
    """Determinant by the permutation expansion; an independent check on :meth:`PolyMatrix.det`."""
    n = m.rows
    total = Poly.zero(m.ring)
    for perm in permutations(range(n)):
        term = Poly.const(m.ring, permutation_sign(perm))
        for i, j in enumerate(perm):
            term = term * m[i, j]
        total = total + term
    return total


def sylvester(p: Poly, q: Poly, var: str) -> PolyMatrix:
    """Sylvester matrix of ``p`` and ``q`` viewed as univariate polynomials in ``var``."""
    m, n = p.degree(var), q.degree(var)
    if m < 1 or n < 1:
        raise ValueError("Sylvester matrix needs positive degrees")
    pc, qc = p.coefficients_in(var), q.coefficients_in(var)
    zero = Poly.zero(p.ring)
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + [pc.get(m - j, zero) for j in range(m + 1)] + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + [qc.get(n - j, zero) for j in range(n + 1)] + [zero] * (size - n - 1 - i))
    return PolyMatrix.from_rows(rows)


def resultant(p: Poly, q: Poly, var: str) -> Poly:
    return sylvester(p, q, var).bareiss_det()


def discriminant(p: Poly, var: str) -> Poly:
    """``(-1)^(n(n-1)/2) Res(p, p') / lc(p)``, with ``n`` the degree of ``p`` in ``var``."""
    n = p.degree(var)
    res = resultant(p, p.diff(var), var)
    lc = p.coefficients_in(var)[n]
    out = res.exact_div(lc)
    if out is None:  # pragma: no cover
        raise ArithmeticError("resultant not divisible by the leading coefficient")
    return -out if (n * (n - 1) // 2) % 2 else out
