"""Sparse multivariate polynomials over Q(i).

A :class:`Poly` is a ring (ordered tuple of variable names) plus a map from
exponent tuples to nonzero coefficients.  Values are immutable; every
operation returns a new polynomial in canonical form, so equality of two
polynomials is equality of their term maps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .scalars import GaussRational, Scalar, gauss, is_scalar

__all__ = ["Ring", "Poly", "RingMismatch", "MAX_EXPONENT"]

Monomial = Tuple[int, ...]

# exponents stay tiny in this setting; anything past this is a bug upstream
MAX_EXPONENT = 1 << 20


class RingMismatch(ValueError):
    """Raised when two operands live in different polynomial rings."""


@dataclass(frozen=True)
class Ring:
    names: Tuple[str, ...]
    _index: Dict[str, int] = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        names = tuple(self.names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if "i" in names:
            raise ValueError("'i' is reserved for the imaginary unit")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", {n: k for k, n in enumerate(names)})

    @classmethod
    def of(cls, *names: str) -> "Ring":
        if len(names) == 1 and not isinstance(names[0], str):
            names = tuple(names[0])
        return cls(tuple(names))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} in ring {self.names}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def gens(self) -> Tuple["Poly", ...]:
        return tuple(Poly.var(self, n) for n in self.names)

    def __call__(self, name: str) -> "Poly":
        return Poly.var(self, name)

    def extend(self, *names: str) -> "Ring":
        extra = [n for n in names if n not in self._index]
        return Ring(self.names + tuple(extra))

    def without(self, *names: str) -> "Ring":
        return Ring(tuple(n for n in self.names if n not in names))

    def parse(self, text: str) -> "Poly":
        from .parse import parse_poly

        return parse_poly(text, self)

    def __repr__(self):
        return f"Ring{self.names}"


def _coerce_scalar(c) -> Scalar:
    if not is_scalar(c):
        raise TypeError(f"not an exact scalar: {c!r}")
    return gauss(c)


class Poly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Scalar] | None = None, *, _trusted=False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            n = ring.nvars
            clean: Dict[Monomial, Scalar] = {}
            for mon, c in (terms or {}).items():
                mon = tuple(mon)
                if len(mon) != n:
                    raise ValueError(f"exponent vector {mon} does not match ring of {n} variables")
                if any(e < 0 or e > MAX_EXPONENT for e in mon):
                    raise OverflowError(f"exponent out of range in {mon}")
                c = _coerce_scalar(c)
                if c:
                    clean[mon] = clean.get(mon, 0) + c
                    if not clean[mon]:
                        del clean[mon]
            self.terms = clean
        self._hash = None

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, ring: Ring) -> "Poly":
        return cls(ring, {}, _trusted=True)

    @classmethod
    def const(cls, ring: Ring, c) -> "Poly":
        c = _coerce_scalar(c)
        if not c:
            return cls.zero(ring)
        return cls(ring, {(0,) * ring.nvars: c}, _trusted=True)

    @classmethod
    def var(cls, ring: Ring, name: str) -> "Poly":
        k = ring.index(name)
        mon = tuple(1 if j == k else 0 for j in range(ring.nvars))
        return cls(ring, {mon: gauss(1)}, _trusted=True)

    @classmethod
    def monomial(cls, ring: Ring, mon: Monomial, c=1) -> "Poly":
        return cls(ring, {tuple(mon): c})

    # basic queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coefficient(self) -> Scalar:
        return self.terms.get((0,) * self.ring.nvars, gauss(0))

    def coefficient(self, mon: Monomial) -> Scalar:
        return self.terms.get(tuple(mon), gauss(0))

    def variables(self) -> Tuple[str, ...]:
        """Variables that actually occur, in ring order."""
        used = [False] * self.ring.nvars
        for mon in self.terms:
            for k, e in enumerate(mon):
                if e:
                    used[k] = True
        return tuple(n for n, u in zip(self.ring.names, used) if u)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree(self, var: str) -> int:
        k = self.ring.index(var)
        if not self.terms:
            return -1
        return max(m[k] for m in self.terms)

    def order_in(self, var: str):
        """Least exponent of ``var`` over all terms; ``math.inf`` for zero."""
        k = self.ring.index(var)
        if not self.terms:
            return math.inf
        return min(m[k] for m in self.terms)

    def order(self):
        """Least total degree of a term (order at the origin)."""
        if not self.terms:
            return math.inf
        return min(sum(m) for m in self.terms)

    def is_real(self) -> bool:
        return not any(isinstance(c, GaussRational) for c in self.terms.values())

    # arithmetic -----------------------------------------------------------

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring == self.ring:
                return other
            if other.is_constant():
                return Poly.const(self.ring, other.constant_coefficient())
            if self.is_constant():
                # caller swaps roles; signalled by returning None
                return None
            raise RingMismatch(f"ring mismatch: {self.ring.names} vs {other.ring.names}")
        if is_scalar(other):
            return Poly.const(self.ring, other)
        return NotImplemented

    def _binary(self, other):
        o = self._lift(other)
        if o is None:
            return Poly.const(other.ring, self.constant_coefficient()), other
        if o is NotImplemented:
            return None, None
        return self, o

    def __add__(self, other):
        a, b = self._binary(other)
        if a is None:
            return NotImplemented
        terms = dict(a.terms)
        for mon, c in b.terms.items():
            s = terms.get(mon)
            if s is None:
                terms[mon] = c
            else:
                s = s + c
                if s:
                    terms[mon] = s
                else:
                    del terms[mon]
        return Poly(a.ring, terms, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        a, b = self._binary(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_scalar(other):
            c = gauss(other)
            if not c:
                return Poly.zero(self.ring)
            return Poly(self.ring, {m: v * c for m, v in self.terms.items()}, _trusted=True)
        a, b = self._binary(other)
        if a is None:
            return NotImplemented
        if len(a.terms) < len(b.terms):
            a, b = b, a
        terms: Dict[Monomial, Scalar] = {}
        for mb, cb in b.terms.items():
            for ma, ca in a.terms.items():
                mon = tuple(x + y for x, y in zip(ma, mb))
                c = ca * cb
                s = terms.get(mon)
                if s is None:
                    terms[mon] = c
                else:
                    terms[mon] = s + c
        terms = {m: c for m, c in terms.items() if c}
        return Poly(a.ring, terms, _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if is_scalar(other):
            c = gauss(other)
            if not c:
                raise ZeroDivisionError("division of a polynomial by zero")
            inv = gauss(1) / c
            return self * inv
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = Poly.const(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exact_div(self, divisor: "Poly") -> "Poly | None":
        """Quotient ``self / divisor`` if the division is exact, else ``None``."""
        a, d = self._binary(divisor)
        if a is None:
            raise TypeError(f"cannot divide by {divisor!r}")
        if d.is_zero():
            raise ZeroDivisionError("exact division by the zero polynomial")
        if a.is_zero():
            return Poly.zero(a.ring)
        # single-divisor division under lex; remainder zero iff divisible
        lead = max(d.terms)
        lc_inv = gauss(1) / d.terms[lead]
        rem = dict(a.terms)
        quot: Dict[Monomial, Scalar] = {}
        while rem:
            m = max(rem)
            if any(x < y for x, y in zip(m, lead)):
                return None
            q = tuple(x - y for x, y in zip(m, lead))
            c = rem[m] * lc_inv
            quot[q] = c
            for md, cd in d.terms.items():
                mon = tuple(x + y for x, y in zip(md, q))
                s = rem.get(mon, 0) - c * cd
                if s:
                    rem[mon] = s
                else:
                    rem.pop(mon, None)
        return Poly(a.ring, quot, _trusted=True)

    def monic(self) -> "Poly":
        """Scale so the lex-leading coefficient is 1."""
        if not self.terms:
            return self
        return self / self.terms[max(self.terms)]

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                if self.is_constant() and other.is_constant():
                    return self.constant_coefficient() == other.constant_coefficient()
                return False
            return self.terms == other.terms
        if is_scalar(other):
            return self.is_constant() and self.constant_coefficient() == gauss(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    # calculus and substitution ---------------------------------------------

    def diff(self, var: str) -> "Poly":
        k = self.ring.index(var)
        terms = {}
        for mon, c in self.terms.items():
            e = mon[k]
            if e:
                terms[mon[:k] + (e - 1,) + mon[k + 1:]] = c * e
        return Poly(self.ring, terms, _trusted=True)

    def partials(self, vars: Sequence[str] | None = None) -> list["Poly"]:
        names = self.ring.names if vars is None else vars
        return [self.diff(v) for v in names]

    def to_ring(self, ring: Ring) -> "Poly":
        """Embed into ``ring``; every occurring variable must exist there."""
        if ring == self.ring:
            return self
        pos = []
        for k, name in enumerate(self.ring.names):
            pos.append(ring.index(name) if name in ring else None)
        terms = {}
        n = ring.nvars
        for mon, c in self.terms.items():
            new = [0] * n
            for k, e in enumerate(mon):
                if e:
                    if pos[k] is None:
                        raise RingMismatch(f"variable {self.ring.names[k]!r} missing from {ring.names}")
                    new[pos[k]] = e
            terms[tuple(new)] = c
        return Poly(ring, terms, _trusted=True)

    def subs(self, assignment: Mapping[str, object], ring: Ring | None = None) -> "Poly":
        """Ring homomorphism sending each assigned variable to its image.

        Images may be polynomials (all in one common ring) or scalars.
        Unassigned variables are kept and must exist in the target ring.
        """
        images = {}
        target = ring
        for name, img in assignment.items():
            self.ring.index(name)
            if isinstance(img, Poly):
                if target is None:
                    target = img.ring
                elif img.ring != target and not img.is_constant():
                    raise RingMismatch(f"substitution images live in different rings: {target.names} vs {img.ring.names}")
            images[name] = img
        if target is None:
            target = self.ring
        imgs = []
        for name in self.ring.names:
            if name not in images:
                imgs.append(Poly.var(target, name) if name in target else None)
                continue
            img = images[name]
            if not isinstance(img, Poly):
                img = Poly.const(target, img)
            elif img.ring != target:
                img = Poly.const(target, img.constant_coefficient())
            imgs.append(img)
        cache: Dict[Tuple[int, int], Poly] = {}

        def power(k: int, e: int) -> Poly:
            key = (k, e)
            if key not in cache:
                base = imgs[k]
                if base is None:
                    raise RingMismatch(f"variable {self.ring.names[k]!r} has no image in {target.names}")
                cache[key] = base if e == 1 else power(k, e - 1) * base
            return cache[key]

        acc: Dict[Monomial, Scalar] = {}
        for mon, c in self.terms.items():
            term = Poly.const(target, c)
            for k, e in enumerate(mon):
                if e:
                    term = term * power(k, e)
            for m2, c2 in term.terms.items():
                acc[m2] = acc.get(m2, 0) + c2
        return Poly(target, {m: c for m, c in acc.items() if c}, _trusted=True)

    def evaluate(self, point: Mapping[str, object]) -> Scalar:
        """Exact value at a point given for every occurring variable."""
        vals = []
        for name in self.ring.names:
            vals.append(gauss(point[name]) if name in point else None)
        total = gauss(0)
        for mon, c in self.terms.items():
            v = c
            for k, e in enumerate(mon):
                if e:
                    if vals[k] is None:
                        raise KeyError(f"no value for variable {self.ring.names[k]!r}")
                    v = v * vals[k] ** e
            total = total + v
        return total

    def evalf(self, point: Mapping[str, complex]) -> complex:
        """Floating-point value (complex) at a numeric point."""
        vals = [point.get(name) for name in self.ring.names]
        total = 0j
        for mon, c in self.terms.items():
            v = complex(c) if isinstance(c, GaussRational) else float(c)
            for k, e in enumerate(mon):
                if e:
                    v *= vals[k] ** e
            total += v
        return total

    def coefficients_in(self, var: str) -> Dict[int, "Poly"]:
        """Write ``self = sum_j c_j * var**j``; returns ``{j: c_j}`` (``c_j`` free of var)."""
        k = self.ring.index(var)
        out: Dict[int, Dict[Monomial, Scalar]] = {}
        for mon, c in self.terms.items():
            e = mon[k]
            out.setdefault(e, {})[mon[:k] + (0,) + mon[k + 1:]] = c
        return {e: Poly(self.ring, t, _trusted=True) for e, t in sorted(out.items())}

    def truncate(self, var: str, degree: int) -> "Poly":
        """Drop every term whose ``var``-exponent exceeds ``degree``."""
        k = self.ring.index(var)
        return Poly(self.ring, {m: c for m, c in self.terms.items() if m[k] <= degree}, _trusted=True)

    def conjugate(self) -> "Poly":
        return Poly(self.ring, {m: (c.conjugate() if isinstance(c, GaussRational) else c)
                                for m, c in self.terms.items()}, _trusted=True)

    # text -------------------------------------------------------------------

    def sorted_terms(self) -> list[Tuple[Monomial, Scalar]]:
        """Terms in canonical print order: total degree descending, then lex descending."""
        return sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), mc[0]), reverse=True)

    def __str__(self):
        from .parse import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"Poly({str(self)!r}, ring={self.ring.names})"


def poly_sum(polys: Iterable[Poly], ring: Ring) -> Poly:
    acc = Poly.zero(ring)
    for p in polys:
        acc = acc + p
    return acc


def poly_prod(polys: Iterable[Poly], ring: Ring) -> Poly:
    acc = Poly.const(ring, 1)
    for p in polys:
        acc = acc * p
    return acc
