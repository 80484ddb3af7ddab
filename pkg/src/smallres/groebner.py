"""Buchberger-style Groebner bases and the ideal operations built on them.

The engine works on plain ``{exponent tuple: coefficient}`` dicts with monic
polynomials.  Pair selection is the normal strategy (smallest lcm first) with
the Gebauer-Moeller criteria.  Every computation carries a budget on the
number of S-pair reductions; running out raises :class:`BudgetExceeded`
instead of returning a truncated answer.

:func:`jacobian_algebra_dim` uses the same engine in a truncated algebra
``k[x]/m^N`` with a local degree ordering, which computes the Milnor number
of an isolated critical point at the origin.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from operator import add, le, sub
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra.matrix import jacobian
from .algebra.poly import Poly, Ring, RingMismatch
from .algebra.scalars import gauss

__all__ = [
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "Ideal",
    "IndeterminateDimension",
    "MonomialOrder",
    "buchberger_criterion_holds",
    "eliminate",
    "groebner_basis",
    "ideal_membership",
    "is_smooth_affine",
    "jacobian_algebra_dim",
    "radical_membership",
    "saturate",
    "singular_locus",
]

Monomial = Tuple[int, ...]

DEFAULT_BUDGET = 50_000


class BudgetExceeded(RuntimeError):
    """The pair-reduction budget ran out before the basis was complete."""

    def __init__(self, budget: int, basis_size: int, pending: int):
        super().__init__(f"Groebner budget of {budget} pair reductions exceeded "
                         f"({basis_size} basis elements, {pending} pairs pending)")
        self.budget = budget
        self.basis_size = basis_size
        self.pending = pending


class IndeterminateDimension(RuntimeError):
    """The local Jacobian algebra did not stabilise within the degree bound."""


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex``, ``block`` (grevlex inside each block) or ``local``.

    ``local`` is the negative degree reverse lexicographic order (lower
    degree is larger); it is only usable in truncated computations.
    """

    kind: str = "grevlex"
    blocks: Tuple[Tuple[str, ...], ...] = ()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block", "local"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block":
            seen = [v for b in self.blocks for v in b]
            if len(set(seen)) != len(seen):
                raise ValueError("block order groups must be disjoint")

    @classmethod
    def block(cls, *groups: Sequence[str]) -> "MonomialOrder":
        return cls("block", tuple(tuple(g) for g in groups))

    def check_ring(self, ring: Ring) -> None:
        if self.kind == "block":
            covered = [v for b in self.blocks for v in b]
            if sorted(covered) != sorted(ring.names):
                raise ValueError(f"block order {self.blocks} does not cover ring {ring.names}")

    def heap_key(self, ring: Ring) -> Callable[[Monomial], tuple]:
        """Key under which *smaller* means *larger* monomial (for ``heapq``)."""
        self.check_ring(ring)
        n = ring.nvars
        rev = tuple(range(n - 1, -1, -1))
        if self.kind == "grevlex":
            return lambda m: (-sum(m),) + tuple(m[k] for k in rev)
        if self.kind == "local":
            return lambda m: (sum(m),) + tuple(m[k] for k in rev)
        if self.kind == "lex":
            return lambda m: tuple(-e for e in m)
        groups = [tuple(ring.index(v) for v in reversed(b)) for b in self.blocks]

        def key(m):
            out = []
            for g in groups:
                out.append(-sum(m[k] for k in g))
                out.extend(m[k] for k in g)
            return tuple(out)

        return key

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.blocks:
            d["blocks"] = [list(b) for b in self.blocks]
        return d


GREVLEX = MonomialOrder("grevlex")


# ---------------------------------------------------------------------------
# the engine


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(map(le, a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(max, a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


class _Engine:
    def __init__(self, ring: Ring, order: MonomialOrder, budget: int, truncate: Optional[int] = None,
                 criteria: bool = True):
        self.ring = ring
        self.order = order
        self.budget = budget
        self.trunc = truncate
        self.criteria = criteria
        raw_key = order.heap_key(ring)
        cache: Dict[Monomial, tuple] = {}

        def key(m):
            k = cache.get(m)
            if k is None:
                k = cache[m] = raw_key(m)
            return k

        self.key = key
        self.polys: List[Dict[Monomial, object]] = []
        self.lms: List[Monomial] = []
        self.tails: List[List[Tuple[Monomial, object]]] = []
        self.active: List[int] = []
        self.reductions = 0

    # polynomial helpers ---------------------------------------------------

    def lead(self, f: Dict[Monomial, object]) -> Monomial:
        return min(f, key=self.key)

    def monic(self, f):
        lm = self.lead(f)
        lc = f[lm]
        if lc == 1:
            return f
        inv = gauss(1) / lc
        return {m: c * inv for m, c in f.items()}

    def trim(self, f):
        if self.trunc is None:
            return f
        n = self.trunc
        return {m: c for m, c in f.items() if sum(m) < n}

    def reduce(self, f, basis: Sequence[int], full: bool = True):
        """Normal form of ``f`` modulo the (monic) basis elements ``basis``."""
        key = self.key
        trunc = self.trunc
        lms = [(self.lms[i], self.tails[i]) for i in basis]
        p = dict(f)
        heap = [(key(m), m) for m in p]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = p.pop(m, None)
            if c is None:
                continue
            for lm, tail in lms:
                if _divides(lm, m):
                    break
            else:
                rem[m] = c
                if not full:
                    rem.update(p)
                    return rem
                continue
            q = tuple(map(sub, m, lm))
            for gm, gc in tail:
                nm = tuple(map(add, gm, q))
                if trunc is not None and sum(nm) >= trunc:
                    continue
                old = p.get(nm)
                if old is None:
                    p[nm] = -c * gc
                    heapq.heappush(heap, (key(nm), nm))
                else:
                    s = old - c * gc
                    if s:
                        p[nm] = s
                    else:
                        del p[nm]
        return rem

    def spoly(self, i: int, j: int):
        li, lj = self.lms[i], self.lms[j]
        lcm = _lcm(li, lj)
        qi = tuple(map(sub, lcm, li))
        qj = tuple(map(sub, lcm, lj))
        out: Dict[Monomial, object] = {}
        trunc = self.trunc
        for gm, gc in self.tails[i]:
            nm = tuple(map(add, gm, qi))
            if trunc is None or sum(nm) < trunc:
                out[nm] = out.get(nm, 0) + gc
        for gm, gc in self.tails[j]:
            nm = tuple(map(add, gm, qj))
            if trunc is None or sum(nm) < trunc:
                out[nm] = out.get(nm, 0) - gc
        return {m: c for m, c in out.items() if c}

    def _store(self, f) -> int:
        f = self.monic(f)
        lm = self.lead(f)
        self.polys.append(f)
        self.lms.append(lm)
        self.tails.append([(m, c) for m, c in f.items() if m != lm])
        return len(self.polys) - 1

    # main loop ------------------------------------------------------------

    def run(self, gens: Iterable[Dict[Monomial, object]]) -> List[int]:
        pairs: Dict[Tuple[int, int], Monomial] = {}
        heap: List[tuple] = []
        counter = itertools.count()

        def sel_key(lcm):
            return (sum(lcm), self.key(lcm))

        def add_poly(f):
            h = self._store(f)
            hl = self.lms[h]
            if not any(hl):
                self.active = [h]
                return True
            if self.criteria:
                cands = list(self.active)
                lcms = {g: _lcm(self.lms[g], hl) for g in cands}
                kept: List[int] = []
                for pos, g in enumerate(cands):
                    if _coprime(self.lms[g], hl):
                        kept.append(g)
                        continue
                    lg = lcms[g]
                    others = itertools.chain(cands[pos + 1:], kept)
                    if not any(_divides(lcms[o], lg) for o in others):
                        kept.append(g)
                new_pairs = [g for g in kept if not _coprime(self.lms[g], hl)]
                for (a, b), lab in list(pairs.items()):
                    if (_divides(hl, lab) and _lcm(self.lms[a], hl) != lab
                            and _lcm(self.lms[b], hl) != lab):
                        del pairs[(a, b)]
            else:
                new_pairs = list(self.active)
                lcms = {g: _lcm(self.lms[g], hl) for g in new_pairs}
            for g in new_pairs:
                pairs[(g, h)] = lcms[g]
                heapq.heappush(heap, (sel_key(lcms[g]), next(counter), g, h))
            if self.criteria:
                self.active = [g for g in self.active if not _divides(hl, self.lms[g])]
            self.active.append(h)
            return False

        start = []
        for f in gens:
            f = self.trim(f)
            if f:
                start.append(self.monic(f))
        start.sort(key=lambda f: self.key(self.lead(f)), reverse=True)
        for f in start:
            r = self.reduce(f, self.active)
            if r:
                if add_poly(r):
                    return self.active

        while heap:
            _, _, i, j = heapq.heappop(heap)
            if pairs.pop((i, j), None) is None:
                continue
            self.reductions += 1
            if self.reductions > self.budget:
                raise BudgetExceeded(self.budget, len(self.active), len(pairs))
            s = self.spoly(i, j)
            if not s:
                continue
            r = self.reduce(s, self.active)
            if r:
                if add_poly(r):
                    return self.active
        return self.active

    def reduced_basis(self) -> List[Dict[Monomial, object]]:
        active = list(self.active)
        # minimal: drop elements whose leading monomial is a multiple of another's
        minimal = []
        for i in active:
            if not any(j != i and _divides(self.lms[j], self.lms[i]) and
                       (self.lms[j] != self.lms[i] or j < i) for j in active):
                minimal.append(i)
        out = []
        for i in minimal:
            others = [j for j in minimal if j != i]
            tail = {m: c for m, c in self.tails[i]}
            red = self.reduce(tail, others) if tail else {}
            red[self.lms[i]] = gauss(1)
            out.append(red)
        out.sort(key=lambda f: self.key(self.lead(f)), reverse=True)
        return out


def _to_dicts(polys: Iterable[Poly], ring: Ring):
    out = []
    for p in polys:
        if p.ring != ring:
            if p.is_constant():
                p = Poly.const(ring, p.constant_coefficient())
            else:
                raise RingMismatch(f"generator in ring {p.ring.names}, ideal ring {ring.names}")
        if p.terms:
            out.append(dict(p.terms))
    return out


def _from_dict(ring: Ring, f) -> Poly:
    return Poly(ring, {m: c for m, c in f.items() if c}, _trusted=True)


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True, eq=False)
class Ideal:
    """Generators in a ring, with the monomial order used for its bases."""

    ring: Ring
    gens: Tuple[Poly, ...]
    order: MonomialOrder = GREVLEX
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        gens = []
        for g in self.gens:
            if not isinstance(g, Poly):
                g = Poly.const(self.ring, g)
            elif g.ring != self.ring:
                if g.is_constant():
                    g = Poly.const(self.ring, g.constant_coefficient())
                else:
                    raise RingMismatch(f"generator {g} not in ring {self.ring.names}")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "gens", tuple(gens))
        self.order.check_ring(self.ring)

    @classmethod
    def of(cls, polys: Sequence[Poly], order: MonomialOrder = GREVLEX, ring: Ring | None = None) -> "Ideal":
        polys = list(polys)
        if ring is None:
            ring = next(p.ring for p in polys if isinstance(p, Poly))
        return cls(ring, tuple(polys), order)

    def with_order(self, order: MonomialOrder) -> "Ideal":
        return Ideal(self.ring, self.gens, order)

    def __add__(self, other) -> "Ideal":
        extra = other.gens if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.ring, self.gens + tuple(extra), self.order)

    def basis(self, budget: int = DEFAULT_BUDGET) -> List[Poly]:
        return groebner_basis(self, budget)

    def is_unit(self, budget: int = DEFAULT_BUDGET) -> bool:
        gb = _basis_dicts(self, budget)
        return len(gb) == 1 and len(gb[0]) == 1 and not any(next(iter(gb[0])))

    def reduce(self, p: Poly, budget: int = DEFAULT_BUDGET) -> Poly:
        return normal_form(p, self, budget)

    def contains(self, p: Poly, budget: int = DEFAULT_BUDGET) -> bool:
        return ideal_membership(p, self, budget)

    def to_text(self) -> dict:
        return {"ring": list(self.ring.names), "order": self.order.to_dict(),
                "gens": [str(g) for g in self.gens]}

    @classmethod
    def from_text(cls, data: dict) -> "Ideal":
        ring = Ring(tuple(data["ring"]))
        od = data.get("order", {"kind": "grevlex"})
        order = MonomialOrder(od["kind"], tuple(tuple(b) for b in od.get("blocks", ())))
        return cls(ring, tuple(ring.parse(g) for g in data["gens"]), order)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]}, ring={self.ring.names}, order={self.order.kind})"


def _basis_dicts(ideal: Ideal, budget: int):
    key = ("basis", budget)
    if key in ideal._cache:
        return ideal._cache[key]
    if not ideal.gens:
        ideal._cache[key] = []
        return []
    eng = _Engine(ideal.ring, ideal.order, budget)
    active = eng.run(_to_dicts(ideal.gens, ideal.ring))
    if len(active) == 1 and not any(eng.lms[active[0]]):
        out = [{(0,) * ideal.ring.nvars: gauss(1)}]
    else:
        out = eng.reduced_basis()
    ideal._cache[key] = out
    return out


def groebner_basis(ideal: Ideal, budget: int = DEFAULT_BUDGET) -> List[Poly]:
    """Reduced Groebner basis, monic, sorted by ascending leading monomial."""
    if not ideal.gens:
        raise ValueError("Groebner basis of an empty generator list")
    return [_from_dict(ideal.ring, f) for f in _basis_dicts(ideal, budget)]


def leading_monomial(p: Poly, order: MonomialOrder = GREVLEX) -> Tuple[int, ...]:
    return min(p.terms, key=order.heap_key(p.ring))


def normal_form(p: Poly, ideal: Ideal, budget: int = DEFAULT_BUDGET) -> Poly:
    if p.ring != ideal.ring:
        if not p.is_constant():
            raise RingMismatch(f"{p} is not in ring {ideal.ring.names}")
        p = Poly.const(ideal.ring, p.constant_coefficient())
    if p.is_zero():
        return p
    gb = _basis_dicts(ideal, budget)
    if not gb:
        return p
    eng = _Engine(ideal.ring, ideal.order, budget)
    for f in gb:
        eng._store(f)
    r = eng.reduce(dict(p.terms), range(len(gb)))
    return _from_dict(ideal.ring, r)


def buchberger_criterion_holds(basis: Sequence[Poly], order: MonomialOrder = GREVLEX) -> bool:
    """Post-hoc check: every S-polynomial of ``basis`` reduces to zero."""
    basis = [b for b in basis if not b.is_zero()]
    if not basis:
        return True
    ring = basis[0].ring
    eng = _Engine(ring, order, budget=0)
    idx = [eng._store(dict(b.terms)) for b in basis]
    for i, j in itertools.combinations(idx, 2):
        s = eng.spoly(i, j)
        if s and eng.reduce(s, idx):
            return False
    return True


def ideal_membership(p: Poly, ideal: Ideal, budget: int = DEFAULT_BUDGET) -> bool:
    return normal_form(p, ideal, budget).is_zero()


def _fresh(ring: Ring, stem: str = "u_") -> str:
    k = 0
    while f"{stem}{k}" in ring:
        k += 1
    return f"{stem}{k}"


def eliminate(ideal: Ideal, drop: Sequence[str], budget: int = DEFAULT_BUDGET) -> Ideal:
    """Elimination ideal ``I ∩ k[rest]`` via a block order with ``drop`` first."""
    drop = [v for v in ideal.ring.names if v in set(drop)]
    for v in set(drop) - set(ideal.ring.names):
        raise KeyError(f"cannot eliminate unknown variable {v!r}")
    rest = [v for v in ideal.ring.names if v not in drop]
    target = Ring(tuple(rest))
    if not drop:
        return Ideal(target, ideal.gens, GREVLEX)
    order = MonomialOrder.block(drop, rest)
    gb = groebner_basis(ideal.with_order(order), budget)
    dropped = [ideal.ring.index(v) for v in drop]
    kept = [g for g in gb if not any(m[k] for m in g.terms for k in dropped)]
    return Ideal(target, tuple(g.to_ring(target) for g in kept), GREVLEX)


def saturate(ideal: Ideal, p: Poly, budget: int = DEFAULT_BUDGET) -> Ideal:
    """``(I : p^∞)`` computed as ``(I + <1 - u p>) ∩ k[x]``."""
    if p.is_zero():
        raise ValueError("saturation by the zero polynomial")
    if p.is_constant():
        return ideal
    u = _fresh(ideal.ring)
    ext = ideal.ring.extend(u)
    gens = [g.to_ring(ext) for g in ideal.gens]
    gens.append(Poly.const(ext, 1) - Poly.var(ext, u) * p.to_ring(ext))
    out = eliminate(Ideal(ext, tuple(gens)), [u], budget)
    return Ideal(ideal.ring, tuple(g.to_ring(ideal.ring) for g in out.gens), ideal.order)


def radical_membership(p: Poly, ideal: Ideal, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether some power of ``p`` lies in ``ideal`` (Rabinowitsch trick)."""
    if p.is_zero():
        return True
    u = _fresh(ideal.ring)
    ext = ideal.ring.extend(u)
    gens = [g.to_ring(ext) for g in ideal.gens]
    gens.append(Poly.const(ext, 1) - Poly.var(ext, u) * p.to_ring(ext))
    return Ideal(ext, tuple(gens)).is_unit(budget)


def singular_locus(f: Poly, vars: Sequence[str] | None = None) -> Ideal:
    """``<f, ∂f/∂v for v in vars>``."""
    if f.is_zero():
        raise ValueError("singular locus of the zero polynomial")
    vars = f.ring.names if vars is None else tuple(vars)
    return Ideal(f.ring, (f,) + tuple(f.partials(vars)))


def smoothness_ideal(eqs: Sequence[Poly], vars: Sequence[str]) -> Ideal:
    eqs = list(eqs)
    jac = jacobian(eqs, vars)
    c = len(eqs)
    minors = jac.minors(c) if c > 1 else list(jac.entries)
    return Ideal(eqs[0].ring, tuple(eqs) + tuple(minors))


def is_smooth_affine(eqs: Sequence[Poly], vars: Sequence[str], budget: int = DEFAULT_BUDGET) -> bool:
    """True iff the equations and the maximal Jacobian minors generate the unit ideal.

    The caller asserts that ``eqs`` cut out a complete intersection of
    codimension ``len(eqs)``.
    """
    return smoothness_ideal(eqs, vars).is_unit(budget)


# ---------------------------------------------------------------------------
# Milnor numbers


def _local_dimension(lms: Sequence[Monomial], nvars: int, below: int) -> Optional[int]:
    """Count standard monomials degree by degree; ``None`` if no degree ``< below`` is empty."""
    total = 0
    for d in range(below):
        count = sum(1 for mon in _monomials_of_degree(nvars, d)
                    if not any(_divides(lm, mon) for lm in lms))
        if count == 0:
            return total
        total += count
    return None


def _monomials_of_degree(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def _strip_linear(gens: List[Poly], names: List[str]) -> Tuple[List[Poly], List[str]]:
    """Use generators of the form ``c*v`` to drop the variable ``v``."""
    changed = True
    while changed:
        changed = False
        for g in gens:
            if len(g.terms) == 1:
                (mon, _), = g.terms.items()
                if sum(mon) == 1:
                    v = g.ring.names[mon.index(1)]
                    names = [n for n in names if n != v]
                    target = Ring(tuple(names))
                    gens = [h.subs({v: 0}).to_ring(target) for h in gens if h is not g]
                    gens = [h for h in gens if not h.is_zero()]
                    changed = True
                    break
    return gens, names


def _origin_isolated(gens: Sequence[Poly], budget: int) -> bool:
    """Whether the origin is an isolated point of ``V(gens)`` (or not on it)."""
    if not gens:
        return False
    ring = gens[0].ring
    ideal = Ideal(ring, tuple(gens))
    zero = {v: 0 for v in ring.names}
    for v in ring.names:
        sat = saturate(ideal, Poly.var(ring, v), budget)
        if all(g.evaluate(zero) == 0 for g in sat.gens):
            return False
    return True


def jacobian_algebra_dim(f: Poly, vars: Sequence[str] | None = None, degree_bound: int = 64,
                         budget: int = DEFAULT_BUDGET):
    """Dimension of the local algebra ``O / <∂f>`` at the origin (Milnor number).

    Works in ``k[x]/m^N`` with the local degree order for ``N = 8, 16, ...``
    up to ``degree_bound``.  The answer is certified once some degree ``d < N``
    has no standard monomials: then ``m^d`` lies in the Jacobian ideal
    locally (Nakayama).  Returns ``math.inf`` for a non-isolated critical
    point and raises :class:`IndeterminateDimension` when the bound is too
    small.
    """
    vars = list(f.ring.names if vars is None else vars)
    gens = [g for g in f.partials(vars) if not g.is_zero()]
    ring = Ring(tuple(vars))
    gens = [g.to_ring(ring) for g in gens]
    if not gens:
        return math.inf
    if any(g.constant_coefficient() != 0 for g in gens):
        return 0
    gens, names = _strip_linear(gens, vars)
    if not names:
        return 1
    if not gens:
        return math.inf
    ring = Ring(tuple(names))
    n = ring.nvars
    N = 8
    while True:
        N = min(N, degree_bound)
        eng = _Engine(ring, MonomialOrder("local"), budget, truncate=N)
        active = eng.run(_to_dicts(gens, ring))
        lms = [eng.lms[i] for i in active]
        dim = _local_dimension(lms, n, N)
        if dim is not None:
            return dim
        if N >= degree_bound:
            break
        N *= 2
    if not _origin_isolated(gens, budget):
        return math.inf
    raise IndeterminateDimension(f"local algebra did not stabilise below degree {degree_bound}")
