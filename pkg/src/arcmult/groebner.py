"""Buchberger engine over the truncated rings k[x^(<=H)].

Reduction, reduced Groebner bases, elimination of high-order derivatives,
staircase enumeration, and quotient vector-space dimension.  The engine works
on integer-cleared polynomials keyed by flat order-comparable tuples; results
are decoded back to monic DPoly generators.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from operator import add as _add, sub as _sub
from typing import Iterable, Iterator, NamedTuple, Sequence

from .diffpoly import DMono, DPoly, DVar, NEG_INF, OrderKind

_BASIS_ORDERS = (OrderKind.LEX, OrderKind.DEGLEX, OrderKind.WLEX)


class Truncation(NamedTuple):
    """The finite polynomial ring k[x_b^(j) : b in bases, 0 <= j <= max_order]."""

    max_order: int
    bases: tuple[int, ...]

    @staticmethod
    def covering(polys: Iterable[DPoly], max_order: int | None = None,
                 bases: Iterable[int] | None = None) -> "Truncation":
        polys = list(polys)
        if bases is None:
            bs: set[int] = set()
            for p in polys:
                bs |= p.bases()
            bases = bs or {0}
        if max_order is None:
            mo = max((p.max_order() for p in polys), default=NEG_INF)
            max_order = 0 if mo == NEG_INF else int(mo)
        return Truncation(max_order, tuple(sorted(bases)))

    def variables_desc(self) -> list[DVar]:
        """All variables, largest first (descending (order, base))."""
        return [
            DVar(b, j)
            for j in range(self.max_order, -1, -1)
            for b in sorted(self.bases, reverse=True)
        ]

    def contains(self, other: "Truncation") -> bool:
        return other.max_order <= self.max_order and set(other.bases) <= set(self.bases)


@dataclass(frozen=True)
class GBasis:
    """A reduced Groebner basis: monic generators sorted by leading monomial.

    Canonical: two GBasis values for the same ideal, ordering, and truncation
    compare equal.
    """

    gens: tuple[DPoly, ...]
    order: OrderKind
    truncation: Truncation

    def leading_monomials(self) -> list[DMono]:
        ring = _Ring(self.truncation, self.order)
        return [ring.mono_of_exps(ring.encode(g)[0]) for g in self.gens]


# -- engine ring --------------------------------------------------------------


class _Ring:
    """Encodes DPolys as {key: int} dicts whose keys compare in the ordering.

    Keys are flat tuples (aux components, then the exponent vector over the
    descending variable list): exps for LEX, (deg,)+exps for DEGLEX,
    (tord,)+exps for WLEX.  With elim_cutoff set the key is
    (degree in variables of order > cutoff, deg)+exps: a block elimination
    order whose restriction to the low block is DEGLEX.
    """

    def __init__(self, trunc: Truncation, order: OrderKind,
                 elim_cutoff: int | None = None):
        if order not in _BASIS_ORDERS:
            raise ValueError("ordering not admissible for basis computation")
        self.trunc = trunc
        self.order = order
        self.vars = trunc.variables_desc()
        self.n = len(self.vars)
        self.index = {v: i for i, v in enumerate(self.vars)}
        self.weights = tuple(v.order for v in self.vars)
        self.elim_cutoff = elim_cutoff
        # variables are listed largest first, so the eliminated block is a prefix
        self.n_high = sum(
            1 for v in self.vars if elim_cutoff is not None and v.order > elim_cutoff
        )
        self.aux = 2 if elim_cutoff is not None else (0 if order is OrderKind.LEX else 1)

    def key_of_exps(self, exps: Sequence[int]) -> tuple[int, ...]:
        exps = tuple(exps)
        if self.elim_cutoff is not None:
            return (sum(exps[: self.n_high]), sum(exps)) + exps
        if self.order is OrderKind.LEX:
            return exps
        if self.order is OrderKind.DEGLEX:
            return (sum(exps),) + exps
        return (sum(w * e for w, e in zip(self.weights, exps) if e),) + exps

    def exps_of_key(self, key: tuple[int, ...]) -> tuple[int, ...]:
        return key[self.aux:]

    def mono_of_exps(self, exps: Sequence[int]) -> DMono:
        return DMono([(self.vars[i], e) for i, e in enumerate(exps) if e])

    def encode(self, p: DPoly) -> tuple[tuple[int, ...], dict, int]:
        """Return (leading exponents, {key: int}, cleared denominator)."""
        if p.is_zero():
            raise ValueError("cannot encode the zero polynomial")
        denom = 1
        for _, c in p.terms():
            denom = denom * c.denominator // gcd(denom, c.denominator)
        terms: dict = {}
        for m, c in p.terms():
            exps = [0] * self.n
            for v, e in m.items():
                i = self.index.get(v)
                if i is None:
                    raise ValueError(f"{v} is outside the truncation {self.trunc}")
                exps[i] = e
            terms[self.key_of_exps(exps)] = int(c * denom)
        return max(terms)[self.aux:], terms, denom

    def decode(self, terms: dict, denom: int = 1) -> DPoly:
        aux = self.aux
        return DPoly(
            [(self.mono_of_exps(k[aux:]), Fraction(c, denom)) for k, c in terms.items()]
        )


class _Entry:
    """One basis element: primitive integer terms, positive leading coefficient."""

    __slots__ = ("lm_key", "lc", "terms", "lm_support")

    def __init__(self, terms: dict, aux: int):
        self.lm_key = max(terms)
        self.lc = terms[self.lm_key]
        self.terms = terms
        self.lm_support = tuple(
            (i, e) for i, e in enumerate(self.lm_key) if e and i >= aux
        )

    @staticmethod
    def primitive(terms: dict, aux: int) -> "_Entry":
        c = 0
        for v in terms.values():
            c = gcd(c, v)
        lm = max(terms)
        if terms[lm] < 0:
            c = -c
        if c != 1:
            terms = {k: v // c for k, v in terms.items()}
        return _Entry(terms, aux)


def _reduce_full(work: dict, divisors: Sequence[_Entry]) -> tuple[dict, int]:
    """Fully reduce, largest reducible monomial first, against the first
    applicable divisor in the (leading-monomial-sorted) list.

    Returns (remainder, multiplier) with remainder == multiplier * f mod <divisors>.
    """
    work = dict(work)
    out: dict = {}
    mult = 1
    while work:
        mk = max(work)
        c = work.pop(mk)
        if not c:
            continue
        hit = None
        for d in divisors:
            for i, e in d.lm_support:
                if mk[i] < e:
                    break
            else:
                hit = d
                break
        if hit is None:
            out[mk] = c
            continue
        qk = tuple(map(_sub, mk, hit.lm_key))
        g0 = gcd(c, hit.lc)
        a = hit.lc // g0
        b = c // g0
        if a != 1:
            mult *= a
            for k in work:
                work[k] *= a
            for k in out:
                out[k] *= a
        lmk = hit.lm_key
        for k2, c2 in hit.terms.items():
            if k2 == lmk:
                continue
            nk = tuple(map(_add, k2, qk))
            nv = work.get(nk, 0) - b * c2
            if nv:
                work[nk] = nv
            else:
                work.pop(nk, None)
    return out, mult


def _spoly(f: _Entry, g: _Entry, ring: _Ring) -> dict:
    aux = ring.aux
    lcm_exps = tuple(map(max, f.lm_key[aux:], g.lm_key[aux:]))
    lcm_key = ring.key_of_exps(lcm_exps)
    qf = tuple(map(_sub, lcm_key, f.lm_key))
    qg = tuple(map(_sub, lcm_key, g.lm_key))
    c0 = gcd(f.lc, g.lc)
    cf = g.lc // c0
    cg = f.lc // c0
    acc: dict = {}
    for k, c in f.terms.items():
        nk = tuple(map(_add, k, qf))
        nv = acc.get(nk, 0) + cf * c
        if nv:
            acc[nk] = nv
        else:
            acc.pop(nk, None)
    for k, c in g.terms.items():
        nk = tuple(map(_add, k, qg))
        nv = acc.get(nk, 0) - cg * c
        if nv:
            acc[nk] = nv
        else:
            acc.pop(nk, None)
    return acc


class _DivisorList:
    """Basis entries kept sorted ascending by leading monomial key."""

    def __init__(self, entries: Iterable[_Entry] = ()):
        self.items: list[_Entry] = sorted(entries, key=lambda e: e.lm_key)

    def insert(self, e: _Entry) -> None:
        lo, hi = 0, len(self.items)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.items[mid].lm_key < e.lm_key:
                lo = mid + 1
            else:
                hi = mid
        self.items.insert(lo, e)


def _saturate(ring: _Ring, seed: list[_Entry], extra: list[_Entry]) -> list[_Entry]:
    """Complete seed+extra to a Groebner basis; seed is assumed to be one already.

    Pair selection is the normal strategy (smallest lcm first); pairs with
    coprime leading monomials are skipped (first Buchberger criterion), and the
    classical chain criterion skips (i, j) when some lm_k divides lcm(i, j)
    and both (i, k) and (j, k) are no longer pending.
    """
    aux = ring.aux
    basis: list[_Entry] = list(seed) + list(extra)
    exps = [e.lm_key[aux:] for e in basis]
    divisors = _DivisorList(basis)
    pairs: list = []
    pending: set[tuple[int, int]] = set()
    ns = len(seed)

    def push_pair(i: int, j: int) -> None:
        lcm = tuple(map(max, exps[i], exps[j]))
        heapq.heappush(pairs, (ring.key_of_exps(lcm), i, j))
        pending.add((i, j))

    for j in range(ns, len(basis)):
        for i in range(j):
            push_pair(i, j)

    while pairs:
        lcm_key, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        ei, ej = exps[i], exps[j]
        if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue
        lcm = lcm_key[aux:]
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            ek = exps[k]
            if all(x <= y for x, y in zip(ek, lcm)):
                skip = True
                break
        if skip:
            continue
        rem, _ = _reduce_full(_spoly(basis[i], basis[j], ring), divisors.items)
        if not rem:
            continue
        e = _Entry.primitive(rem, aux)
        basis.append(e)
        exps.append(e.lm_key[aux:])
        divisors.insert(e)
        k = len(basis) - 1
        for i2 in range(k):
            push_pair(i2, k)
    return _interreduce(ring, basis)


def _interreduce(ring: _Ring, entries: list[_Entry]) -> list[_Entry]:
    aux = ring.aux
    # drop entries whose leading monomial another one divides (ties: keep first)
    entries = sorted(entries, key=lambda e: e.lm_key)
    kept: list[_Entry] = []
    for e in entries:
        me = e.lm_key
        hit = False
        for k in kept:
            for i, x in k.lm_support:
                if me[i] < x:
                    break
            else:
                hit = True
                break
        if not hit:
            kept.append(e)
    # tail-reduce every element against the others until stable
    changed = True
    while changed:
        changed = False
        for idx in range(len(kept)):
            e = kept[idx]
            others = kept[:idx] + kept[idx + 1:]
            rem, _ = _reduce_full(e.terms, others)
            if not rem:
                kept.pop(idx)
                changed = True
                break
            ne = _Entry.primitive(rem, aux)
            if ne.terms != e.terms:
                kept[idx] = ne
                changed = True
        kept.sort(key=lambda e: e.lm_key)
    return kept


# -- public operations ---------------------------------------------------------


def normal_form(f: DPoly, G: Sequence[DPoly], order: OrderKind,
                truncation: Truncation | None = None) -> DPoly:
    """Remainder of multivariate division of f by G.

    Deterministic: reduces the order-largest reducible monomial first, against
    the first applicable divisor when G is sorted by leading monomial.  No
    monomial of the result is divisible by any leading monomial of G, and
    f - result lies in <G>.
    """
    if any(g.is_zero() for g in G):
        raise ValueError("divisors must be nonzero")
    if f.is_zero():
        return f
    trunc = truncation or Truncation.covering([f, *G])
    ring = _Ring(trunc, order)
    divisors = _DivisorList(_Entry(ring.encode(g)[1], ring.aux) for g in G)
    _, fterms, denom = ring.encode(f)
    rem, mult = _reduce_full(fterms, divisors.items)
    return ring.decode(rem, denom * mult)


def buchberger(gens: Sequence[DPoly], order: OrderKind,
               truncation: Truncation | None = None) -> GBasis:
    """The reduced Groebner basis of <gens> under an admissible ordering."""
    gens = list(gens)
    if not gens or any(g.is_zero() for g in gens):
        raise ValueError("generators must be nonzero")
    trunc = truncation or Truncation.covering(gens)
    ring = _Ring(trunc, order)
    entries = [_Entry.primitive(ring.encode(g)[1], ring.aux) for g in gens]
    reduced = _saturate(ring, [], entries)
    return _decode_basis(ring, reduced)


def extend_basis(G: GBasis, new_gens: Sequence[DPoly],
                 truncation: Truncation | None = None) -> GBasis:
    """Groebner basis of <G.gens + new_gens> seeded with the existing basis.

    The truncation may grow by higher-order variables: those are larger than
    all existing ones, so G stays a Groebner basis of the ideal it generates
    and only pairs involving the new generators are processed.
    """
    trunc = truncation or Truncation.covering([*G.gens, *new_gens])
    if not trunc.contains(G.truncation):
        raise ValueError("new truncation must contain the basis truncation")
    if any(g.is_zero() for g in new_gens):
        raise ValueError("generators must be nonzero")
    ring = _Ring(trunc, G.order)
    seed = [_Entry.primitive(ring.encode(g)[1], ring.aux) for g in G.gens]
    extra = [_Entry.primitive(ring.encode(g)[1], ring.aux) for g in new_gens]
    reduced = _saturate(ring, seed, extra)
    return _decode_basis(ring, reduced)


def _decode_basis(ring: _Ring, entries: list[_Entry]) -> GBasis:
    gens = tuple(ring.decode(e.terms, e.lc) for e in entries)
    return GBasis(gens, ring.order, ring.trunc)


def restrict_basis(G: GBasis, h: int, order: OrderKind = OrderKind.DEGLEX) -> GBasis:
    """Restrict a LEX basis to k[x^(<=h)] and re-reduce under the given order.

    By the elimination theorem the elements of order <= h form a basis of the
    intersection ideal; they are re-reduced so the result is canonical.
    """
    if G.order is not OrderKind.LEX:
        raise ValueError("elimination requires a LEX basis")
    if h > G.truncation.max_order:
        raise ValueError("restriction order exceeds the ambient truncation")
    trunc = Truncation(h, G.truncation.bases)
    keep = [g for g in G.gens if g.max_order() <= h]
    if not keep:
        return GBasis((), order, trunc)
    return buchberger(keep, order, trunc)


class AmbientBasis:
    """Groebner basis of an ambient truncated ideal under the block
    elimination order that isolates k[x^(<=cutoff)].

    Intermediate object of the elimination pipeline; grow it with
    :func:`extend_ambient` and project with :func:`restrict_ambient`.
    """

    __slots__ = ("ring", "entries")

    def __init__(self, ring: _Ring, entries: list[_Entry]):
        self.ring = ring
        self.entries = entries

    @property
    def truncation(self) -> Truncation:
        return self.ring.trunc


def ambient_basis(gens: Sequence[DPoly], cutoff: int, truncation: Truncation) -> AmbientBasis:
    if not gens or any(g.is_zero() for g in gens):
        raise ValueError("generators must be nonzero")
    ring = _Ring(truncation, OrderKind.DEGLEX, elim_cutoff=cutoff)
    entries = [_Entry.primitive(ring.encode(g)[1], ring.aux) for g in gens]
    return AmbientBasis(ring, _saturate(ring, [], entries))


def extend_ambient(amb: AmbientBasis, new_gens: Sequence[DPoly],
                   truncation: Truncation) -> AmbientBasis:
    """Extend an ambient basis by new generators, possibly in a larger ring.

    New variables are larger than all existing ones and belong to the
    eliminated block, so existing entries remain a Groebner basis and only
    pairs involving the new generators are processed.
    """
    old = amb.ring.trunc
    if truncation.bases != old.bases:
        raise ValueError("extension must keep the same base variables")
    if truncation.max_order < old.max_order:
        raise ValueError("new truncation must contain the existing one")
    if old.max_order < amb.ring.elim_cutoff and truncation.max_order > old.max_order:
        raise ValueError("new variables must lie in the eliminated block")
    ring = _Ring(truncation, OrderKind.DEGLEX, elim_cutoff=amb.ring.elim_cutoff)
    pad = ring.n - amb.ring.n
    aux = ring.aux
    seed = []
    for e in amb.entries:
        if pad:
            terms = {k[:aux] + (0,) * pad + k[aux:]: c for k, c in e.terms.items()}
        else:
            terms = dict(e.terms)
        seed.append(_Entry(terms, aux))
    extra = [_Entry.primitive(ring.encode(g)[1], aux) for g in new_gens]
    return AmbientBasis(ring, _saturate(ring, seed, extra))


def restrict_ambient(amb: AmbientBasis, order: OrderKind = OrderKind.DEGLEX) -> GBasis:
    """The reduced basis of <ambient ideal> ∩ k[x^(<=cutoff)].

    Entries whose leading monomial avoids the eliminated block lie entirely in
    the low subring and form the reduced DEGLEX basis of the intersection
    there; other target orders re-reduce those elements.
    """
    ring = amb.ring
    h = ring.elim_cutoff
    trunc = Truncation(h, ring.trunc.bases)
    low = [e for e in amb.entries if e.lm_key[0] == 0]
    if order is OrderKind.DEGLEX:
        sub = _Ring(trunc, order)
        nh = ring.n_high
        gens = tuple(
            sub.decode({(k[1],) + k[2 + nh:]: c for k, c in e.terms.items()}, e.lc)
            for e in low
        )
        return GBasis(gens, order, trunc)
    polys = [ring.decode(e.terms, e.lc) for e in low]
    if not polys:
        return GBasis((), order, trunc)
    return buchberger(polys, order, trunc)


def eliminate_above(gens: Sequence[DPoly], h: int, H: int | None = None,
                    order: OrderKind = OrderKind.DEGLEX) -> GBasis:
    """Reduced basis of <gens> ∩ k[x^(<=h)] under `order` (default DEGLEX).

    Elimination runs under a block order (degree in the variables of order > h
    first); its restriction to the low block is DEGLEX, so the low part of the
    reduced ambient basis is the reduced intersection basis.
    """
    trunc = Truncation.covering(gens, max_order=H)
    if h > trunc.max_order:
        raise ValueError("h must not exceed the ambient order bound H")
    return restrict_ambient(ambient_basis(gens, h, trunc), order)


# -- staircase ----------------------------------------------------------------


def _lm_exps(G: GBasis) -> tuple[list[tuple[int, ...]], _Ring]:
    ring = _Ring(G.truncation, G.order)
    return [ring.encode(g)[0] for g in G.gens], ring


def _staircase(lms: list[tuple[int, ...]], n: int) -> Iterator[tuple[int, ...]]:
    """Depth-first walk of the monomials under the staircase of the lms."""
    if any(not any(e) for e in lms):
        return  # the unit ideal: no standard monomials
    # group leading monomials by their last positively-exponented variable;
    # at depth i only those with max support index == i can newly divide
    by_depth: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for e in lms:
        last = max(i for i, x in enumerate(e) if x)
        by_depth[last].append(e)
    exps = [0] * n

    def walk(i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(exps)
            return
        exps[i] = 0
        while True:
            blocked = any(
                all(exps[j] >= lm[j] for j in range(i + 1))
                for lm in by_depth[i]
            )
            if blocked:
                break
            yield from walk(i + 1)
            exps[i] += 1
        exps[i] = 0

    yield from walk(0)


def quotient_dimension(G: GBasis) -> int | None:
    """Number of standard monomials of G in its truncated ring; None if infinite.

    Finite iff every variable has a pure power among the leading monomials.
    """
    lms, ring = _lm_exps(G)
    if not _is_zero_dimensional(lms, ring.n):
        return None
    return sum(1 for _ in _staircase(lms, ring.n))


def _is_zero_dimensional(lms: list[tuple[int, ...]], n: int) -> bool:
    if any(not any(e) for e in lms):
        return True  # unit ideal
    for i in range(n):
        if not any(e[i] and all(x == 0 for j, x in enumerate(e) if j != i) for e in lms):
            return False
    return True


def standard_monomials(G: GBasis) -> list[DMono]:
    """All standard monomials, sorted ascending under G's ordering."""
    lms, ring = _lm_exps(G)
    if not _is_zero_dimensional(lms, ring.n):
        raise ValueError("infinite-dimensional quotient")
    monos = [ring.key_of_exps(e) for e in _staircase(lms, ring.n)]
    monos.sort()
    return [ring.mono_of_exps(k[ring.aux:]) for k in monos]
