"""Combinatorics of fair and strongly fair monomials.

A univariate monomial x^(h_0)...x^(h_l) is fair when its lowest derivative
order is at least its degree minus one, strongly fair when it is at least the
degree.  F_{a,b} denotes products of a fair and b strongly fair factors.
Membership, enumeration, closed-form counts, the order-sequence bijection to
integer subsets, and the non-overlapping decomposition live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .diffpoly import DMono


@dataclass(frozen=True)
class FairClass:
    """The set F_{a,b}: products of a fair and b strongly fair monomials.

    F_{1,0} is the fair monomials, F_{0,1} the strongly fair ones, and
    F_{0,0} = {1}.
    """

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("factor counts must be nonnegative")


def _orders(m: DMono) -> tuple[int, ...]:
    if len(m.bases()) > 1:
        raise ValueError("fair monomials are univariate")
    return m.orders()


def classify(m: DMono) -> tuple[bool, bool]:
    """(is_fair, is_strongly_fair); the monomial 1 is both by convention."""
    _orders(m)
    return (m.lord >= m.deg - 1, m.lord >= m.deg)


def _block_fair(hs: Sequence[int], lo: int, hi: int) -> bool:
    """Orders hs[lo:hi] form a fair monomial (empty slices are 1)."""
    return hi == lo or hs[lo] >= (hi - lo) - 1


def _block_strongly_fair(hs: Sequence[int], lo: int, hi: int) -> bool:
    return hi == lo or hs[lo] >= hi - lo


def _peel(hs: tuple[int, ...], a: int, b: int) -> Iterator[tuple[int, ...]]:
    """Greedy tail factors of the sorted order sequence, last factor first.

    Yields a+b slices (empty slices are unit factors): the longest strongly
    fair suffix while b factors remain, then the longest fair suffix.  The
    final yield is the unpeeled head, empty iff the monomial is a member.
    """
    remaining = hs
    for step in range(a + b):
        strongly = step < b  # peeled right to left: the last b factors are strongly fair
        n = len(remaining)
        d = _longest_suffix(remaining, strongly)
        yield remaining[n - d:]
        remaining = remaining[: n - d]
    yield remaining


def _longest_suffix(hs: Sequence[int], strongly: bool) -> int:
    """Length of the longest (strongly) fair suffix block of sorted orders."""
    n = len(hs)
    bound = 0 if strongly else -1
    d = 0
    while d < n and hs[n - d - 1] >= d + 1 + bound:
        d += 1
    return d


def in_class(m: DMono, c: FairClass) -> bool:
    """Membership in F_{a,b}, decided by greedy tail peeling.

    Peeling the longest strongly fair suffix (fair once only plain factors
    remain) is complete: a valid factor slicing can always be massaged into
    the greedy one by moving top orders into the tail factor.
    """
    hs = _orders(m)
    slices = list(_peel(hs, c.a, c.b))
    return len(slices[-1]) == 0


def nonoverlap_decompose(m: DMono, c: FairClass) -> list[DMono] | None:
    """Non-overlapping factors P_1 ... P_{a+b} of m, or None if m is not in F_{a,b}.

    The first a factors are fair, the last b strongly fair, and consecutive
    factors do not overlap (ord P_i <= lord P_{i+1}).  Deterministic: each
    tail is chosen with maximal degree.
    """
    hs = _orders(m)
    slices = list(_peel(hs, c.a, c.b))
    if len(slices[-1]) != 0:
        return None
    factors = [DMono.from_orders(s) for s in slices[:-1]]
    factors.reverse()
    return factors


def fair_monomials(h: int, strongly: bool = False, base: int = 0) -> list[DMono]:
    """All (strongly) fair monomials of order at most h, via the subset bijection.

    Degree-d fair monomials correspond to d-subsets of {0..h} (strongly fair:
    of {1..h}) by h_j = s_j + (l - j).
    """
    lo = 1 if strongly else 0
    out = []
    for d in range(h + 2 - lo):
        for sub in combinations(range(lo, h + 1), d):
            ell = d - 1
            out.append(DMono.from_orders([sub[j] + ell - j for j in range(d)], base=base))
    return out


def enumerate_class(c: FairClass, h: int, base: int = 0) -> list[DMono]:
    """All elements of F_{a,b} with orders at most h, without duplicates.

    Generated by the head/tail bijection: tails run over strongly fair
    monomials (fair for the final, plain stage) with the head's order bounded
    by the tail's degree.
    """
    a, b = c.a, c.b
    if a == 0 and b == 0:
        return [DMono.one()]
    if b > 0:
        heads = enumerate_class(FairClass(a, b - 1), h, base)
        tails = fair_monomials(h, strongly=True, base=base)
        return [q0 * q1 for q1 in tails for q0 in heads if q0.ord <= q1.deg]
    heads = enumerate_class(FairClass(a - 1, 0), h, base)
    tails = fair_monomials(h, strongly=False, base=base)
    return [q0 * q1 for q1 in tails for q0 in heads if q0.ord < q1.deg]


def count_class(c: FairClass, h: int) -> int:
    """|F_{a,b} ∩ k[x^(<=h)]| = (a+1) * (a+b+1)^h."""
    if h < 0:
        raise ValueError("order bound must be nonnegative")
    return (c.a + 1) * (c.a + c.b + 1) ** h


def count_fair_of_degree(h: int, d: int, strongly: bool = False) -> int:
    """Closed-form count of degree-d (strongly) fair monomials of order <= h."""
    return comb(h, d) if strongly else comb(h + 1, d)


def degree_bijection(orders: Sequence[int]) -> tuple[int, ...]:
    """Map sorted fair orders (h_0, ..., h_l) to the strictly increasing
    sequence (h_j - (l - j))_j, a subset of {0, ..., max order}."""
    hs = tuple(orders)
    if list(hs) != sorted(hs):
        raise ValueError("orders must be sorted ascending")
    ell = len(hs) - 1
    if hs and hs[0] < ell:
        raise ValueError("orders do not define a fair monomial")
    return tuple(hs[j] - (ell - j) for j in range(len(hs)))


def degree_bijection_inverse(subset: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`degree_bijection`: strictly increasing subset to orders."""
    ss = tuple(subset)
    if list(ss) != sorted(set(ss)) or (ss and ss[0] < 0):
        raise ValueError("expected a strictly increasing sequence of nonnegative integers")
    ell = len(ss) - 1
    return tuple(ss[j] + (ell - j) for j in range(len(ss)))
