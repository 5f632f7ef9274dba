"""The differential exterior algebra Λ(η^(∞)) ⊗ Λ(ξ^(∞)).

Elements are sums of basis pairs (η-wedge, ξ-wedge) with rational
coefficients.  The embedding phi sends x to Σ η_i ⊗ ξ_i and kills exactly the
differential ideal of x^m, which makes the algebra an independent membership
oracle for the Groebner machinery.  The tensor multiplication carries no cross
sign (plain tensor product of algebras); each side's wedge contributes the
permutation parity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .diffpoly import DMono, DPoly, DVar, OrderKind, compare, derive, leading_monomial

# a generator inside one side's wedge: (index j, derivative order i)
Gen = tuple[int, int]
# a basis pair: (sorted eta generators, sorted xi generators)
BasisPair = tuple[tuple[Gen, ...], tuple[Gen, ...]]


class ExtGen(NamedTuple):
    """A single generator η_index^(order) or ξ_index^(order)."""

    side: str  # "eta" or "xi"
    index: int
    order: int

    def sort_key(self) -> Gen:
        return (self.index, self.order)


def _wedge_sort(gens: Sequence[Gen]) -> tuple[tuple[Gen, ...], int] | None:
    """Sort a wedge word by (index, order); None if a generator repeats.

    The sign is the parity of the sorting permutation.
    """
    word = list(gens)
    sign = 1
    for i in range(1, len(word)):
        g = word[i]
        j = i
        while j > 0 and word[j - 1] > g:
            word[j] = word[j - 1]
            j -= 1
            sign = -sign
        word[j] = g
        if j > 0 and word[j - 1] == g:
            return None
    return tuple(word), sign


class ExtElem:
    """An element of Λ(η^(∞)) ⊗ Λ(ξ^(∞)): finite sum of basis pairs.

    The weight of a basis pair is the sum of the orders of all generators
    present (both sides).
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[BasisPair, Fraction] | Iterable[tuple[BasisPair, Fraction]] = ()):
        acc: dict[BasisPair, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for bp, c in items:
            c = Fraction(c)
            if bp in acc:
                acc[bp] += c
            else:
                acc[bp] = c
        self._terms = {bp: c for bp, c in acc.items() if c}

    @staticmethod
    def zero() -> "ExtElem":
        return ExtElem()

    @staticmethod
    def one() -> "ExtElem":
        return ExtElem({((), ()): Fraction(1)})

    @staticmethod
    def pair(eta_order: int, xi_order: int, index: int) -> "ExtElem":
        """The basis element η_index^(eta_order) ⊗ ξ_index^(xi_order)."""
        return ExtElem({(((index, eta_order),), ((index, xi_order),)): Fraction(1)})

    def terms(self):
        return iter(self._terms.items())

    def num_terms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, bp: BasisPair) -> Fraction:
        return self._terms.get(bp, Fraction(0))

    def __add__(self, other: "ExtElem") -> "ExtElem":
        if not isinstance(other, ExtElem):
            return NotImplemented
        acc = dict(self._terms)
        for bp, c in other._terms.items():
            nc = acc.get(bp, 0) + c
            if nc:
                acc[bp] = nc
            elif bp in acc:
                del acc[bp]
        out = ExtElem.__new__(ExtElem)
        out._terms = acc
        return out

    def __neg__(self) -> "ExtElem":
        out = ExtElem.__new__(ExtElem)
        out._terms = {bp: -c for bp, c in self._terms.items()}
        return out

    def __sub__(self, other: "ExtElem") -> "ExtElem":
        return self + (-other)

    def __mul__(self, other) -> "ExtElem":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ExtElem.zero()
            out = ExtElem.__new__(ExtElem)
            out._terms = {bp: c * other for bp, c in self._terms.items()}
            return out
        if not isinstance(other, ExtElem):
            return NotImplemented
        return ext_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ExtElem":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = ExtElem.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, ExtElem):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"

        def side(gens, sym):
            if not gens:
                return "1"
            return "^".join(
                f"{sym}{j}" + ("'" * i if i <= 3 else f"({i})") for j, i in gens
            )

        parts = []
        for (eta, xi), c in sorted(self._terms.items()):
            parts.append(f"{c}*[{side(eta, 'eta')} | {side(xi, 'xi')}]")
        return " + ".join(parts)


def ext_mul(u: ExtElem, v: ExtElem) -> ExtElem:
    """Bilinear product; (a⊗b)(c⊗d) = (a∧c)⊗(b∧d) with no cross sign."""
    acc: dict[BasisPair, Fraction] = {}
    for (e1, x1), c1 in u._terms.items():
        for (e2, x2), c2 in v._terms.items():
            we = _wedge_sort(e1 + e2)
            if we is None:
                continue
            wx = _wedge_sort(x1 + x2)
            if wx is None:
                continue
            (eta, se), (xi, sx) = we, wx
            bp = (eta, xi)
            nc = acc.get(bp, 0) + c1 * c2 * se * sx
            if nc:
                acc[bp] = nc
            elif bp in acc:
                del acc[bp]
    out = ExtElem.__new__(ExtElem)
    out._terms = acc
    return out


def _derive_side(u: ExtElem, which: int) -> ExtElem:
    """Leibniz derivation of the eta side (which=0) or xi side (which=1)."""
    acc: dict[BasisPair, Fraction] = {}
    for bp, c in u._terms.items():
        word = bp[which]
        for i, (j, o) in enumerate(word):
            lifted = word[:i] + ((j, o + 1),) + word[i + 1:]
            sorted_word = _wedge_sort(lifted)
            if sorted_word is None:
                continue
            nw, sign = sorted_word
            nbp = (nw, bp[1]) if which == 0 else (bp[0], nw)
            nc = acc.get(nbp, 0) + c * sign
            if nc:
                acc[nbp] = nc
            elif nbp in acc:
                del acc[nbp]
    out = ExtElem.__new__(ExtElem)
    out._terms = acc
    return out


def eta_derive(u: ExtElem) -> ExtElem:
    return _derive_side(u, 0)


def xi_derive(u: ExtElem) -> ExtElem:
    return _derive_side(u, 1)


def ext_derive(u: ExtElem) -> ExtElem:
    """The derivation of the tensor algebra: eta_derive + xi_derive."""
    return eta_derive(u) + xi_derive(u)


def weight(bp: BasisPair) -> int:
    return sum(o for _, o in bp[0]) + sum(o for _, o in bp[1])


def lowest_weight(u: ExtElem) -> ExtElem:
    """The lowest homogeneous component in the weight grading (the map gr)."""
    if u.is_zero():
        raise ValueError("zero element has no lowest component")
    w = min(weight(bp) for bp in u._terms)
    out = ExtElem.__new__(ExtElem)
    out._terms = {bp: c for bp, c in u._terms.items() if weight(bp) == w}
    return out


# -- the embedding ---------------------------------------------------------------


def generator_image(m: int) -> ExtElem:
    """phi(x) = Σ_{i=0}^{m-2} η_i ⊗ ξ_i."""
    if m < 2:
        raise ValueError("multiplicity must be at least 2")
    return ExtElem({(((i, 0),), ((i, 0),)): Fraction(1) for i in range(m - 1)})


def phi(p: DPoly, m: int) -> ExtElem:
    """Image of a univariate p under the differential homomorphism phi.

    x^(k) maps to the k-th derivative of Σ η_i ⊗ ξ_i, extended
    multiplicatively and linearly.
    """
    if len(p.bases()) > 1:
        raise ValueError("phi takes univariate polynomials")
    images = [generator_image(m)]

    def image(order: int) -> ExtElem:
        while len(images) <= order:
            images.append(ext_derive(images[-1]))
        return images[order]

    out = ExtElem.zero()
    for mono, c in p.terms():
        term = ExtElem.one() * c
        for v, e in mono.items():
            term = term * image(v.order) ** e
        out = out + term
    return out


# -- the reduced-support set M and the witness map psi ------------------------------


def is_reduced_support(m_in: DMono, m: int) -> bool:
    """Membership in M: sorted orders satisfy h_{i+m-1} > h_i + 1 for all i.

    Equivalently, divisible by no leading monomial (x^(q))^(m-r) (x^(q+1))^r.
    """
    if len(m_in.bases()) > 1:
        raise ValueError("expected a univariate monomial")
    hs = m_in.orders()
    return all(hs[i + m - 1] > hs[i] + 1 for i in range(len(hs) - m + 1))


def psi(m_in: DMono, m: int) -> ExtElem:
    """The witness basis term of eq-psi: the product over the sorted orders
    h_i of η_{i%(m-1)}^([i/(m-1)]) ⊗ ξ_{i%(m-1)}^(h_i - [i/(m-1)]).

    Defined for monomials in M only; the sign comes from expanding the product
    under the ambient convention.  Nonzero for every member of M.
    """
    if m < 2:
        raise ValueError("multiplicity must be at least 2")
    if not is_reduced_support(m_in, m):
        raise ValueError("monomial is not reduced (not in M)")
    out = ExtElem.one()
    for i, h in enumerate(m_in.orders()):
        j = i % (m - 1)
        q = i // (m - 1)
        out = out * ExtElem({(((j, q),), ((j, h - q),)): Fraction(1)})
    return out


def _power_derivative_lm(q: int, r: int, m: int) -> DMono:
    return DMono.from_orders([q] * (m - r) + [q + 1] * r)


def reduce_by_power_derivatives(p: DPoly, m: int) -> DPoly:
    """Iteratively reduce p by x^m, (x^m)', ... under the weighted inverse
    ordering until every monomial lies in M.

    The result is congruent to p modulo the differential ideal of x^m.  Each
    step rewrites the largest reducible monomial with the derivative
    (x^m)^(h) whose leading monomial (x^(q))^(m-r)(x^(q+1))^r divides it.
    """
    if len(p.bases()) > 1:
        raise ValueError("expected a univariate polynomial")
    base = next(iter(p.bases()), 0)
    x = DPoly.var(DVar(base, 0))
    derivatives: list[DPoly] = [x**m]
    lead: list[tuple[DMono, Fraction]] = [leading_monomial(derivatives[0], OrderKind.WDEGINVLEX)]

    def family(h: int) -> tuple[DPoly, DMono, Fraction]:
        while len(derivatives) <= h:
            derivatives.append(derive(derivatives[-1]))
            lead.append(leading_monomial(derivatives[-1], OrderKind.WDEGINVLEX))
        return derivatives[h], lead[h][0], lead[h][1]

    def reducer_order(mono: DMono) -> int | None:
        """Smallest h with the leading monomial of (x^m)^(h) dividing mono."""
        hs = mono.orders()
        for i in range(len(hs) - m + 1):
            if hs[i + m - 1] <= hs[i] + 1:
                q = hs[i]
                r = sum(1 for h in hs[i:i + m] if h == q + 1)
                return q * m + r
        return None

    cur = p
    while True:
        target: DMono | None = None
        target_h: int | None = None
        for mono in cur.monomials():
            h = reducer_order(mono)
            if h is not None and (target is None or compare(mono, target, OrderKind.WDEGINVLEX) > 0):
                target, target_h = mono, h
        if target is None:
            return cur
        g, lm, lc = family(target_h)
        cur = cur - (cur.coeff(target) / lc) * DPoly.monomial(target / lm) * g


def in_diagonal_ideal(u: ExtElem, r: int, m: int) -> bool:
    """Membership in the ideal generated by η_j ⊗ ξ_j for j = r-1 .. m-2.

    In the monomial basis this is the span of basis pairs containing, for
    some such j, both order-zero generators η_j and ξ_j.
    """
    if not 1 <= r < m:
        raise ValueError("need 1 <= r < m")
    for (eta, xi), _ in u.terms():
        es, xs = set(eta), set(xi)
        if not any((j, 0) in es and (j, 0) in xs for j in range(r - 1, m - 1)):
            return False
    return True


# -- deformation vectors (upper-bound machinery) -------------------------------------


def deformation_vectors(m: int, h: int) -> tuple[list[ExtElem], list[ExtElem]]:
    """The vectors v_i = ((1+∂_η)(1+∂_ξ))^i v_0 and u_i = (∂_η+∂_ξ+∂_η∂_ξ)^i v_0
    for i = 0..h, with v_0 = Σ η_j ⊗ ξ_j."""
    if h < 0:
        raise ValueError("order bound must be nonnegative")
    v0 = generator_image(m)
    vs = [v0]
    us = [v0]
    for _ in range(h):
        prev_v = vs[-1]
        w = prev_v + eta_derive(prev_v)
        vs.append(w + xi_derive(w))
        prev_u = us[-1]
        du = eta_derive(prev_u)
        us.append(du + xi_derive(prev_u) + xi_derive(du))
    return vs, us
