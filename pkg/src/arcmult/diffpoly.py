"""Differential polynomial ring over the rationals.

Variables are derivatives x_b^(j) of finitely many base variables; monomials
and polynomials are sparse with exact Fraction coefficients.  The module also
provides the derivation (Leibniz rule), the monomial orderings used for basis
computations, and the block-sum substitution x^(k) -> y_1^(k) + ... + y_s^(k).

All values are immutable after construction; operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Iterator, Mapping, Sequence, Union

# ord/lord sentinels for the monomial 1, chosen so 1 counts as fair and
# strongly fair (lord 1 >= deg 1 holds vacuously).
NEG_INF = float("-inf")
POS_INF = float("inf")

Coef = Union[int, Fraction]


@total_ordering
@dataclass(frozen=True)
class DVar:
    """The derivative variable x_base^(order)."""

    base: int
    order: int

    def __post_init__(self):
        if self.base < 0 or self.order < 0:
            raise ValueError("variable indices must be nonnegative")

    def sort_key(self) -> tuple[int, int]:
        # (order, base): x < x' < x'' < ... within a base, and all order-j
        # derivatives sit below all order-(j+1) ones.  This makes pure Lex an
        # elimination order for derivatives above any cutoff.
        return (self.order, self.base)

    def __lt__(self, other: "DVar") -> bool:
        return self.sort_key() < other.sort_key()

    def derivative(self) -> "DVar":
        return DVar(self.base, self.order + 1)


class DMono:
    """A monomial: finite map DVar -> positive exponent (empty map is 1).

    Cached statistics:
      deg   total degree (sum of exponents)
      tord  total order (sum of order * exponent)
      ord   maximal derivative order present (-inf for 1)
      lord  minimal derivative order present (+inf for 1)
    """

    __slots__ = ("_exps", "deg", "tord", "ord", "lord", "_hash")

    def __init__(self, exps: Mapping[DVar, int] | Iterable[tuple[DVar, int]] = ()):
        acc: dict[DVar, int] = {}
        items = exps.items() if isinstance(exps, Mapping) else exps
        for v, e in items:
            if e:
                acc[v] = acc.get(v, 0) + e
        for v, e in acc.items():
            if e < 0:
                raise ValueError(f"negative exponent for {v}")
        self._exps: tuple[tuple[DVar, int], ...] = tuple(
            sorted(acc.items(), key=lambda t: t[0].sort_key())
        )
        self.deg = sum(e for _, e in self._exps)
        self.tord = sum(v.order * e for v, e in self._exps)
        self.ord = max((v.order for v, _ in self._exps), default=NEG_INF)
        self.lord = min((v.order for v, _ in self._exps), default=POS_INF)
        self._hash = hash(self._exps)

    @staticmethod
    def one() -> "DMono":
        return DMono()

    @classmethod
    def from_var(cls, v: DVar, e: int = 1) -> "DMono":
        return cls(((v, e),))

    @classmethod
    def from_orders(cls, orders: Iterable[int], base: int = 0) -> "DMono":
        """The univariate monomial x^(h_0) * x^(h_1) * ... for the given orders."""
        acc: dict[DVar, int] = {}
        for h in orders:
            v = DVar(base, h)
            acc[v] = acc.get(v, 0) + 1
        return cls(acc)

    def items(self) -> tuple[tuple[DVar, int], ...]:
        return self._exps

    def exponent(self, v: DVar) -> int:
        for w, e in self._exps:
            if w == v:
                return e
        return 0

    def variables(self) -> tuple[DVar, ...]:
        return tuple(v for v, _ in self._exps)

    def bases(self) -> set[int]:
        return {v.base for v, _ in self._exps}

    def orders(self) -> tuple[int, ...]:
        """Derivative orders with multiplicity, ascending: x*(x')^2 -> (0, 1, 1)."""
        out: list[int] = []
        for v, e in self._exps:
            out.extend([v.order] * e)
        out.sort()
        return tuple(out)

    def is_one(self) -> bool:
        return not self._exps

    def __mul__(self, other: "DMono") -> "DMono":
        if not isinstance(other, DMono):
            return NotImplemented
        acc = dict(self._exps)
        for v, e in other._exps:
            acc[v] = acc.get(v, 0) + e
        return DMono(acc)

    def divides(self, other: "DMono") -> bool:
        oe = dict(other._exps)
        return all(oe.get(v, 0) >= e for v, e in self._exps)

    def __truediv__(self, other: "DMono") -> "DMono":
        if not isinstance(other, DMono):
            return NotImplemented
        acc = dict(self._exps)
        for v, e in other._exps:
            ne = acc.get(v, 0) - e
            if ne < 0:
                raise ValueError(f"{other!r} does not divide {self!r}")
            acc[v] = ne
        return DMono(acc)

    def __eq__(self, other) -> bool:
        return isinstance(other, DMono) and self._exps == other._exps

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self._exps:
            return "1"
        parts = []
        for v, e in self._exps:
            s = f"x{v.base}" + "'" * v.order if v.order <= 3 else f"x{v.base}^({v.order})"
            parts.append(s if e == 1 else f"{s}^{e}")
        return "*".join(parts)


class DPoly:
    """A polynomial: finite map DMono -> nonzero Fraction, in canonical form.

    Two polynomials are equal iff their term maps are equal; all arithmetic
    is exact.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[DMono, Coef] | Iterable[tuple[DMono, Coef]] = ()):
        acc: dict[DMono, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            c = Fraction(c)
            if m in acc:
                acc[m] += c
            else:
                acc[m] = c
        self._terms: dict[DMono, Fraction] = {m: c for m, c in acc.items() if c}
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "DPoly":
        return DPoly()

    @staticmethod
    def one() -> "DPoly":
        return DPoly.constant(1)

    @staticmethod
    def constant(c: Coef) -> "DPoly":
        return DPoly(((DMono.one(), c),))

    @staticmethod
    def var(v: DVar) -> "DPoly":
        return DPoly(((DMono.from_var(v), 1),))

    @staticmethod
    def monomial(m: DMono, c: Coef = 1) -> "DPoly":
        return DPoly(((m, c),))

    # -- inspection --------------------------------------------------------

    def terms(self) -> Iterator[tuple[DMono, Fraction]]:
        return iter(self._terms.items())

    def monomials(self) -> Iterator[DMono]:
        return iter(self._terms)

    def coeff(self, m: DMono) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def num_terms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int | float:
        return max((m.deg for m in self._terms), default=NEG_INF)

    def max_order(self) -> int | float:
        """Largest derivative order appearing in any monomial (-inf for constants and 0)."""
        return max((m.ord for m in self._terms), default=NEG_INF)

    def bases(self) -> set[int]:
        out: set[int] = set()
        for m in self._terms:
            out |= m.bases()
        return out

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "DPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms.items():
            nc = acc.get(m, 0) + c
            if nc:
                acc[m] = nc
            elif m in acc:
                del acc[m]
        return _raw(acc)

    __radd__ = __add__

    def __neg__(self) -> "DPoly":
        return _raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "DPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "DPoly":
        return (-self) + other

    def __mul__(self, other) -> "DPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[DMono, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                nc = acc.get(m, 0) + c1 * c2
                if nc:
                    acc[m] = nc
                elif m in acc:
                    del acc[m]
        return _raw(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "DPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = DPoly.one()
        b = self
        while k:
            if k & 1:
                out = out * b
            k >>= 1
            if k:
                b = b * b
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = DPoly.constant(other)
        if not isinstance(other, DPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*{m!r}" for m, c in sorted(
            self._terms.items(), key=lambda t: t[0].orders()))


def _coerce(x) -> DPoly:
    if isinstance(x, DPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return DPoly.constant(x)
    return NotImplemented


def _raw(terms: dict[DMono, Fraction]) -> DPoly:
    """Build a DPoly from an already-canonical term dict (no zero coefficients)."""
    p = DPoly.__new__(DPoly)
    p._terms = terms
    p._hash = None
    return p


# -- the derivation ---------------------------------------------------------


def _derive_mono(m: DMono) -> list[tuple[DMono, int]]:
    """Leibniz rule on one monomial: d(v^e * R) = e v^(e-1) v' R + v^e dR."""
    out = []
    for v, e in m.items():
        acc = dict(m.items())
        if e == 1:
            del acc[v]
        else:
            acc[v] = e - 1
        dv = v.derivative()
        acc[dv] = acc.get(dv, 0) + 1
        out.append((DMono(acc), e))
    return out


def derive(p: DPoly, k: int = 1) -> DPoly:
    """The k-th derivative of p under the derivation x^(j) -> x^(j+1)."""
    if not isinstance(k, int) or k < 0:
        raise ValueError("derivative count must be a nonnegative integer")
    cur = p
    for _ in range(k):
        acc: dict[DMono, Fraction] = {}
        for m, c in cur._terms.items():
            for dm, mult in _derive_mono(m):
                nc = acc.get(dm, 0) + c * mult
                if nc:
                    acc[dm] = nc
                elif dm in acc:
                    del acc[dm]
        cur = _raw(acc)
    return cur


# -- monomial orderings ------------------------------------------------------


class OrderKind(Enum):
    """Monomial orderings on the truncated rings.

    LEX        pure lexicographic, higher-order derivatives larger
    DEGLEX     total degree, then LEX
    WLEX       total order (tord), then LEX
    WDEGINVLEX tord, then degree, then inverse lexicographic with the
               variables ordered x > x' > x'' > ...  (comparison only; not
               accepted by the Buchberger engine)
    """

    LEX = "lex"
    DEGLEX = "deglex"
    WLEX = "wlex"
    WDEGINVLEX = "wdeginvlex"


def _lex_cmp(a: DMono, b: DMono) -> int:
    """Pure Lex: the largest variable with differing exponent decides."""
    ae, be = a.items(), b.items()
    ia, ib = len(ae) - 1, len(be) - 1
    while ia >= 0 or ib >= 0:
        va = ae[ia][0] if ia >= 0 else None
        vb = be[ib][0] if ib >= 0 else None
        if va == vb:
            ea, eb = ae[ia][1], be[ib][1]
            if ea != eb:
                return 1 if ea > eb else -1
            ia -= 1
            ib -= 1
        elif vb is None or (va is not None and vb < va):
            return 1
        else:
            return -1
    return 0


def _lowvar_lex_cmp(a: DMono, b: DMono) -> int:
    """Lex with reversed significance (x > x' > ...): smallest variable decides."""
    ae, be = a.items(), b.items()
    ia, ib = 0, 0
    while ia < len(ae) or ib < len(be):
        va = ae[ia][0] if ia < len(ae) else None
        vb = be[ib][0] if ib < len(be) else None
        if va == vb:
            ea, eb = ae[ia][1], be[ib][1]
            if ea != eb:
                return 1 if ea > eb else -1
            ia += 1
            ib += 1
        elif vb is None or (va is not None and va < vb):
            return 1
        else:
            return -1
    return 0


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def compare(a: DMono, b: DMono, order: OrderKind) -> int:
    """Total comparison of monomials: -1, 0, or 1."""
    if order is OrderKind.LEX:
        return _lex_cmp(a, b)
    if order is OrderKind.DEGLEX:
        return _sign(a.deg - b.deg) or _lex_cmp(a, b)
    if order is OrderKind.WLEX:
        return _sign(a.tord - b.tord) or _lex_cmp(a, b)
    if order is OrderKind.WDEGINVLEX:
        # a < b when b is lexicographically *lower* w.r.t. x > x' > ...
        return _sign(a.tord - b.tord) or _sign(a.deg - b.deg) or -_lowvar_lex_cmp(a, b)
    raise ValueError(f"unknown ordering {order!r}")


def leading_monomial(p: DPoly, order: OrderKind) -> tuple[DMono, Fraction]:
    """The maximal monomial of p under the ordering, with its coefficient."""
    best: DMono | None = None
    for m in p.monomials():
        if best is None or compare(m, best, order) > 0:
            best = m
    if best is None:
        raise ValueError("no leading term: zero polynomial")
    return best, p.coeff(best)


# -- block-sum substitution ---------------------------------------------------


def substitute_sum(p: DPoly, s: int) -> DPoly:
    """Image of a univariate p under x^(k) -> y_1^(k) + ... + y_s^(k).

    The fresh base variables y_1, ..., y_s get base indices 0 .. s-1.
    """
    if s < 1:
        raise ValueError("number of blocks must be positive")
    bases = p.bases()
    if len(bases) > 1:
        raise ValueError("polynomial must be univariate in one base variable")
    images: dict[int, DPoly] = {}

    def image(order: int) -> DPoly:
        img = images.get(order)
        if img is None:
            img = DPoly([(DMono.from_var(DVar(i, order)), 1) for i in range(s)])
            images[order] = img
        return img

    out = DPoly.zero()
    for m, c in p.terms():
        term = DPoly.constant(c)
        for v, e in m.items():
            term = term * image(v.order) ** e
        out = out + term
    return out
