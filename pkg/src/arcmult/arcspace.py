"""High-level arc-space computations.

Truncated differential ideal generation, the stabilization algorithm for
intersection ideals, dimension series, and verification suites tying the
Groebner machinery to the fair-monomial combinatorics and the exterior
oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

from .diffpoly import DMono, DPoly, DVar, NEG_INF, OrderKind, derive, substitute_sum
from .fairmono import FairClass, enumerate_class
from .groebner import (
    AmbientBasis,
    GBasis,
    Truncation,
    ambient_basis,
    buchberger,
    extend_ambient,
    normal_form,
    quotient_dimension,
    restrict_ambient,
    standard_monomials,
)

DEFAULT_MAX_H = 40


@dataclass(frozen=True)
class ArcResult:
    """Outcome of a stabilization run.

    When stabilized, the intersection bases at H_used and H_used+1 coincide
    and `dimension` is the (finite) quotient dimension.  Otherwise the values
    are the ones computed at the cutoff, and dimension is None when the
    quotient is not finite-dimensional there.
    """

    dimension: int | None
    H_used: int
    stabilized: bool
    basis: GBasis


def truncated_generators(gens: Sequence[DPoly], H: int) -> list[DPoly]:
    """All derivatives f^(j) of the generators staying within order <= H."""
    if any(g.is_zero() for g in gens):
        raise ValueError("generators must be nonzero")
    out: list[DPoly] = []
    for f in gens:
        g = f
        while not g.is_zero() and g.max_order() <= H:
            out.append(g)
            g = derive(g)
    return out


def _new_derivatives(gens: Sequence[DPoly], H: int) -> list[DPoly]:
    """The derivatives of exact order H of each generator (order raises by one
    per differentiation, so these are the generators added at ambient step H)."""
    out = []
    for f in gens:
        start = f.max_order()
        start = 0 if start == NEG_INF else int(start)
        k = H - start
        if k >= 0:
            g = derive(f, k)
            if not g.is_zero():
                out.append(g)
    return out


def stabilize_intersection(
    diff_gens: Sequence[DPoly],
    h: int,
    max_H: int,
    static_gens: Sequence[DPoly] = (),
    bases: tuple[int, ...] | None = None,
    cache=None,
    on_step: Callable[[int, GBasis], None] | None = None,
) -> ArcResult:
    """Run the stabilization loop for <static_gens, diff_gens^(infinity)>.

    Starting at H = h, extends the ambient ideal by the order-H derivatives of
    the differential generators and recomputes the intersection with
    k[x^(<=h)] until two consecutive intersection bases coincide and the
    quotient is finite-dimensional, or max_H is hit.  Nothing below H = h can
    be complete, so lower cutoffs are skipped.
    """
    if h > max_H:
        raise ValueError("h must not exceed max_H")
    all_gens = list(static_gens) + list(diff_gens)
    if not all_gens or any(g.is_zero() for g in all_gens):
        raise ValueError("generators must be nonzero")
    if bases is None:
        bases = Truncation.covering(all_gens).bases
    amb: AmbientBasis | None = None
    prev: GBasis | None = None
    for H in range(h, max_H + 1):
        inter = _cached_intersection(cache, all_gens, h, H)
        if inter is None:
            if amb is None and cache is not None and H > h:
                amb = cache.get_ambient(all_gens, h, H - 1)
            if amb is None:
                start = list(static_gens) + truncated_generators(diff_gens, H)
                amb = ambient_basis(start, h, Truncation(H, bases))
            else:
                amb = extend_ambient(amb, _new_derivatives(diff_gens, H), Truncation(H, bases))
            inter = restrict_ambient(amb)
            if cache is not None:
                cache.put_intersection(all_gens, OrderKind.DEGLEX, h, H, inter)
                cache.put_ambient(all_gens, h, H, amb)
        if on_step:
            on_step(H, inter)
        if prev is not None and inter == prev:
            dim = quotient_dimension(inter)
            if dim is not None:
                return ArcResult(dim, H - 1, True, prev)
        prev = inter
    return ArcResult(quotient_dimension(prev), max_H, False, prev)


def _cached_intersection(cache, gens, h, H):
    if cache is None:
        return None
    return cache.get_intersection(gens, OrderKind.DEGLEX, h, H)


def arc_dimension(gens: Sequence[DPoly], h: int, max_H: int = DEFAULT_MAX_H,
                  cache=None) -> ArcResult:
    """Dimension of k[x^(<=h)] modulo the differential ideal of the generators.

    Reaching max_H without stabilization is reported, not raised: the result
    carries stabilized=False and the data computed at the cutoff.
    """
    return stabilize_intersection(gens, h, max_H, cache=cache)


@dataclass(frozen=True)
class SeriesResult:
    """Dimension series h = 0..h_max with the geometric-series check.

    `geometric_ratio` is m when the input is a single pure power x^m (then
    stabilized dimensions are checked to equal m^(h+1)), else None.
    """

    results: tuple[ArcResult, ...]
    geometric_ratio: int | None

    def dimensions(self) -> list[int | None]:
        return [r.dimension for r in self.results]

    def all_stabilized(self) -> bool:
        return all(r.stabilized for r in self.results)


def _pure_power_of(gens: Sequence[DPoly]) -> int | None:
    """m when gens is a single nonzero multiple of x^m for one base variable."""
    if len(gens) != 1:
        return None
    terms = list(gens[0].terms())
    if len(terms) != 1:
        return None
    mono, _ = terms[0]
    items = mono.items()
    if len(items) != 1 or items[0][0].order != 0:
        return None
    return items[0][1]


def dimension_series(gens: Sequence[DPoly], h_max: int, max_H: int = DEFAULT_MAX_H,
                     cache=None) -> SeriesResult:
    """Dimensions for h = 0..h_max; fat-point inputs are checked against the
    geometric series m/(1-mt)."""
    results = tuple(arc_dimension(gens, h, max_H, cache=cache) for h in range(h_max + 1))
    m = _pure_power_of(gens)
    if m is not None:
        for h, r in enumerate(results):
            if r.stabilized and r.dimension != m ** (h + 1):
                raise AssertionError(
                    f"stabilized dimension {r.dimension} at h={h} deviates from {m}^{h + 1}"
                )
    return SeriesResult(results, m)


# -- verification suites ---------------------------------------------------------


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of one verification item: pass, fail, or inconclusive."""

    status: str  # "pass" | "fail" | "inconclusive"
    detail: str = ""
    result: ArcResult | None = None

    def __bool__(self) -> bool:
        return self.status == "pass"


def fat_point_ideal(m: int, i: int, base: int = 0) -> tuple[list[DPoly], list[DPoly]]:
    """(static, differential) generators of <x^i, (x^m)^(infinity)>."""
    if not 1 <= i <= m:
        raise ValueError("need 1 <= i <= m")
    x = DPoly.var(DVar(base, 0))
    return ([x**i] if i < m else []), [x**m]


def verify_standard_monomials(m: int, i: int, h: int, max_H: int = DEFAULT_MAX_H,
                              cache=None) -> VerifyReport:
    """Standard monomials of <x^i, (x^m)^(infinity)> at order h versus the
    fair-monomial class F_{i-1, m-i}."""
    static, diff = fat_point_ideal(m, i)
    res = stabilize_intersection(diff, h, max_H, static_gens=static)
    if not res.stabilized:
        return VerifyReport("inconclusive", f"no stabilization by H={max_H}", res)
    got = set(standard_monomials(res.basis))
    want = set(enumerate_class(FairClass(i - 1, m - i), h))
    if got == want:
        return VerifyReport("pass", f"{len(got)} standard monomials match", res)
    missing = sorted(want - got, key=lambda mm: mm.orders())
    extra = sorted(got - want, key=lambda mm: mm.orders())
    return VerifyReport("fail", f"missing={missing!r} extra={extra!r}", res)


def verify_upper_bound(m: int, i: int, h: int, max_H: int = DEFAULT_MAX_H,
                       cache=None) -> VerifyReport:
    """dim k[x^(<=h)] / <x^i, (x^m)^(infinity)> == i * m^h exactly."""
    static, diff = fat_point_ideal(m, i)
    res = stabilize_intersection(diff, h, max_H, static_gens=static)
    if not res.stabilized:
        return VerifyReport("inconclusive", f"no stabilization by H={max_H}", res)
    want = i * m**h
    if res.dimension == want:
        return VerifyReport("pass", f"dimension {res.dimension} == {i}*{m}^{h}", res)
    return VerifyReport("fail", f"dimension {res.dimension} != {want}", res)


def _relabel(p: DPoly, base: int) -> DPoly:
    return DPoly(
        [
            (DMono([(DVar(base, v.order), e) for v, e in mono.items()]), c)
            for mono, c in p.terms()
        ]
    )


def splitting_environment(s: int, h: int, max_H: int = DEFAULT_MAX_H) -> tuple[GBasis, list[list[DMono]]]:
    """The joint basis of <y_1^2, ..., y_s^2>^(infinity) truncated at h, as the
    union of per-block bases, plus each block's standard monomials."""
    if s < 1:
        raise ValueError("need at least one block")
    x = DPoly.var(DVar(0, 0))
    block = stabilize_intersection([x**2], h, max_H)
    if not block.stabilized:
        raise RuntimeError(f"single-block basis did not stabilize by H={max_H}")
    gens: list[DPoly] = []
    for j in range(s):
        gens.extend(_relabel(g, j) for g in block.basis.gens)
    gens.sort(key=lambda g: _sort_key(g, OrderKind.DEGLEX))
    joint = GBasis(tuple(gens), OrderKind.DEGLEX, Truncation(h, tuple(range(s))))
    monos = standard_monomials(block.basis)
    return joint, [monos] * s


def _sort_key(g: DPoly, order: OrderKind):
    from functools import cmp_to_key

    from .diffpoly import compare, leading_monomial

    lm, _ = leading_monomial(g, order)
    return cmp_to_key(lambda a, b: compare(a, b, order))(lm)


def nonoverlapping_products(blocks: Sequence[Sequence[DMono]]) -> list[tuple[DMono, ...]]:
    """Tuples (m_1, ..., m_s), one per block, with ord m_j <= lord m_{j+1}."""
    out = []
    for combo in product(*blocks):
        if all(a.ord <= b.lord for a, b in zip(combo, combo[1:])):
            out.append(combo)
    return out


def verify_splitting(s: int, h: int, max_H: int = DEFAULT_MAX_H) -> VerifyReport:
    """Desk-scale check of the block-splitting independence statement.

    For each non-overlapping product of per-block standard monomials, the
    image under x^(k) -> y_1^(k) + ... + y_s^(k) must have nonzero normal form
    against the joint basis.
    """
    joint, blocks = splitting_environment(s, h, max_H)
    checked = 0
    for combo in nonoverlapping_products(blocks):
        p = DMono.one()
        for mm in combo:
            p = p * DMono.from_orders(mm.orders())  # relabel into the x variable
        image = substitute_sum(DPoly.monomial(p), s)
        r = normal_form(image, list(joint.gens), OrderKind.DEGLEX, joint.truncation)
        if r.is_zero():
            return VerifyReport("fail", f"image of {p!r} reduced to zero")
        checked += 1
    return VerifyReport("pass", f"{checked} non-overlapping products stay independent")


def verify_dimension_suite(max_H: int = DEFAULT_MAX_H, heavy: bool = True) -> list[tuple[str, VerifyReport]]:
    """The fat-point dimension grid m^(h+1) for m <= 3, h <= 3 and (4, 1)."""
    x = DPoly.var(DVar(0, 0))
    cells = [(m, h) for m in (1, 2, 3) for h in (0, 1, 2, 3)] + [(4, 1)]
    out = []
    for m, h in cells:
        if not heavy and (m, h) == (3, 3):
            continue
        res = arc_dimension([x**m], h, max_H)
        want = m ** (h + 1)
        if not res.stabilized:
            rep = VerifyReport("inconclusive", f"no stabilization by H={max_H}", res)
        elif res.dimension == want:
            rep = VerifyReport("pass", f"dimension {res.dimension} == {m}^{h + 1}", res)
        else:
            rep = VerifyReport("fail", f"dimension {res.dimension} != {want}", res)
        out.append((f"dim <x^{m}> at h={h}", rep))
    return out
