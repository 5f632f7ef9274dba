import random
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

import pytest

from arcmult.diffpoly import DMono, DPoly, DVar, OrderKind, derive
from arcmult.extalg import (
    ExtElem,
    deformation_vectors,
    eta_derive,
    ext_derive,
    ext_mul,
    generator_image,
    in_diagonal_ideal,
    is_reduced_support,
    lowest_weight,
    phi,
    psi,
    reduce_by_power_derivatives,
    weight,
    xi_derive,
)

X = DPoly.var(DVar(0, 0))
X1 = DPoly.var(DVar(0, 1))


def mono(*orders):
    return DMono.from_orders(orders)


def pair(eta, xi):
    """Basis element from lists of (index, order) generators."""
    return ExtElem({(tuple(eta), tuple(xi)): Fraction(1)})


E00 = pair([(0, 0)], [(0, 0)])  # eta_0 (x) xi_0


# -- wedge multiplication ---------------------------------------------------------


def test_square_of_pair_vanishes():
    assert (E00 * E00).is_zero()


def test_plain_tensor_product_no_cross_sign():
    a = pair([(0, 0)], [(0, 0)])
    b = pair([(0, 1)], [(0, 1)])
    got = a * b
    assert got == pair([(0, 0), (0, 1)], [(0, 0), (0, 1)])


def test_sign_bookkeeping_on_sorting():
    # (eta0' ⊗ xi0) * (eta0 ⊗ xi0'): the eta word needs one transposition
    a = pair([(0, 1)], [(0, 0)])
    b = pair([(0, 0)], [(0, 1)])
    got = a * b
    assert got == -pair([(0, 0), (0, 1)], [(0, 0), (0, 1)])


def test_associativity_random():
    rng = random.Random(3)
    gens = [pair([(i, o)], [(i2, o2)]) for i in range(2) for o in range(2)
            for i2 in range(2) for o2 in range(2)]
    for _ in range(50):
        u = sum((rng.choice(gens) * rng.randint(-2, 2) for _ in range(2)), ExtElem.zero())
        v = sum((rng.choice(gens) * rng.randint(-2, 2) for _ in range(2)), ExtElem.zero())
        w = sum((rng.choice(gens) * rng.randint(-2, 2) for _ in range(2)), ExtElem.zero())
        assert ext_mul(ext_mul(u, v), w) == ext_mul(u, ext_mul(v, w))


def test_even_subalgebra_commutes():
    rng = random.Random(5)
    polys = [X, X1, X * X1, X**2, derive(X**2, 2)]
    for _ in range(20):
        p, q = rng.choice(polys), rng.choice(polys)
        assert phi(p, 3) * phi(q, 3) == phi(q, 3) * phi(p, 3)


# -- derivations -------------------------------------------------------------------


def test_ext_derive_single_pair():
    got = ext_derive(E00)
    assert got == pair([(0, 1)], [(0, 0)]) + pair([(0, 0)], [(0, 1)])


def test_eta_derive_single_pair():
    assert eta_derive(E00) == pair([(0, 1)], [(0, 0)])


def test_ext_derive_with_nilpotent_term():
    # d((eta0 ^ eta0') ⊗ xi0): the eta0' ^ eta0' term vanishes
    u = pair([(0, 0), (0, 1)], [(0, 0)])
    got = ext_derive(u)
    assert got == pair([(0, 0), (0, 2)], [(0, 0)]) + pair([(0, 0), (0, 1)], [(0, 1)])


def test_ext_derive_splits():
    u = pair([(0, 0), (1, 2)], [(0, 1)]) + pair([(1, 0)], [(0, 0), (1, 1)]) * 3
    assert ext_derive(u) == eta_derive(u) + xi_derive(u)


def test_derivation_leibniz():
    rng = random.Random(11)
    gens = [pair([(i, o)], [(i2, o2)]) for i in range(2) for o in range(2)
            for i2 in range(2) for o2 in range(2)]
    for _ in range(40):
        u = sum((rng.choice(gens) * rng.randint(-2, 2) for _ in range(2)), ExtElem.zero())
        v = sum((rng.choice(gens) * rng.randint(-2, 2) for _ in range(2)), ExtElem.zero())
        assert ext_derive(u * v) == ext_derive(u) * v + u * ext_derive(v)


# -- phi ---------------------------------------------------------------------------


def test_phi_x_prime_fourth_power():
    got = phi(X1**4, 3)
    expected = ExtElem({
        (
            ((0, 0), (0, 1), (1, 0), (1, 1)),
            ((0, 0), (0, 1), (1, 0), (1, 1)),
        ): Fraction(24)
    })
    assert got == expected


def test_phi_x_prime_fifth_power_vanishes():
    assert phi(X1**5, 3).is_zero()


@pytest.mark.parametrize("m", [2, 3, 4])
def test_phi_kills_the_fat_point_power(m):
    assert phi(X**m, m).is_zero()


def test_phi_rejects_small_multiplicity():
    with pytest.raises(ValueError):
        phi(X, 1)


def test_phi_is_differential_homomorphism():
    rng = random.Random(23)
    monos = [mono(), mono(0), mono(1), mono(0, 1), mono(2), mono(1, 1)]
    for m in (2, 3):
        for _ in range(30):
            p = DPoly([(rng.choice(monos), rng.randint(-2, 2)) for _ in range(2)])
            q = DPoly([(rng.choice(monos), rng.randint(-2, 2)) for _ in range(2)])
            assert phi(p * q, m) == phi(p, m) * phi(q, m)
            assert phi(p + q, m) == phi(p, m) + phi(q, m)
            assert phi(derive(p), m) == ext_derive(phi(p, m))


def test_phi_kernel_soundness_random_ideal_elements():
    rng = random.Random(41)
    monos = [mono(), mono(0), mono(1), mono(2), mono(0, 1)]
    for m in (2, 3):
        gens = []
        g = X**m
        while not g.is_zero() and g.max_order() <= 8:
            gens.append(g)
            g = derive(g)
        for _ in range(25):
            p = DPoly.zero()
            for _ in range(3):
                p = p + rng.randint(-3, 3) * DPoly.monomial(rng.choice(monos)) * rng.choice(gens)
            assert phi(p, m).is_zero()


def test_phi_nonzero_on_fair_monomials():
    # kernel completeness at desk scale: standard monomials have nonzero image
    from arcmult.fairmono import FairClass, enumerate_class

    for m in (2, 3):
        for f in enumerate_class(FairClass(m - 1, 0), 2):
            assert not phi(DPoly.monomial(f), m).is_zero(), f


# -- M and psi -----------------------------------------------------------------------


def test_reduced_support_examples():
    assert not is_reduced_support(mono(1, 2), 2)
    assert is_reduced_support(mono(0, 2), 2)
    assert is_reduced_support(DMono.one(), 2)
    assert is_reduced_support(DMono.one(), 3)


def test_psi_single_variable():
    for m in (2, 3, 4):
        assert psi(mono(0), m) == E00


def test_psi_x_xpp():
    got = psi(mono(0, 2), 2)
    assert got == pair([(0, 0), (0, 1)], [(0, 0), (0, 1)])


def test_psi_rejects_non_members():
    with pytest.raises(ValueError):
        psi(mono(1, 2), 2)


def test_psi_appears_in_phi():
    # Property 2: the witness term shows up with nonzero coefficient
    for m in (2, 3):
        for d in range(5):
            for hs in combinations_with_replacement(range(6), d):
                mm = mono(*hs)
                if not is_reduced_support(mm, m):
                    continue
                w = psi(mm, m)
                ((bp, c),) = list(w.terms())
                assert c != 0
                assert phi(DPoly.monomial(mm), m).coeff(bp) != 0, (hs, m)


# -- reduction by the derivative family ------------------------------------------------


def test_reduce_generator_to_zero():
    assert reduce_by_power_derivatives(X**2, 2).is_zero()


def test_reduce_x_prime_fifth_power():
    assert reduce_by_power_derivatives(X1**5, 3).is_zero()


def test_reduce_x_prime_fourth_power_is_m_supported():
    r = reduce_by_power_derivatives(X1**4, 3)
    assert not r.is_zero()
    for mm in r.monomials():
        assert is_reduced_support(mm, 3)


def test_reduce_congruent_modulo_ideal():
    # p - reduce(p) has zero phi-image (phi kernel is the differential ideal)
    rng = random.Random(17)
    monos = [mono(0, 0), mono(0, 1), mono(1, 1), mono(1, 2), mono(0, 1, 1)]
    for m in (2, 3):
        for _ in range(15):
            p = DPoly([(rng.choice(monos), rng.randint(-2, 2)) for _ in range(2)])
            r = reduce_by_power_derivatives(p, m)
            assert phi(p - r, m).is_zero()
            for mm in r.monomials():
                assert is_reduced_support(mm, m)


def test_oracle_agreement_small():
    # zero under family reduction iff zero normal form against the
    # stabilized intersection basis (small slice of the acceptance sweep)
    from arcmult.groebner import eliminate_above, normal_form

    m = 2
    gens = []
    g = X**m
    while not g.is_zero() and g.max_order() <= 8:
        gens.append(g)
        g = derive(g)
    basis = eliminate_above(gens, h=2, H=8)
    for d in range(4):
        for hs in combinations_with_replacement(range(3), d):
            p = DPoly.monomial(mono(*hs))
            lhs = reduce_by_power_derivatives(p, m).is_zero()
            rhs = normal_form(p, list(basis.gens), OrderKind.DEGLEX, basis.truncation).is_zero()
            assert lhs == rhs, hs


# -- diagonal ideal ---------------------------------------------------------------------


def test_diagonal_ideal_contains_phi_of_power():
    assert in_diagonal_ideal(phi(X, 3), 1, 3)


def test_diagonal_ideal_excludes_unit():
    assert not in_diagonal_ideal(ExtElem.one(), 1, 3)


def test_diagonal_ideal_excludes_phi_x_prime_squared():
    assert not in_diagonal_ideal(phi(X1**2, 3), 1, 3)


def test_zero_is_in_every_diagonal_ideal():
    assert in_diagonal_ideal(ExtElem.zero(), 2, 3)


# -- weight grading -----------------------------------------------------------------------


def test_lowest_weight_simple():
    u = E00 + pair([(0, 1)], [(0, 0)])
    assert lowest_weight(u) == E00


def test_lowest_weight_zero_errors():
    with pytest.raises(ValueError):
        lowest_weight(ExtElem.zero())


def test_lowest_weight_homogeneous_fixed_point():
    u = phi(X1**2, 3)
    assert lowest_weight(u) == u  # phi images of isobaric polys are weight-homogeneous


def test_gr_multiplicativity():
    rng = random.Random(29)
    gens = [pair([(i, o)], [(i, o2)]) for i in range(2) for o in range(3) for o2 in range(3)]
    for _ in range(40):
        u = sum((rng.choice(gens) * rng.randint(-2, 2) for _ in range(3)), ExtElem.zero())
        v = sum((rng.choice(gens) * rng.randint(-2, 2) for _ in range(3)), ExtElem.zero())
        if u.is_zero() or v.is_zero():
            continue
        guv = lowest_weight(u) * lowest_weight(v)
        if not guv.is_zero():
            assert lowest_weight(u * v) == guv


# -- deformation vectors -----------------------------------------------------------------


@pytest.mark.parametrize("m", [2, 3])
def test_deformation_identities(m):
    h = 3
    vs, us = deformation_vectors(m, h)
    assert len(vs) == len(us) == h + 1
    # v_1 = u_0 + u_1 and in general v_i = sum_j C(i,j) u_j
    assert vs[1] == us[0] + us[1]
    for i in range(h + 1):
        acc = ExtElem.zero()
        for j in range(i + 1):
            acc = acc + us[j] * comb(i, j)
        assert vs[i] == acc
    # gr(u_i) = v_0^(i)
    v0 = vs[0]
    d = v0
    for i in range(h + 1):
        assert lowest_weight(us[i]) == d
        d = ext_derive(d)
    # v_i^m = 0
    for i in range(h + 1):
        assert (vs[i] ** m).is_zero()
