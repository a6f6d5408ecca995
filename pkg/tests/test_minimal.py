import random
from fractions import Fraction

import pytest

from toricspec.laurent import (
    InconclusiveError,
    LaurentPoly,
    kernel_K0,
    kernel_membership,
    membership,
    novikov_shift,
    restrict,
)
from toricspec.minimal import (
    BoundingData,
    MinimalDegreeWitness,
    NoMinimalElement,
    bounding_modules,
    check_generator_degree_floor,
    degree_floor_violations,
    find_minimal_degree_element,
    min_degree_bound,
    monomial_ideal_member,
    nullstellensatz_exponents,
    translated_point_bound,
)
from toricspec.polytope import ToricHypothesisError

H = Fraction(1, 2)


def test_min_degree_bound_values():
    assert min_degree_bound(1, 2) == 2
    assert min_degree_bound(H, 2) == 1
    assert min_degree_bound(1, 4) == 4


def test_generator_degree_floor(T_monotone, T_cp3, T_cube):
    assert check_generator_degree_floor(T_monotone, H, 3)
    assert check_generator_degree_floor(T_cp3, Fraction(1), 3)
    assert check_generator_degree_floor(T_cube, H, 2)


def test_bounding_modules_square(T_monotone):
    data = bounding_modules(T_monotone, H, Fraction(-1, 4), Fraction(1, 4))
    assert data.r_minus == Fraction(1, 4)
    assert data.r_plus == Fraction(3, 4)
    assert data.lower.ring == data.upper.ring == "R0"


def test_bounding_modules_degenerate_rejected(T_monotone):
    with pytest.raises(ValueError):
        bounding_modules(T_monotone, H, Fraction(0), Fraction(0))


def test_bounding_modules_nonmonotone_rejected(T_p12):
    with pytest.raises(ToricHypothesisError):
        bounding_modules(T_p12, H, Fraction(-1, 4), Fraction(1, 4))


def test_bounding_modules_projective_plane(T_cp2):
    # the kernel subspace collapses, so the inclusion holds trivially
    data = bounding_modules(T_cp2, Fraction(0), Fraction(-1, 2), Fraction(1, 2))
    assert data.lower.ring == data.upper.ring == "ZeroRing"
    assert data.r_minus == Fraction(-1, 2)
    assert data.r_plus == Fraction(1, 2)


def test_bounding_sandwich_on_random_monomials(T_monotone):
    rng = random.Random(21)
    data = bounding_modules(T_monotone, H, Fraction(-1, 4), Fraction(1, 4))
    for _ in range(20):
        exps = tuple(rng.randint(-2, 2) for _ in range(4))
        q = LaurentPoly.monomial(exps)
        in_upper = kernel_membership(q, data.upper)
        in_lower = kernel_membership(q, data.lower)
        assert not in_upper or in_lower


def test_nullstellensatz_exponents_square(T_monotone):
    exps = nullstellensatz_exponents(T_monotone, H, 2)
    assert exps == (2, 2, 2, 2)


def test_nullstellensatz_high_degree_monomials_member(T_monotone):
    rng = random.Random(33)
    exps = nullstellensatz_exponents(T_monotone, H, 2)
    total = sum(exps)
    for _ in range(10):
        # random composition of total degree >= sum of the exponents
        target = total + rng.randint(0, 2)
        cuts = sorted(rng.randint(0, target) for _ in range(3))
        parts = (
            cuts[0],
            cuts[1] - cuts[0],
            cuts[2] - cuts[1],
            target - cuts[2],
        )
        assert monomial_ideal_member(T_monotone, H, 2, parts)


def test_nullstellensatz_cpn_rejected(T_cp2):
    with pytest.raises(ToricHypothesisError):
        nullstellensatz_exponents(T_cp2, Fraction(1), 2)


def test_nullstellensatz_cap_exceeded(T_monotone):
    with pytest.raises(InconclusiveError):
        nullstellensatz_exponents(T_monotone, H, 2, cap=1)


def test_witness_monotone_square(T_monotone):
    w = find_minimal_degree_element(T_monotone, H)
    assert isinstance(w, MinimalDegreeWitness)
    km = kernel_K0(T_monotone, H, 2)
    # restriction is a scalar multiple of the first coordinate restriction
    target = restrict(LaurentPoly.monomial((1, 0, 0, 0)), km.subspace)
    assert w.restriction.is_scalar_multiple_of(target) is not None
    assert w.restriction.degree() == 1
    assert w.verify(km)


def test_witness_nonmonotone_square(T_p12):
    w = find_minimal_degree_element(T_p12, H)
    assert isinstance(w, NoMinimalElement)


def test_witness_cpn_guard(T_cp2):
    with pytest.raises(ToricHypothesisError):
        find_minimal_degree_element(T_cp2, H)


def test_witness_shift_invariance(T_monotone):
    w = find_minimal_degree_element(T_monotone, H)
    km = kernel_K0(T_monotone, H, 2)
    for m in [(1, 0), (0, 1), (1, 1), (2, -1)]:
        moved = tuple(
            a + b for a, b in zip(w.monomial, T_monotone.iota_apply(m))
        )
        shifted_module = novikov_shift(km.module, m)
        assert not membership(LaurentPoly.monomial(moved), shifted_module, km.subspace)
        for i in range(4):
            succ = tuple(x + (1 if j == i else 0) for j, x in enumerate(moved))
            assert membership(LaurentPoly.monomial(succ), shifted_module, km.subspace)


def test_degree_floor_exhaustive_square(T_monotone):
    for r in (H, Fraction(1)):
        violations, checked = degree_floor_violations(T_monotone, r, 2, box=2)
        assert violations == []
        assert checked > 0


def test_translated_point_bound(T_monotone, T_cube, T_cp3, T_p12):
    bound, witness = translated_point_bound(T_monotone)
    assert bound == 2
    assert isinstance(witness, MinimalDegreeWitness)
    with pytest.raises(ToricHypothesisError, match="projective"):
        translated_point_bound(T_cp3)
    with pytest.raises(ToricHypothesisError, match="monotone"):
        translated_point_bound(T_p12)


def test_translated_point_bound_cube(T_cube):
    bound, witness = translated_point_bound(T_cube)
    assert bound == 2
    assert isinstance(witness, MinimalDegreeWitness)
