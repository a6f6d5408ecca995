"""Bounding modules, Nullstellensatz exponents, and minimal-degree witnesses.

In the proportional (monotone) case every module element has homogeneity
degree at least threshold * min_chern, the polynomial part of the module plus
the relation ideal is zero-dimensional away from the origin, and some
monomial class q escapes the module while all its coordinate successors u_i*q
fall in.  The witness search shifts the level up by a positive lattice
direction until the constant 1 escapes, walks monomials breadth-first by
(total degree, lex), and translates back; the resulting point count lower
bound is min_chern per unit period.
"""

from dataclasses import dataclass
from fractions import Fraction

from toricspec.lattice import IntVec
from toricspec.laurent import (
    InconclusiveError,
    KernelModule,
    LaurentPoly,
    MonomialModule,
    RestrictedElement,
    WINDOW_CAP,
    _reduced_ideal_gb,
    kernel_K0,
    membership,
    membership_certified,
    novikov_shift,
    reduce_modulo,
    restrict,
    restriction_class_key,
    verify_certificate,
)
from toricspec.polys import Poly
from toricspec.polytope import ToricData, ToricHypothesisError, is_cpn, rationality_check


@dataclass(frozen=True)
class BoundingData:
    nu: Fraction
    c_minus: Fraction
    c_plus: Fraction
    r_minus: Fraction
    r_plus: Fraction
    lower: KernelModule   # projection of the level-r_minus module (outer bound)
    upper: KernelModule   # projection of the level-r_plus module (inner bound)


@dataclass
class MinimalDegreeWitness:
    monomial: IntVec                 # exponents of q, possibly negative
    restriction: RestrictedElement
    nu: Fraction
    shift: IntVec                    # lattice translation used to normalize degrees
    shifted_monomial: IntVec         # the breadth-first hit, before translating back
    successor_certificates: dict     # i -> bounded-degree certificate for u_i * q
    windows: dict                    # i -> window at which the certificate was taken

    def laurent(self) -> LaurentPoly:
        return LaurentPoly.monomial(self.monomial)

    def verify(self, km: KernelModule, degree_bound: int = 8) -> bool:
        """Re-check all n + 1 verdicts on the bounded-degree backend alone."""
        if membership(self.laurent(), km.module, km.subspace, backend="brute",
                      degree_bound=degree_bound):
            return False
        n = km.module.toric.n
        for i in range(n):
            succ = list(self.monomial)
            succ[i] += 1
            if not membership(LaurentPoly.monomial(tuple(succ)), km.module, km.subspace,
                              backend="brute", degree_bound=degree_bound):
                return False
            cert = self.successor_certificates.get(i)
            if cert is not None and not verify_certificate(
                LaurentPoly.monomial(tuple(succ)), km.module, km.subspace, cert,
                window=self.windows.get(i),
            ):
                return False
        return True


@dataclass(frozen=True)
class NoMinimalElement:
    """The projected module is the whole ring; no witness exists."""

    nu: Fraction
    reason: str = "module is the whole ring"


def min_degree_bound(r, min_chern: int) -> Fraction:
    """Every element of the level-r module has homogeneity degree >= r * min_chern."""
    return Fraction(r) * min_chern


def check_generator_degree_floor(toric: ToricData, r, window: int) -> bool:
    if toric.min_chern is None:
        raise ToricHypothesisError("not monotone")
    bound = min_degree_bound(r, toric.min_chern)
    module = MonomialModule(toric=toric, threshold=Fraction(r), window=window)
    return all(Fraction(sum(g)) >= bound for g in module.generators())


def bounding_modules(toric: ToricData, nu, c_minus, c_plus, window: int = 2) -> BoundingData:
    """Sandwich the level-nu kernel module between explicit lattice modules at
    levels nu + c_minus and nu + c_plus, verifying the inclusion on generators."""
    c_minus, c_plus = Fraction(c_minus), Fraction(c_plus)
    if not c_minus < c_plus:
        raise ValueError("need c_minus < c_plus")
    if not rationality_check(toric):
        raise ToricHypothesisError("p is not primitive integral")
    if toric.min_chern is None:
        raise ToricHypothesisError("not monotone")
    nu = Fraction(nu)
    r_minus, r_plus = nu + c_minus, nu + c_plus
    lower = kernel_K0(toric, r_minus, window)
    upper = kernel_K0(toric, r_plus, window)
    for g in upper.module.generators():
        if not membership(LaurentPoly.monomial(g), lower.module, lower.subspace):
            raise InconclusiveError("bounding inclusion failed on a generator")
    return BoundingData(
        nu=nu, c_minus=c_minus, c_plus=c_plus, r_minus=r_minus, r_plus=r_plus,
        lower=lower, upper=upper,
    )


# --- the polynomial-part ideal ------------------------------------------------

_IDEAL_CACHE: dict = {}


def _polynomial_part_ideal(km: KernelModule, window: int):
    """Groebner data of the positive-part monomial ideal plus the saturated
    relation ideal.  The polynomial part of the module is exactly the monomial
    ideal generated by the componentwise-positive parts of the generators."""
    key = (km.module, km.subspace.basis, window)
    if key not in _IDEAL_CACHE:
        n = km.module.toric.n
        positive = [tuple(max(x, 0) for x in g) for g in km.module.generators(window)]
        _IDEAL_CACHE[key] = _reduced_ideal_gb(positive, km.subspace, n)
    return _IDEAL_CACHE[key]


def _ideal_member_at(poly: Poly, km: KernelModule, window: int) -> bool:
    gb, rel = _polynomial_part_ideal(km, window)
    return reduce_modulo(poly, gb, rel).is_zero()


def _ideal_member_stable(poly: Poly, km: KernelModule) -> bool:
    w = km.module.window
    prev = _ideal_member_at(poly, km, w)
    while w + 2 <= WINDOW_CAP:
        cur = _ideal_member_at(poly, km, w + 2)
        if cur == prev:
            return cur
        prev = cur
        w += 2
    raise InconclusiveError("ideal window protocol failed to stabilize")


def nullstellensatz_exponents(toric: ToricData, r, window: int, cap: int = 32) -> tuple[int, ...]:
    """Per coordinate, the least exponent with u_i^m in the polynomial-part
    ideal of the level-r module plus the relation ideal."""
    if not rationality_check(toric):
        raise ToricHypothesisError("p is not primitive integral")
    if toric.min_chern is None:
        raise ToricHypothesisError("not monotone")
    if is_cpn(toric):
        raise ToricHypothesisError("projective-space type excluded")
    km = kernel_K0(toric, Fraction(r), window)
    n = toric.n
    out = []
    for i in range(n):
        found = None
        for m in range(cap + 1):
            exps = tuple(m if j == i else 0 for j in range(n))
            if _ideal_member_stable(Poly.monomial(n, exps), km):
                found = m
                break
        if found is None:
            raise InconclusiveError(f"no exponent below cap {cap} for coordinate {i + 1}")
        out.append(found)
    return tuple(out)


def monomial_ideal_member(toric: ToricData, r, window: int, exps) -> bool:
    """Membership of a polynomial monomial in the polynomial-part ideal."""
    km = kernel_K0(toric, Fraction(r), window)
    return _ideal_member_stable(Poly.monomial(toric.n, tuple(exps)), km)


# --- the witness search ---------------------------------------------------------


def _monomials_of_degree_lex(nvars, degree):
    def rec(rem, length):
        if length == 1:
            yield (rem,)
            return
        for first in range(rem + 1):
            for rest in rec(rem - first, length - 1):
                yield (first,) + rest
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    yield from rec(degree, nvars)


def _scaled_shift(toric: ToricData, nu: Fraction) -> IntVec:
    """Smallest positive multiple s*b with (nu + p(s*b)) * min_chern >= 1, so
    the shifted module sits strictly above degree zero."""
    r0 = toric.p_value(toric.b)
    n_m = toric.min_chern if toric.min_chern is not None else 1
    s = 1
    while (nu + s * r0) * n_m < 1:
        s += 1
    return tuple(s * x for x in toric.b)


def find_minimal_degree_element(toric: ToricData, nu, window: int = 2, degree_bound: int = 8):
    """A monomial class q outside the level-nu kernel module whose coordinate
    successors u_i * q all fall in; or NoMinimalElement when the module is the
    whole ring.

    Search: translate the level up along a strictly positive lattice direction
    until degree 0 is excluded, walk monomials breadth-first ordered by total
    degree then lex, stop at the first monomial all of whose successors are
    members, translate back, and certify every verdict against the original
    module.
    """
    nu = Fraction(nu)
    if not rationality_check(toric):
        raise ToricHypothesisError("p is not primitive integral")
    if is_cpn(toric):
        raise ToricHypothesisError("projective-space type excluded")
    km = kernel_K0(toric, nu, window)
    n = toric.n
    if toric.min_chern is None:
        # without proportionality the module can swallow the whole ring; probe
        # the constant at the given level
        if membership(LaurentPoly.one(n), km.module, km.subspace, degree_bound=degree_bound):
            return NoMinimalElement(nu=nu)
        raise ToricHypothesisError("not monotone")
    shift = _scaled_shift(toric, nu)
    shifted = novikov_shift(km.module, shift)
    if membership(LaurentPoly.one(n), shifted, km.subspace, degree_bound=degree_bound):
        raise InconclusiveError("degree normalization failed to exclude the constant")
    exps = nullstellensatz_exponents(toric, nu + toric.p_value(shift), window)
    cap = sum(exps) + 2
    member_cache: dict = {}

    def is_member(a):
        # verdicts only depend on the restriction class of the monomial
        key = restriction_class_key(km.subspace, a)
        if key not in member_cache:
            member_cache[key] = membership(
                LaurentPoly.monomial(a), shifted, km.subspace, degree_bound=degree_bound
            )
        return member_cache[key]

    iota_shift = toric.iota_apply(shift)
    for degree in range(cap + 1):
        for a in _monomials_of_degree_lex(n, degree):
            if is_member(a):
                continue
            successors = [tuple(x + (1 if j == i else 0) for j, x in enumerate(a)) for i in range(n)]
            if all(is_member(s) for s in successors):
                q_exps = tuple(x - y for x, y in zip(a, iota_shift))
                q = LaurentPoly.monomial(q_exps)
                if membership(q, km.module, km.subspace, degree_bound=degree_bound):
                    raise InconclusiveError("witness failed re-check on the original module")
                certs, windows = {}, {}
                for i in range(n):
                    succ = tuple(x + (1 if j == i else 0) for j, x in enumerate(q_exps))
                    ok, cert, w = membership_certified(
                        LaurentPoly.monomial(succ), km.module, km.subspace, degree_bound
                    )
                    if not ok:
                        raise InconclusiveError("successor failed re-check on the original module")
                    certs[i], windows[i] = cert, w
                return MinimalDegreeWitness(
                    monomial=q_exps,
                    restriction=restrict(q, km.subspace),
                    nu=nu,
                    shift=shift,
                    shifted_monomial=a,
                    successor_certificates=certs,
                    windows=windows,
                )
    raise InconclusiveError("no witness below the degree cap")


def degree_floor_violations(toric: ToricData, r, window: int, box: int = 2):
    """Exhaustive scan: monomial classes of homogeneity degree below
    r * min_chern must stay outside the projected module.  Returns the list of
    violating exponent vectors (empty = pass) and the number of classes checked."""
    if toric.min_chern is None:
        raise ToricHypothesisError("not monotone")
    bound = min_degree_bound(r, toric.min_chern)
    km = kernel_K0(toric, Fraction(r), window)
    n = toric.n
    seen = set()
    violations = []
    checked = 0

    def boxes(i):
        if i == n:
            yield ()
            return
        for x in range(-box, box + 1):
            for rest in boxes(i + 1):
                yield (x,) + rest

    for a in boxes(0):
        if Fraction(sum(a)) >= bound:
            continue
        key = restriction_class_key(km.subspace, a)
        if key in seen:
            continue
        seen.add(key)
        checked += 1
        if membership(LaurentPoly.monomial(a), km.module, km.subspace):
            violations.append(a)
    return violations, checked


def translated_point_bound(toric: ToricData, nu=Fraction(1, 2), window: int = 2):
    """Lower bound for the number of translated points per period, with its
    witness chain.  Returns (min_chern, witness)."""
    if not rationality_check(toric):
        raise ToricHypothesisError("p is not primitive integral")
    if toric.min_chern is None:
        raise ToricHypothesisError("not monotone")
    if is_cpn(toric):
        raise ToricHypothesisError("projective-space type excluded")
    witness = find_minimal_degree_element(toric, nu, window)
    if isinstance(witness, NoMinimalElement):
        raise ToricHypothesisError("kernel module is the whole ring")
    return toric.min_chern, witness
