import random
from fractions import Fraction

from toricspec.groebner import buchberger, ideal_member, normal_form, s_polynomial, saturate
from toricspec.polys import Poly, grevlex_key


def P(nvars, terms):
    return Poly(nvars, {e: Fraction(c) for e, c in terms.items()})


def test_grevlex_leading():
    # x*y^2 beats x^2 in grevlex? deg 3 > 2, yes; among degree 3: x^2*y > x*y^2
    f = P(2, {(2, 1): 1, (1, 2): 1})
    assert f.leading(grevlex_key)[0] == (2, 1)


def test_normal_form_linear_substitution():
    # reduce x0 modulo x0 - x1: remainder is x1
    f = P(2, {(1, 0): 1})
    g = P(2, {(1, 0): 1, (0, 1): -1})
    assert normal_form(f, [g]).terms == {(0, 1): Fraction(1)}


def test_s_polynomial_cancels_leads():
    f = P(2, {(2, 0): 1, (0, 1): 1})
    g = P(2, {(1, 1): 1, (0, 0): 1})
    s = s_polynomial(f, g)
    lead_exps = {e for e in s.terms}
    assert (2, 1) not in lead_exps


def test_buchberger_textbook_example():
    # <x^2 - y, x^3 - x> over Q[x, y]
    f = P(2, {(2, 0): 1, (0, 1): -1})
    g = P(2, {(3, 0): 1, (1, 0): -1})
    gb = buchberger([f, g])
    # y^2 - y, x*y - x, x^2 - y is the reduced grevlex basis
    assert ideal_member(P(2, {(0, 2): 1, (0, 1): -1}), gb)
    assert ideal_member(P(2, {(1, 1): 1, (1, 0): -1}), gb)
    assert not ideal_member(P(2, {(1, 0): 1}), gb)


def test_buchberger_monomials_plus_linear():
    # <x0*x1, x2*x3, x0-x1, x2-x3, x0+x2> reduces membership to powers
    n = 4
    gens = [
        P(n, {(1, 1, 0, 0): 1}),
        P(n, {(0, 0, 1, 1): 1}),
        P(n, {(1, 0, 0, 0): 1, (0, 1, 0, 0): -1}),
        P(n, {(0, 0, 1, 0): 1, (0, 0, 0, 1): -1}),
        P(n, {(1, 0, 0, 0): 1, (0, 0, 1, 0): 1}),
    ]
    gb = buchberger(gens)
    for i in range(4):
        e1 = tuple(2 if j == i else 0 for j in range(4))
        e0 = tuple(1 if j == i else 0 for j in range(4))
        assert ideal_member(P(n, {e1: 1}), gb)
        assert not ideal_member(P(n, {e0: 1}), gb)


def test_membership_is_witnessed_random():
    # random combinations of the generators must reduce to zero
    rng = random.Random(5)
    f = P(2, {(2, 0): 1, (0, 1): -1})
    g = P(2, {(1, 1): 1, (0, 0): 3})
    gb = buchberger([f, g])
    for _ in range(25):
        c1 = P(2, {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-3, 3)})
        c2 = P(2, {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-3, 3)})
        assert ideal_member(c1 * f + c2 * g, gb)


def test_saturate_prime_linear_ideal_is_fixed():
    # <x0 - x1> : (x0 x1)^inf = <x0 - x1>
    g = P(2, {(1, 0): 1, (0, 1): -1})
    sat = saturate([g], (1, 1))
    gb = buchberger(sat)
    assert ideal_member(g, gb)
    assert not ideal_member(P(2, {(1, 0): 1}), gb)


def test_saturate_extracts_hidden_factor():
    # <x0^2 * x1> : x0^inf = <x1>
    g = P(2, {(2, 1): 1})
    sat = buchberger(saturate([g], (1, 0)))
    assert ideal_member(P(2, {(0, 1): 1}), sat)
    assert not ideal_member(P(2, {(1, 0): 1}), sat)


def test_saturate_whole_ring():
    # <x0, x1> : (x0 x1)^inf = (1)
    gens = [P(2, {(1, 0): 1}), P(2, {(0, 1): 1})]
    sat = buchberger(saturate(gens, (1, 1)))
    assert ideal_member(P(2, {(0, 0): 1}), sat)
