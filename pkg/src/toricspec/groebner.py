"""Buchberger's algorithm over Q and ideal saturation by a monomial.

Graded reverse lexicographic order is the default; saturation adjoins an
inverse variable t with the relation t*f - 1 and eliminates it through a
block order, so the returned generators live back in the original variables.
"""

from fractions import Fraction

from toricspec.polys import Poly, elim_last_key, grevlex_key


def normal_form(f: Poly, basis, key=grevlex_key) -> Poly:
    """Remainder of f under multivariate division by `basis`."""
    if not basis:
        return f
    leads = [g.leading(key) for g in basis]
    rem_terms = {}
    work = f
    while work.terms:
        e, c = work.leading(key)
        reduced = False
        for g, (ge, gc) in zip(basis, leads):
            diff = tuple(a - b for a, b in zip(e, ge))
            if all(x >= 0 for x in diff):
                work = work - g.term_mul(diff, c / gc)
                reduced = True
                break
        if not reduced:
            rem_terms[e] = c
            work = Poly(work.nvars, {k: v for k, v in work.terms.items() if k != e})
    return Poly(f.nvars, rem_terms)


def _lcm(e1, e2):
    return tuple(max(a, b) for a, b in zip(e1, e2))


def _disjoint(e1, e2):
    return all(a == 0 or b == 0 for a, b in zip(e1, e2))


def s_polynomial(f: Poly, g: Poly, key=grevlex_key) -> Poly:
    fe, fc = f.leading(key)
    ge, gc = g.leading(key)
    l = _lcm(fe, ge)
    return f.term_mul(tuple(a - b for a, b in zip(l, fe)), 1 / fc) - g.term_mul(
        tuple(a - b for a, b in zip(l, ge)), 1 / gc
    )


def interreduce(basis, key=grevlex_key):
    """Reduce each element against the others; drop zeros; monic output."""
    work = [g.monic(key) for g in basis if not g.is_zero()]
    changed = True
    while changed:
        changed = False
        for i in range(len(work)):
            others = work[:i] + work[i + 1:]
            r = normal_form(work[i], others, key)
            if r.terms != work[i].terms:
                changed = True
                if r.is_zero():
                    work = others
                else:
                    work = others + [r.monic(key)]
                break
    return sorted(work, key=lambda g: g.leading(key)[0])


def buchberger(gens, key=grevlex_key):
    """Reduced Groebner basis of the ideal generated by `gens`."""
    basis = interreduce(gens, key)
    if not basis:
        return []
    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}
    processed = set()
    while pairs:
        # normal strategy: smallest lcm first
        i, j = min(
            pairs,
            key=lambda ij: key(_lcm(basis[ij[0]].leading(key)[0], basis[ij[1]].leading(key)[0])),
        )
        pairs.remove((i, j))
        processed.add((i, j))
        fi, fj = basis[i], basis[j]
        ei, ej = fi.leading(key)[0], fj.leading(key)[0]
        if _disjoint(ei, ej):
            continue
        l = _lcm(ei, ej)
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            ek = basis[k].leading(key)[0]
            if all(a >= b for a, b in zip(l, ek)):
                p1 = (max(i, k), min(i, k))
                p2 = (max(j, k), min(j, k))
                if p1 in processed and p2 in processed:
                    skip = True
                    break
        if skip:
            continue
        h = normal_form(s_polynomial(fi, fj, key), basis, key)
        if h.is_zero():
            continue
        basis.append(h.monic(key))
        new = len(basis) - 1
        pairs.update((new, t) for t in range(new))
    return interreduce(basis, key)


def ideal_member(f: Poly, groebner_basis, key=grevlex_key) -> bool:
    return normal_form(f, groebner_basis, key).is_zero()


def saturate(gens, factor_exps) -> list[Poly]:
    """Generators of (I : f^infinity) for the monomial f = prod x_i^e_i.

    Adjoins t with t*f = 1, computes an eliminating Groebner basis (t in its
    own block, compared first), and keeps the t-free elements.
    """
    if not gens:
        return []
    n = gens[0].nvars
    lifted = [Poly(n + 1, {e + (0,): c for e, c in g.terms.items()}) for g in gens]
    relation = Poly(
        n + 1,
        {tuple(factor_exps) + (1,): Fraction(1), (0,) * (n + 1): Fraction(-1)},
    )
    gb = buchberger(lifted + [relation], key=elim_last_key)
    out = []
    for g in gb:
        if all(e[-1] == 0 for e in g.terms):
            out.append(Poly(n, {e[:-1]: c for e, c in g.terms.items()}))
    return out
