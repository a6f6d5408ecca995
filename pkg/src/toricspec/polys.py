"""Multivariate polynomials over Q with tuple exponents.

Shared between the restriction machinery (numerators in the subspace
coordinates) and the Groebner engine.  Exponents are nonnegative; Laurent
bookkeeping lives elsewhere.
"""

from fractions import Fraction


def grevlex_key(exps):
    """Sort key realizing graded reverse lexicographic order (max = leading)."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def elim_last_key(exps):
    """Block order eliminating the last variable: compare its exponent first,
    then grevlex on the rest."""
    return (exps[-1], grevlex_key(exps[:-1]))


class Poly:
    """Polynomial in `nvars` variables with Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for exps, coeff in terms.items():
                c = Fraction(coeff)
                if c:
                    self.terms[tuple(exps)] = c

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, value):
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def monomial(cls, nvars, exps, coeff=1):
        return cls(nvars, {tuple(exps): Fraction(coeff)})

    @classmethod
    def linear_form(cls, coeffs):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = Fraction(c)
        return cls(n, terms)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.nvars, out)

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Fraction) or isinstance(other, int):
            if not other:
                return Poly.zero(self.nvars)
            return Poly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def term_mul(self, exps, coeff=1):
        return Poly(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exps)): c * coeff for e, c in self.terms.items()},
        )

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_components(self):
        comps = {}
        for e, c in self.terms.items():
            comps.setdefault(sum(e), {})[e] = c
        return {d: Poly(self.nvars, t) for d, t in sorted(comps.items())}

    def leading(self, key=grevlex_key):
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def monic(self, key=grevlex_key):
        if not self.terms:
            return self
        _, c = self.leading(key)
        return self * (1 / c)

    def exact_divide(self, divisor):
        """Quotient if divisor divides exactly, else None."""
        if divisor.is_zero():
            raise ZeroDivisionError
        rem = self
        q = {}
        de, dc = divisor.leading()
        while rem.terms:
            e, c = rem.leading()
            diff = tuple(a - b for a, b in zip(e, de))
            if any(x < 0 for x in diff):
                return None
            q[diff] = c / dc
            rem = rem - divisor.term_mul(diff, c / dc)
        return Poly(self.nvars, q)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"x{i}^{p}" if p > 1 else f"x{i}" for i, p in enumerate(e) if p
            )
            if mono:
                bits.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                bits.append(str(c))
        return " + ".join(bits)

    def render(self, names):
        """Canonical display with named variables, graded-lex term order."""
        if not self.terms:
            return "0"
        def gl_key(e):
            return (sum(e), e)
        bits = []
        for e in sorted(self.terms, key=gl_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{names[i]}^{p}" if p > 1 else names[i] for i, p in enumerate(e) if p
            )
            if not mono:
                bits.append(str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c}*{mono}")
        return " + ".join(bits).replace("+ -", "- ")
