"""Delzant polytopes and the reduction data attached to them.

A polytope is given by primitive integer facet conormals v_j and positive
rational offsets a_j, cutting out {x : <x, v_j> + a_j >= 0}.  From it we
compute the conormal map, the kernel lattice with its inclusion into Z^n,
the induced rational covector p and integral covector c, the minimal
proportionality factor between them, the p-kernel sublattice, and a strictly
positive lattice direction b.  Compactness is decided by exact
Fourier-Motzkin elimination on the recession cone; smoothness by brute-force
vertex enumeration plus basis-extension tests.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from toricspec.lattice import (
    IntMat,
    IntVec,
    LatticeBasis,
    extends_to_lattice_basis,
    integer_kernel,
    is_primitive,
    mat_vec,
    rref,
    solve_rational,
    vec_gcd,
)


class ToricHypothesisError(Exception):
    """A hypothesis of the pipeline fails (non-compact, non-smooth, nonmonotone...)."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


@dataclass(frozen=True)
class DelzantPolytope:
    d: int
    facets: tuple[tuple[IntVec, Fraction], ...]  # (conormal v_j, offset a_j)

    def __post_init__(self):
        if len(self.facets) < self.d + 1:
            raise ValueError("need at least d+1 facets")
        for v, a in self.facets:
            if len(v) != self.d:
                raise ValueError("conormal length mismatch")
            if not is_primitive(v):
                raise ValueError(f"conormal {v} is not primitive")
            if a <= 0:
                raise ValueError("offsets must be positive")

    @property
    def n(self) -> int:
        return len(self.facets)

    def conormal_matrix(self) -> IntMat:
        """d x n matrix whose columns are the conormals."""
        return tuple(tuple(v[i] for v, _ in self.facets) for i in range(self.d))

    def offsets(self) -> tuple[Fraction, ...]:
        return tuple(a for _, a in self.facets)


@dataclass(frozen=True)
class ValidationReport:
    compact: bool
    smooth: bool
    vertices: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class ToricData:
    n: int
    d: int
    beta: IntMat                      # d x n, columns are the conormals
    kappa: LatticeBasis               # kernel lattice of beta, inside Z^n
    iota: IntMat                      # n x k inclusion, columns = kappa vectors
    p: tuple[Fraction, ...]           # iota^*(a), in the dual kappa basis
    chern: tuple[int, ...]            # c(m) = sum of iota(m) coordinates
    min_chern: int | None             # N with chern == N * p, if any
    k0: LatticeBasis                  # ker(p) inside the kappa lattice
    b: IntVec                         # strictly positive lattice direction
    hbar: Fraction | None             # 1 exactly when p is primitive integral
    polytope: DelzantPolytope

    @property
    def k(self) -> int:
        return len(self.kappa)

    def iota_apply(self, m) -> tuple:
        """Coordinates of a kappa-basis vector m inside Q^n."""
        return mat_vec(self.iota, m)

    def p_value(self, m) -> Fraction:
        return sum((pi * mi for pi, mi in zip(self.p, m)), Fraction(0))

    def chern_value(self, m):
        return sum(ci * mi for ci, mi in zip(self.chern, m))


# --- exact feasibility (Fourier-Motzkin) -----------------------------------


def _normalize_ineq(coeffs, const):
    scale = None
    for c in list(coeffs) + [const]:
        if c != 0:
            scale = abs(c)
            break
    if scale is None:
        return tuple(Fraction(0) for _ in coeffs), Fraction(0)
    return tuple(Fraction(c) / scale for c in coeffs), Fraction(const) / scale


def fourier_motzkin_feasible(ineqs, nvars: int) -> bool:
    """Feasibility of {x : sum c_i x_i + const >= 0 for each (c, const)} over Q."""
    system = {(_normalize_ineq(c, k)) for c, k in ineqs}
    for var in range(nvars):
        pos, neg, zero = [], [], []
        for coeffs, const in system:
            cv = coeffs[var]
            if cv > 0:
                pos.append((coeffs, const))
            elif cv < 0:
                neg.append((coeffs, const))
            else:
                zero.append((coeffs, const))
        new = set(zero)
        for cp, kp in pos:
            for cn, kn in neg:
                a, b = cp[var], -cn[var]
                coeffs = tuple(b * x + a * y for x, y in zip(cp, cn))
                new.add(_normalize_ineq(coeffs, b * kp + a * kn))
        system = new
    return all(const >= 0 for _, const in system)


def rational_feasible(eqs, ineqs, nvars: int) -> bool:
    """Feasibility of {A x = b (eqs), C x + k >= 0 (ineqs)}: eliminate the
    equalities by exact substitution, then Fourier-Motzkin the rest."""
    if eqs:
        aug = [[Fraction(c) for c in coeffs] + [Fraction(-const)] for coeffs, const in eqs]
        red, pivots = rref(aug)
        for row in red:
            if all(x == 0 for x in row[:-1]) and row[-1] != 0:
                return False
        free = [c for c in range(nvars) if c not in pivots]
        # x_pivot = rhs - sum(free coeff * x_free)
        subs = {}
        for r, pc in enumerate(pivots):
            if pc == nvars:
                return False
            subs[pc] = (red[r][-1], {fc: -red[r][fc] for fc in free})
        reduced = []
        for coeffs, const in ineqs:
            new_const = Fraction(const)
            new_coeffs = [Fraction(0)] * len(free)
            for i, c in enumerate(coeffs):
                if c == 0:
                    continue
                if i in subs:
                    rhs, fdep = subs[i]
                    new_const += c * rhs
                    for fi, fc in enumerate(free):
                        new_coeffs[fi] += c * fdep.get(fc, Fraction(0))
                else:
                    new_coeffs[free.index(i)] += Fraction(c)
            reduced.append((tuple(new_coeffs), new_const))
        return fourier_motzkin_feasible(reduced, len(free))
    return fourier_motzkin_feasible(ineqs, nvars)


# --- validation -------------------------------------------------------------


def _enumerate_vertices(poly: DelzantPolytope):
    """All vertices with their active facet sets, by brute force over d-subsets."""
    d, n = poly.d, poly.n
    verts = {}
    for subset in combinations(range(n), d):
        rows = [[Fraction(c) for c in poly.facets[j][0]] for j in subset]
        rhs = [-poly.facets[j][1] for j in subset]
        red, pivots = rref([row + [r] for row, r in zip(rows, rhs)])
        if len(pivots) != d or d in pivots:
            continue
        x = [Fraction(0)] * d
        for r, c in enumerate(pivots):
            x[c] = red[r][-1]
        feasible = True
        for v, a in poly.facets:
            if sum(Fraction(vi) * xi for vi, xi in zip(v, x)) + a < 0:
                feasible = False
                break
        if feasible:
            verts.setdefault(tuple(x), set()).update(subset)
    # active sets include every facet passing through the vertex
    out = {}
    for x in verts:
        active = set()
        for j, (v, a) in enumerate(poly.facets):
            if sum(Fraction(vi) * xi for vi, xi in zip(v, x)) + a == 0:
                active.add(j)
        out[x] = frozenset(active)
    return out


def validate(poly: DelzantPolytope) -> ValidationReport:
    """Compactness (trivial recession cone, by Fourier-Motzkin), smoothness
    (simple vertices whose conormals extend to a lattice basis), vertex list.

    Raises ToricHypothesisError on an empty polytope.
    """
    d = poly.d
    full = [(tuple(Fraction(c) for c in v), Fraction(a)) for v, a in poly.facets]
    if not fourier_motzkin_feasible(full, d):
        raise ToricHypothesisError("empty polytope")
    cone = [(tuple(Fraction(c) for c in v), Fraction(0)) for v, _ in poly.facets]
    compact = True
    for i in range(d):
        for sign in (1, -1):
            ray = [Fraction(0)] * d
            ray[i] = Fraction(sign)
            probe = cone + [(tuple(ray), Fraction(-1))]  # sign*x_i >= 1
            if fourier_motzkin_feasible(probe, d):
                compact = False
                break
        if not compact:
            break
    verts = _enumerate_vertices(poly)
    smooth = bool(verts)
    for x, active in verts.items():
        if len(active) != d:
            smooth = False
            break
        if not extends_to_lattice_basis([poly.facets[j][0] for j in sorted(active)], d):
            smooth = False
            break
    vertices = tuple(sorted(verts))
    return ValidationReport(compact=compact, smooth=smooth, vertices=vertices)


# --- reduction data ---------------------------------------------------------


def rationality_check(data: ToricData) -> bool:
    """p is a primitive integral covector."""
    if any(pi.denominator != 1 for pi in data.p):
        return False
    ints = [pi.numerator for pi in data.p]
    if not any(ints):
        return False
    return vec_gcd(ints) == 1


def monotonicity_check(data: ToricData) -> int | None:
    """The unique positive integer N with chern = N * p, if it exists."""
    ratio = None
    for ci, pi in zip(data.chern, data.p):
        if pi == 0:
            if ci != 0:
                return None
            continue
        r = Fraction(ci) / pi
        if ratio is None:
            ratio = r
        elif ratio != r:
            return None
    if ratio is None or ratio <= 0 or ratio.denominator != 1:
        return None
    return ratio.numerator


def _positive_b_candidates(iota: IntMat, k: int, grade: int):
    """Lattice vectors of 1-norm `grade` in Z^k, lexicographically increasing."""

    def shells(rem, length):
        if length == 0:
            if rem == 0:
                yield ()
            return
        for head in range(-rem, rem + 1):
            for tail in shells(rem - abs(head), length - 1):
                yield (head,) + tail

    yield from sorted(shells(grade, k))


def find_positive_b(iota: IntMat, k: int, grade_cap: int = 64) -> IntVec:
    """Smallest (graded-lex over 1-norm shells) lattice vector b with iota(b)
    componentwise strictly positive.

    Strict positivity makes the level set sum b_j |z_j|^2 = const compact; it
    exists whenever the polytope is compact.
    """
    for grade in range(1, grade_cap + 1):
        for m in _positive_b_candidates(iota, k, grade):
            img = mat_vec(iota, m)
            if all(x >= 1 for x in img):
                return m
    raise ToricHypothesisError("no strictly positive lattice direction found")


def is_cpn(data: ToricData) -> bool:
    """The p-kernel sublattice is trivial (k = 1), i.e. projective-space type."""
    return len(data.k0) == 0


def toric_data(poly: DelzantPolytope) -> ToricData:
    """All reduction data of a validated polytope; raises on non-compact or
    non-smooth input."""
    report = validate(poly)
    if not report.compact:
        raise ToricHypothesisError("polytope is not compact")
    if not report.smooth:
        raise ToricHypothesisError("polytope is not smooth")
    beta = poly.conormal_matrix()
    kappa = integer_kernel(beta)
    k = len(kappa)
    n = poly.n
    iota = kappa.matrix()
    a = poly.offsets()
    p = tuple(sum((Fraction(iota[j][i]) * a[j] for j in range(n)), Fraction(0)) for i in range(k))
    chern = tuple(sum(iota[j][i] for j in range(n)) for i in range(k))
    # data object is assembled in two steps: p/chern live on it already
    stub = ToricData(
        n=n, d=poly.d, beta=beta, kappa=kappa, iota=iota, p=p, chern=chern,
        min_chern=None, k0=LatticeBasis(k, ()), b=(0,) * k, hbar=None, polytope=poly,
    )
    rational = rationality_check(stub)
    min_chern = monotonicity_check(stub) if rational else None
    # kernel of p inside the kappa lattice: clear denominators first
    denom = 1
    for pi in p:
        denom = denom * pi.denominator // gcd(denom, pi.denominator)
    p_int = tuple(int(pi * denom) for pi in p)
    k0 = integer_kernel((p_int,))
    b = find_positive_b(iota, k)
    return ToricData(
        n=n, d=poly.d, beta=beta, kappa=kappa, iota=iota, p=p, chern=chern,
        min_chern=min_chern, k0=k0, b=b,
        hbar=Fraction(1) if rational else None, polytope=poly,
    )


# --- text format ------------------------------------------------------------


def _format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    """Exact rational literal `p/q` or integer; floating-point forms rejected."""
    text = text.strip()
    if any(ch in text for ch in ".eE"):
        raise ValueError(f"not an exact rational literal: {text!r}")
    return Fraction(text)


def parse_polytope(text: str) -> DelzantPolytope:
    """Line-based format: `dim <d>` then `facet <v_1> ... <v_d> ; <a>` lines,
    `#` starting a comment anywhere."""
    d = None
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "dim":
            if d is not None:
                raise ValueError(f"line {lineno}: duplicate dim")
            d = int(parts[1])
        elif parts[0] == "facet":
            if d is None:
                raise ValueError(f"line {lineno}: facet before dim")
            if ";" not in parts:
                raise ValueError(f"line {lineno}: missing ';' in facet line")
            sep = parts.index(";")
            conormal = tuple(int(x) for x in parts[1:sep])
            if len(conormal) != d:
                raise ValueError(f"line {lineno}: expected {d} conormal entries")
            if sep + 2 != len(parts):
                raise ValueError(f"line {lineno}: expected one offset after ';'")
            facets.append((conormal, parse_fraction(parts[sep + 1])))
        else:
            raise ValueError(f"line {lineno}: unknown directive {parts[0]!r}")
    if d is None:
        raise ValueError("missing dim line")
    return DelzantPolytope(d=d, facets=tuple(facets))


def format_polytope(poly: DelzantPolytope) -> str:
    lines = [f"dim {poly.d}"]
    for v, a in poly.facets:
        lines.append("facet " + " ".join(str(x) for x in v) + " ; " + _format_fraction(a))
    return "\n".join(lines) + "\n"
