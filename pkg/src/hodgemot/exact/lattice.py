"""Integer lattice algebra: Hermite and Smith normal forms, kernels, saturation.

Integer matrices are handled internally as lists of Python ``int`` rows;
the public operations also accept :class:`ExactMatrix` and return it.
Lattices in Z^n are stored by a basis of column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, prod
from typing import Sequence

from ..errors import InvalidInput, NoSolution
from .matrix import (
    ExactMatrix,
    annihilator,
    as_rows,
    expand,
    q_span_vectors,
    rational_part,
    solve,
    span,
    transpose,
)
from .scalar import field_degree, infer_d

__all__ = [
    "xgcd",
    "hnf",
    "snf",
    "hnf_columns",
    "snf_int",
    "integer_kernel",
    "solve_integer",
    "lattice_basis",
    "LatticeBasis",
    "saturate",
    "complete_basis",
    "unimodular_inverse",
    "Membership",
    "subgroup_member",
    "torus_kernel",
    "clear_denominators",
]

IntRows = list[list[int]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) up to sign."""
    if a and b % a == 0:
        # a divides b: plain subtraction, pivot unchanged
        return a, 1, 0
    if b and a % b == 0:
        return b, 0, 1
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return g, x, y


def _int_rows(m) -> IntRows:
    rows = as_rows(m)
    out = []
    for r in rows:
        row = []
        for x in r:
            if not (isinstance(x, Fraction) and x.denominator == 1):
                raise InvalidInput(f"integer matrix required, found entry {x}")
            row.append(int(x))
        out.append(row)
    return out


def clear_denominators(rows: Sequence[Sequence]) -> IntRows:
    """Scale each row of a rational matrix to a primitive-free integer row."""
    out = []
    for r in rows:
        den = 1
        for x in r:
            den = lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in r])
    return out


# ----------------------------------------------------------------------------
# Hermite normal form (column style)


def hnf_columns(a: IntRows, ncols: int) -> tuple[list[list[int]], list[list[int]], list[tuple[int, int]]]:
    """Column HNF of an m x n integer matrix.

    Returns (H columns, U columns, pivots) with M U = H.  Pivot columns
    come first, pivot entries are positive, and entries of a pivot row to
    the left of its pivot are reduced into [0, pivot).
    """
    m = len(a)
    cols = [[a[i][j] for i in range(m)] for j in range(ncols)]
    u = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    pivots: list[tuple[int, int]] = []
    pc = 0
    for r in range(m):
        if pc == ncols:
            break
        for j in range(pc + 1, ncols):
            b = cols[j][r]
            if not b:
                continue
            av = cols[pc][r]
            g, x, y = xgcd(av, b)
            ag, bg = av // g, b // g
            cp, cj = cols[pc], cols[j]
            cols[pc] = [x * s + y * t for s, t in zip(cp, cj)]
            cols[j] = [-bg * s + ag * t for s, t in zip(cp, cj)]
            up, uj = u[pc], u[j]
            u[pc] = [x * s + y * t for s, t in zip(up, uj)]
            u[j] = [-bg * s + ag * t for s, t in zip(up, uj)]
        p = cols[pc][r]
        if not p:
            continue
        if p < 0:
            cols[pc] = [-s for s in cols[pc]]
            u[pc] = [-s for s in u[pc]]
            p = -p
        for k in range(pc):
            q = cols[k][r] // p
            if q:
                cols[k] = [s - q * t for s, t in zip(cols[k], cols[pc])]
                u[k] = [s - q * t for s, t in zip(u[k], u[pc])]
        pivots.append((r, pc))
        pc += 1
    return cols, u, pivots


def hnf(m) -> tuple[ExactMatrix, ExactMatrix]:
    """Column Hermite normal form: returns (H, U) with H = M U, U unimodular."""
    mat = m if isinstance(m, ExactMatrix) else ExactMatrix(m)
    a = _int_rows(mat)
    hcols, ucols, _ = hnf_columns(a, mat.cols)
    h = ExactMatrix(transpose(hcols, mat.rows), mat.cols)
    u = ExactMatrix(transpose(ucols, mat.cols), mat.cols)
    return h, u


# ----------------------------------------------------------------------------
# Smith normal form


def snf_int(a: IntRows, ncols: int) -> tuple[IntRows, IntRows, IntRows]:
    """Smith form of an integer matrix: returns (S, U, V) with U A V = S."""
    m, n = len(a), ncols
    s = [list(r) for r in a]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_combine(i, k, x, y, p, q):
        # row_i <- x*row_i + y*row_k ; row_k <- p*row_i + q*row_k
        for mat in (s, u):
            ri, rk = mat[i], mat[k]
            mat[i] = [x * a1 + y * a2 for a1, a2 in zip(ri, rk)]
            mat[k] = [p * a1 + q * a2 for a1, a2 in zip(ri, rk)]

    def col_combine(j, k, x, y, p, q):
        for mat, rows in ((s, m), (v, n)):
            for r in range(rows):
                a1, a2 = mat[r][j], mat[r][k]
                mat[r][j] = x * a1 + y * a2
                mat[r][k] = p * a1 + q * a2

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if s[i][j] and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best
        if i0 != t:
            s[t], s[i0] = s[i0], s[t]
            u[t], u[i0] = u[i0], u[t]
        if j0 != t:
            for mat, rows in ((s, m), (v, n)):
                for r in range(rows):
                    mat[r][t], mat[r][j0] = mat[r][j0], mat[r][t]
        while True:
            changed = False
            for i in range(t + 1, m):
                b = s[i][t]
                if b:
                    av = s[t][t]
                    g, x, y = xgcd(av, b)
                    row_combine(t, i, x, y, -(b // g), av // g)
                    changed = True
            for j in range(t + 1, n):
                b = s[t][j]
                if b:
                    av = s[t][t]
                    g, x, y = xgcd(av, b)
                    col_combine(t, j, x, y, -(b // g), av // g)
                    changed = True
            if changed:
                continue
            piv = s[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if s[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # fold the offending row into row t and re-clear
            row_combine(t, bad, 1, 1, 0, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return s, u, v


def snf(m) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
    """Smith normal form: returns (S, U, V) with U M V = S diagonal, s_1 | s_2 | ..."""
    mat = m if isinstance(m, ExactMatrix) else ExactMatrix(m)
    s, u, v = snf_int(_int_rows(mat), mat.cols)
    return (ExactMatrix(s, mat.cols), ExactMatrix(u, mat.rows), ExactMatrix(v, mat.cols))


def elementary_divisors(a: IntRows, ncols: int) -> list[int]:
    s, _, _ = snf_int(a, ncols)
    return [s[i][i] for i in range(min(len(a), ncols)) if s[i][i]]


# ----------------------------------------------------------------------------
# kernels, solving, generated lattices


def integer_kernel(rows: Sequence[Sequence], ncols: int) -> list[tuple[int, ...]]:
    """Z-basis of {x in Z^ncols : M x = 0} for a rational matrix M (saturated)."""
    a = clear_denominators(rows)
    if not a:
        return [tuple(1 if i == j else 0 for i in range(ncols)) for j in range(ncols)]
    _, u, pivots = hnf_columns(a, ncols)
    return [tuple(u[j]) for j in range(len(pivots), ncols)]


def solve_integer(rows: Sequence[Sequence], b: Sequence, ncols: int) -> tuple[int, ...]:
    """An integer solution of M x = b (rational M, b) or raise NoSolution."""
    if len(rows) != len(b):
        raise InvalidInput("dimension mismatch in integer solve")
    aug = clear_denominators([list(r) + [y] for r, y in zip(rows, b)])
    a = [r[:-1] for r in aug]
    rhs = [r[-1] for r in aug]
    if not a:
        return (0,) * ncols
    hcols, u, pivots = hnf_columns(a, ncols)
    y = [0] * ncols
    for r, c in pivots:
        acc = rhs[r] - sum(hcols[l][r] * y[l] for l in range(c))
        p = hcols[c][r]
        if acc % p:
            raise NoSolution("no integer solution")
        y[c] = acc // p
    k = len(pivots)
    for r in range(len(a)):
        if sum(hcols[l][r] * y[l] for l in range(k)) != rhs[r]:
            raise NoSolution("no integer solution")
    return tuple(sum(u[l][i] * y[l] for l in range(k)) for i in range(ncols))


def lattice_basis(vectors: Sequence[Sequence], n: int) -> tuple[tuple[int, ...], ...]:
    """Canonical (column HNF) basis of the lattice generated by integer vectors."""
    vecs = [[int(Fraction(x)) if Fraction(x).denominator == 1 else _bad(x) for x in v] for v in vectors]
    if not vecs:
        return ()
    rows = [[v[i] for v in vecs] for i in range(n)]
    hcols, _, pivots = hnf_columns(rows, len(vecs))
    return tuple(tuple(hcols[j]) for j in range(len(pivots)))


def _bad(x):
    raise InvalidInput(f"lattice generators must be integral, found {x}")


def unimodular_inverse(cols: Sequence[Sequence[int]]) -> list[list[int]]:
    """Inverse (as rows) of the square integer matrix with the given columns."""
    n = len(cols)
    rows = [[Fraction(cols[j][i]) for j in range(n)] for i in range(n)]
    inv_cols = []
    for k in range(n):
        e = [Fraction(int(i == k)) for i in range(n)]
        inv_cols.append(solve(rows, e, n))
    out = []
    for i in range(n):
        row = []
        for k in range(n):
            x = inv_cols[k][i]
            if x.denominator != 1:
                raise InvalidInput("matrix is not unimodular")
            row.append(int(x))
        out.append(row)
    return out


def complete_basis(sub: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Columns C such that [sub | C] is a Z-basis of Z^n.

    ``sub`` must be a basis of a saturated sublattice.
    """
    s = len(sub)
    if s == 0:
        return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    a = [[int(sub[j][i]) for j in range(s)] for i in range(n)]
    smat, u, _ = snf_int(a, s)
    for k in range(s):
        if smat[k][k] != 1:
            raise InvalidInput("sublattice is not saturated (or not independent)")
    # U A V = [I; 0]  =>  columns s.. of U^{-1} complete A
    uinv_rows = unimodular_inverse([[u[i][j] for i in range(n)] for j in range(n)])
    return [tuple(uinv_rows[i][j] for i in range(n)) for j in range(s, n)]


@dataclass(frozen=True)
class LatticeBasis:
    """A lattice in Z^n given by independent integer columns (canonical HNF)."""

    ambient: int
    basis: tuple[tuple[int, ...], ...] = field(default=())

    @classmethod
    def from_generators(cls, vectors: Sequence[Sequence], n: int) -> "LatticeBasis":
        return cls(n, lattice_basis(vectors, n))

    @classmethod
    def full(cls, n: int) -> "LatticeBasis":
        return cls(n, tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def rational_span(self):
        return span([[Fraction(x) for x in v] for v in self.basis], self.ambient)

    def coordinates(self, v: Sequence) -> tuple[int, ...]:
        """Integer coordinates of v in this basis (NoSolution if v not in the lattice)."""
        rows = [[Fraction(b[i]) for b in self.basis] for i in range(self.ambient)]
        return solve_integer(rows, list(v), self.rank)

    def __contains__(self, v) -> bool:
        try:
            self.coordinates(v)
        except NoSolution:
            return False
        return True

    def contains_lattice(self, other: "LatticeBasis") -> bool:
        return all(v in self for v in other.basis)

    def index_in(self, sup: "LatticeBasis") -> int:
        """Index [sup : self]; both lattices must have the same rank."""
        if self.rank != sup.rank:
            raise InvalidInput("index undefined for lattices of different rank")
        coords = [sup.coordinates(v) for v in self.basis]
        if not coords:
            return 1
        a = [[c[i] for c in coords] for i in range(sup.rank)]
        return prod(elementary_divisors(a, self.rank))


def saturate(lat: LatticeBasis | Sequence[Sequence], n: int | None = None) -> LatticeBasis:
    """(Q-span of L) intersected with Z^n."""
    if not isinstance(lat, LatticeBasis):
        lat = LatticeBasis.from_generators(lat, n)
    n = lat.ambient
    if lat.rank == 0:
        return lat
    eqs = annihilator(lat.rational_span(), n)
    ker = integer_kernel(eqs, n)
    return LatticeBasis.from_generators(ker, n)


def rational_lattice(subspace_basis: Sequence[Sequence], n: int) -> LatticeBasis:
    """Saturated lattice V cap Z^n for a K-subspace V."""
    rat = rational_part(subspace_basis, n)
    if not rat:
        return LatticeBasis(n, ())
    return LatticeBasis.from_generators(integer_kernel(annihilator(rat, n), n), n)


# ----------------------------------------------------------------------------
# membership in  S + L  (S a K-subspace, L a lattice)


@dataclass(frozen=True)
class Membership:
    inside: bool
    subspace_coefficients: tuple | None = None
    lattice_coefficients: tuple | None = None


def _projected(values, sub, lat, d):
    deg = field_degree(d)
    n = len(values[0]) if values else (len(lat[0]) if lat else (len(sub[0]) if sub else 0))
    dim = deg * n
    sq = q_span_vectors(sub, d)
    p = annihilator(span(sq, dim), dim) if sq else [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
    ex_vals = [expand(v, d) for v in values]
    ex_lat = [expand([Fraction(x) for x in l], d) for l in lat]

    def apply(vec):
        return [sum((a * b for a, b in zip(row, vec) if a and b), Fraction(0)) for row in p]

    return p, [apply(v) for v in ex_vals], [apply(l) for l in ex_lat]


def subgroup_member(v: Sequence, sub: Sequence[Sequence], lat: Sequence[Sequence],
                    mode: str = "strict") -> Membership:
    """Decide whether v lies in S + L (strict) or S + L (x) Q (isogeny).

    When inside, returns the K-coefficients on the spanning vectors of S
    and the (integer or rational) coefficients on the lattice vectors.
    """
    if mode not in ("strict", "isogeny"):
        raise InvalidInput(f"unknown membership mode {mode!r}")
    v = tuple(Fraction(x) if isinstance(x, int) else x for x in v)
    n = len(v)
    for w in list(sub) + list(lat):
        if len(w) != n:
            raise InvalidInput("ambient dimensions disagree")
    if not any(v):
        return Membership(True, tuple(Fraction(0) for _ in sub), tuple(Fraction(0) for _ in lat))
    d = infer_d(v, sub)
    p, (pv,), plat = _projected([v], sub, lat, d)
    k = len(lat)
    rows = [[plat[j][i] for j in range(k)] for i in range(len(p))]
    try:
        if mode == "isogeny":
            coeffs = solve(rows, pv, k) if rows else ()
        else:
            coeffs = tuple(Fraction(c) for c in solve_integer(rows, pv, k)) if rows else (Fraction(0),) * k
    except NoSolution:
        return Membership(False)
    if not rows:
        coeffs = (Fraction(0),) * k
    w = list(v)
    for c, l in zip(coeffs, lat):
        if c:
            w = [x - c * y for x, y in zip(w, l)]
    if sub:
        srows = [[s[i] for s in sub] for i in range(n)]
        try:
            scoef = solve(srows, w, len(sub))
        except NoSolution:
            return Membership(False)
    else:
        if any(w):
            return Membership(False)
        scoef = ()
    return Membership(True, tuple(scoef), tuple(coeffs))


def torus_kernel(values: Sequence[Sequence], sub: Sequence[Sequence], lat: Sequence[Sequence],
                 mode: str = "strict") -> list[tuple[int, ...]]:
    """Z-basis of {x in Z^r : sum x_j values_j in S + L} (strict) or S + L_Q (isogeny).

    This is the kernel of the homomorphism Z^r -> K^n / (S + L) sending the
    j-th unit vector to ``values[j]``.
    """
    r = len(values)
    if r == 0:
        return []
    if not values[0]:
        return [tuple(1 if i == j else 0 for i in range(r)) for j in range(r)]
    d = infer_d(values, sub)
    p, pvals, plat = _projected(list(values), sub, lat, d)
    np_ = len(p)
    if np_ == 0:
        return [tuple(1 if i == j else 0 for i in range(r)) for j in range(r)]
    pr_rows = [[pvals[j][i] for j in range(r)] for i in range(np_)]
    if mode == "isogeny":
        if plat:
            q2 = annihilator(span(plat, np_), np_)
        else:
            q2 = [tuple(Fraction(int(i == j)) for j in range(np_)) for i in range(np_)]
        rows = [[sum((a * pr_rows[i][j] for i, a in enumerate(qrow) if a), Fraction(0))
                 for j in range(r)] for qrow in q2]
        if not rows:
            return [tuple(1 if i == j else 0 for i in range(r)) for j in range(r)]
        return integer_kernel(rows, r)
    if mode != "strict":
        raise InvalidInput(f"unknown kernel mode {mode!r}")
    k = len(plat)
    rows = [pr_rows[i] + [-plat[j][i] for j in range(k)] for i in range(np_)]
    ker = integer_kernel(rows, r + k)
    return list(lattice_basis([x[:r] for x in ker], r))
