"""Dense exact matrices and subspace algebra over Q and Q(i, sqrt d).

Vectors are tuples of scalars (``Fraction`` or :class:`ExactScalar`).  A
*subspace* is represented by a tuple of basis vectors; the canonical form
returned by :func:`span` is the list of nonzero rows of the reduced row
echelon form of the spanning set, so two subspaces are equal exactly when
their canonical bases are equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import InvalidInput, NoSolution
from .scalar import ExactScalar, Scalar, as_scalar, components, conj, field_degree, infer_d, is_rational

__all__ = [
    "ExactMatrix",
    "Vector",
    "Basis",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "span",
    "subspace_sum",
    "intersect",
    "contains",
    "is_subspace",
    "coordinates",
    "annihilator",
    "conj_vec",
    "conj_space",
    "rational_part",
    "expand",
    "matvec",
    "matmul",
    "transpose",
    "identity",
    "zero_vector",
    "subspace_ops",
    "solve_linear",
]

Vector = tuple
Basis = tuple

ZERO = Fraction(0)
ONE = Fraction(1)


def _norm(x) -> Scalar:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return as_scalar(x)


def _vec(v) -> Vector:
    return tuple(_norm(x) for x in v)


class ExactMatrix:
    """Immutable rows x cols grid of exact scalars."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        ent = tuple(_vec(r) for r in entries)
        if cols is None:
            if not ent:
                raise InvalidInput("column count required for a matrix with no rows")
            cols = len(ent[0])
        for r in ent:
            if len(r) != cols:
                raise InvalidInput("ragged matrix rows")
        self.rows = len(ent)
        self.cols = cols
        self.entries = ent

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(identity(n), n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "ExactMatrix":
        return cls([[0] * n for _ in range(m)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "ExactMatrix":
        return cls(transpose(columns, rows), len(columns))

    @property
    def is_integer(self) -> bool:
        return all(isinstance(x, Fraction) and x.denominator == 1
                   for r in self.entries for x in r)

    def columns(self) -> list[Vector]:
        return transpose(self.entries, self.cols)

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(transpose(self.entries, self.cols), self.rows)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise InvalidInput(f"shape mismatch {self.shape} @ {other.shape}")
            return ExactMatrix(matmul(self.entries, other.entries, other.cols), other.cols)
        return matvec(self.entries, other)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def to_int_rows(self) -> list[list[int]]:
        if not self.is_integer:
            raise InvalidInput("matrix has non-integer entries")
        return [[int(x) for x in r] for r in self.entries]

    def det(self) -> Scalar:
        if self.rows != self.cols:
            raise InvalidInput("determinant of a non-square matrix")
        m = [list(r) for r in self.entries]
        n = self.rows
        det = ONE
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                return ZERO
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det = det * m[c][c]
            inv = 1 / m[c][c]
            for r in range(c + 1, n):
                if m[r][c]:
                    f = m[r][c] * inv
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return as_scalar(det)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"


def as_rows(m) -> tuple[tuple, ...]:
    if isinstance(m, ExactMatrix):
        return m.entries
    return tuple(_vec(r) for r in m)


# ----------------------------------------------------------------------------
# elementary helpers


def identity(n: int) -> list[Vector]:
    return [tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)]


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def transpose(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    if not rows:
        return [() for _ in range(ncols)]
    return [tuple(r[j] for r in rows) for j in range(ncols)]


def matvec(rows: Sequence[Sequence], v: Sequence) -> Vector:
    out = []
    for r in rows:
        s = ZERO
        for x, y in zip(r, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return tuple(out)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], bcols: int) -> list[Vector]:
    bt = transpose(b, bcols)
    return [tuple(_dot(r, c) for c in bt) for r in a]


def _dot(r, c):
    s = ZERO
    for x, y in zip(r, c):
        if x and y:
            s = s + x * y
    return s


def conj_vec(v: Sequence) -> Vector:
    return tuple(conj(x) for x in v)


def conj_space(basis: Sequence[Sequence]) -> Basis:
    return tuple(conj_vec(v) for v in basis)


# ----------------------------------------------------------------------------
# row reduction


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[_norm(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for k in range(r, nrows):
            if m[k][c]:
                piv = k
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        row = m[r]
        p = row[c]
        if p != 1:
            inv = 1 / p
            row = [_norm(x * inv) if x else ZERO for x in row]
            m[r] = row
        for k in range(nrows):
            if k != r:
                f = m[k][c]
                if f:
                    m[k] = [_norm(x - f * y) if y else x for x, y in zip(m[k], row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : M x = 0} for M given by ``rows`` (ncols unknowns)."""
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for row, pc in zip(red, pivots):
            if row[f]:
                v[pc] = _norm(-row[f])
        basis.append(tuple(v))
    return basis


def solve(rows: Sequence[Sequence], b: Sequence, ncols: int) -> Vector:
    """One solution of M x = b over the field of the entries; free variables 0."""
    if len(rows) != len(b):
        raise InvalidInput(f"right-hand side has length {len(b)}, expected {len(rows)}")
    aug = [list(r) + [y] for r, y in zip(rows, b)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        raise NoSolution("inconsistent linear system")
    x = [ZERO] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = _norm(row[ncols])
    return tuple(x)


# ----------------------------------------------------------------------------
# subspaces


def span(vectors: Iterable[Sequence], n: int) -> Basis:
    """Canonical basis (RREF rows) of the span of ``vectors`` in a space of dim n."""
    vs = [list(v) for v in vectors]
    for v in vs:
        if len(v) != n:
            raise InvalidInput(f"vector of length {len(v)} in ambient dimension {n}")
    red, _ = rref(vs, n)
    return tuple(tuple(r) for r in red)


def subspace_sum(a: Sequence[Sequence], b: Sequence[Sequence], n: int) -> Basis:
    return span(list(a) + list(b), n)


def intersect(a: Sequence[Sequence], b: Sequence[Sequence], n: int) -> Basis:
    if not a or not b:
        return ()
    ka, kb = len(a), len(b)
    # columns: a_1..a_ka, -b_1..-b_kb ; rows: coordinates
    rows = [[a[j][i] for j in range(ka)] + [-b[j][i] for j in range(kb)] for i in range(n)]
    ns = nullspace(rows, ka + kb)
    vecs = []
    for c in ns:
        v = [ZERO] * n
        for j in range(ka):
            if c[j]:
                v = [x + c[j] * y for x, y in zip(v, a[j])]
        vecs.append(v)
    return span(vecs, n)


def contains(basis: Sequence[Sequence], v: Sequence) -> bool:
    if not any(v):
        return True
    if not basis:
        return False
    n = len(v)
    return rank(list(basis) + [list(v)], n) == rank(basis, n)


def is_subspace(a: Sequence[Sequence], b: Sequence[Sequence], n: int) -> bool:
    """True when span(a) is contained in span(b)."""
    if not a:
        return True
    return rank(list(b) + list(a), n) == rank(b, n)


def coordinates(basis: Sequence[Sequence], v: Sequence) -> Vector:
    """Coefficients c with sum c_j basis_j = v (basis assumed independent)."""
    n = len(v)
    k = len(basis)
    if k == 0:
        if any(v):
            raise NoSolution("vector not in the zero subspace")
        return ()
    rows = [[basis[j][i] for j in range(k)] for i in range(n)]
    return solve(rows, v, k)


def annihilator(basis: Sequence[Sequence], n: int) -> list[Vector]:
    """Rows y with y . v = 0 for all v in span(basis) (bilinear, no conjugation)."""
    if not basis:
        return identity(n)
    return nullspace(basis, n)


def expand(v: Sequence, d: int) -> Vector:
    """Coordinates of a K-vector over Q, block-wise by the basis {1, i, r, i r}."""
    deg = field_degree(d)
    comps = [components(x) for x in v]
    return tuple(c[k] for k in range(deg) for c in comps)


def _basis_units(d: int) -> list[Scalar]:
    units: list[Scalar] = [ONE, ExactScalar(0, 1)]
    if d != 1:
        units += [ExactScalar(0, 0, 1, 0, d), ExactScalar(0, 0, 0, 1, d)]
    return units


def q_span_vectors(basis: Sequence[Sequence], d: int) -> list[Vector]:
    """Expansions of beta * v for v in basis and beta in the Q-basis of K."""
    out = []
    for v in basis:
        for u in _basis_units(d):
            out.append(expand([u * x if x else ZERO for x in v], d))
    return out


def rational_part(basis: Sequence[Sequence], n: int) -> Basis:
    """Basis of the rational subspace V cap Q^n for a K-subspace V."""
    if not basis:
        return ()
    if all(is_rational(x) for v in basis for x in v):
        return span([[as_scalar(x) for x in v] for v in basis], n)
    d = infer_d(basis)
    eqs = annihilator(span(basis, n), n)
    deg = field_degree(d)
    qrows = []
    for row in eqs:
        comps = [components(x) for x in row]
        for k in range(deg):
            qrows.append([c[k] for c in comps])
    return span(nullspace(qrows, n), n)


# ----------------------------------------------------------------------------
# public operation wrappers


def subspace_ops(op: str, a=None, b=None, n: int | None = None) -> Basis:
    """Sum / intersection of two subspaces, or kernel / image of a matrix.

    ``op`` is one of ``"sum"``, ``"intersect"``, ``"kernel_of"``,
    ``"image_of"``.  For the matrix operations ``a`` is the matrix.
    """
    if op in ("sum", "intersect"):
        a = [_vec(v) for v in a]
        b = [_vec(v) for v in b]
        dims = {len(v) for v in a + b}
        if n is None:
            if len(dims) != 1:
                raise InvalidInput("ambient dimension cannot be inferred")
            n = dims.pop()
        elif dims - {n}:
            raise InvalidInput(f"ambient mismatch: vectors of lengths {sorted(dims)} in dim {n}")
        elif len(dims) > 1:
            raise InvalidInput("ambient mismatch between the two subspaces")
        return subspace_sum(a, b, n) if op == "sum" else intersect(a, b, n)
    if op in ("kernel_of", "image_of"):
        m = a if isinstance(a, ExactMatrix) else ExactMatrix(a)
        if op == "kernel_of":
            return span(nullspace(m.entries, m.cols), m.cols)
        return span(m.columns(), m.rows)
    raise InvalidInput(f"unknown subspace operation {op!r}")


def solve_linear(m, b: Sequence, mode: str = "field") -> Vector:
    """Solve ``m x = b`` over the scalar field, over Q, or over Z.

    Raises :class:`NoSolution` when no solution exists in the requested
    ring.  Integer and rational modes expand every equation over the
    Q-basis {1, i, sqrt d, i sqrt d}.
    """
    mat = m if isinstance(m, ExactMatrix) else ExactMatrix(m)
    b = _vec(b)
    if len(b) != mat.rows:
        raise InvalidInput(f"dimension mismatch: {mat.rows} equations, rhs of length {len(b)}")
    if mode == "field":
        return solve(mat.entries, b, mat.cols)
    if mode not in ("rational", "integer"):
        raise InvalidInput(f"unknown solve mode {mode!r}")
    d = infer_d(mat.entries, b)
    deg = field_degree(d)
    qrows, qb = [], []
    for row, y in zip(mat.entries, b):
        comps = [components(x) for x in row]
        cy = components(y)
        for k in range(deg):
            qrows.append([c[k] for c in comps])
            qb.append(cy[k])
    if mode == "rational":
        return solve(qrows, qb, mat.cols)
    from .lattice import solve_integer

    return tuple(Fraction(x) for x in solve_integer(qrows, qb, mat.cols))
