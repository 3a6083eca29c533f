"""Finite-rank mixed Hodge structures over Z with exact filtrations.

A structure is the triple (lattice Z^n, weight filtration W over Q, Hodge
filtration F over Q(i, sqrt d)).  Both filtrations are stored sparsely as
jump lists; levels that are not listed inherit from below (W) or from
above (F), and F above its top listed level is zero.

Graded pieces are computed on lattices: gr^W_k has lattice
(W_k cap Z^n) / (W_{k-1} cap Z^n), which is free because every
intersection is saturated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InvalidInput
from .exact.lattice import (
    LatticeBasis,
    clear_denominators,
    complete_basis,
    elementary_divisors,
    hnf_columns,
    integer_kernel,
    lattice_basis,
    rational_lattice,
    unimodular_inverse,
)
from .exact.matrix import (
    Basis,
    conj_space,
    identity,
    intersect,
    is_subspace,
    matvec,
    rank,
    rref,
    solve,
    span,
)
from .exact.scalar import infer_d, is_rational

__all__ = [
    "MixedHodgeStructure",
    "PureHodgeStructure",
    "MHSMorphism",
    "ValidationReport",
    "MorphismReport",
    "QuotientData",
    "validate_mhs",
    "require_valid",
    "hodge_numbers",
    "graded_piece",
    "graded_data",
    "tate",
    "pure",
    "tate_twist",
    "direct_sum",
    "change_basis",
    "check_morphism",
    "morphism_homology",
    "image_structure",
    "sub_structure",
    "quotient_structure",
    "project_structure",
    "canonical_complement",
    "hodge_classes",
]


def _levels(data: Mapping[int, Iterable], n: int) -> tuple[tuple[int, Basis], ...]:
    out = []
    for k, vecs in sorted(data.items()):
        vecs = [tuple(v) for v in vecs]
        out.append((int(k), span(vecs, n) if vecs else ()))
    return tuple(out)


@dataclass(frozen=True)
class MixedHodgeStructure:
    """Lattice Z^rank with weight filtration W (over Q) and Hodge filtration F."""

    rank: int
    weight_filtration: tuple[tuple[int, Basis], ...]
    hodge_filtration: tuple[tuple[int, Basis], ...]
    torsion: tuple[int, ...] = ()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @classmethod
    def build(cls, rank: int, weights: Mapping[int, Iterable], hodge: Mapping[int, Iterable],
              torsion: Sequence[int] = ()):
        if rank < 0:
            raise InvalidInput("rank must be non-negative")
        for vecs in list(weights.values()) + list(hodge.values()):
            for v in vecs:
                if len(v) != rank:
                    raise InvalidInput(f"filtration vector of length {len(v)} in rank {rank}")
        return cls(rank, _levels(weights, rank), _levels(hodge, rank), tuple(torsion))

    def W(self, k: int) -> Basis:
        """Basis of W_k (largest listed level <= k; zero below the first)."""
        best: Basis = ()
        for kk, b in self.weight_filtration:
            if kk <= k:
                best = b
            else:
                break
        return best

    def F(self, p: int) -> Basis:
        """Basis of F^p (smallest listed level >= p; zero above the last)."""
        for pp, b in self.hodge_filtration:
            if pp >= p:
                return b
        return ()

    @property
    def d(self) -> int:
        return infer_d([b for _, b in self.hodge_filtration])

    def weights(self) -> list[int]:
        """Weights k with gr^W_k nonzero."""
        out, prev = [], 0
        for k, b in self.weight_filtration:
            if len(b) > prev:
                out.append(k)
            prev = len(b)
        return out

    def hodge_bounds(self) -> tuple[int, int]:
        """(lowest listed level, highest level with F^p nonzero)."""
        levels = [p for p, _ in self.hodge_filtration]
        if not levels:
            return (0, -1)
        nonzero = [p for p, b in self.hodge_filtration if b]
        return (levels[0], nonzero[-1] if nonzero else levels[0] - 1)

    def normalized(self) -> "MixedHodgeStructure":
        """Same structure with redundant filtration levels dropped."""
        ws, prev = [], 0
        for k, b in self.weight_filtration:
            if len(b) > prev:
                ws.append((k, b))
            prev = len(b)
        fs = []
        lv = self.hodge_filtration
        for idx, (p, b) in enumerate(lv):
            nxt = len(lv[idx + 1][1]) if idx + 1 < len(lv) else 0
            if len(b) > nxt:
                fs.append((p, b))
        return type(self)(self.rank, tuple(ws), tuple(fs), self.torsion)

    def is_pure(self) -> bool:
        return len(self.weights()) <= 1


class PureHodgeStructure(MixedHodgeStructure):
    """A mixed Hodge structure whose weight filtration jumps once."""

    @property
    def weight(self) -> int:
        ws = self.weights()
        if ws:
            return ws[0]
        return self.weight_filtration[-1][0] if self.weight_filtration else 0


def pure(rank: int, weight: int, hodge: Mapping[int, Iterable]) -> PureHodgeStructure:
    """Pure structure of the given weight on Z^rank."""
    return PureHodgeStructure.build(rank, {weight: identity(rank)}, hodge)


def tate(m: int) -> PureHodgeStructure:
    """Z(m): rank one, weight -2m, type (-m, -m)."""
    return pure(1, -2 * m, {-m: identity(1)})


# ----------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    valid: bool
    problems: list[str]
    graded_ranks: dict[int, int]
    hodge_numbers: dict[tuple[int, int], int]

    def __bool__(self):
        return self.valid


@dataclass(frozen=True)
class GradedData:
    """Coordinates on gr^W_k: integral lifts plus a projection from W_k."""

    k: int
    lower: tuple[tuple[int, ...], ...]
    lifts: tuple[tuple[int, ...], ...]
    pivot_rows: tuple[int, ...]
    inverse: tuple[tuple, ...]

    @property
    def rank(self) -> int:
        return len(self.lifts)

    def project(self, v: Sequence) -> tuple:
        """Coordinates in gr^W_k of a vector of W_k (tensor K)."""
        a = len(self.lower)
        w = [v[i] for i in self.pivot_rows]
        return tuple(matvec(self.inverse[a:], w))


def graded_data(h: MixedHodgeStructure, k: int) -> GradedData:
    key = ("graded", k)
    if key in h._cache:
        return h._cache[key]
    n = h.rank
    lk = rational_lattice(h.W(k), n).basis
    lk1 = rational_lattice(h.W(k - 1), n).basis
    big = LatticeBasis(n, lk)
    coords = [big.coordinates(v) for v in lk1]
    comp = complete_basis(coords, len(lk))
    lifts = tuple(tuple(sum(c[j] * lk[j][i] for j in range(len(lk))) for i in range(n)) for c in comp)
    lifts = canonical_complement(lk1, lifts, n)
    frame = list(lk1) + list(lifts)
    piv, inverse = _left_inverse(frame, n)
    g = GradedData(k, tuple(lk1), lifts, tuple(piv), inverse)
    h._cache[key] = g
    return g


def canonical_complement(lower: Sequence[Sequence[int]], comp: Sequence[Sequence[int]],
                         n: int) -> tuple[tuple[int, ...], ...]:
    """Re-choose complement columns so their image modulo ``lower`` is in HNF.

    The image is read through a rational projection that kills span(lower)
    and keeps the non-pivot coordinates, so when every lattice involved is
    a coordinate sublattice the complement becomes the standard unit vectors.
    """
    comp = [tuple(int(x) for x in c) for c in comp]
    if not comp:
        return ()
    lower = [tuple(Fraction(x) for x in v) for v in lower]
    if lower:
        red, piv = rref(lower, n)
        keep = [i for i in range(n) if i not in piv]

        def rho(v):
            # subtract the combination of lower matching v on the pivot rows
            w = list(Fraction(x) for x in v)
            for row, pc in zip(red, piv):
                c = w[pc]
                if c:
                    w = [a - c * b for a, b in zip(w, row)]
            return [w[i] for i in keep]
    else:
        keep = list(range(n))

        def rho(v):
            return [Fraction(x) for x in v]

    images = [rho(c) for c in comp]
    rows = clear_denominators([[img[i] for img in images] for i in range(len(keep))])
    _, ucols, _ = hnf_columns(rows, len(comp))
    return tuple(tuple(sum(comp[l][i] * u[l] for l in range(len(comp))) for i in range(n))
                 for u in ucols)


def _graded_hodge(h: MixedHodgeStructure, k: int, p: int) -> Basis:
    """F^p of gr^W_k in graded coordinates."""
    key = ("grF", k, p)
    if key in h._cache:
        return h._cache[key]
    g = graded_data(h, k)
    vecs = intersect(h.F(p), h.W(k), h.rank) if h.F(p) else ()
    out = span([g.project(v) for v in vecs], g.rank) if g.rank else ()
    h._cache[key] = out
    return out


def _p_range(h: MixedHodgeStructure, k: int) -> range:
    lo, hi = h.hodge_bounds()
    return range(min(lo, k - hi) - 2, max(hi, k - lo) + 3)


def _piece_types(h: MixedHodgeStructure, k: int) -> tuple[dict[tuple[int, int], Basis], list[str]]:
    g = graded_data(h, k)
    m = g.rank
    problems = []
    types: dict[tuple[int, int], Basis] = {}
    for p in _p_range(h, k):
        q = k - p
        fp = _graded_hodge(h, k, p)
        fq = _graded_hodge(h, k, q)
        if fp and fq:
            a = intersect(fp, conj_space(fq), m)
            if a:
                types[(p, q)] = a
        fopp = _graded_hodge(h, k, k - p + 1)
        if len(fp) + len(fopp) != m or intersect(fp, conj_space(fopp), m):
            problems.append(f"weight {k}: F^{p} and conj F^{k - p + 1} are not opposed on gr^W_{k}")
    total = sum(len(b) for b in types.values())
    allvecs = [v for b in types.values() for v in b]
    spanned = rank(allvecs, m) if allvecs else 0
    if total != m or spanned != total:
        problems.append(f"weight {k}: Hodge components do not decompose gr^W_{k} "
                        f"(dimension {m}, components sum to {total}, span rank {spanned})")
    return types, problems


def validate_mhs(h: MixedHodgeStructure) -> ValidationReport:
    """Check nesting, exhaustiveness and opposedness of (W, F, conj F)."""
    if "report" in h._cache:
        return h._cache["report"]
    n = h.rank
    problems: list[str] = []
    for k, b in h.weight_filtration:
        if not all(is_rational(x) for v in b for x in v):
            problems.append(f"W_{k} is not defined over Q")
    ws = h.weight_filtration
    for (k1, b1), (k2, b2) in zip(ws, ws[1:]):
        if not is_subspace(b1, b2, n):
            problems.append(f"W_{k1} is not contained in W_{k2}")
    if n and (not ws or len(ws[-1][1]) != n):
        problems.append("W is not exhaustive: top weight level is not the whole space")
    fs = h.hodge_filtration
    for (p1, b1), (p2, b2) in zip(fs, fs[1:]):
        if not is_subspace(b2, b1, n):
            problems.append(f"F^{p2} is not contained in F^{p1}")
    if n and (not fs or len(fs[0][1]) != n):
        problems.append("F is not exhaustive: lowest Hodge level is not the whole space")
    graded_ranks: dict[int, int] = {}
    numbers: dict[tuple[int, int], int] = {}
    if not problems:
        for k in h.weights():
            g = graded_data(h, k)
            graded_ranks[k] = g.rank
            types, probs = _piece_types(h, k)
            problems.extend(probs)
            for pq, b in types.items():
                numbers[pq] = len(b)
            for (p, q), b in types.items():
                if len(types.get((q, p), ())) != len(b):
                    problems.append(f"weight {k}: h^({p},{q}) != h^({q},{p})")
    report = ValidationReport(not problems, problems, graded_ranks, dict(sorted(numbers.items())))
    h._cache["report"] = report
    return report


def require_valid(h: MixedHodgeStructure) -> None:
    report = validate_mhs(h)
    if not report.valid:
        raise InvalidInput("invalid mixed Hodge structure: " + "; ".join(report.problems))


def hodge_numbers(h: MixedHodgeStructure) -> dict[tuple[int, int], int]:
    """Nonzero h^{p,q}; raises InvalidInput for invalid structures."""
    require_valid(h)
    return dict(validate_mhs(h).hodge_numbers)


def graded_piece(h: MixedHodgeStructure, k: int) -> PureHodgeStructure:
    """gr^W_k as a pure structure of weight k on its own lattice."""
    require_valid(h)
    g = graded_data(h, k)
    m = g.rank
    lo, hi = h.hodge_bounds()
    hodge = {}
    for p in range(lo, hi + 2):
        hodge[p] = _graded_hodge(h, k, p)
    return PureHodgeStructure.build(m, {k: identity(m)}, hodge)


# ----------------------------------------------------------------------------
# constructions


def tate_twist(h: MixedHodgeStructure, m: int) -> MixedHodgeStructure:
    """H(m): W_k(H(m)) = W_{k+2m}(H), F^p(H(m)) = F^{p+m}(H)."""
    cls = type(h)
    return cls(h.rank,
               tuple((k - 2 * m, b) for k, b in h.weight_filtration),
               tuple((p - m, b) for p, b in h.hodge_filtration),
               h.torsion)


def direct_sum(*hs: MixedHodgeStructure) -> MixedHodgeStructure:
    n = sum(h.rank for h in hs)
    wk = sorted({k for h in hs for k, _ in h.weight_filtration})
    fp = sorted({p for h in hs for p, _ in h.hodge_filtration})

    def blocks(getter):
        out, off = [], 0
        for h in hs:
            for v in getter(h):
                out.append((Fraction(0),) * off + tuple(v) + (Fraction(0),) * (n - off - h.rank))
            off += h.rank
        return out

    weights = {k: blocks(lambda h, k=k: h.W(k)) for k in wk}
    hodge = {p: blocks(lambda h, p=p: h.F(p)) for p in fp}
    torsion = tuple(t for h in hs for t in h.torsion)
    return MixedHodgeStructure.build(n, weights, hodge, torsion)


def change_basis(h: MixedHodgeStructure, g: Sequence[Sequence[int]]) -> MixedHodgeStructure:
    """Transport H along the unimodular integer matrix g (rows)."""
    rows = [[Fraction(x) for x in r] for r in g]
    return type(h).build(
        h.rank,
        {k: [matvec(rows, v) for v in b] for k, b in h.weight_filtration},
        {p: [matvec(rows, v) for v in b] for p, b in h.hodge_filtration},
        h.torsion,
    )


# ----------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class MHSMorphism:
    source: MixedHodgeStructure
    target: MixedHodgeStructure
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.matrix)
        if len(rows) != self.target.rank or any(len(r) != self.source.rank for r in rows):
            raise InvalidInput(
                f"morphism matrix must be {self.target.rank} x {self.source.rank}")
        object.__setattr__(self, "matrix", rows)

    def apply(self, v: Sequence) -> tuple:
        return matvec(self.matrix, v)


@dataclass
class MorphismReport:
    w_compatible: bool
    f_compatible: bool
    strict: bool
    problems: list[str]

    @property
    def ok(self) -> bool:
        return self.w_compatible and self.f_compatible and self.strict


def check_morphism(f: MHSMorphism) -> MorphismReport:
    """Filtration compatibility and strictness of an integer matrix between structures."""
    src, tgt = f.source, f.target
    m = tgt.rank
    problems = []
    image = span([f.apply(col) for col in identity(src.rank)], m) if m else ()
    wc = fc = st = True
    for k in sorted({k for k, _ in src.weight_filtration} | {k for k, _ in tgt.weight_filtration}):
        fw = span([f.apply(v) for v in src.W(k)], m) if m else ()
        if not is_subspace(fw, tgt.W(k), m):
            wc = False
            problems.append(f"f(W_{k}) is not contained in W'_{k}")
        elif span(intersect(image, tgt.W(k), m), m) != fw:
            st = False
            problems.append(f"not strict for W_{k}: f(H) cap W'_{k} != f(W_{k})")
    lo1, hi1 = src.hodge_bounds()
    lo2, hi2 = tgt.hodge_bounds()
    levels = sorted({p for p, _ in src.hodge_filtration} | {p for p, _ in tgt.hodge_filtration}
                    | {hi1 + 1, hi2 + 1})
    for p in levels:
        ff = span([f.apply(v) for v in src.F(p)], m) if m else ()
        if not is_subspace(ff, tgt.F(p), m):
            fc = False
            problems.append(f"f(F^{p}) is not contained in F'^{p}")
        elif span(intersect(image, tgt.F(p), m), m) != ff:
            st = False
            problems.append(f"not strict for F^{p}: f(H_C) cap F'^{p} != f(F^{p})")
    if not (wc and fc):
        st = False
    return MorphismReport(wc, fc, st, problems)


def _left_inverse(cols: Sequence[Sequence], n: int):
    b = len(cols)
    if not b:
        return (), ()
    _, piv = rref([[Fraction(c[i]) for i in range(n)] for c in cols], n)
    sub = [[Fraction(cols[j][i]) for j in range(b)] for i in piv]
    inv_cols = [solve(sub, [Fraction(int(r == c)) for r in range(b)], b) for c in range(b)]
    inverse = tuple(tuple(inv_cols[c][r] for c in range(b)) for r in range(b))
    return tuple(piv), inverse


def sub_structure(h: MixedHodgeStructure, basis: Sequence[Sequence[int]]) -> MixedHodgeStructure:
    """Restriction of H to the sublattice spanned by ``basis`` (independent columns)."""
    n, r = h.rank, len(basis)
    cols = [tuple(Fraction(x) for x in v) for v in basis]
    piv, inv = _left_inverse(cols, n)

    def coords(v):
        return matvec(inv, [v[i] for i in piv])

    weights = {k: [coords(v) for v in intersect(b, cols, n)] for k, b in h.weight_filtration}
    hodge = {p: [coords(v) for v in intersect(b, cols, n)] for p, b in h.hodge_filtration}
    return MixedHodgeStructure.build(r, weights, hodge)


@dataclass(frozen=True)
class QuotientData:
    structure: MixedHodgeStructure
    projection: tuple[tuple[int, ...], ...]
    section: tuple[tuple[int, ...], ...]

    def project(self, v: Sequence) -> tuple:
        return matvec(self.projection, v)

    def lift(self, y: Sequence) -> tuple:
        n = len(self.section[0]) if self.section else 0
        out = [Fraction(0)] * n
        for c, col in zip(y, self.section):
            if c:
                out = [a + c * b for a, b in zip(out, col)]
        return tuple(out)


def quotient_structure(h: MixedHodgeStructure, sub: Sequence[Sequence[int]],
                       torsion: Sequence[int] = ()) -> QuotientData:
    """H / S for a saturated sublattice S (basis columns) with induced filtrations."""
    n = h.rank
    sub = [tuple(int(x) for x in v) for v in sub]
    comp = canonical_complement(sub, complete_basis(sub, n), n)
    frame = list(sub) + list(comp)
    inv = unimodular_inverse(frame)
    s = len(sub)
    proj = tuple(tuple(r) for r in inv[s:])
    q = project_structure(h, proj, torsion)
    return QuotientData(q, proj, tuple(comp))


def project_structure(h: MixedHodgeStructure, projection: Sequence[Sequence[int]],
                      torsion: Sequence[int] = ()) -> MixedHodgeStructure:
    """Filtrations pushed along a surjective integer matrix (rows)."""
    m = len(projection)
    prows = [[Fraction(x) for x in r] for r in projection]
    weights = {k: [matvec(prows, v) for v in b] for k, b in h.weight_filtration}
    hodge = {p: [matvec(prows, v) for v in b] for p, b in h.hodge_filtration}
    return MixedHodgeStructure.build(m, weights, hodge, tuple(torsion))


def image_structure(f: MHSMorphism) -> MixedHodgeStructure:
    cols = [f.apply(c) for c in identity(f.source.rank)]
    basis = lattice_basis(cols, f.target.rank)
    return sub_structure(f.target, basis)


def morphism_homology(f: MHSMorphism) -> tuple[MixedHodgeStructure, MixedHodgeStructure]:
    """(kernel, cokernel) of a strict morphism, with induced filtrations.

    The cokernel is taken modulo torsion; its torsion invariants are kept
    in the ``torsion`` field.
    """
    report = check_morphism(f)
    if not report.ok:
        raise InvalidInput("morphism rejected: " + "; ".join(report.problems))
    n, m = f.source.rank, f.target.rank
    ker = integer_kernel([[Fraction(x) for x in r] for r in f.matrix], n) if m else \
        [tuple(int(i == j) for i in range(n)) for j in range(n)]
    kernel = sub_structure(f.source, ker)
    cols = [f.apply(c) for c in identity(n)]
    img = lattice_basis(cols, m)
    sat = rational_lattice([tuple(Fraction(x) for x in v) for v in img], m).basis if img else ()
    divs = elementary_divisors([list(r) for r in f.matrix], n) if m and n else []
    tors = tuple(x for x in divs if x > 1)
    coker = quotient_structure(f.target, sat, tors).structure
    return kernel, coker


def hodge_classes(h: MixedHodgeStructure, p: int) -> LatticeBasis:
    """Saturated lattice F^p cap W_{2p} cap Z^n of level-p Hodge classes."""
    require_valid(h)
    n = h.rank
    fp, w = h.F(p), h.W(2 * p)
    if not fp or not w:
        return LatticeBasis(n, ())
    return rational_lattice(intersect(fp, w, n), n)
