"""Cochain complexes of lattices and of mixed Hodge structures.

Covers integral cohomology (free part plus torsion invariants), the
alternating-sum row complexes of a simplicial cohomology datum, snake
lemma connecting maps, the torus-valued boundary map on cycle data, and
the square comparing it with the extension class of the total cohomology.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import InconsistentData, InvalidInput, NoSolution, UnsupportedInput
from .exact.lattice import (
    LatticeBasis,
    complete_basis,
    integer_kernel,
    lattice_basis,
    rational_lattice,
    snf_int,
    solve_integer,
    subgroup_member,
    torus_kernel,
    unimodular_inverse,
)
from .exact.matrix import expand, matvec, rank, solve, span
from .exact.scalar import ExactScalar, infer_d
from .mhs import (
    MHSMorphism,
    MixedHodgeStructure,
    PureHodgeStructure,
    canonical_complement,
    check_morphism,
    graded_data,
    project_structure,
    require_valid,
    sub_structure,
)
from .motive import (
    _hodge_class_lattice,
    TorusPoint,
    TorusPresentation,
    assemble_two_step,
    extension_class,
    identity_int,
)

__all__ = [
    "LatticeComplex",
    "CohomologyGroup",
    "MHSComplex",
    "SimplicialCohomologyDatum",
    "CycleData",
    "ConnectingMap",
    "LambdaTable",
    "SquareReport",
    "lattice_cohomology",
    "cohomology_mhs",
    "row_complex",
    "weight_graded",
    "connecting_map",
    "extension_connecting",
    "motivic_square_check",
    "assemble_total",
    "euler_characteristic",
]

IntMatrix = tuple[tuple[int, ...], ...]


def _int_matrix(m, rows: int, cols: int, what: str) -> IntMatrix:
    out = []
    for r in m:
        row = []
        for x in r:
            f = Fraction(x)
            if f.denominator != 1:
                raise InvalidInput(f"{what}: integer entries required, found {x}")
            row.append(int(f))
        out.append(tuple(row))
    if rows == 0:
        # accept [] or [[]...] for an empty target
        if out and any(len(r) for r in out):
            raise InvalidInput(f"{what}: expected 0 x {cols} matrix")
        return ()
    if len(out) != rows or any(len(r) != cols for r in out):
        shape = f"{len(out)} x {len(out[0]) if out else 0}"
        raise InvalidInput(f"{what}: expected {rows} x {cols} matrix, got {shape}")
    return tuple(out)


def _zero(rows: int, cols: int) -> IntMatrix:
    return tuple((0,) * cols for _ in range(rows))


def _mul(a: IntMatrix, b: IntMatrix, inner: int, cols: int) -> IntMatrix:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols))
                 for i in range(len(a)))


def _add(a: IntMatrix, b: IntMatrix, sign: int = 1) -> IntMatrix:
    return tuple(tuple(x + sign * y for x, y in zip(r, s)) for r, s in zip(a, b))


def _is_zero(a: IntMatrix) -> bool:
    return not any(x for r in a for x in r)


# ----------------------------------------------------------------------------
# lattice complexes


@dataclass(frozen=True)
class LatticeComplex:
    """Free abelian groups Z^ranks[s] with differentials d^s: C^s -> C^{s+1}."""

    ranks: tuple[tuple[int, int], ...]
    diffs: tuple[tuple[int, IntMatrix], ...]

    @classmethod
    def build(cls, ranks: Mapping[int, int], diffs: Mapping[int, Sequence[Sequence[int]]] = None):
        ranks = {int(s): int(r) for s, r in ranks.items() if int(r) >= 0}
        diffs = diffs or {}
        ds = {}
        for s, m in diffs.items():
            s = int(s)
            ds[s] = _int_matrix(m, ranks.get(s + 1, 0), ranks.get(s, 0), f"differential d^{s}")
        c = cls(tuple(sorted(ranks.items())), tuple(sorted(ds.items())))
        c.check()
        return c

    def rank(self, s: int) -> int:
        return dict(self.ranks).get(s, 0)

    def d(self, s: int) -> IntMatrix:
        m = dict(self.diffs).get(s)
        if m is None:
            return _zero(self.rank(s + 1), self.rank(s))
        return m

    def degrees(self) -> list[int]:
        return [s for s, r in self.ranks if r]

    def check(self) -> None:
        for s in self.degrees():
            dd = _mul(self.d(s + 1), self.d(s), self.rank(s + 1), self.rank(s))
            if not _is_zero(dd):
                raise InvalidInput(f"d^{s + 1} d^{s} != 0")

    def shifted(self, k: int) -> "LatticeComplex":
        """C[k]: degree s becomes s - k (signs of d unchanged)."""
        return LatticeComplex(tuple((s - k, r) for s, r in self.ranks),
                              tuple((s - k, m) for s, m in self.diffs))


@dataclass(frozen=True)
class CohomologyGroup:
    """H^i = Z^i / B^i as free part plus torsion invariants.

    ``cycles`` is a canonical basis of Z^i inside C^i.  Free coordinates
    are given by ``projection`` (rows acting on cycle coordinates) with
    integral splitting ``section`` (cycles in C^i).  Torsion classes are
    read by ``torsion_rows`` modulo ``torsion``.
    """

    degree: int
    ambient: int
    cycles: tuple[tuple[int, ...], ...]
    projection: tuple[tuple[int, ...], ...]
    section: tuple[tuple[int, ...], ...]
    torsion: tuple[int, ...]
    torsion_rows: tuple[tuple[int, ...], ...]

    @property
    def free_rank(self) -> int:
        return len(self.projection)

    def cycle_coordinates(self, v: Sequence) -> tuple:
        """Coordinates of a cycle (any scalars) in the cycle basis."""
        z = len(self.cycles)
        if not z:
            if any(v):
                raise InvalidInput("vector is not a cycle")
            return ()
        rows = [[Fraction(c[i]) for c in self.cycles] for i in range(self.ambient)]
        try:
            return solve(rows, list(v), z)
        except NoSolution:
            raise InvalidInput("vector is not a cycle") from None

    def project(self, v: Sequence) -> tuple:
        return matvec(self.projection, self.cycle_coordinates(v))

    def lift(self, y: Sequence) -> tuple:
        out = [Fraction(0)] * self.ambient
        for c, col in zip(y, self.section):
            if c:
                out = [a + c * b for a, b in zip(out, col)]
        return tuple(out)

    def torsion_class(self, v: Sequence[int]) -> tuple[int, ...]:
        c = self.cycle_coordinates(v)
        out = []
        for row, e in zip(self.torsion_rows, self.torsion):
            x = sum(a * b for a, b in zip(row, c))
            x = Fraction(x)
            if x.denominator != 1:
                raise InvalidInput("torsion class of a non-integral cycle")
            out.append(int(x) % e)
        return tuple(out)


def lattice_cohomology(c: LatticeComplex, i: int) -> CohomologyGroup:
    n = c.rank(i)
    d_out = [[Fraction(x) for x in r] for r in c.d(i)]
    if n == 0:
        return CohomologyGroup(i, 0, (), (), (), (), ())
    zb = lattice_basis(integer_kernel(d_out, n) if d_out else identity_int(n), n)
    z = len(zb)
    zlat = LatticeBasis(n, zb)
    d_in = c.d(i - 1)
    m = c.rank(i - 1)
    images = [tuple(d_in[r][j] for r in range(n)) for j in range(m)]
    bc = [zlat.coordinates(v) for v in images if any(v)]
    torsion, trows = (), ()
    if bc:
        a = [[v[k] for v in bc] for k in range(z)]
        smat, u, _ = snf_int(a, len(bc))
        divs = [smat[k][k] for k in range(min(z, len(bc))) if smat[k][k]]
        tor = [(k, e) for k, e in enumerate(divs) if e > 1]
        torsion = tuple(e for _, e in tor)
        trows = tuple(tuple(u[k]) for k, _ in tor)
        sat = rational_lattice(span([tuple(Fraction(x) for x in v) for v in bc], z), z).basis
    else:
        sat = ()
    comp = canonical_complement(sat, complete_basis(sat, z), z)
    inv = unimodular_inverse(list(sat) + list(comp))
    proj = tuple(tuple(r) for r in inv[len(sat):])
    section = tuple(tuple(sum(col[l] * zb[l][k] for l in range(z)) for k in range(n)) for col in comp)
    return CohomologyGroup(i, n, tuple(zb), proj, section, torsion, trows)


def euler_characteristic(c: LatticeComplex) -> tuple[int, int]:
    """(sum (-1)^s rank C^s, sum (-1)^i rank H^i)."""
    degs = c.degrees()
    if not degs:
        return 0, 0
    chain = sum((-1) ** (s % 2) * c.rank(s) for s in degs)
    lo, hi = min(degs), max(degs)
    coh = sum((-1) ** (i % 2) * lattice_cohomology(c, i).free_rank for i in range(lo, hi + 1))
    return chain, coh


# ----------------------------------------------------------------------------
# complexes of mixed Hodge structures


@dataclass(frozen=True)
class MHSComplex:
    terms: tuple[tuple[int, MixedHodgeStructure], ...]
    diffs: tuple[tuple[int, IntMatrix], ...]

    @classmethod
    def build(cls, terms: Mapping[int, MixedHodgeStructure], diffs: Mapping[int, Sequence] = None):
        c = cls(tuple(sorted(terms.items())), ())
        lat = LatticeComplex.build({s: h.rank for s, h in terms.items()}, diffs or {})
        c = cls(c.terms, lat.diffs)
        c.check()
        return c

    def term(self, s: int) -> MixedHodgeStructure:
        t = dict(self.terms).get(s)
        if t is None:
            return MixedHodgeStructure.build(0, {0: []}, {0: []})
        return t

    def lattice(self) -> LatticeComplex:
        return LatticeComplex(tuple((s, h.rank) for s, h in self.terms), self.diffs)

    def morphism(self, s: int) -> MHSMorphism:
        return MHSMorphism(self.term(s), self.term(s + 1), self.lattice().d(s))

    def check(self) -> None:
        lat = self.lattice()
        lat.check()
        for s, h in self.terms:
            require_valid(h)
        for s, _ in self.diffs:
            report = check_morphism(self.morphism(s))
            if not report.ok:
                raise InvalidInput(f"differential d^{s} is not a strict morphism: "
                                   + "; ".join(report.problems))


def cohomology_mhs(c: MHSComplex, i: int) -> MixedHodgeStructure:
    """H^i(C) with filtrations induced from the cycles."""
    grp = lattice_cohomology(c.lattice(), i)
    if not grp.cycles:
        return MixedHodgeStructure.build(0, {0: []}, {0: []}, grp.torsion)
    k = sub_structure(c.term(i), grp.cycles)
    return project_structure(k, grp.projection, grp.torsion)


def _as_pure(h: MixedHodgeStructure, weight: int) -> PureHodgeStructure:
    ws = h.weights()
    if ws and ws != [weight]:
        raise InconsistentData(f"row cohomology has weights {ws}, expected pure weight {weight}")
    hodge = {p: b for p, b in h.hodge_filtration} or {0: []}
    return PureHodgeStructure(h.rank, ((weight, tuple(h.W(weight)) if h.rank else ()),),
                              tuple(sorted(hodge.items())), h.torsion)


# ----------------------------------------------------------------------------
# simplicial cohomology data


@dataclass
class CycleData:
    """Cycle data attached to a simplicial datum at level p.

    ns_ranks[s]      rank of the cycle lattice on X_s
    ns_faces[s]      face maps (one integer matrix per k = 0..s+1) to X_{s+1}
    cycle_class[s]   integer matrix from cycles on X_s to H^{2p}(X_s)
    aj[s]            per face k, per cycle basis element of X_s, a vector of
                     H^{2p-1}(X_{s+1}) (tensor K): the Abel-Jacobi correction of
                     that face applied to that cycle
    """

    p: int
    ns_ranks: dict[int, int]
    ns_faces: dict[int, list]
    cycle_class: dict[int, list]
    aj: dict[int, list] = field(default_factory=dict)

    def complex(self) -> LatticeComplex:
        diffs = {}
        for s, faces in self.ns_faces.items():
            rows, cols = self.ns_ranks.get(s + 1, 0), self.ns_ranks.get(s, 0)
            acc = _zero(rows, cols)
            for k, m in enumerate(faces):
                acc = _add(acc, _int_matrix(m, rows, cols, f"cycle face {k} at level {s}"),
                           -1 if k % 2 else 1)
            diffs[s] = acc
        return LatticeComplex.build(self.ns_ranks, diffs)


@dataclass
class SimplicialCohomologyDatum:
    """Pure structures H^t(X_s) with face pullbacks, for s = 0..levels-1."""

    levels: int
    terms: dict[tuple[int, int], PureHodgeStructure]
    faces: dict[tuple[int, int], list]
    cycles: Optional[CycleData] = None
    coniveau: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    def term(self, s: int, t: int) -> PureHodgeStructure:
        h = self.terms.get((s, t))
        if h is None:
            return PureHodgeStructure.build(0, {t: []}, {0: []})
        return h

    def degrees(self) -> list[int]:
        return sorted({t for (_, t) in self.terms})

    def face_matrices(self, s: int, t: int) -> list[IntMatrix]:
        rows, cols = self.term(s + 1, t).rank, self.term(s, t).rank
        given = self.faces.get((s, t))
        if given is None:
            return [_zero(rows, cols) for _ in range(s + 2)]
        if len(given) != s + 2:
            raise InvalidInput(f"level {s}, degree {t}: expected {s + 2} face maps, got {len(given)}")
        return [_int_matrix(m, rows, cols, f"face {k} at level {s}, degree {t}")
                for k, m in enumerate(given)]

    def check(self) -> None:
        for (s, t), h in self.terms.items():
            require_valid(h)
            ws = h.weights()
            if ws and ws != [t]:
                raise InvalidInput(f"H^{t}(X_{s}) must be pure of weight {t}, has weights {ws}")
            if not 0 <= s < self.levels:
                raise InvalidInput(f"component X_{s} outside 0..{self.levels - 1}")
        for t in self.degrees():
            for s in range(self.levels - 1):
                for k, m in enumerate(self.face_matrices(s, t)):
                    f = MHSMorphism(self.term(s, t), self.term(s + 1, t), m)
                    rep = check_morphism(f)
                    if not rep.ok:
                        raise InvalidInput(f"face {k} at level {s}, degree {t} is not a morphism: "
                                           + "; ".join(rep.problems))
        if self.cycles is not None:
            self.cycles.complex()


def _check_cosimplicial(d: SimplicialCohomologyDatum, t: int) -> None:
    for s in range(d.levels - 2):
        lo = d.face_matrices(s, t)
        hi = d.face_matrices(s + 1, t)
        a, b = d.term(s, t).rank, d.term(s + 1, t).rank
        for j in range(1, s + 3):
            for i in range(j):
                left = _mul(hi[j], lo[i], b, a)
                right = _mul(hi[i], lo[j - 1], b, a)
                if left != right:
                    raise InvalidInput(
                        f"degree {t}, level {s}: cosimplicial identity fails for the pair "
                        f"(i, j) = ({i}, {j}): d^{j} d^{i} != d^{i} d^{j - 1}")


def row_complex(d: SimplicialCohomologyDatum, t: int) -> MHSComplex:
    """(H^t)^.: degree s term H^t(X_s), differential sum_k (-1)^k d^k_s."""
    _check_cosimplicial(d, t)
    terms = {s: d.term(s, t) for s in range(d.levels)}
    diffs = {}
    for s in range(d.levels - 1):
        rows, cols = d.term(s + 1, t).rank, d.term(s, t).rank
        acc = _zero(rows, cols)
        for k, m in enumerate(d.face_matrices(s, t)):
            acc = _add(acc, m, -1 if k % 2 else 1)
        diffs[s] = acc
    return MHSComplex.build(terms, diffs)


def weight_graded(d: SimplicialCohomologyDatum, t: int, i: int) -> PureHodgeStructure:
    """H^i of the degree-t row: the weight-t graded piece of H^{t+i}."""
    h = cohomology_mhs(row_complex(d, t), i)
    require_valid(h)
    return _as_pure(h, t)


# ----------------------------------------------------------------------------
# connecting maps


@dataclass(frozen=True)
class ConnectingMap:
    """delta: H^i(N) -> H^{i+1}(A) on free parts, plus torsion residues."""

    degree: int
    matrix: IntMatrix
    torsion_images: tuple[tuple[int, ...], ...]
    source: CohomologyGroup
    target: CohomologyGroup


def _check_exact(a: LatticeComplex, b: LatticeComplex, n: LatticeComplex,
                 f: Mapping[int, Sequence], g: Mapping[int, Sequence]) -> tuple[dict, dict]:
    fs, gs = {}, {}
    degs = sorted(set(a.degrees()) | set(b.degrees()) | set(n.degrees()))
    for s in degs:
        ra, rb, rn = a.rank(s), b.rank(s), n.rank(s)
        fm = _int_matrix(f.get(s, _zero(rb, ra)), rb, ra, f"f in degree {s}")
        gm = _int_matrix(g.get(s, _zero(rn, rb)), rn, rb, f"g in degree {s}")
        if not _is_zero(_mul(gm, fm, rb, ra)):
            raise InvalidInput(f"not exact in degree {s}: g f != 0")
        frows = [[Fraction(x) for x in r] for r in fm]
        if ra and rank(frows, ra) != ra:
            raise InvalidInput(f"not exact in degree {s}: f is not injective")
        if rn:
            smat, _, _ = snf_int([list(r) for r in gm], rb)
            divs = [smat[k][k] for k in range(min(rn, rb))]
            if len([x for x in divs if x]) != rn or any(abs(x) != 1 for x in divs if x):
                raise InvalidInput(f"not exact in degree {s}: g is not surjective")
        kg = integer_kernel([[Fraction(x) for x in r] for r in gm], rb) if rn else identity_int(rb)
        img = lattice_basis([tuple(fm[r][j] for r in range(rb)) for j in range(ra)], rb) if ra else ()
        if len(kg) != len(img) or (kg and LatticeBasis(rb, img).index_in(LatticeBasis.from_generators(kg, rb)) != 1):
            raise InvalidInput(f"not exact in degree {s}: ker g != im f")
        fs[s], gs[s] = fm, gm
    return fs, gs


def _chain_check(x: LatticeComplex, y: LatticeComplex, h: Mapping[int, IntMatrix], name: str) -> None:
    for s in sorted(set(x.degrees()) | set(y.degrees())):
        hs = h.get(s, _zero(y.rank(s), x.rank(s)))
        hs1 = h.get(s + 1, _zero(y.rank(s + 1), x.rank(s + 1)))
        left = _mul(y.d(s), hs, y.rank(s), x.rank(s))
        right = _mul(hs1, x.d(s), x.rank(s + 1), x.rank(s))
        if left != right:
            raise InvalidInput(f"{name} is not a chain map in degree {s}")


def connecting_map(a: LatticeComplex, b: LatticeComplex, n: LatticeComplex,
                   f: Mapping[int, Sequence], g: Mapping[int, Sequence], i: int) -> ConnectingMap:
    """Snake-lemma map H^i(N) -> H^{i+1}(A) for 0 -> A -f-> B -g-> N -> 0."""
    fs, gs = _check_exact(a, b, n, f, g)
    _chain_check(a, b, fs, "f")
    _chain_check(b, n, gs, "g")
    hn = lattice_cohomology(n, i)
    ha = lattice_cohomology(a, i + 1)
    rb, rb1 = b.rank(i), b.rank(i + 1)
    ra1 = a.rank(i + 1)
    gm = gs.get(i, _zero(n.rank(i), rb))
    fm1 = fs.get(i + 1, _zero(rb1, ra1))
    cols, tors = [], []
    for y in hn.section:
        if rb:
            bvec = solve_integer([[Fraction(x) for x in r] for r in gm], list(y), rb)
        else:
            bvec = ()
        db = matvec(b.d(i), bvec) if rb1 else ()
        avec = solve_integer([[Fraction(x) for x in r] for r in fm1], list(db), ra1) if ra1 else ()
        if ra1:
            cols.append(tuple(int(x) for x in ha.project(avec)))
            tors.append(ha.torsion_class(avec))
        else:
            cols.append(())
            tors.append(())
    mat = tuple(tuple(c[r] for c in cols) for r in range(ha.free_rank))
    return ConnectingMap(i, mat, tuple(tors), hn, ha)


# ----------------------------------------------------------------------------
# torus-valued boundary on cycle data


@dataclass(frozen=True)
class LambdaTable:
    """lambda^i on a basis of the free part of H^i of the cycle complex."""

    p: int
    degree: int
    basis: tuple[tuple[int, ...], ...]
    classes: tuple[tuple, ...]
    values: tuple[TorusPoint, ...]
    torus: TorusPresentation
    even_piece: PureHodgeStructure
    odd_piece: PureHodgeStructure
    group: Optional[CohomologyGroup] = None

    def evaluate_cycle(self, x: Sequence[int]) -> TorusPoint:
        """lambda on any cycle of the cycle complex in degree i."""
        y = self.group.project(x)
        out = self.torus.zero()
        for c, v in zip(y, self.values):
            if c:
                out = out + int(c) * v
        return out

    def image_rank(self) -> int:
        reps = [v.rep for v in self.values]
        if not reps or not self.torus.ambient:
            return 0
        return len(reps) - len(torus_kernel(reps, self.torus.subspace, self.torus.lattice, "isogeny"))


def _require_cycles(d: SimplicialCohomologyDatum) -> CycleData:
    if d.cycles is None:
        raise UnsupportedInput("the datum carries no cycle data (cycle lattices, classes and "
                               "Abel-Jacobi corrections are required)")
    return d.cycles


def _adjust_cocycle(w: Sequence, nxt: IntMatrix, f_basis, n: int, d: int) -> tuple:
    """w' = w - f - q with f in F^p, q rational, and d(w') = 0; NoSolution if impossible."""
    if not nxt or not any(matvec(nxt, w)):
        return tuple(w)
    # unknowns: expanded coefficients of f (deg each) and q (n rational)
    units = [Fraction(1), ExactScalar(0, 1)]
    if d != 1:
        units += [ExactScalar(0, 0, 1, 0, d), ExactScalar(0, 0, 0, 1, d)]
    gens = []
    for v in f_basis:
        for u in units:
            gens.append(tuple(u * x if x else Fraction(0) for x in v))
    for j in range(n):
        gens.append(tuple(Fraction(int(i == j)) for i in range(n)))
    images = [expand(matvec(nxt, g), d) for g in gens]
    target = expand(matvec(nxt, w), d)
    rows = [[img[r] for img in images] for r in range(len(target))]
    c = solve(rows, list(target), len(gens))
    out = list(w)
    for coef, g in zip(c, gens):
        if coef:
            out = [a - coef * b for a, b in zip(out, g)]
    return tuple(out)


def extension_connecting(d: SimplicialCohomologyDatum, p: int, i: int) -> LambdaTable:
    """lambda^i: H^i(cycles) -> H^{i+1} of the torus complex, up to isogeny.

    Each basis cycle x is sent to sum_k (-1)^k aj[i][k](x) in the degree
    i+1 term of the weight 2p-1 row, corrected into a cocycle modulo
    F^p + rational vectors, and read in H^{i+1} of that row.
    """
    cyc = _require_cycles(d)
    if cyc.p != p:
        raise UnsupportedInput(f"cycle data is given for level {cyc.p}, not {p}")
    ns = cyc.complex()
    hns = lattice_cohomology(ns, i)
    odd_row = row_complex(d, 2 * p - 1)
    even_row = row_complex(d, 2 * p)
    odd = weight_graded(d, 2 * p - 1, i + 1)
    even = weight_graded(d, 2 * p, i)
    grp_odd = lattice_cohomology(odd_row.lattice(), i + 1)
    grp_even = lattice_cohomology(even_row.lattice(), i)
    term = d.term(i + 1, 2 * p - 1)
    n = term.rank
    aj = cyc.aj.get(i, [])
    src_rank = cyc.ns_ranks.get(i, 0)
    if n and aj and len(aj) != i + 2:
        raise InvalidInput(f"Abel-Jacobi data at level {i}: expected {i + 2} faces, got {len(aj)}")
    d_field = infer_d(aj, [h.hodge_filtration for h in d.terms.values()])
    cl = _int_matrix(cyc.cycle_class.get(i, _zero(d.term(i, 2 * p).rank, src_rank)),
                     d.term(i, 2 * p).rank, src_rank, f"cycle class at level {i}")
    torus = TorusPresentation(odd.rank, tuple(identity_int(odd.rank)), odd.F(p),
                              f"H^{i + 1} of the weight {2 * p - 1} row", False)
    basis, classes, values = [], [], []
    for x in hns.section:
        x = tuple(int(v) for v in x)
        basis.append(x)
        classes.append(grp_even.project(matvec(cl, x)) if cl else ())
        if not n:
            values.append(torus.zero())
            continue
        w = [Fraction(0)] * n
        for k, face in enumerate(aj):
            if len(face) != src_rank:
                raise InvalidInput(f"Abel-Jacobi data at level {i}, face {k}: "
                                   f"expected {src_rank} vectors, got {len(face)}")
            sign = -1 if k % 2 else 1
            for c, vec in zip(x, face):
                if c:
                    if len(vec) != n:
                        raise InvalidInput(f"Abel-Jacobi vector of length {len(vec)}, expected {n}")
                    w = [a + sign * c * b for a, b in zip(w, vec)]
        try:
            w = _adjust_cocycle(w, odd_row.lattice().d(i + 1), term.F(p), n, d_field)
        except NoSolution:
            raise InconsistentData("Abel-Jacobi data do not define a torus cocycle") from None
        values.append(torus.point(grp_odd.project(w)) if odd.rank else torus.zero())
    return LambdaTable(p, i, tuple(basis), tuple(classes), tuple(values), torus, even, odd, hns)


def assemble_total(d: SimplicialCohomologyDatum, p: int, i: int) -> tuple[MixedHodgeStructure, LambdaTable]:
    """Two-step structure H^e of H^{2p+i} assembled from the rows and lambda^i.

    The extension class on the Hodge classes of the weight 2p piece is
    read off lambda through the cycle classes, which must span those Hodge
    classes rationally.
    """
    lam = extension_connecting(d, p, i)
    even, odd = lam.even_piece, lam.odd_piece
    g = even.rank
    hc = _hodge_class_lattice(even, p) if g else LatticeBasis(0, ())
    r = hc.rank
    if r and not lam.classes:
        raise UnsupportedInput("no cycle classes available to determine the extension")
    # express each Hodge class basis vector rationally through cycle classes
    cls = [tuple(Fraction(x) for x in c) for c in lam.classes]
    rows = [[c[k] for c in cls] for k in range(g)]
    table = []
    for y in hc.basis:
        try:
            coef = solve(rows, [Fraction(x) for x in y], len(cls)) if cls else ()
        except NoSolution:
            raise UnsupportedInput("cycle classes do not span the Hodge classes rationally; "
                                   "the extension class cannot be assembled") from None
        rep = [Fraction(0)] * odd.rank
        for c, v in zip(coef, lam.values):
            if c:
                rep = [a + c * b for a, b in zip(rep, v.rep)]
        table.append(tuple(rep))
    a = odd if odd.rank else PureHodgeStructure.build(0, {2 * p - 1: []}, {0: []})
    h = assemble_two_step(a, r, table, p)
    return h, lam


@dataclass
class SquareReport:
    commutes: bool
    witnesses: list
    lambda_values: list
    extension_values: list
    kernel_rank_lambda: int
    kernel_rank_extension: int
    image_rank: int


def motivic_square_check(d: SimplicialCohomologyDatum, p: int, i: int,
                         total: Optional[MixedHodgeStructure] = None,
                         odd_map: Optional[Sequence[Sequence[int]]] = None,
                         even_map: Optional[Sequence[Sequence[int]]] = None) -> SquareReport:
    """Compare lambda^i with e^p of the total cohomology on cycle classes.

    ``total`` is H^{2p+i} with its full filtrations; when omitted it is
    assembled from the rows.  ``odd_map`` / ``even_map`` send the graded
    coordinates of ``total`` to the row-cohomology coordinates (identity
    when omitted).  Torus points are compared up to torsion.
    """
    lam = extension_connecting(d, p, i)
    if total is None:
        total, _ = assemble_total(d, p, i)
    require_valid(total)
    table = extension_class(total, p)
    g1 = graded_data(total, 2 * p - 1)
    g2 = graded_data(total, 2 * p)
    if g1.rank != lam.odd_piece.rank or g2.rank != lam.even_piece.rank:
        raise UnsupportedInput("graded ranks of the supplied cohomology do not match the rows")
    phi_odd = [[Fraction(x) for x in r] for r in (odd_map or identity_int(g1.rank))]
    phi_even = [[Fraction(x) for x in r] for r in (even_map or identity_int(g2.rank))]
    witnesses, lvals, evals = [], [], []
    jac = table.torus
    for x, c, val in zip(lam.basis, lam.classes, lam.values):
        y = solve(phi_even, list(c), g2.rank) if g2.rank else ()
        try:
            ev = table.evaluate_vector(tuple(int(v) for v in y)) if g2.rank else jac.zero()
        except (NoSolution, ValueError, TypeError):
            raise UnsupportedInput(f"cycle {x} does not map to an integral Hodge class") from None
        lam_rep = solve(phi_odd, list(val.rep), g1.rank) if g1.rank else ()
        diff = tuple(a - b for a, b in zip(ev.rep, lam_rep))
        same = subgroup_member(diff, jac.subspace, jac.lattice, "isogeny").inside if diff else True
        lvals.append(tuple(lam_rep))
        evals.append(ev.rep)
        if not same:
            witnesses.append({"cycle": x, "lambda": tuple(lam_rep), "extension": ev.rep})
    kl = _value_kernel_rank(lvals, jac)
    ke = _value_kernel_rank(evals, jac)
    return SquareReport(not witnesses, witnesses, lvals, evals, kl, ke, lam.image_rank())


def _value_kernel_rank(vals, jac: TorusPresentation) -> int:
    if not vals:
        return 0
    if not jac.ambient:
        return len(vals)
    return len(torus_kernel(vals, jac.subspace, jac.lattice, "isogeny"))
