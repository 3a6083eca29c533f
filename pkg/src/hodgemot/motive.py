"""Jacobian tori, extension class maps and Hodge 1-motives.

For a mixed Hodge structure H and a level p the extension

    0 -> gr_{2p-1} -> W_{2p} / W_{2p-2} -> gr_{2p} -> 0

induces e^p from the (p,p) Hodge classes of gr_{2p} into the torus
J^p = gr_{2p-1}(C) / (F^p + lattice).  The value on a class x is the
class of x_F - x_Z where x_Z is an integral lift of x and x_F a lift in F^p.

Coordinates: tori attached to H live in the graded coordinates of
gr_{2p-1} (see :func:`hodgemot.mhs.graded_data`) and Hodge classes are
vectors in the graded coordinates of gr_{2p}.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InconsistentData, InvalidInput, NoSolution, UnsupportedInput
from .exact.lattice import (
    LatticeBasis,
    Membership,
    lattice_basis,
    rational_lattice,
    subgroup_member,
    torus_kernel,
)
from .exact.matrix import (
    Basis,
    conj_space,
    identity,
    intersect,
    is_subspace,
    rank,
    solve,
    span,
)
from .mhs import (
    MixedHodgeStructure,
    PureHodgeStructure,
    _graded_hodge,
    _piece_types,
    graded_data,
    hodge_classes,
    pure,
    quotient_structure,
    require_valid,
    sub_structure,
)

__all__ = [
    "TorusPresentation",
    "TorusPoint",
    "ClassTable",
    "OneMotive",
    "HodgeMotive",
    "jacobian_torus",
    "extension_class",
    "point_order",
    "abelian_part",
    "hodge_motive",
    "ep_kernel",
    "hp_kernel",
    "assemble_two_step",
    "realize_one_motive",
    "isogenous",
]

ZERO = Fraction(0)


def _combine(cols: Sequence[Sequence], coeffs: Sequence, n: int) -> tuple:
    out = [ZERO] * n
    for c, col in zip(coeffs, cols):
        if c:
            out = [a + c * b for a, b in zip(out, col)]
    return tuple(out)


# ----------------------------------------------------------------------------
# tori and their points


@dataclass(frozen=True)
class TorusPresentation:
    """The torus span_K(lattice) / (subspace + lattice) inside K^ambient."""

    ambient: int
    lattice: tuple[tuple[int, ...], ...]
    subspace: Basis
    provenance: str = ""
    level_one: bool = False

    @property
    def rank(self) -> int:
        return len(self.lattice)

    @property
    def dim(self) -> int:
        return len(self.subspace)

    def is_zero(self) -> bool:
        return not self.lattice

    def check(self) -> None:
        """Raise InvalidInput unless the data present a compact complex torus."""
        n = self.ambient
        lat = [tuple(Fraction(x) for x in v) for v in self.lattice]
        if rank(lat, n) != len(lat):
            raise InvalidInput("torus lattice vectors are dependent")
        if not is_subspace(self.subspace, lat, n):
            raise InvalidInput("torus subspace is not inside the span of its lattice")
        if 2 * self.dim != self.rank:
            raise InvalidInput(f"torus has lattice rank {self.rank} but subspace dimension {self.dim}")
        if intersect(self.subspace, conj_space(self.subspace), n):
            raise InvalidInput("torus subspace meets its conjugate")

    def point(self, rep: Sequence) -> "TorusPoint":
        if len(rep) != self.ambient:
            raise InvalidInput(f"torus point of length {len(rep)} in ambient {self.ambient}")
        return TorusPoint(self, tuple(rep))

    def zero(self) -> "TorusPoint":
        return TorusPoint(self, (ZERO,) * self.ambient)

    def membership(self, v: Sequence, mode: str = "strict") -> Membership:
        return subgroup_member(v, self.subspace, self.lattice, mode)


@dataclass(frozen=True, eq=False)
class TorusPoint:
    """A point of a torus given by a representative vector."""

    torus: TorusPresentation
    rep: tuple

    def _other(self, other) -> "TorusPoint":
        if not isinstance(other, TorusPoint):
            raise TypeError("expected a TorusPoint")
        if other.torus.ambient != self.torus.ambient:
            raise InvalidInput("points of different tori")
        return other

    def __add__(self, other):
        o = self._other(other)
        return TorusPoint(self.torus, tuple(a + b for a, b in zip(self.rep, o.rep)))

    def __sub__(self, other):
        o = self._other(other)
        return TorusPoint(self.torus, tuple(a - b for a, b in zip(self.rep, o.rep)))

    def __neg__(self):
        return TorusPoint(self.torus, tuple(-a for a in self.rep))

    def __mul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return TorusPoint(self.torus, tuple(k * a for a in self.rep))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.torus.membership(self.rep, "strict").inside

    def is_torsion(self) -> bool:
        return self.torus.membership(self.rep, "isogeny").inside

    def __eq__(self, other):
        if not isinstance(other, TorusPoint):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return "TorusPoint(" + ", ".join(str(x) for x in self.rep) + ")"


def point_order(t: TorusPresentation, v) -> int | float:
    """Order of a torus point: a positive integer, or ``math.inf``.

    A point is torsion iff its representative lies in F + L (x) Q; the
    lattice part of that decomposition is unique, so the order is the
    least common denominator of its coefficients.
    """
    rep = v.rep if isinstance(v, TorusPoint) else tuple(v)
    m = subgroup_member(rep, t.subspace, t.lattice, "isogeny")
    if not m.inside:
        return math.inf
    den = 1
    for c in m.lattice_coefficients:
        den = math.lcm(den, Fraction(c).denominator)
    # the lcm is the order; confirm with a strict membership test
    scaled = tuple(den * x for x in rep)
    if not subgroup_member(scaled, t.subspace, t.lattice, "strict").inside:
        raise InconsistentData("torsion order certificate failed")
    return den


@dataclass(frozen=True)
class ClassTable:
    """Values of a homomorphism from a lattice of Hodge classes to a torus."""

    basis: tuple[tuple[int, ...], ...]
    values: tuple[TorusPoint, ...]
    torus: TorusPresentation
    ambient: int = 0

    @property
    def rank(self) -> int:
        return len(self.basis)

    def evaluate(self, coeffs: Sequence[int]) -> TorusPoint:
        """Value on sum coeffs_j basis_j."""
        out = self.torus.zero()
        for c, v in zip(coeffs, self.values):
            if c:
                out = out + int(c) * v
        return out

    def evaluate_vector(self, y: Sequence) -> TorusPoint:
        """Value on a class given in graded coordinates."""
        return self.evaluate(LatticeBasis(self.ambient, self.basis).coordinates(y))

    def representatives(self) -> list[tuple]:
        return [v.rep for v in self.values]


@dataclass(frozen=True)
class OneMotive:
    """[N -> A]: a lattice N with a homomorphism u to a torus A."""

    lattice: LatticeBasis
    torus: TorusPresentation
    u: tuple[TorusPoint, ...]

    def __post_init__(self):
        if len(self.u) != self.lattice.rank:
            raise InvalidInput(f"{len(self.u)} values for a lattice of rank {self.lattice.rank}")

    def image_rank(self) -> int:
        """Rank of u(N) modulo torsion."""
        vals = [v.rep for v in self.u]
        return len(vals) - len(torus_kernel(vals, self.torus.subspace, self.torus.lattice, "isogeny")) \
            if vals else 0


# ----------------------------------------------------------------------------
# J^p, e^p, abelian part


def jacobian_torus(h: MixedHodgeStructure, p: int) -> TorusPresentation:
    """J^p(H) = gr_{2p-1}(C) / (F^p + gr_{2p-1}(Z)) in graded coordinates."""
    require_valid(h)
    g = graded_data(h, 2 * p - 1)
    m = g.rank
    sub = _graded_hodge(h, 2 * p - 1, p)
    level_one = _abelian_lattice(h, p)[0] == m
    return TorusPresentation(m, tuple(identity_int(m)), sub, f"J^{p} of rank-{h.rank} structure", level_one)


def identity_int(n: int) -> list[tuple[int, ...]]:
    return [tuple(int(i == j) for i in range(n)) for j in range(n)]


def _hodge_class_lattice(h: MixedHodgeStructure, p: int) -> LatticeBasis:
    """H^{p,p}_Z: rational points of F^p on gr_{2p}, in graded coordinates."""
    g = graded_data(h, 2 * p)
    return rational_lattice(_graded_hodge(h, 2 * p, p), g.rank)


def _lifts(h: MixedHodgeStructure, p: int, y: Sequence, rng: Optional[random.Random]):
    """(x_Z, x_F) for a class y of gr_{2p} in graded coordinates."""
    n = h.rank
    g = graded_data(h, 2 * p)
    xz = _combine(g.lifts, y, n)
    fb = intersect(h.F(p), h.W(2 * p), n) if h.F(p) else ()
    proj = [g.project(v) for v in fb]
    rows = [[pv[i] for pv in proj] for i in range(g.rank)]
    try:
        c = solve(rows, list(y), len(fb)) if fb else solve(rows, list(y), 0)
    except NoSolution:
        raise InconsistentData("no F^p lift of a Hodge class; the structure is corrupted") from None
    xf = _combine(fb, c, n)
    if rng is not None:
        for v in g.lower:
            k = rng.randint(-3, 3)
            if k:
                xz = tuple(a + k * b for a, b in zip(xz, v))
        low = intersect(h.F(p), h.W(2 * p - 1), n) if h.F(p) else ()
        for v in low:
            k = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            if k:
                xf = tuple(a + k * b for a, b in zip(xf, v))
    return xz, xf


def extension_class(h: MixedHodgeStructure, p: int, rng: Optional[random.Random] = None) -> ClassTable:
    """e^p on the canonical basis of H^{p,p}_Z.

    ``rng`` re-chooses the integral and F-lifts at random; the resulting
    points are equal as torus points.
    """
    require_valid(h)
    torus = jacobian_torus(h, p)
    classes = _hodge_class_lattice(h, p)
    g1 = graded_data(h, 2 * p - 1)
    values = []
    for y in classes.basis:
        xz, xf = _lifts(h, p, y, rng)
        diff = tuple(a - b for a, b in zip(xf, xz))
        values.append(torus.point(g1.project(diff)))
    return ClassTable(classes.basis, tuple(values), torus, classes.ambient)


def _abelian_lattice(h: MixedHodgeStructure, p: int) -> tuple[int, tuple]:
    g = graded_data(h, 2 * p - 1)
    m = g.rank
    if not m:
        return 0, ()
    types, _ = _piece_types(h, 2 * p - 1)
    vecs = list(types.get((p - 1, p), ())) + list(types.get((p, p - 1), ()))
    lat = rational_lattice(span(vecs, m), m) if vecs else LatticeBasis(m, ())
    return lat.rank, lat.basis


def abelian_part(h: MixedHodgeStructure, p: int) -> tuple[LatticeBasis, TorusPresentation]:
    """H_a (lattice of types (p-1,p)+(p,p-1) in gr_{2p-1}) and its torus A^p(H)."""
    require_valid(h)
    g = graded_data(h, 2 * p - 1)
    m = g.rank
    _, basis = _abelian_lattice(h, p)
    ha = LatticeBasis(m, basis)
    sub = intersect(_graded_hodge(h, 2 * p - 1, p), ha.rational_span(), m) if basis else ()
    torus = TorusPresentation(m, basis, sub, f"A^{p} (level one part of J^{p})", True)
    return ha, torus


# ----------------------------------------------------------------------------
# Hodge 1-motive


@dataclass(frozen=True)
class HodgeMotive:
    """Hodge 1-motive of H at level p together with the intermediate structures."""

    p: int
    mode: str
    motive: OneMotive
    classes: LatticeBasis
    table: ClassTable
    jacobian: TorusPresentation
    abelian_lattice: LatticeBasis
    integral_hodge_classes: LatticeBasis
    strict_kernel: LatticeBasis
    isogeny_kernel: LatticeBasis
    H_prime: MixedHodgeStructure
    H_double_prime: MixedHodgeStructure
    H_e: MixedHodgeStructure
    H_h: MixedHodgeStructure
    H_e_to_graded: tuple = field(default=(), repr=False)

    @property
    def lattice_rank(self) -> int:
        return self.motive.lattice.rank

    @property
    def abelian_rank(self) -> int:
        return self.abelian_lattice.rank

    @property
    def image_rank(self) -> int:
        """Rank of e^p(H^{p,p}_Z) in J^p modulo torsion."""
        return self.classes.rank - self.isogeny_kernel.rank


def _kernel(table: ClassTable, sub: Basis, lat, mode: str) -> LatticeBasis:
    """Lattice of classes (graded coordinates) whose value lies in sub + lat."""
    amb = table.ambient
    if not table.basis:
        return LatticeBasis(amb, ())
    coeffs = torus_kernel(table.representatives(), sub, lat, mode)
    vecs = [tuple(sum(c * b[i] for c, b in zip(x, table.basis)) for i in range(amb)) for x in coeffs]
    return LatticeBasis.from_generators(vecs, amb)


def ep_kernel(h: MixedHodgeStructure, p: int, mode: str = "strict") -> LatticeBasis:
    """ker e^p as a lattice of gr_{2p} (graded coordinates)."""
    t = extension_class(h, p)
    return _kernel(t, t.torus.subspace, t.torus.lattice, mode)


def _ha_sub(h, p, torus: TorusPresentation, ha: LatticeBasis) -> Basis:
    m = torus.ambient
    return span(list(ha.rational_span()) + list(torus.subspace), m) if m else ()


def hodge_motive(h: MixedHodgeStructure, p: int, mode: str = "isogeny") -> HodgeMotive:
    """The Hodge 1-motive [H^p(H) -> A^p(H)] with H', H'', H^e and H^h.

    ``mode`` selects how N = {x : e^p(x) in A^p(H)} is computed:
    ``"isogeny"`` allows rational lattice coefficients, ``"strict"`` does not.
    """
    if mode not in ("strict", "isogeny"):
        raise InvalidInput(f"unknown mode {mode!r}")
    require_valid(h)
    n = h.rank
    table = extension_class(h, p)
    jac = table.torus
    m = jac.ambient
    ha, a_torus = abelian_part(h, p)
    classes = LatticeBasis(table.ambient, table.basis)
    sub = _ha_sub(h, p, jac, ha)
    full = tuple(identity_int(m))

    # N and u
    nlat = _kernel(table, sub, full, mode)
    u = []
    for x in nlat.basis:
        rep = table.evaluate_vector(x).rep
        mem = subgroup_member(rep, list(ha.rational_span()) + list(jac.subspace), full, mode)
        if not mem.inside:
            raise InconsistentData("motive lattice element does not map to the abelian part")
        k = ha.rank
        arep = _combine(ha.rational_span(), mem.subspace_coefficients[:k], m)
        u.append(a_torus.point(arep))
    motive = OneMotive(nlat, a_torus, tuple(u))

    strict = _kernel(table, jac.subspace, full, "strict")
    isog = _kernel(table, jac.subspace, full, "isogeny")

    # integral Hodge classes of H, pushed to gr_{2p}
    g2 = graded_data(h, 2 * p)
    g1 = graded_data(h, 2 * p - 1)
    hc = hodge_classes(h, p)
    hc_gr = LatticeBasis.from_generators([g2.project(v) for v in hc.basis], g2.rank) if hc.basis else \
        LatticeBasis(g2.rank, ())

    # H', H'', H^e, H^h as sub-quotients of the lattice Z^n
    l0 = rational_lattice(h.W(2 * p - 2), n).basis
    l1 = rational_lattice(h.W(2 * p - 1), n).basis
    hp_basis = lattice_basis(list(l0) + [_combine(g1.lifts, a, n) for a in ha.basis], n)
    hpp_basis = lattice_basis(list(l1) + [_combine(g2.lifts, y, n) for y in classes.basis], n)
    h_prime = sub_structure(h, hp_basis)
    h_dprime = sub_structure(h, hpp_basis)
    hpp = LatticeBasis(n, hpp_basis)
    l0_coords = [hpp.coordinates(v) for v in l0]
    qd = quotient_structure(h_dprime, lattice_basis(l0_coords, len(hpp_basis)))
    h_e = qd.structure
    e_rank = h_e.rank

    def he_vector(v):
        # a vector of H'' (in Z^n) to H^e coordinates
        return qd.project(hpp.coordinates(v))

    def he_to_graded(z):
        return g2.project(_combine(hpp_basis, qd.lift(z), n))

    hh_gens = [he_vector(_combine(g1.lifts, a, n)) for a in ha.basis]
    hh_gens += [he_vector(_combine(g2.lifts, y, n)) for y in nlat.basis]
    hh_basis = lattice_basis(hh_gens, e_rank) if hh_gens else ()
    h_h = sub_structure(h_e, hh_basis)
    return HodgeMotive(p, mode, motive, classes, table, jac, ha, hc_gr, strict, isog,
                       h_prime, h_dprime, h_e, h_h, (qd, tuple(hpp_basis), he_to_graded))


def he_hodge_classes_graded(hm: HodgeMotive, h: MixedHodgeStructure) -> LatticeBasis:
    """hodge_classes(H^e, p) pushed to the graded coordinates of gr_{2p}(H)."""
    _, _, to_graded = hm.H_e_to_graded
    lat = hodge_classes(hm.H_e, hm.p)
    amb = hm.classes.ambient
    return LatticeBasis.from_generators([to_graded(v) for v in lat.basis], amb) if lat.basis else \
        LatticeBasis(amb, ())


def _sub_lattice_coords(big: Sequence[Sequence[int]], vecs: Sequence[Sequence], n: int):
    lb = LatticeBasis(n, tuple(big))
    return [lb.coordinates(v) for v in vecs]


def hp_kernel(h: MixedHodgeStructure, p: int) -> LatticeBasis:
    """ker h^p, computed through H' and H'' and pushed to gr_{2p} coordinates.

    This route never evaluates e^p: it builds H''/H', takes its level-p
    Hodge classes, lifts them to F^p of H''/W_{2p-2} and reads the
    difference in H'/W_{2p-2}.
    """
    require_valid(h)
    n = h.rank
    l0 = rational_lattice(h.W(2 * p - 2), n).basis
    l1 = rational_lattice(h.W(2 * p - 1), n).basis
    l2 = rational_lattice(h.W(2 * p), n).basis
    r0 = len(l0)

    # gr_{2p-1} and its level-one sublattice, via quotients
    w1 = sub_structure(h, l1)
    q1 = quotient_structure(w1, lattice_basis(_sub_lattice_coords(l1, l0, n), len(l1)))
    gr1 = q1.structure
    k1 = gr1.rank
    f1 = gr1.F(p - 1)
    level1 = intersect(f1, conj_space(f1), k1) if f1 else ()
    ha = rational_lattice(level1, k1).basis if level1 else ()
    hprime = lattice_basis(list(l0) + [_combine(l1, q1.lift(a), n) for a in ha], n) if (l0 or ha) else ()

    # level-p Hodge classes of gr_{2p}, via quotients
    w2 = sub_structure(h, l2)
    q2 = quotient_structure(w2, lattice_basis(_sub_lattice_coords(l2, l1, n), len(l2)))
    cls = hodge_classes(q2.structure, p).basis
    hdp = lattice_basis(list(l1) + [_combine(l2, q2.lift(y), n) for y in cls], n) if (l1 or cls) else ()
    if not cls:
        g2 = graded_data(h, 2 * p)
        return LatticeBasis(g2.rank, ())

    # E = H'' / W_{2p-2};  S = H' / W_{2p-2};  Q = E / S = H'' / H'
    hdp_lb = LatticeBasis(n, hdp)
    e_full = sub_structure(h, hdp)
    qe = quotient_structure(e_full, lattice_basis([hdp_lb.coordinates(v) for v in l0], len(hdp))) \
        if r0 else None
    e = qe.structure if qe else e_full

    def to_e(v):
        c = hdp_lb.coordinates(v)
        return qe.project(c) if qe else tuple(c)

    s_gens = [to_e(v) for v in hprime if any(to_e(v))]
    s_basis = lattice_basis(s_gens, e.rank) if s_gens else ()
    s_basis = rational_lattice(span([tuple(Fraction(x) for x in v) for v in s_basis], e.rank),
                               e.rank).basis if s_basis else ()
    qq = quotient_structure(e, s_basis)
    hp_classes = hodge_classes(qq.structure, p).basis
    if not hp_classes:
        g2 = graded_data(h, 2 * p)
        return LatticeBasis(g2.rank, ())

    # extension values of 0 -> S -> E -> Q -> 0 on hp_classes, in S coordinates
    er = e.rank
    s_cols = [tuple(Fraction(x) for x in v) for v in s_basis]
    fpe = e.F(p)
    proj_f = [qq.project(v) for v in fpe]
    values = []
    for y in hp_classes:
        xz = qq.lift(y)
        rows = [[pv[i] for pv in proj_f] for i in range(qq.structure.rank)]
        c = solve(rows, list(y), len(fpe))
        xf = _combine(fpe, c, er)
        diff = [a - b for a, b in zip(xf, xz)]
        coords = solve([[col[i] for col in s_cols] for i in range(er)], diff, len(s_cols)) \
            if s_cols else ()
        values.append(tuple(coords))
    s_struct = sub_structure(e, s_basis) if s_basis else None
    if s_struct is None:
        coeffs = identity_int(len(hp_classes))
    else:
        fs = s_struct.F(p)
        coeffs = torus_kernel(values, fs, identity_int(len(s_basis)), "strict")

    # push kernel classes to gr_{2p}(H) coordinates
    g2 = graded_data(h, 2 * p)
    out = []
    for x in coeffs:
        y = _combine(hp_classes, x, qq.structure.rank)
        ez = qq.lift(y)
        zc = qe.lift(ez) if qe else ez
        out.append(g2.project(_combine(hdp, zc, n)))
    return LatticeBasis.from_generators(out, g2.rank)


# ----------------------------------------------------------------------------
# assembly and realization


def _as_rep(v) -> tuple:
    return v.rep if isinstance(v, TorusPoint) else tuple(v)


def assemble_two_step(a: MixedHodgeStructure, r: int, table: Sequence, p: int) -> MixedHodgeStructure:
    """Extension of Z(-p)^r by A with prescribed extension class.

    ``table`` holds r representatives (vectors in K^rank(A), or torus
    points).  The lattice is Z^rank(A) + Z^r, W_{2p-1} is the A block and
    F^q = F^q(A) + span{b_j + v_j} for q <= p, so that e^p(b_j) = v_j.
    """
    require_valid(a)
    ws = a.weights()
    if ws and ws != [2 * p - 1]:
        raise InvalidInput(f"A must be pure of weight {2 * p - 1}, has weights {ws}")
    na = a.rank
    if len(table) != r:
        raise InvalidInput(f"table has {len(table)} values for r = {r}")
    reps = [_as_rep(v) for v in table]
    for v in reps:
        if len(v) != na:
            raise InvalidInput(f"table value of length {len(v)}, expected {na}")
    n = na + r
    zeros_r = (ZERO,) * r

    def emb(v):
        return tuple(v) + zeros_r

    lifts = []
    for j, v in enumerate(reps):
        lifts.append(tuple(v) + tuple(Fraction(int(i == j)) for i in range(r)))
    levels = {q for q, _ in a.hodge_filtration} | {p, p + 1}
    lo = min(levels)
    hodge = {}
    for q in sorted(levels):
        vecs = [emb(v) for v in a.F(q)]
        if q <= p:
            vecs += lifts
        hodge[q] = vecs
    hodge[lo] = identity(n)
    weights = {2 * p - 1: [emb(v) for v in identity(na)], 2 * p: identity(n)}
    return MixedHodgeStructure.build(n, weights, hodge)


def _torus_hodge_structure(t: TorusPresentation, p: int) -> PureHodgeStructure:
    """The weight 2p-1 structure on Z^rank whose J^p is the torus t."""
    a = t.rank
    cols = [tuple(Fraction(x) for x in v) for v in t.lattice]
    rows = [[c[i] for c in cols] for i in range(t.ambient)]
    fvec = [solve(rows, list(v), a) for v in t.subspace]
    return pure(a, 2 * p - 1, {p - 1: identity(a), p: fvec})


def realize_one_motive(m: OneMotive, p: int) -> MixedHodgeStructure:
    """Hodge realization of [N -> A] for an abelian torus A, twisted to level p.

    Coordinates: A block first (in the basis of A's lattice), then N in
    the basis of m.lattice.
    """
    t = m.torus
    if not t.level_one:
        raise UnsupportedInput(
            "only 1-motives [L -> A] with A an abelian variety (level-one torus) are realized; "
            "this torus is not marked level one")
    t.check()
    hs = _torus_hodge_structure(t, p)
    cols = [tuple(Fraction(x) for x in v) for v in t.lattice]
    rows = [[c[i] for c in cols] for i in range(t.ambient)]
    values = []
    for pt in m.u:
        try:
            values.append(solve(rows, list(pt.rep), t.rank))
        except NoSolution:
            raise InvalidInput("u value is not in the span of the torus lattice") from None
    return assemble_two_step(hs, m.lattice.rank, values, p)


def isogenous(m1: OneMotive, m2: OneMotive) -> bool:
    """Equality up to isogeny of two 1-motives written in the same coordinates.

    Lattices must have the same rational span, tori the same rational
    lattice span and subspace, and u must agree up to torsion.
    """
    l1, l2 = m1.lattice, m2.lattice
    if l1.ambient != l2.ambient or l1.rank != l2.rank:
        return False
    if span(l1.rational_span(), l1.ambient) != span(l2.rational_span(), l2.ambient):
        return False
    t1, t2 = m1.torus, m2.torus
    if t1.ambient != t2.ambient:
        return False
    s1 = span([tuple(Fraction(x) for x in v) for v in t1.lattice], t1.ambient)
    s2 = span([tuple(Fraction(x) for x in v) for v in t2.lattice], t2.ambient)
    if s1 != s2 or span(t1.subspace, t1.ambient) != span(t2.subspace, t2.ambient):
        return False
    if not l1.basis:
        return True
    rows = [[Fraction(b[i]) for b in l2.basis] for i in range(l2.ambient)]
    for b, val in zip(l1.basis, m1.u):
        c = solve(rows, [Fraction(x) for x in b], l2.rank)
        den = 1
        for x in c:
            den = math.lcm(den, x.denominator)
        rep2 = _combine([v.rep for v in m2.u], [den * x for x in c], t2.ambient)
        diff = tuple(den * x - y for x, y in zip(val.rep, rep2))
        if not subgroup_member(diff, t2.subspace, t2.lattice, "isogeny").inside:
            return False
    return True
