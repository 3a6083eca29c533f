"""Two-piece gluings X = Y u_Z Y and their Mayer-Vietoris analysis.

The Cech hypercovering of such a pushout has X_0 = Y + Y and X_1 = Z,
with faces (a, b) -> i*a and (a, b) -> i*b.  Its row complexes are
H^t(Y)^2 -> H^t(Z), so gr_t H^n(X) is the kernel of s(a, b) = i*a - i*b
for t = n and its cokernel for t = n - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Optional, Sequence

from .complexes import (
    CycleData,
    LambdaTable,
    SimplicialCohomologyDatum,
    SquareReport,
    _int_matrix,
    assemble_total,
    extension_connecting,
    motivic_square_check,
    weight_graded,
)
from .errors import InvalidInput, UnsupportedInput
from .exact.matrix import rank
from .mhs import (
    MHSMorphism,
    MixedHodgeStructure,
    PureHodgeStructure,
    check_morphism,
    direct_sum,
    hodge_numbers,
    require_valid,
)
from .motive import HodgeMotive, _hodge_class_lattice, assemble_two_step, hodge_motive

__all__ = [
    "GluingPiece",
    "GluingCycles",
    "GluingSpec",
    "AnalysisBundle",
    "cech_two_gluing",
    "mv_cohomology",
    "builtin_fixture",
    "FIXTURES",
    "swap_copies",
    "sweep_restrictions",
]

FIXTURES = ("bloch", "srinivas")


@dataclass
class GluingPiece:
    """H^t(Y), H^t(Z) and the restriction i*: H^t(Y) -> H^t(Z)."""

    Y: PureHodgeStructure
    Z: PureHodgeStructure
    restriction: tuple


@dataclass
class GluingCycles:
    """Level-p cycle lattices on Y and Z with classes and Abel-Jacobi data.

    ``aj`` holds, for each cycle basis element of Y, a vector of
    H^{2p-1}(Z) (tensor K): the Abel-Jacobi coordinate of its restriction
    to Z with respect to a fixed splitting of Deligne cohomology.
    """

    p: int
    ns_Y: int
    ns_Z: int
    class_Y: tuple
    class_Z: tuple
    restriction: tuple
    aj: tuple = ()


@dataclass
class GluingSpec:
    pieces: dict[int, GluingPiece]
    cycles: Optional[GluingCycles] = None
    betti: dict[int, int] = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def check(self) -> None:
        for t, pc in self.pieces.items():
            for name, h in (("Y", pc.Y), ("Z", pc.Z)):
                require_valid(h)
                ws = h.weights()
                if ws and ws != [t]:
                    raise InvalidInput(f"H^{t}({name}) must be pure of weight {t}, has weights {ws}")
            m = _int_matrix(pc.restriction, pc.Z.rank, pc.Y.rank, f"restriction in degree {t}")
            rep = check_morphism(MHSMorphism(pc.Y, pc.Z, m))
            if not rep.ok:
                raise InvalidInput(f"restriction in degree {t} is not a morphism: "
                                   + "; ".join(rep.problems))
        c = self.cycles
        if c is not None:
            p = c.p
            hy = self.pieces.get(2 * p)
            ry = hy.Y.rank if hy else 0
            rz = hy.Z.rank if hy else 0
            _int_matrix(c.class_Y, ry, c.ns_Y, "cycle classes on Y")
            _int_matrix(c.class_Z, rz, c.ns_Z, "cycle classes on Z")
            _int_matrix(c.restriction, c.ns_Z, c.ns_Y, "cycle restriction")
            odd = self.pieces.get(2 * p - 1)
            nz = odd.Z.rank if odd else 0
            if len(c.aj) != c.ns_Y or any(len(v) != nz for v in c.aj):
                raise InvalidInput(f"Abel-Jacobi data must give {c.ns_Y} vectors of length {nz}")


def _block(m, rows: int, cols: int, left: bool):
    z = [0] * cols
    return [list(r) + z if left else z + list(r) for r in m] if rows else []


def _diag(m, cols: int):
    z = [0] * cols
    return [list(r) + z for r in m] + [z + list(r) for r in m]


def cech_two_gluing(g: GluingSpec) -> SimplicialCohomologyDatum:
    """Two-level datum: X_0 = Y + Y, X_1 = Z, faces (i*, 0) and (0, i*)."""
    g.check()
    terms, faces = {}, {}
    for t, pc in g.pieces.items():
        yy = direct_sum(pc.Y, pc.Y)
        terms[(0, t)] = PureHodgeStructure(yy.rank, yy.weight_filtration, yy.hodge_filtration)
        terms[(1, t)] = pc.Z
        ry, rz = pc.Y.rank, pc.Z.rank
        res = [list(r) for r in pc.restriction] if rz else []
        faces[(0, t)] = [_block(res, rz, ry, True), _block(res, rz, ry, False)]
    cyc = None
    c = g.cycles
    if c is not None:
        res = [list(r) for r in c.restriction] if c.ns_Z else []
        nz = len(c.aj[0]) if c.aj else 0
        zero = tuple(Fraction(0) for _ in range(nz))
        aj0 = [tuple(v) for v in c.aj] + [zero] * c.ns_Y
        aj1 = [zero] * c.ns_Y + [tuple(v) for v in c.aj]
        cyc = CycleData(
            c.p,
            {0: 2 * c.ns_Y, 1: c.ns_Z},
            {0: [_block(res, c.ns_Z, c.ns_Y, True), _block(res, c.ns_Z, c.ns_Y, False)]},
            {0: _diag([list(r) for r in c.class_Y], c.ns_Y) if c.class_Y else [],
             1: [list(r) for r in c.class_Z]},
            {0: [aj0, aj1]},
        )
    d = SimplicialCohomologyDatum(2, terms, faces, cyc, notes={"betti": dict(g.betti)})
    d.check()
    return d


@dataclass
class AnalysisBundle:
    """Mayer-Vietoris analysis of H^n(X) at level p."""

    n: int
    p: Optional[int]
    graded: dict[int, PureHodgeStructure]
    restriction_ranks: dict[int, int]
    rank: int
    mv_rank: int
    betti: Optional[int]
    H_e: Optional[MixedHodgeStructure] = None
    motive: Optional[HodgeMotive] = None
    lam: Optional[LambdaTable] = None
    square: Optional[SquareReport] = None
    notes: list = field(default_factory=list)

    def hodge_numbers(self) -> dict[int, dict]:
        return {t: hodge_numbers(h) for t, h in self.graded.items()}


def _restriction_rank(g: GluingSpec, t: int) -> int:
    pc = g.pieces.get(t)
    if pc is None or not pc.Z.rank or not pc.Y.rank:
        return 0
    return rank([[Fraction(x) for x in r] for r in pc.restriction], pc.Y.rank)


def mv_cohomology(g: GluingSpec, n: int, p: Optional[int] = None) -> AnalysisBundle:
    """Weight-graded pieces of H^n(X) and, for n = 2p, the Hodge 1-motive."""
    d = cech_two_gluing(g)
    graded = {}
    for t in (n - 1, n):
        if t in g.pieces:
            h = weight_graded(d, t, n - t)
            if h.rank:
                graded[t] = h
    total = sum(h.rank for h in graded.values())
    ranks = {t: _restriction_rank(g, t) for t in (n - 1, n)}

    def prank(t, side):
        pc = g.pieces.get(t)
        return getattr(pc, side).rank if pc else 0

    mv = 2 * prank(n, "Y") - ranks[n] + prank(n - 1, "Z") - ranks[n - 1]
    bundle = AnalysisBundle(n, p, graded, ranks, total, mv, g.betti.get(n), notes=list(g.notes))
    if p is None:
        return bundle
    if n != 2 * p:
        raise UnsupportedInput(f"the Hodge 1-motive at level {p} lives in degree {2 * p}, not {n}")
    even = graded.get(2 * p)
    odd = graded.get(2 * p - 1)
    classes = _hodge_class_lattice(even, p).rank if even is not None else 0
    if odd is not None and classes:
        if g.cycles is None or g.cycles.p != p:
            raise UnsupportedInput(
                f"gr_{2 * p - 1} and level-{p} Hodge classes coexist in H^{n}; "
                "the Abel-Jacobi table (cycle data) is required to assemble the extension")
        h_e, lam = assemble_total(d, p, 0)
        bundle.lam = lam
        bundle.square = motivic_square_check(d, p, 0, h_e)
    else:
        a = odd if odd is not None else PureHodgeStructure.build(0, {2 * p - 1: []}, {0: []})
        h_e = assemble_two_step(a, classes, [(Fraction(0),) * a.rank] * classes, p)
        if g.cycles is not None and g.cycles.p == p:
            bundle.lam = extension_connecting(d, p, 0)
            bundle.square = motivic_square_check(d, p, 0, h_e)
    bundle.H_e = h_e
    bundle.motive = hodge_motive(h_e, p)
    return bundle


def builtin_fixture(name: str) -> GluingSpec:
    """The shipped gluing examples: ``"bloch"`` or ``"srinivas"``."""
    if name not in FIXTURES:
        raise InvalidInput(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
    from .io import loads
    text = resources.files("hodgemot.data").joinpath(f"{name}.json").read_text()
    return loads(text).payload


def fixture_path(name: str):
    if name not in FIXTURES:
        raise InvalidInput(f"unknown fixture {name!r}")
    return resources.files("hodgemot.data").joinpath(f"{name}.json")


def swap_copies(d: SimplicialCohomologyDatum) -> SimplicialCohomologyDatum:
    """Relabel the two copies of Y in a two-level datum.

    Precomposing every level-0 face with the swap of the copies exchanges
    the two faces, so the row differentials change sign and the
    Abel-Jacobi corrections trade places.
    """
    faces = {k: list(reversed(v)) if k[0] == 0 else v for k, v in d.faces.items()}
    cyc = d.cycles
    if cyc is not None:
        cyc = CycleData(cyc.p, dict(cyc.ns_ranks),
                        {s: list(reversed(v)) if s == 0 else v for s, v in cyc.ns_faces.items()},
                        dict(cyc.cycle_class),
                        {s: list(reversed(v)) if s == 0 else v for s, v in cyc.aj.items()})
    return SimplicialCohomologyDatum(d.levels, dict(d.terms), faces, cyc, dict(d.coniveau), dict(d.notes))


def sweep_restrictions(g: GluingSpec, t: int, rows: Sequence[Sequence[int]]) -> list[int]:
    """Rank of gr_t H^t(X) for each candidate restriction matrix in degree t."""
    out = []
    for r in rows:
        pc = g.pieces[t]
        alt = dict(g.pieces)
        alt[t] = GluingPiece(pc.Y, pc.Z, tuple(tuple(x) for x in r))
        out.append(mv_cohomology(GluingSpec(alt, None, g.betti), t).graded.get(t, _zero_piece(t)).rank)
    return out


def _zero_piece(t: int) -> PureHodgeStructure:
    return PureHodgeStructure.build(0, {t: []}, {0: []})
