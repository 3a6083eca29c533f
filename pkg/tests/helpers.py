"""Random generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from hodgemot.exact import ExactScalar
from hodgemot.mhs import PureHodgeStructure, change_basis, direct_sum, pure
from hodgemot.motive import OneMotive, TorusPresentation, assemble_two_step
from hodgemot.exact.lattice import LatticeBasis

D = 2


def rand_unimodular(rng: random.Random, n: int, steps: int = 6) -> list[list[int]]:
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    if n < 2:
        return [[rng.choice((1, -1))]] if n else []
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-2, 2)
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
    if rng.random() < 0.5:
        i, j = rng.sample(range(n), 2)
        m[i], m[j] = m[j], m[i]
    return m


def rand_tau(rng: random.Random, d: int = D) -> ExactScalar:
    """A non-real element of Q(i, sqrt d)."""
    a, c = rng.randint(-2, 2), rng.randint(-1, 1)
    b = rng.choice((1, 2, -1, Fraction(1, 2)))
    e = rng.randint(-1, 1) if d != 1 else 0
    if b + (e if d != 1 else 0) == 0:
        b += 1
    return ExactScalar(a, b, c, e, d)


def rand_pure(rng: random.Random, weight: int, pairs: int, shifts=None, real_types: int = 0,
              scramble: bool = True, d: int = D) -> PureHodgeStructure:
    """Pure structure built from pairs (x_j, y_j) with F spanned by x_j + tau_j y_j.

    For odd weight 2p-1 a pair with shift s has types (p+s, p-1-s); for even
    weight 2p it has types (p+1+s, p-1-s).  ``real_types`` adds that many
    classes of type (p, p) in even weight.
    """
    n = 2 * pairs + real_types
    if weight % 2:
        p = (weight + 1) // 2
        top = [p + s for s in (shifts or [0] * pairs)]
    else:
        p = weight // 2
        top = [p + 1 + s for s in (shifts or [0] * pairs)]
        if weight % 2 == 0 and real_types == 0 and pairs == 0:
            real_types = 1
            n = 1
    vs, cvs = [], []
    for j in range(pairs):
        tau = rand_tau(rng, d)
        v = [Fraction(0)] * n
        v[2 * j], v[2 * j + 1] = Fraction(1), tau
        vs.append(tuple(v))
        cv = list(v)
        cv[2 * j + 1] = tau.conjugate()
        cvs.append(tuple(cv))
    real = [tuple(Fraction(int(i == 2 * pairs + k)) for i in range(n)) for k in range(real_types)]
    hodge = {}
    levels = set(top) | {weight - t for t in top} | ({p} if real_types else set())
    lo = min(levels) if levels else 0
    for q in range(lo, max(levels) + 2 if levels else 1):
        vecs = [v for v, t in zip(vs, top) if t >= q]
        vecs += [cv for cv, t in zip(cvs, top) if weight - t >= q]
        if real_types and p >= q:
            vecs += real
        hodge[q] = vecs
    h = pure(n, weight, hodge)
    if scramble and n:
        h = change_basis(h, rand_unimodular(rng, n))
    return h


def rand_kvec(rng: random.Random, n: int, d: int = D) -> tuple:
    return tuple(ExactScalar(Fraction(rng.randint(-3, 3), rng.randint(1, 3)), rng.randint(-1, 1),
                             rng.randint(-2, 2), rng.randint(-1, 1), d) for _ in range(n))


def rand_table(rng: random.Random, a: PureHodgeStructure, r: int, p: int, d: int = D) -> list[tuple]:
    """Extension values mixing trivial, torsion, abelian-type and generic points."""
    na = a.rank
    level_one = []
    fp = list(a.F(p))
    fpm = list(a.F(p - 1)) if na else []
    for v in fpm:
        if v not in fp:
            level_one.append(v)
    out = []
    for j in range(r):
        kind = rng.randrange(6)
        if kind == 0 or not na:
            v = tuple(Fraction(rng.randint(-2, 2)) for _ in range(na))
        elif kind == 1:
            v = tuple(Fraction(rng.randint(-2, 2), rng.choice((2, 3))) for _ in range(na))
        elif kind == 2 and fp:
            c = ExactScalar(rng.randint(-2, 2), rng.randint(-2, 2), 1, 0, d)
            w = rng.choice(fp)
            v = tuple(c * x + rng.randint(-1, 1) for x in w)
        elif kind == 3 and out:
            x, y = rng.choice(out), rng.choice(out)
            k = rng.randint(-2, 2)
            v = tuple(s + k * t for s, t in zip(x, y))
        else:
            v = rand_kvec(rng, na, d)
        out.append(tuple(v))
    return out


def rand_assembly(rng: random.Random, max_rank: int = 8, max_p: int = 3, d: int = D):
    """A valid two-step assembly: (structure, p, A piece, table)."""
    p = rng.randint(1, max_p)
    pairs = rng.randint(0, 3)
    shifts = [rng.choice((0, 0, 1)) for _ in range(pairs)]
    if p - 1 - max(shifts, default=0) < 0 and p > 0:
        shifts = [min(s, p - 1) for s in shifts]
    a = rand_pure(rng, 2 * p - 1, pairs, shifts, d=d)
    r = rng.randint(1, max(1, max_rank - a.rank))
    table = rand_table(rng, a, r, p, d)
    h = assemble_two_step(a, r, table, p)
    extra = max_rank - h.rank
    if extra >= 2 and rng.random() < 0.4:
        h = direct_sum(h, rand_pure(rng, 2 * p, 1, d=d))
    elif extra >= 1 and rng.random() < 0.3:
        h = direct_sum(h, rand_pure(rng, 2 * p - 2, 0, real_types=1, d=d))
    if rng.random() < 0.5:
        h = change_basis(h, rand_unimodular(rng, h.rank))
    return h, p, a, table


def rand_one_motive(rng: random.Random, p: int = 1, d: int = D):
    """[Z^r -> A] with A a level-one torus given as J^p of a pure structure."""
    pairs = rng.randint(1, 3)
    a = rand_pure(rng, 2 * p - 1, pairs, [0] * pairs, scramble=False, d=d)
    n = a.rank
    torus = TorusPresentation(n, tuple(tuple(int(i == j) for i in range(n)) for j in range(n)),
                              tuple(a.F(p)), "random", True)
    r = rng.randint(1, 3)
    vals = rand_table(rng, a, r, p, d)
    lat = LatticeBasis(r, tuple(tuple(int(i == j) for i in range(r)) for j in range(r)))
    return OneMotive(lat, torus, tuple(torus.point(v) for v in vals))


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a] if a and b else []


def _inverse_int(g):
    from sympy import Matrix
    return [[int(x) for x in r] for r in Matrix(g).inv().tolist()]


def rand_piece(rng: random.Random, t: int, d: int = D):
    """(Y, Z, restriction) for degree t built from compatible blocks."""
    from hodgemot.descent import GluingPiece
    from hodgemot.mhs import tate as tate_
    if t % 2 == 0:
        a, b = rng.randint(0, 2), rng.randint(0, 2)
        extra = rng.random() < 0.5
        y_parts = [tate_(-t // 2)] * a
        z_parts = [tate_(-t // 2)] * b
        if extra:
            e = rand_pure(rng, t, 1, scramble=False, d=d)
            y_parts.append(e)
            z_parts.append(e)
        blocks_y = a + (2 if extra else 0)
        blocks_z = b + (2 if extra else 0)
        m = [[0] * blocks_y for _ in range(blocks_z)]
        for i in range(b):
            for j in range(a):
                m[i][j] = rng.randint(-3, 3)
        if extra:
            k = rng.randint(-2, 2)
            m[b][a] = m[b + 1][a + 1] = k
    else:
        e = rand_pure(rng, t, rng.randint(0, 1), scramble=False, d=d)
        f = rand_pure(rng, t, rng.randint(0, 1), scramble=False, d=d)
        y_parts = [e] if e.rank else []
        z_parts = ([e] if e.rank else []) + ([f] if f.rank else [])
        blocks_y, blocks_z = e.rank, e.rank + f.rank
        k = rng.randint(-2, 2)
        m = [[k * int(i == j) for j in range(blocks_y)] for i in range(blocks_z)]
    y = direct_sum(*y_parts) if y_parts else PureHodgeStructure.build(0, {t: []}, {0: []})
    z = direct_sum(*z_parts) if z_parts else PureHodgeStructure.build(0, {t: []}, {0: []})
    if y.rank:
        gy = rand_unimodular(rng, y.rank)
        y = change_basis(y, gy)
        m = _matmul(m, _inverse_int(gy)) if z.rank else m
    if z.rank:
        gz = rand_unimodular(rng, z.rank)
        z = change_basis(z, gz)
        m = _matmul(gz, m) if y.rank else [[] for _ in range(z.rank)]
    y = PureHodgeStructure(y.rank, y.weight_filtration, y.hodge_filtration)
    z = PureHodgeStructure(z.rank, z.weight_filtration, z.hodge_filtration)
    return GluingPiece(y, z, tuple(tuple(r) for r in m))


def rand_gluing(rng: random.Random, degrees=(2, 3, 4), d: int = D):
    from hodgemot.descent import GluingSpec
    return GluingSpec({t: rand_piece(rng, t, d) for t in degrees})
