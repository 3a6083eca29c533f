import math
import random
from fractions import Fraction

import pytest

from hodgemot.errors import UnsupportedInput
from hodgemot.exact import I, LatticeBasis, sqrt_d
from hodgemot.exact.matrix import identity
from hodgemot.mhs import direct_sum, graded_data, graded_piece, hodge_classes, pure, tate, validate_mhs
from hodgemot.motive import (
    OneMotive,
    TorusPresentation,
    abelian_part,
    assemble_two_step,
    ep_kernel,
    extension_class,
    hodge_motive,
    isogenous,
    jacobian_torus,
    point_order,
    realize_one_motive,
)

from helpers import rand_assembly, rand_one_motive, rand_pure

S2 = sqrt_d(2)
ELLIPTIC = pure(2, 1, {0: identity(2), 1: [(1, I)]})
ELLIPTIC_W3 = pure(2, 3, {1: identity(2), 2: [(1, I)]})
S3 = pure(2, 3, {0: identity(2), 3: [(1, I)]})
T = TorusPresentation(2, ((1, 0), (0, 1)), ((Fraction(1), I),), "elliptic", True)


def srinivas_assembly():
    return assemble_two_step(S3, 3, [(S2, 0), (-S2, 0), (0, 0)], 2)


def test_jacobian_torus_examples():
    assert jacobian_torus(direct_sum(tate(-1), tate(-1)), 1).is_zero()
    j = jacobian_torus(ELLIPTIC, 1)
    assert j.rank == 2 and j.dim == 1
    j.check()
    j = jacobian_torus(srinivas_assembly(), 2)
    assert j.rank == 2 and j.dim == 1


def test_point_order_examples():
    assert point_order(T, T.zero()) == 1
    assert point_order(T, (I / 2, 0)) == 2
    assert point_order(T, (S2, 0)) == math.inf
    assert point_order(T, (Fraction(1, 3), Fraction(2, 3))) == 3
    p = T.point((S2, 0))
    assert not p.is_torsion()
    assert 2 * T.point((I / 2, 0)) == T.zero()


def test_extension_class_examples():
    split = direct_sum(ELLIPTIC_W3, tate(-2), tate(-2))
    assert all(v.is_zero() for v in extension_class(split, 2).values)
    t = extension_class(srinivas_assembly(), 2)
    assert t.values[0] == t.torus.point((S2, 0))
    assert t.values[1] == t.torus.point((-S2, 0))
    assert t.values[2].is_zero()
    assert point_order(t.torus, t.values[0]) == math.inf


def test_lift_independence():
    rng = random.Random(3)
    fixtures = [srinivas_assembly()] + [rand_assembly(random.Random(s), max_rank=6)[0] for s in range(4)]
    for h in fixtures:
        p = next(q for q in range(1, 4) if graded_data(h, 2 * q).rank)
        base = extension_class(h, p)
        for _ in range(20):
            other = extension_class(h, p, rng)
            assert all(a == b for a, b in zip(base.values, other.values))


def test_additivity():
    for s in range(15):
        rng = random.Random(100 + s)
        h, p, _, _ = rand_assembly(rng, max_rank=6)
        t = extension_class(h, p)
        if t.rank < 1:
            continue
        for _ in range(3):
            x = [rng.randint(-2, 2) for _ in range(t.rank)]
            y = [rng.randint(-2, 2) for _ in range(t.rank)]
            xy = [a + b for a, b in zip(x, y)]
            assert t.evaluate(xy) == t.evaluate(x) + t.evaluate(y)


def test_abelian_part_examples():
    ha, a = abelian_part(ELLIPTIC, 1)
    assert ha.rank == 2 and a.rank == 2 and a.level_one
    ha, a = abelian_part(srinivas_assembly(), 2)
    assert ha.rank == 0 and a.is_zero()
    mixed = assemble_two_step(direct_sum(ELLIPTIC_W3, S3), 1, [(0, 0, 0, 0)], 2)
    ha, a = abelian_part(mixed, 2)
    assert ha.rank == 2
    a.check()


def test_hodge_motive_examples():
    tate_sum = direct_sum(tate(-2), tate(-2), tate(-2))
    hm = hodge_motive(tate_sum, 2)
    assert hm.lattice_rank == 3 and hm.motive.torus.is_zero()
    hm = hodge_motive(srinivas_assembly(), 2)
    assert hm.classes.rank == 3
    assert hm.lattice_rank == 2 and hm.abelian_rank == 0
    assert hm.image_rank == 1
    assert hm.motive.lattice == LatticeBasis.from_generators([(1, 1, 0), (0, 0, 1)], 3)


def test_degenerate_levels_give_zero_objects():
    hm = hodge_motive(ELLIPTIC, 3)
    assert hm.lattice_rank == 0 and hm.abelian_rank == 0


def test_assemble_two_step_examples():
    h = assemble_two_step(S3, 2, [(0, 0), (0, 0)], 2)
    assert hodge_classes(h, 2).rank == 2
    h = srinivas_assembly()
    assert graded_piece(h, 4).rank == 3
    assert hodge_classes(h, 2).rank == 2


def test_order_two_value():
    h = assemble_two_step(ELLIPTIC_W3, 1, [(I / 2, 0)], 2)
    assert validate_mhs(h).valid
    assert ep_kernel(h, 2, "isogeny").basis == ((1,),)
    assert ep_kernel(h, 2, "strict").basis == ((2,),)
    hc = hodge_classes(h, 2)
    g = graded_data(h, 4)
    assert [g.project(v) for v in hc.basis] == [(2,)]
    # the lift of 2b into F^2 is integral
    x = hc.basis[0]
    assert x in LatticeBasis.full(3)


def test_table_round_trip_exact():
    rng = random.Random(5)
    for s in range(10):
        a = rand_pure(rng, 3, 2, [0, 1])
        vals = [(S2 * rng.randint(-2, 2), I / 3, 0, Fraction(1, 2)), (0, 0, 0, 0)]
        h = assemble_two_step(a, 2, vals, 2)
        t = extension_class(h, 2)
        assert t.basis == ((1, 0), (0, 1))
        # equal as torus points: the difference lies in F^2 + Z^4 exactly
        assert all(v == t.torus.point(w) for v, w in zip(t.values, vals))
        assert not all(v == t.torus.point(w) for v, w in zip(t.values, reversed(vals)))


def test_containment_chain():
    for s in range(12):
        h, p, _, _ = rand_assembly(random.Random(200 + s), max_rank=6)
        hm = hodge_motive(h, p)
        n = hm.motive.lattice
        assert n.contains_lattice(hm.integral_hodge_classes)
        assert hm.classes.contains_lattice(n)


def test_realize_examples():
    zero = OneMotive(LatticeBasis(1, ((1,),)), T, (T.zero(),))
    h = realize_one_motive(zero, 1)
    assert all(v.is_zero() for v in extension_class(h, 1).values)
    assert hodge_classes(h, 1).rank == 1
    m = OneMotive(LatticeBasis(1, ((1,),)), T, (T.point((S2, 0)),))
    h = realize_one_motive(m, 1)
    hm = hodge_motive(h, 1)
    assert hm.lattice_rank == 1 and isogenous(hm.motive, m)
    assert point_order(hm.motive.torus, hm.motive.u[0]) == math.inf
    empty = OneMotive(LatticeBasis(0, ()), T, ())
    h = realize_one_motive(empty, 1)
    assert h.weights() == [1] and h.rank == 2


def test_realize_rejects_non_abelian_torus():
    t = TorusPresentation(2, ((1, 0), (0, 1)), ((Fraction(1), I),), "S3", False)
    with pytest.raises(UnsupportedInput):
        realize_one_motive(OneMotive(LatticeBasis(1, ((1,),)), t, (t.zero(),)), 2)


def test_round_trip_small_sample():
    for s in range(8):
        m = rand_one_motive(random.Random(s), p=1)
        hm = hodge_motive(realize_one_motive(m, 1), 1)
        assert isogenous(hm.motive, m)
