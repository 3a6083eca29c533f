import random

import pytest

from hodgemot.complexes import extension_connecting
from hodgemot.descent import (
    FIXTURES,
    GluingCycles,
    GluingSpec,
    builtin_fixture,
    cech_two_gluing,
    mv_cohomology,
    swap_copies,
    sweep_restrictions,
)
from hodgemot.errors import InvalidInput, UnsupportedInput
from hodgemot.mhs import hodge_numbers, validate_mhs

from helpers import rand_gluing


def test_fixtures_validate():
    for name in FIXTURES:
        g = builtin_fixture(name)
        g.check()
        d = cech_two_gluing(g)
        d.check()
        for pc in g.pieces.values():
            assert validate_mhs(pc.Y).valid and validate_mhs(pc.Z).valid
    with pytest.raises(InvalidInput):
        builtin_fixture("nope")


def test_bloch_numbers():
    b = mv_cohomology(builtin_fixture("bloch"), 4, 2)
    assert b.rank == b.mv_rank == b.betti == 3
    assert list(b.graded) == [4]
    assert hodge_numbers(b.graded[4]) == {(2, 2): 3}
    assert b.motive.lattice_rank == 3 and b.motive.motive.torus.is_zero()
    assert b.motive.classes.rank == 3
    assert all(v.is_zero() for v in b.lam.values)
    assert b.square.commutes
    assert any("rank 2" in n for n in b.notes)


def test_srinivas_numbers():
    b = mv_cohomology(builtin_fixture("srinivas"), 4, 2)
    assert b.graded[4].rank == 3
    assert b.graded[3].rank == 2 and hodge_numbers(b.graded[3]) == {(3, 0): 1, (0, 3): 1}
    assert b.rank == b.mv_rank == b.betti == 5
    hm = b.motive
    assert hm.classes.rank == 3
    assert hm.lattice_rank == 2 and hm.abelian_rank == 0
    assert hm.image_rank == 1 == b.lam.image_rank()
    assert hm.lattice_rank + b.lam.image_rank() == hm.classes.rank
    assert b.square.commutes


def test_bloch_row_sweep():
    g = builtin_fixture("bloch")
    rows = [[[4, -1]], [[1, 0]], [[0, 1]], [[3, 5]], [[-2, 7]], [[1, 1]]]
    assert sweep_restrictions(g, 4, rows) == [3] * len(rows)
    assert sweep_restrictions(g, 4, [[[0, 0]]]) == [4]


def test_swap_negates_lambda_and_fixes_lattice():
    d = cech_two_gluing(builtin_fixture("srinivas"))
    sw = swap_copies(d)
    lam, lam2 = extension_connecting(d, 2, 0), extension_connecting(sw, 2, 0)
    for x in lam.basis:
        assert lam2.evaluate_cycle(x) == -lam.evaluate_cycle(x)
    from hodgemot.complexes import assemble_total
    from hodgemot.motive import hodge_motive
    n1 = hodge_motive(assemble_total(d, 2, 0)[0], 2).motive.lattice
    n2 = hodge_motive(assemble_total(sw, 2, 0)[0], 2).motive.lattice
    assert n1 == n2


def test_split_fixture_motive_is_full():
    g = builtin_fixture("srinivas")
    c = g.cycles
    zero = GluingCycles(c.p, c.ns_Y, c.ns_Z, c.class_Y, c.class_Z, c.restriction,
                        tuple(tuple(0 for _ in v) for v in c.aj))
    b = mv_cohomology(GluingSpec(g.pieces, zero, g.betti), 4, 2)
    assert b.motive.lattice_rank == b.motive.classes.rank == 3


def test_missing_aj_table_is_unsupported():
    g = builtin_fixture("srinivas")
    with pytest.raises(UnsupportedInput, match="Abel-Jacobi"):
        mv_cohomology(GluingSpec(g.pieces, None, g.betti), 4, 2)
    with pytest.raises(UnsupportedInput):
        mv_cohomology(g, 5, 2)
    # without a level the graded pieces are still available
    assert mv_cohomology(GluingSpec(g.pieces), 4).rank == 5


def test_random_gluings_rank_bookkeeping():
    for s in range(25):
        g = rand_gluing(random.Random(s))
        d = cech_two_gluing(g)
        for n in (2, 3, 4, 5):
            b = mv_cohomology(g, n)
            assert b.rank == b.mv_rank
            for t, h in b.graded.items():
                assert validate_mhs(h).valid
                assert all(p + q == t for p, q in hodge_numbers(h))
        d.check()
