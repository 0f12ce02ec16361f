"""Exact-sequence rank constraints and the acyclicity equivalence."""

import pytest

from starmono.abelian import FgAbelianGroup, ModuleHom
from starmono.errors import InconsistentData
from starmono.generate import random_decomposition, random_tuple
from starmono.prng import SplitMix64
from starmono.reconstruction import reconstruct_tuple
from starmono.rings import QQ, ZZ
from starmono.sequence_e import (
    CriticalValueDatum,
    corollary_B_check,
    data_from_tuples,
    sequence_E_constraints,
)
from starmono.star import (
    MonodromyTuple,
    StarDecomposition,
    block_operator_from_matrices,
    compose_tuple,
    identity_tuple,
    to_full_operator,
)


def test_constraints_identity_on_q2():
    v = FgAbelianGroup(2)
    datum = CriticalValueDatum(
        index=1,
        summand=v,
        operator=ModuleHom.identity(QQ, v),
        kernel_below=FgAbelianGroup(1),
        h_c=FgAbelianGroup(3),
    )
    rep = sequence_E_constraints(datum)
    assert rep.rank_forced == 3  # coker of the zero defect is all of V (dim 2) plus 1
    assert rep.coker == FgAbelianGroup(2)
    assert rep.consistent


def test_constraints_quartic_datum(z3_tuple):
    datum = CriticalValueDatum(
        index=1,
        summand=FgAbelianGroup(0, (3,)),
        operator=z3_tuple.operators[0].diagonal_block(),
        kernel_below=FgAbelianGroup(),
        h_c=FgAbelianGroup(),
    )
    rep = sequence_E_constraints(datum)
    assert rep.coker.is_trivial and rep.rank_forced == 0 and rep.consistent


def test_constraints_trivial_everything():
    v = FgAbelianGroup()
    datum = CriticalValueDatum(1, v, ModuleHom.identity(ZZ, v), FgAbelianGroup(), FgAbelianGroup())
    assert sequence_E_constraints(datum).consistent


def test_constraints_boundary_violation_over_z():
    # coker nontrivial pure torsion: rank check passes, boundary case must fail
    v = FgAbelianGroup(0, (3,))
    datum = CriticalValueDatum(
        1, v, ModuleHom.make(ZZ, v, v, [[1]]), FgAbelianGroup(), FgAbelianGroup()
    )
    rep = sequence_E_constraints(datum)
    assert rep.coker == FgAbelianGroup(0, (3,))
    assert rep.rank_forced == 0
    assert not rep.consistent  # H_c trivial but an end term is not


def test_datum_validation():
    v = FgAbelianGroup(1)
    with pytest.raises(ValueError):
        CriticalValueDatum(1, v, ModuleHom.make(ZZ, v, v, [[2]]), FgAbelianGroup(), FgAbelianGroup())


def test_corollary_trivial_true_true():
    dq = StarDecomposition(ZZ, 1, (FgAbelianGroup(),))
    db = StarDecomposition(ZZ, 0, (FgAbelianGroup(),))
    tq, tb = identity_tuple(dq), identity_tuple(db)
    rep = corollary_B_check(tq, tb, data_from_tuples(tq, tb))
    assert (rep.cond_i, rep.cond_ii, rep.equivalent) == (True, True, True)


def test_corollary_forced_nonzero_hc():
    # nontrivial identity tuple in degree q: H_c is forced positive, both conditions fail
    dq = StarDecomposition(ZZ, 1, (FgAbelianGroup(1),))
    db = StarDecomposition(ZZ, 0, (FgAbelianGroup(),))
    tq, tb = identity_tuple(dq), identity_tuple(db)
    data = data_from_tuples(tq, tb)
    assert data[0].h_c == FgAbelianGroup(1)
    rep = corollary_B_check(tq, tb, data)
    assert not rep.cond_i and not rep.cond_ii and rep.equivalent


def test_corollary_inconsistent_rejected():
    dq = StarDecomposition(ZZ, 1, (FgAbelianGroup(1),))
    db = StarDecomposition(ZZ, 0, (FgAbelianGroup(),))
    tq, tb = identity_tuple(dq), identity_tuple(db)
    good = data_from_tuples(tq, tb)[0]
    bad = (CriticalValueDatum(1, good.summand, good.operator, good.kernel_below, FgAbelianGroup()),)
    with pytest.raises(InconsistentData):
        corollary_B_check(tq, tb, bad)


def test_corollary_cross_checks_kernel_and_operator():
    rng = SplitMix64(808)
    dq = random_decomposition(rng, ZZ, 2, 2, with_torsion=True)
    db = random_decomposition(rng, ZZ, 2, 2, with_torsion=True, degree=0)
    tq, tb = random_tuple(rng, dq), random_tuple(rng, db)
    data = list(data_from_tuples(tq, tb))
    wrong_kernel = CriticalValueDatum(
        1, data[0].summand, data[0].operator, data[0].kernel_below.direct_sum(FgAbelianGroup(1)),
        data[0].h_c,
    )
    with pytest.raises(InconsistentData):
        corollary_B_check(tq, tb, (wrong_kernel, data[1]))
    with pytest.raises(InconsistentData):
        corollary_B_check(tq, tb, (data[1], data[0]))
    with pytest.raises(InconsistentData):
        corollary_B_check(tq, tb, (data[0],))


def test_corollary_random_consistent_double_tuples():
    rng = SplitMix64(6060)
    for ring, torsion in ((ZZ, True), (ZZ, False), (QQ, False)):
        for _ in range(20):
            t = rng.int_in(1, 4)
            dq = random_decomposition(rng, ring, t, 3, with_torsion=torsion)
            db = random_decomposition(rng, ring, t, 3, with_torsion=torsion, degree=0)
            tq, tb = random_tuple(rng, dq), random_tuple(rng, db)
            rep = corollary_B_check(tq, tb, data_from_tuples(tq, tb))
            assert rep.equivalent


def test_identity_at_infinity_forces_identity_tuple():
    """Uniqueness chain: compose == 1 forces every operator trivial, so every
    defect image is trivial."""
    rng = SplitMix64(99)
    for _ in range(10):
        dec = random_decomposition(rng, ZZ, rng.int_in(1, 4), 3, with_torsion=True)
        ident = ModuleHom.identity(ZZ, dec)
        tup = reconstruct_tuple(ident, dec)
        assert tup == identity_tuple(dec)
        from starmono.abelian import hom_image
        from starmono.matrices import ExactMatrix

        for op in tup.operators:
            full = to_full_operator(op)
            defect = ModuleHom(
                ZZ, dec, dec, full.matrix - ExactMatrix.identity(ZZ, dec.total_dim)
            )
            assert hom_image(defect)[0].is_trivial
