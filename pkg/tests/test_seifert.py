"""Seifert/intersection-form relation and its roundtrip."""

import pytest

from starmono.abelian import FgAbelianGroup
from starmono.errors import DegenerateSeifertForm, NotInvertible, ShapeMismatch
from starmono.generate import random_automorphism
from starmono.matrices import ExactMatrix
from starmono.prng import SplitMix64
from starmono.rings import ZZ
from starmono.seifert import (
    SeifertDatum,
    intersection_from_seifert,
    monodromy_from_seifert,
    seifert_datum,
)


def test_intersection_examples():
    ident = ExactMatrix.identity(ZZ, 3)
    any_l = ExactMatrix.from_rows(ZZ, [[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert intersection_from_seifert(any_l, ident).is_zero()
    zero_l = ExactMatrix.zeros(ZZ, 2, 2)
    m = ExactMatrix.from_rows(ZZ, [[1, 1], [0, 1]])
    assert intersection_from_seifert(zero_l, m).is_zero()
    left = ExactMatrix.from_rows(ZZ, [[1, 1], [0, 1]])
    m2 = ExactMatrix.from_rows(ZZ, [[0, 1], [-1, 0]])
    assert intersection_from_seifert(left, m2).entries == ((2, 0), (1, 1))


def test_shape_and_unimodularity_guards():
    l2 = ExactMatrix.zeros(ZZ, 2, 2)
    with pytest.raises(ShapeMismatch):
        intersection_from_seifert(l2, ExactMatrix.zeros(ZZ, 3, 3))
    with pytest.raises(NotInvertible):
        intersection_from_seifert(l2, ExactMatrix.from_rows(ZZ, [[2, 0], [0, 1]]))
    with pytest.raises(ShapeMismatch):
        monodromy_from_seifert(l2, ExactMatrix.zeros(ZZ, 3, 3))


def test_monodromy_recovery_examples():
    left = ExactMatrix.from_rows(ZZ, [[1, 1], [0, 1]])
    rec = monodromy_from_seifert(left, ExactMatrix.zeros(ZZ, 2, 2))
    assert rec.realizable and rec.integer_matrix.is_identity()
    rec = monodromy_from_seifert(
        ExactMatrix.from_rows(ZZ, [[1]]), ExactMatrix.from_rows(ZZ, [[1]])
    )
    assert rec.integral and not rec.unimodular and not rec.realizable
    assert rec.integer_matrix.entries == ((0,),)
    with pytest.raises(DegenerateSeifertForm):
        monodromy_from_seifert(ExactMatrix.zeros(ZZ, 2, 2), ExactMatrix.zeros(ZZ, 2, 2))


def test_roundtrip_random():
    rng = SplitMix64(1999)
    done = 0
    while done < 60:
        n = rng.int_in(1, 4)
        left = ExactMatrix.from_rows(ZZ, [[rng.int_in(-4, 4) for _ in range(n)] for _ in range(n)])
        if left.det() == 0:
            continue
        m = random_automorphism(rng, ZZ, FgAbelianGroup(n)).matrix
        s = intersection_from_seifert(left, m)
        rec = monodromy_from_seifert(left, s)
        assert rec.realizable and rec.integer_matrix == m
        done += 1


def test_datum_validation_and_symmetry_report():
    left = ExactMatrix.from_rows(ZZ, [[1, 1], [0, 1]])
    m = ExactMatrix.from_rows(ZZ, [[0, 1], [-1, 0]])
    datum = seifert_datum(left, m)
    assert datum.S == intersection_from_seifert(left, m)
    rep = datum.symmetry_report()
    assert rep == {"symmetric": False, "antisymmetric": False}
    with pytest.raises(ValueError):
        SeifertDatum(left, m, ExactMatrix.zeros(ZZ, 2, 2))


def test_non_converse_witness_shape():
    # (L singular, M != 1) with S = 0: the converse direction genuinely fails
    zero_l = ExactMatrix.zeros(ZZ, 2, 2)
    m = ExactMatrix.from_rows(ZZ, [[1, 5], [0, 1]])
    datum = seifert_datum(zero_l, m)
    assert datum.S.is_zero() and not datum.M.is_identity()
