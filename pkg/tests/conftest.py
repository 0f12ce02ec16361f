"""Shared builders for the test suite."""

from __future__ import annotations

import pytest

from starmono.abelian import FgAbelianGroup
from starmono.rings import QQ, ZZ
from starmono.star import MonodromyTuple, StarDecomposition, block_operator_from_matrices


@pytest.fixture
def q_pair_decomposition() -> StarDecomposition:
    """Rational decomposition with two one-dimensional summands."""
    return StarDecomposition(QQ, 1, (FgAbelianGroup(1), FgAbelianGroup(1)))


@pytest.fixture
def q_pair_tuple(q_pair_decomposition) -> MonodromyTuple:
    """The worked 2x2 example: m_1 = [[2,5],[0,1]], m_2 = [[1,0],[3,4]]."""
    dec = q_pair_decomposition
    m1 = block_operator_from_matrices(dec, 1, [[[2]], [[5]]])
    m2 = block_operator_from_matrices(dec, 2, [[[3]], [[4]]])
    return MonodromyTuple(dec, (m1, m2))


@pytest.fixture
def z3_tuple() -> MonodromyTuple:
    """t = 1 over Z with the single summand Z/3 and multiplication by 2."""
    dec = StarDecomposition(ZZ, 1, (FgAbelianGroup(0, (3,)),))
    return MonodromyTuple(dec, (block_operator_from_matrices(dec, 1, [[[2]]]),))
