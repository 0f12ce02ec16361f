"""Seifert form, intersection form, and the monodromy relation between them.

Convention (fixed here once): the bilinear forms act as x |-> (y |-> x^t A y),
and the defining relation reads as the matrix product ``S = L @ (I - M)``,
i.e. the operator modifies the second argument.  All identities asserted in
this package are stated for this convention only.

With L nondegenerate the relation inverts to ``M = I - L^-1 S``; in
particular S = 0 forces M = 1.  A singular L breaks the converse: L = 0 pairs
with any unimodular M to give S = 0, which is exactly the witness shape kept
in :mod:`starmono.corpus`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateSeifertForm, NotInvertible, ShapeMismatch
from .matrices import ExactMatrix
from .rings import QQ, ZZ


def _check_square_pair(a: ExactMatrix, b: ExactMatrix, what: str):
    if a.ring != ZZ or b.ring != ZZ:
        raise ShapeMismatch(f"{what}: integer matrices required")
    if a.rows != a.cols or b.rows != b.cols or a.rows != b.rows:
        raise ShapeMismatch(f"{what}: need square matrices of equal size")


@dataclass(frozen=True)
class SeifertDatum:
    """A linked triple (L, M, S) with S == L @ (I - M) and M unimodular."""

    L: ExactMatrix
    M: ExactMatrix
    S: ExactMatrix

    def __post_init__(self):
        _check_square_pair(self.L, self.M, "Seifert datum")
        _check_square_pair(self.L, self.S, "Seifert datum")
        if not self.M.is_invertible():
            raise NotInvertible("monodromy matrix must be unimodular")
        if self.S != intersection_from_seifert(self.L, self.M):
            raise ValueError("intersection form does not match L(1 - M)")

    def symmetry_report(self) -> dict:
        """Diagnostic only: (anti)symmetry of S is not imposed anywhere."""
        st = self.S.transpose()
        return {"symmetric": st == self.S, "antisymmetric": st == -self.S}


def seifert_datum(L: ExactMatrix, M: ExactMatrix) -> SeifertDatum:
    return SeifertDatum(L, M, intersection_from_seifert(L, M))


def intersection_from_seifert(L: ExactMatrix, M: ExactMatrix) -> ExactMatrix:
    """S = L @ (I - M); in particular M = 1 gives S = 0 for every L."""
    _check_square_pair(L, M, "intersection form")
    if not M.is_invertible():
        raise NotInvertible("monodromy matrix must be unimodular")
    return L @ (ExactMatrix.identity(ZZ, M.rows) - M)


@dataclass(frozen=True)
class MonodromyRecovery:
    """Result of inverting the Seifert relation.

    ``matrix`` is rational; the datum is integrally realizable only when the
    matrix is integral and unimodular, in which case ``integer_matrix`` holds
    the integer form.
    """

    matrix: ExactMatrix
    integral: bool
    unimodular: bool
    realizable: bool
    integer_matrix: ExactMatrix | None


def monodromy_from_seifert(L: ExactMatrix, S: ExactMatrix) -> MonodromyRecovery:
    """M = I - L^-1 S for nondegenerate L; flags integral realizability.

    Raises :class:`DegenerateSeifertForm` when L is singular, where the
    recovery genuinely fails.
    """
    _check_square_pair(L, S, "monodromy recovery")
    n = L.rows
    lq = ExactMatrix.from_rows(QQ, L.to_lists(), n, n)
    sq = ExactMatrix.from_rows(QQ, S.to_lists(), n, n)
    if lq.det() == 0:
        raise DegenerateSeifertForm("Seifert form is singular; monodromy is not determined")
    m = ExactMatrix.identity(QQ, n) - (lq.inverse() @ sq)
    integral = all(v.denominator == 1 for row in m.entries for v in row)
    integer_matrix = None
    unimodular = False
    if integral:
        integer_matrix = ExactMatrix.from_rows(ZZ, [[int(v) for v in row] for row in m.entries], n, n)
        unimodular = integer_matrix.is_invertible()
    return MonodromyRecovery(m, integral, unimodular, integral and unimodular, integer_matrix)
