"""Rank constraints from the four-term exact sequence at a critical value.

Each critical value j in star order contributes the exact sequence

    0 -> Im(m_j - 1) -> V_j -> H_c_j -> K_j -> 0

where V_j is the degree-q summand with its local automorphism, H_c_j is an
abstract compactly-supported cohomology group (an input, never computed from
topology) and K_j is the fixed kernel of the j-th local operator one degree
below.  Over a field the dimensions must balance exactly; over Z we check the
free ranks plus the boundary case used by the acyclicity criterion: H_c_j is
trivial iff both end terms are.  The extension problem in between is not
solvable from ranks alone and is deliberately left open.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import FgAbelianGroup, ModuleHom, hom_cokernel, hom_is_automorphism
from .errors import InconsistentData
from .matrices import ExactMatrix
from .reconstruction import kernel_of_defect
from .star import MonodromyTuple, compose_tuple, to_full_operator


@dataclass(frozen=True)
class CriticalValueDatum:
    """Data attached to the j-th critical value (1-based star order).

    ``operator`` is the diagonal block acting on the degree-q summand;
    ``kernel_below`` is Ker(m_j - 1) of the full degree-(q-1) local operator
    on the whole group one degree down, as a canonical abstract group.
    """

    index: int
    summand: FgAbelianGroup
    operator: ModuleHom
    kernel_below: FgAbelianGroup
    h_c: FgAbelianGroup

    def __post_init__(self):
        if self.operator.source != self.summand or self.operator.target != self.summand:
            raise ValueError(f"datum {self.index}: operator does not act on its summand")
        if not hom_is_automorphism(self.operator):
            raise ValueError(f"datum {self.index}: local operator is not an automorphism")


@dataclass(frozen=True)
class SequenceEReport:
    coker: FgAbelianGroup
    rank_forced: int
    consistent: bool


def sequence_E_constraints(datum: CriticalValueDatum) -> SequenceEReport:
    """Check one datum against the exact-sequence rank bookkeeping."""
    op = datum.operator
    n = op.matrix.rows
    defect = ModuleHom(op.ring, op.source, op.target, op.matrix - ExactMatrix.identity(op.ring, n))
    coker, _ = hom_cokernel(defect)
    rank_forced = coker.rank + datum.kernel_below.rank
    consistent = datum.h_c.rank == rank_forced
    if consistent and not op.ring.is_field:
        ends_trivial = coker.is_trivial and datum.kernel_below.is_trivial
        consistent = datum.h_c.is_trivial == ends_trivial
    return SequenceEReport(coker, rank_forced, consistent)


@dataclass(frozen=True)
class CorollaryBReport:
    cond_i: bool
    cond_ii: bool
    equivalent: bool


def corollary_B_check(
    tuple_q: MonodromyTuple,
    tuple_qm1: MonodromyTuple,
    data: list[CriticalValueDatum] | tuple[CriticalValueDatum, ...],
) -> CorollaryBReport:
    """The acyclicity criterion: two conditions that agree on consistent data.

    cond_i: the degree-q operator at infinity is the identity and every H_c_j
    vanishes.  cond_ii: the degree-q group vanishes and the degree-(q-1)
    operator at infinity has trivial fixed kernel.  Raises
    :class:`InconsistentData` if any datum disagrees with the tuples or fails
    the rank constraints, since the verdict would then be meaningless.
    """
    dec_q = tuple_q.decomposition
    dec_b = tuple_qm1.decomposition
    if dec_q.t != dec_b.t or len(data) != dec_q.t:
        raise InconsistentData("data must list one critical value per star path")
    for j, d in enumerate(data, start=1):
        if d.index != j:
            raise InconsistentData(f"datum {j} carries index {d.index}")
        if d.summand != dec_q.summands[j - 1]:
            raise InconsistentData(f"datum {j}: summand differs from the degree-q decomposition")
        if d.operator != tuple_q.operators[j - 1].diagonal_block():
            raise InconsistentData(f"datum {j}: local operator differs from the degree-q tuple")
        recomputed, _ = kernel_of_defect(to_full_operator(tuple_qm1.operators[j - 1]))
        if recomputed != d.kernel_below:
            raise InconsistentData(
                f"datum {j}: kernel one degree below is {recomputed}, datum says {d.kernel_below}"
            )
        if not sequence_E_constraints(d).consistent:
            raise InconsistentData(f"datum {j} violates the exact-sequence rank constraints")
    cond_i = compose_tuple(tuple_q).is_identity() and all(d.h_c.is_trivial for d in data)
    fixed_below, _ = kernel_of_defect(compose_tuple(tuple_qm1))
    cond_ii = dec_q.total_dim == 0 and fixed_below.is_trivial
    return CorollaryBReport(cond_i, cond_ii, cond_i == cond_ii)


def data_from_tuples(
    tuple_q: MonodromyTuple,
    tuple_qm1: MonodromyTuple,
    h_c: list[FgAbelianGroup] | None = None,
) -> tuple[CriticalValueDatum, ...]:
    """Critical-value data consistent with two tuples by construction.

    When ``h_c`` is not given, each H_c_j is taken to be the direct sum of the
    forced end terms (the split solution of the extension problem), which
    satisfies both the rank constraint and the boundary case.
    """
    dec_q = tuple_q.decomposition
    if dec_q.t != tuple_qm1.decomposition.t:
        raise InconsistentData("tuples must share the number of critical values")
    out = []
    for j in range(1, dec_q.t + 1):
        op = tuple_q.operators[j - 1].diagonal_block()
        n = op.matrix.rows
        defect = ModuleHom(op.ring, op.source, op.target, op.matrix - ExactMatrix.identity(op.ring, n))
        coker, _ = hom_cokernel(defect)
        below, _ = kernel_of_defect(to_full_operator(tuple_qm1.operators[j - 1]))
        hc = h_c[j - 1] if h_c is not None else coker.direct_sum(below)
        out.append(CriticalValueDatum(j, dec_q.summands[j - 1], op, below, hc))
    return tuple(out)
