"""Cohomology-side operators via inverse transpose, and dimension diagnostics.

Convention (fixed here once): cohomology operators act on functionals so that
``<dual(m) phi, m v> == <phi, v>``; on matrices this is the inverse transpose.
It is an involution, and because transpose and inverse each reverse products,
dualizing commutes with composition in the same order.  Only the dimension
statements derived from this convention are asserted anywhere.

Duality is restricted to torsion-free integral coefficients or fields; the
torsion obstruction is real (see the quartic fixture in
:mod:`starmono.corpus`, where the homology operator is nontrivial while the
torsion-free shadow is trivial).
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import FgAbelianGroup, ModuleHom, orders_of
from .errors import TorsionPresent
from .matrices import ExactMatrix, field_nullspace
from .rings import QQ
from .star import MonodromyTuple, StarDecomposition, compose_tuple, to_full_operator


def _require_torsion_free(space):
    if any(d != 0 for d in orders_of(space)):
        raise TorsionPresent("integral (co)homology with torsion has no inverse-transpose dual")


def dualize_operator(m: ModuleHom) -> ModuleHom:
    """Inverse transpose: the cohomology operator matching ``m``.

    Requires torsion-free integral coefficients or a field; raises
    :class:`TorsionPresent` otherwise.
    """
    _require_torsion_free(m.source)
    _require_torsion_free(m.target)
    # (m^t)^-1 has the shape of m; spaces are identified with their duals
    return ModuleHom(m.ring, m.source, m.target, m.matrix.transpose().inverse())


@dataclass(frozen=True)
class CohomologyTuple:
    """Dualized local operators plus the dualized operator at infinity."""

    decomposition: StarDecomposition
    operators: tuple[ModuleHom, ...]
    m_infinity: ModuleHom


def dualize_tuple(tup: MonodromyTuple) -> CohomologyTuple:
    """Dual of every local operator and of their composition.

    Dualizing reverses transposition and inversion once each, so composing
    first or dualizing first agree; the identity is asserted in tests.
    """
    dec = tup.decomposition
    _require_torsion_free(dec)
    ops = tuple(dualize_operator(to_full_operator(op)) for op in tup.operators)
    return CohomologyTuple(dec, ops, dualize_operator(compose_tuple(tup)))


def rationalized_tuple(tup: MonodromyTuple) -> MonodromyTuple:
    """The torsion-free shadow: tensor an integral tuple with the rationals.

    Torsion summands die; each block keeps its free-generator rows/columns.
    """
    from .star import BlockRowOperator

    dec = tup.decomposition
    if dec.ring.is_field:
        return tup
    summands_q = tuple(FgAbelianGroup(v.free_rank) for v in dec.summands)
    dec_q = StarDecomposition(QQ, dec.degree_q, summands_q)
    free_idx = [
        [i for i, d in enumerate(v.gens_orders) if d == 0] for v in dec.summands
    ]
    ops = []
    for op in tup.operators:
        j = op.row_index
        blocks = []
        for i, b in enumerate(op.blocks):
            sub = [
                [b.matrix.entries[r][c] for c in free_idx[i]] for r in free_idx[j - 1]
            ]
            blocks.append(ModuleHom.make(QQ, summands_q[i], summands_q[j - 1], sub))
        ops.append(BlockRowOperator(dec_q, j, tuple(blocks)))
    return MonodromyTuple(dec_q, tuple(ops))


def _field_kernel_dim(m: ModuleHom) -> int:
    n = m.matrix.rows
    ident = ExactMatrix.identity(m.ring, n)
    return len(field_nullspace(m.ring, (m.matrix - ident).to_lists(), n, n))


def _stacked_kernel_dim(ring, mats: list[ExactMatrix], n: int) -> int:
    ident = ExactMatrix.identity(ring, n)
    rows: list = []
    for m in mats:
        rows.extend((m - ident).to_lists())
    return len(field_nullspace(ring, rows, n * len(mats), n))


@dataclass(frozen=True)
class DimensionChain:
    """Field-coefficient dimension ladder around the operator at infinity.

    The first three entries are equal and bound the fourth from above; the
    per-operator pairs (dim Ker(m_k - 1), dim Ker(dual(m_k) - 1)) agree
    componentwise.
    """

    dim_inv_homology: int
    dim_ker_minf_homology: int
    dim_ker_minf_cohomology: int
    dim_inv_cohomology: int
    per_operator: tuple[tuple[int, int], ...]


def dimension_chain(tup: MonodromyTuple) -> DimensionChain:
    dec = tup.decomposition
    if not dec.ring.is_field:
        raise ValueError("dimension_chain requires field coefficients")
    ring = dec.ring
    n = dec.total_dim
    fulls = [to_full_operator(op) for op in tup.operators]
    duals = [dualize_operator(f) for f in fulls]
    m_inf = compose_tuple(tup)
    m_inf_dual = dualize_operator(m_inf)
    per = tuple((_field_kernel_dim(f), _field_kernel_dim(d)) for f, d in zip(fulls, duals))
    return DimensionChain(
        dim_inv_homology=_stacked_kernel_dim(ring, [f.matrix for f in fulls], n),
        dim_ker_minf_homology=_field_kernel_dim(m_inf),
        dim_ker_minf_cohomology=_field_kernel_dim(m_inf_dual),
        dim_inv_cohomology=_stacked_kernel_dim(ring, [d.matrix for d in duals], n),
        per_operator=per,
    )


@dataclass(frozen=True)
class GeneralPositionReport:
    """Diagnostic only: whether the dual fixed spaces intersect generically.

    Geometric monodromies are known to have this property; arbitrary tuples
    need not, so nothing here is asserted as an invariant.
    """

    kernel_dims: tuple[int, ...]
    intersection_dim: int
    generic_dim: int
    in_general_position: bool


def general_position_report(tup: MonodromyTuple) -> GeneralPositionReport:
    dec = tup.decomposition
    if not dec.ring.is_field:
        raise ValueError("general position report requires field coefficients")
    n = dec.total_dim
    duals = [dualize_operator(to_full_operator(op)) for op in tup.operators]
    dims = tuple(_field_kernel_dim(d) for d in duals)
    inter = _stacked_kernel_dim(dec.ring, [d.matrix for d in duals], n)
    generic = max(0, n - sum(n - d for d in dims))
    return GeneralPositionReport(dims, inter, generic, inter == generic)
