"""Recovering the whole monodromy tuple from the operator at infinity.

Given an automorphism M of the total group and the decomposition, the tuple
(m_1, ..., m_t) with ``m_t o ... o m_1 == M`` is unique when it exists: row k
of ``m_k`` equals row k of ``M o (m_{k-1} o ... o m_1)^{-1}`` because the
later factors never touch the first k block rows.  Reconstruction walks the
rows in star order, maintaining the inverse of the partial product, and fails
with :class:`NotRealizable` at the first non-invertible diagonal block.
"""

from __future__ import annotations

from .abelian import (
    FgAbelianGroup,
    GeneratorSpace,
    ModuleHom,
    hom_compose,
    hom_kernel,
    reduce_vector,
)
from .errors import DiagonalBlockNotInvertible, NotRealizable, ShapeMismatch
from .matrices import ExactMatrix
from .star import (
    BlockRowOperator,
    MonodromyTuple,
    StarDecomposition,
    apply_operator,
    block_row_inverse,
    compose_tuple,
    to_full_operator,
)


def _check_endomorphism(m: ModuleHom, decomposition: StarDecomposition):
    if m.source != decomposition or m.target != decomposition:
        raise ShapeMismatch("operator is not an endomorphism of the decomposition")


def reconstruct_tuple(m: ModuleHom, decomposition: StarDecomposition) -> MonodromyTuple:
    """The unique block-row factorization of ``m``, or NotRealizable(k)."""
    _check_endomorphism(m, decomposition)
    dec = decomposition
    ring = dec.ring
    inv_partial = ModuleHom.identity(ring, dec)
    all_cols = [list(dec.block_range(i)) for i in range(dec.t)]
    ops = []
    for k in range(1, dec.t + 1):
        rest = hom_compose(m, inv_partial)
        row_idx = list(dec.block_range(k - 1))
        target = dec.summands[k - 1]
        blocks = []
        for i in range(dec.t):
            sub = rest.matrix.take(row_idx, all_cols[i])
            blocks.append(ModuleHom(ring, dec.summands[i], target, sub))
        try:
            op = BlockRowOperator(dec, k, tuple(blocks))
        except DiagonalBlockNotInvertible as exc:
            raise NotRealizable(k) from exc
        ops.append(op)
        inv_partial = hom_compose(inv_partial, to_full_operator(block_row_inverse(op)))
    result = MonodromyTuple(dec, tuple(ops))
    # once every diagonal block inverts, the product matches automatically
    assert compose_tuple(result) == m
    return result


def partial_products(tup: MonodromyTuple) -> list[ModuleHom]:
    """[id, m_1, m_2 m_1, ..., m_t ... m_1]; the last entry is compose_tuple."""
    dec = tup.decomposition
    out = [ModuleHom.identity(dec.ring, dec)]
    for op in tup.operators:
        out.append(hom_compose(to_full_operator(op), out[-1]))
    return out


def scale_element(decomposition: StarDecomposition, vec, a) -> tuple:
    ring = decomposition.ring
    a = ring.canon(a)
    return reduce_vector(ring, decomposition.gens_orders, [a * v for v in vec])


def eigen_partial_check(tup: MonodromyTuple, vec, a) -> tuple[bool, bool]:
    """Both sides of the partial-product eigenvector criterion.

    Left: ``M_inf(v) == a v``.  Right: for every k the k-th partial product
    sends v to (a v_1, ..., a v_k, v_{k+1}, ..., v_t).  The two are computed
    independently; their agreement is the theorem, asserted in tests rather
    than here.
    """
    dec = tup.decomposition
    ring = dec.ring
    v = reduce_vector(ring, dec.gens_orders, vec)
    a = ring.canon(a)
    m_inf = compose_tuple(tup)
    lhs = m_inf.apply(v) == scale_element(dec, v, a)

    scaled = scale_element(dec, v, a)
    w = v
    rhs = True
    for k in range(1, dec.t + 1):
        w = apply_operator(tup.operators[k - 1], w)
        cut = dec.offsets()[k]
        expected = scaled[:cut] + v[cut:]
        if w != expected:
            rhs = False
            break
    return lhs, rhs


def kernel_of_defect(m: ModuleHom) -> tuple[FgAbelianGroup, tuple]:
    """Ker(m - 1) of an endomorphism: canonical group plus generators."""
    space = m.source
    n = m.matrix.rows
    defect = ModuleHom(m.ring, space, space, m.matrix - ExactMatrix.identity(m.ring, n))
    group, incl = hom_kernel(defect)
    gens = tuple(incl.matrix.column(j) for j in range(incl.matrix.cols))
    return group, gens


def invariant_subspace(tup: MonodromyTuple) -> tuple[FgAbelianGroup, tuple]:
    """Elements fixed by every operator: the intersection of Ker(m_j - 1).

    Computed as the kernel of the stacked defects (m_1 - 1, ..., m_t - 1).
    Returns the canonical group and generators inside the total group.
    """
    dec = tup.decomposition
    ring = dec.ring
    n = dec.total_dim
    ident = ExactMatrix.identity(ring, n)
    rows: list = []
    for op in tup.operators:
        rows.extend((to_full_operator(op).matrix - ident).entries)
    stacked_space = GeneratorSpace(dec.gens_orders * dec.t)
    stacked = ModuleHom(
        ring, dec, stacked_space, ExactMatrix(ring, n * dec.t, n, tuple(rows))
    )
    group, incl = hom_kernel(stacked)
    gens = tuple(incl.matrix.column(j) for j in range(incl.matrix.cols))
    return group, gens


def fixed_space_at_infinity(tup: MonodromyTuple) -> tuple[FgAbelianGroup, tuple]:
    """Ker(M_inf - 1), as canonical group plus generators in the total group."""
    return kernel_of_defect(compose_tuple(tup))
