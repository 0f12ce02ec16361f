"""Star decompositions, block-row operators, monodromy tuples, word evaluation.

Composition order convention, fixed once for the whole package: a tuple
``(m_1, ..., m_t)`` is listed in star order and composes with ``m_1`` applied
first, so the operator at infinity is ``m_t o ... o m_1``.  A free-group word
is written left to right, and the written product ``a.b`` acts by going first
along ``b`` and then along ``a``; hence ``evaluate_word`` multiplies the
letters' operators in written order and the word ``g_t ... g_1`` evaluates to
the operator at infinity.

Elements of the total group are concatenated coordinate vectors in summand
order, so projections onto summands are plain slices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import FgAbelianGroup, ModuleHom, hom_compose, hom_invert, hom_is_automorphism, orders_of
from .errors import DiagonalBlockNotInvertible, ShapeMismatch
from .matrices import ExactMatrix
from .rings import Ring


@dataclass(frozen=True)
class StarDecomposition:
    """Ordered direct-sum decomposition of one homology degree.

    The summand order is the counterclockwise star order and is semantically
    meaningful; no reordering operations are provided.  Over Z the summands
    are arbitrary groups; over a field they are vector spaces (``free_rank``
    is the dimension); over Z/n they are free Z/n-modules, stored as groups
    with all invariant factors equal to n.
    """

    ring: Ring
    degree_q: int
    summands: tuple[FgAbelianGroup, ...]

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))
        if self.degree_q < 0:
            raise ValueError("degree label must be nonnegative")
        if len(self.summands) < 1:
            raise ValueError("a star decomposition needs at least one summand")
        for v in self.summands:
            if self.ring.is_field and v.invariant_factors:
                raise ValueError("field-coefficient summands cannot carry torsion")
            if self.ring.kind == "Zn":
                n = self.ring.modulus
                if v.free_rank or any(d != n for d in v.invariant_factors):
                    raise ValueError(f"Z/{n} summands must be free Z/{n}-modules")

    @property
    def t(self) -> int:
        return len(self.summands)

    @property
    def gens_orders(self) -> tuple[int, ...]:
        orders: list[int] = []
        for v in self.summands:
            orders.extend(v.gens_orders)
        return tuple(orders)

    @property
    def total_dim(self) -> int:
        return sum(v.ngens for v in self.summands)

    def offsets(self) -> list[int]:
        out = [0]
        for v in self.summands:
            out.append(out[-1] + v.ngens)
        return out

    def block_range(self, i: int) -> range:
        """Coordinate range of summand ``i`` (0-based)."""
        off = self.offsets()
        return range(off[i], off[i + 1])

    def project(self, vec, i: int) -> tuple:
        return tuple(vec[k] for k in self.block_range(i))

    def inject(self, i: int, summand_vec) -> tuple:
        """Element of the total group supported in summand ``i``."""
        zero = self.ring.zero
        out = [zero] * self.total_dim
        for k, v in zip(self.block_range(i), summand_vec):
            out[k] = v
        return tuple(out)

    def zero_vector(self) -> tuple:
        return (self.ring.zero,) * self.total_dim


@dataclass(frozen=True)
class BlockRowOperator:
    """Automorphism of the total group equal to the identity off one block row.

    ``blocks[i]`` is the homomorphism V_i -> V_j of the modified row j
    (``row_index`` is 1-based, in star order); the diagonal block is an
    automorphism of V_j.
    """

    decomposition: StarDecomposition
    row_index: int
    blocks: tuple[ModuleHom, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        dec = self.decomposition
        j = self.row_index
        if not 1 <= j <= dec.t:
            raise ShapeMismatch(f"row index {j} outside 1..{dec.t}")
        if len(self.blocks) != dec.t:
            raise ShapeMismatch(f"expected {dec.t} blocks, got {len(self.blocks)}")
        target = dec.summands[j - 1]
        for i, b in enumerate(self.blocks):
            if b.ring != dec.ring:
                raise ShapeMismatch("block ring differs from decomposition ring")
            if b.source != dec.summands[i] or b.target != target:
                raise ShapeMismatch(f"block {i + 1} of row {j} has wrong source or target")
        if not hom_is_automorphism(self.blocks[j - 1]):
            raise DiagonalBlockNotInvertible(f"diagonal block {j} is not an automorphism")

    @property
    def ring(self) -> Ring:
        return self.decomposition.ring

    def diagonal_block(self) -> ModuleHom:
        return self.blocks[self.row_index - 1]


def make_block_operator(decomposition: StarDecomposition, row_index: int, blocks) -> BlockRowOperator:
    """Validated block-row operator; blocks are ModuleHoms V_i -> V_j."""
    return BlockRowOperator(decomposition, row_index, tuple(blocks))


def block_operator_from_matrices(decomposition: StarDecomposition, row_index: int, matrices) -> BlockRowOperator:
    """Convenience builder taking raw row-lists for each block matrix."""
    target = decomposition.summands[row_index - 1]
    blocks = [
        ModuleHom.make(decomposition.ring, decomposition.summands[i], target, rows)
        for i, rows in enumerate(matrices)
    ]
    return BlockRowOperator(decomposition, row_index, tuple(blocks))


def identity_operator(decomposition: StarDecomposition, row_index: int) -> BlockRowOperator:
    ring = decomposition.ring
    target = decomposition.summands[row_index - 1]
    blocks = []
    for i, src in enumerate(decomposition.summands):
        if i == row_index - 1:
            blocks.append(ModuleHom.identity(ring, target))
        else:
            blocks.append(ModuleHom.zero(ring, src, target))
    return BlockRowOperator(decomposition, row_index, tuple(blocks))


def to_full_operator(op: BlockRowOperator) -> ModuleHom:
    """Expand the block-row form to a full endomorphism of the total group."""
    dec = op.decomposition
    ring = dec.ring
    n = dec.total_dim
    one, zero = ring.one, ring.zero
    rows = [[one if a == b else zero for b in range(n)] for a in range(n)]
    for local_r, global_r in enumerate(op.decomposition.block_range(op.row_index - 1)):
        row: list = []
        for b in op.blocks:
            row.extend(b.matrix.entries[local_r])
        rows[global_r] = row
    mat = ExactMatrix(ring, n, n, tuple(tuple(r) for r in rows))
    return ModuleHom(ring, dec, dec, mat)


def apply_operator(op: BlockRowOperator, vec) -> tuple:
    """Action of the operator on an element of the total group."""
    dec = op.decomposition
    if len(vec) != dec.total_dim:
        raise ShapeMismatch("vector length does not match the decomposition")
    out = list(vec)
    pieces = [b.matrix.apply(dec.project(vec, i)) for i, b in enumerate(op.blocks)]
    target = dec.summands[op.row_index - 1]
    total = [sum(p[k] for p in pieces) for k in range(target.ngens)]
    from .abelian import reduce_vector

    total = reduce_vector(dec.ring, target.gens_orders, total)
    for k, g in enumerate(dec.block_range(op.row_index - 1)):
        out[g] = total[k]
    return tuple(out)


def block_row_inverse(op: BlockRowOperator) -> BlockRowOperator:
    """Inverse operator, again in block-row form: only the diagonal inverts."""
    j = op.row_index
    dinv = hom_invert(op.diagonal_block())
    blocks = []
    for i, b in enumerate(op.blocks):
        if i == j - 1:
            blocks.append(dinv)
        else:
            neg = hom_compose(dinv, b)
            blocks.append(ModuleHom(neg.ring, neg.source, neg.target, -neg.matrix))
    return BlockRowOperator(op.decomposition, j, tuple(blocks))


def picard_defect(m: ModuleHom, row_index: int) -> tuple[ModuleHom, bool]:
    """Defect ``m - id`` and whether its image lies inside summand ``row_index``.

    The boolean is the weak Picard-type condition forcing the block-row shape:
    it holds for every block-row operator at its own row.
    """
    dec = m.source
    if not isinstance(dec, StarDecomposition):
        raise ShapeMismatch("picard_defect expects an endomorphism of a decomposition")
    if m.target != dec:
        raise ShapeMismatch("defect needs an endomorphism")
    n = dec.total_dim
    defect = ModuleHom(m.ring, dec, dec, m.matrix - ExactMatrix.identity(m.ring, n))
    inside = set(dec.block_range(row_index - 1))
    zero = m.ring.zero
    ok = all(
        v == zero
        for i, row in enumerate(defect.matrix.entries)
        if i not in inside
        for v in row
    )
    return defect, ok


@dataclass(frozen=True)
class MonodromyTuple:
    """Ordered block-row operators (m_1, ..., m_t), one per summand."""

    decomposition: StarDecomposition
    operators: tuple[BlockRowOperator, ...]

    def __post_init__(self):
        object.__setattr__(self, "operators", tuple(self.operators))
        dec = self.decomposition
        if len(self.operators) != dec.t:
            raise ShapeMismatch(f"expected {dec.t} operators, got {len(self.operators)}")
        for k, op in enumerate(self.operators, start=1):
            if op.decomposition != dec:
                raise ShapeMismatch(f"operator {k} belongs to a different decomposition")
            if op.row_index != k:
                raise ShapeMismatch(f"operator {k} has row index {op.row_index}")

    @property
    def t(self) -> int:
        return self.decomposition.t


def identity_tuple(decomposition: StarDecomposition) -> MonodromyTuple:
    ops = tuple(identity_operator(decomposition, j) for j in range(1, decomposition.t + 1))
    return MonodromyTuple(decomposition, ops)


def compose_tuple(tup: MonodromyTuple) -> ModuleHom:
    """The operator at infinity ``m_t o ... o m_1`` (m_1 applied first)."""
    full = to_full_operator(tup.operators[0])
    for op in tup.operators[1:]:
        full = hom_compose(to_full_operator(op), full)
    return full


@dataclass(frozen=True)
class FreeGroupWord:
    """Word in the free generators, written left to right.

    ``letters`` are pairs (generator index, exponent) with 1-based indices and
    exponents +-1.  The written order follows the loop-product convention: the
    rightmost letter acts first.
    """

    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((int(g), int(e)) for g, e in self.letters))
        for g, e in self.letters:
            if g < 1:
                raise ValueError(f"generator index {g} must be positive")
            if e not in (1, -1):
                raise ValueError(f"exponent {e} must be +1 or -1")

    def inverse(self) -> "FreeGroupWord":
        return FreeGroupWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def concat(self, other: "FreeGroupWord") -> "FreeGroupWord":
        return FreeGroupWord(self.letters + other.letters)


def evaluate_word(tup: MonodromyTuple, word: FreeGroupWord) -> ModuleHom:
    """Image of the word under the representation determined by the tuple."""
    dec = tup.decomposition
    for g, _ in word.letters:
        if g > dec.t:
            raise ShapeMismatch(f"generator {g} outside 1..{dec.t}")
    result = ModuleHom.identity(dec.ring, dec)
    inverses: dict[int, ModuleHom] = {}
    for g, e in word.letters:
        if e == 1:
            factor = to_full_operator(tup.operators[g - 1])
        else:
            if g not in inverses:
                inverses[g] = to_full_operator(block_row_inverse(tup.operators[g - 1]))
            factor = inverses[g]
        result = hom_compose(result, factor)
    return result
