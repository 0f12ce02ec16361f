"""Finitely generated abelian groups and exact homomorphism algebra.

A group is stored in canonical invariant-factor form.  Homomorphisms carry an
exact matrix whose columns are the images of the source's canonical
generators; entries in rows of finite order are kept reduced.  Kernels, images
and cokernels are computed through integer Smith normal form; over field
coefficients the same operations fall back to ordinary linear algebra on
vector spaces (modelled as groups with ``free_rank == dim``).

Any object with a ``gens_orders`` attribute can serve as the source or target
"space" of a homomorphism; besides :class:`FgAbelianGroup` this includes star
decompositions, whose coordinates are the concatenation of their summands'.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import snf
from .errors import NotInvertible, ShapeMismatch
from .matrices import ExactMatrix, field_nullspace, field_rref
from .rings import Ring


@dataclass(frozen=True)
class FgAbelianGroup:
    """Finitely generated abelian group Z^r x Z/d1 x ... x Z/ds, d1 | d2 | ...

    Canonical: two groups are equal iff their data is identical.  Generator
    order is torsion first (in invariant-factor order), then free.  Over field
    coefficients the same class models a vector space of dimension
    ``free_rank`` with no torsion.
    """

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        prev = None
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
            if prev is not None and d % prev:
                raise ValueError(f"invariant factors {prev}, {d} violate the divisibility chain")
            prev = d

    @property
    def gens_orders(self) -> tuple[int, ...]:
        return self.invariant_factors + (0,) * self.free_rank

    @property
    def ngens(self) -> int:
        return len(self.invariant_factors) + self.free_rank

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    @property
    def rank(self) -> int:
        return self.free_rank

    @staticmethod
    def from_cyclic_orders(orders) -> "FgAbelianGroup":
        """Canonical form of a direct sum of cyclic groups Z/o (o == 0 means Z)."""
        orders = [int(o) for o in orders]
        m = len(orders)
        diag = snf.diagonal_invariants([[orders[i] if i == j else 0 for j in range(m)] for i in range(m)])
        factors = tuple(d for d in diag if d >= 2)
        free = sum(1 for d in diag if d == 0)
        return FgAbelianGroup(free, factors)

    def direct_sum(self, *others: "FgAbelianGroup") -> "FgAbelianGroup":
        orders = list(self.gens_orders)
        for g in others:
            orders.extend(g.gens_orders)
        return FgAbelianGroup.from_cyclic_orders(orders)

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GeneratorSpace:
    """Ad-hoc coordinate space given by a tuple of generator orders (0 = free)."""

    gens_orders: tuple[int, ...]


def orders_of(space) -> tuple[int, ...]:
    return tuple(space.gens_orders)


def reduce_vector(ring: Ring, orders, vec) -> tuple:
    """Canonical coordinates of an element: residues on torsion coordinates."""
    if ring.is_field:
        return tuple(ring.canon(v) for v in vec)
    out = []
    for d, v in zip(orders, vec):
        v = ring.canon(v)
        out.append(v % d if d else v)
    return tuple(out)


def _relation_columns(orders) -> list[list[int]]:
    """Columns d_i * e_i for each torsion generator of a space."""
    m = len(orders)
    cols = []
    for i, d in enumerate(orders):
        if d:
            col = [0] * m
            col[i] = d
            cols.append(col)
    return cols


@dataclass(frozen=True)
class ModuleHom:
    """Homomorphism between coordinate spaces, as an exact matrix.

    Columns are images of the source's canonical generators; rows are indexed
    by the target's generators.  Construction validates well-definedness (for
    each torsion source generator of order d, d times its image vanishes) and
    reduces entries on torsion target rows.
    """

    ring: Ring
    source: object
    target: object
    matrix: ExactMatrix

    def __post_init__(self):
        src = orders_of(self.source)
        tgt = orders_of(self.target)
        m = self.matrix
        if m.ring != self.ring:
            raise ShapeMismatch("matrix ring differs from homomorphism ring")
        if m.rows != len(tgt) or m.cols != len(src):
            raise ShapeMismatch(
                f"matrix is {m.rows}x{m.cols}, expected {len(tgt)}x{len(src)}"
            )
        if not self.ring.is_field:
            reduced = []
            changed = False
            for i, row in enumerate(m.entries):
                d = tgt[i]
                if d:
                    new = tuple(v % d for v in row)
                    changed = changed or new != row
                    reduced.append(new)
                else:
                    reduced.append(row)
            if changed:
                m = ExactMatrix(m.ring, m.rows, m.cols, tuple(reduced))
                object.__setattr__(self, "matrix", m)
            for j, d in enumerate(src):
                if d:
                    for i, e in enumerate(tgt):
                        v = m.entries[i][j]
                        if e == 0:
                            if v * d != 0:
                                raise ValueError(
                                    f"not well defined: torsion generator {j} maps to free coordinate {i}"
                                )
                        elif (v * d) % e:
                            raise ValueError(
                                f"not well defined: entry ({i},{j})={v} violates order {d} -> {e}"
                            )

    @classmethod
    def make(cls, ring: Ring, source, target, rows) -> "ModuleHom":
        mat = ExactMatrix.from_rows(ring, rows, len(orders_of(target)), len(orders_of(source)))
        return cls(ring, source, target, mat)

    @classmethod
    def identity(cls, ring: Ring, space) -> "ModuleHom":
        n = len(orders_of(space))
        return cls(ring, space, space, ExactMatrix.identity(ring, n))

    @classmethod
    def zero(cls, ring: Ring, source, target) -> "ModuleHom":
        return cls(
            ring, source, target,
            ExactMatrix.zeros(ring, len(orders_of(target)), len(orders_of(source))),
        )

    def apply(self, vec) -> tuple:
        return reduce_vector(self.ring, orders_of(self.target), self.matrix.apply(vec))

    @property
    def is_endomorphism(self) -> bool:
        return self.source == self.target

    def is_identity(self) -> bool:
        return self.is_endomorphism and self.matrix.is_identity()

    def is_zero(self) -> bool:
        return self.matrix.is_zero()


def identity_hom(ring: Ring, space) -> ModuleHom:
    return ModuleHom.identity(ring, space)


def hom_compose(g: ModuleHom, f: ModuleHom) -> ModuleHom:
    """g after f (apply f first)."""
    if f.target != g.source:
        raise ShapeMismatch("cannot compose: target of f is not source of g")
    return ModuleHom(f.ring, f.source, g.target, g.matrix @ f.matrix)


# -- canonical presentations -----------------------------------------------------


def _canonical_presentation(ngens: int, rel_cols: list[list[int]]):
    """Canonicalize the quotient Z^ngens / <relation columns>.

    Returns ``(group, kept, P, Pinv, full_orders)`` where ``y = P x`` are the
    new coordinates, ``kept`` lists the new-coordinate indices that survive
    (torsion first, then free) and ``full_orders[i]`` is the cyclic order of
    new coordinate ``i`` (0 = free, 1 = dropped).
    """
    k = len(rel_cols)
    rows = [[rel_cols[j][i] for j in range(k)] for i in range(ngens)]
    D, P, Pinv, _q, _qinv = snf.smith_with_transforms(rows, ngens, k)
    full_orders = []
    for i in range(ngens):
        d = D[i][i] if i < min(ngens, k) else 0
        full_orders.append(d)
    torsion_kept = [i for i, d in enumerate(full_orders) if d >= 2]
    free_kept = [i for i, d in enumerate(full_orders) if d == 0]
    kept = torsion_kept + free_kept
    group = FgAbelianGroup(len(free_kept), tuple(full_orders[i] for i in torsion_kept))
    return group, kept, P, Pinv, full_orders


def subgroup_from_generators(ring: Ring, ambient, gen_vectors) -> tuple[FgAbelianGroup, ModuleHom]:
    """Canonical form of the subgroup generated by the given elements.

    Returns the group together with its inclusion into ``ambient``.
    """
    amb = orders_of(ambient)
    m = len(amb)
    gens = [list(v) for v in gen_vectors]
    k = len(gens)
    if ring.is_field:
        rows = [[gens[j][i] for j in range(k)] for i in range(m)]
        _, pivots = field_rref(ring, rows, m, k)
        basis = [gens[j] for j in pivots]
        group = FgAbelianGroup(len(basis), ())
        mat = ExactMatrix.from_rows(ring, [[b[i] for b in basis] for i in range(m)], m, len(basis))
        return group, ModuleHom(ring, group, ambient, mat)
    rel = _relation_columns(amb)
    stacked = [[(gens[j][i] if j < k else rel[j - k][i]) for j in range(k + len(rel))] for i in range(m)]
    kern = snf.kernel_basis(stacked, m, k + len(rel))
    rel_on_gens = [col[:k] for col in kern]
    group, kept, _p, Pinv, _orders = _canonical_presentation(k, rel_on_gens)
    cols = []
    for idx in kept:
        coeffs = [Pinv[j][idx] for j in range(k)]
        vec = [sum(gens[j][i] * coeffs[j] for j in range(k)) for i in range(m)]
        cols.append(vec)
    mat_rows = [[cols[c][i] for c in range(len(cols))] for i in range(m)]
    mat = ExactMatrix.from_rows(ring, mat_rows, m, len(cols))
    return group, ModuleHom(ring, group, ambient, mat)


def quotient_by_columns(ring: Ring, space, extra_cols) -> tuple[FgAbelianGroup, ModuleHom]:
    """Quotient of ``space`` by the subgroup generated by the given columns.

    Returns the canonical group and the projection homomorphism.
    """
    amb = orders_of(space)
    m = len(amb)
    cols = [list(c) for c in extra_cols]
    if ring.is_field:
        # left null space of the column matrix = functionals vanishing on the image
        k = len(cols)
        rows_t = [list(c) for c in cols]  # k x m: transposed column matrix
        basis = _field_left_nullspace(ring, rows_t, k, m)
        group = FgAbelianGroup(len(basis), ())
        mat = ExactMatrix.from_rows(ring, basis, len(basis), m)
        return group, ModuleHom(ring, space, group, mat)
    rel_cols = cols + _relation_columns(amb)
    group, kept, P, _pinv, full_orders = _canonical_presentation(m, rel_cols)
    rows = [P[i] for i in kept]
    mat = ExactMatrix.from_rows(ring, rows, len(kept), m)
    return group, ModuleHom(ring, space, group, mat)


def _field_left_nullspace(ring: Ring, rows_t: list[list], r: int, c: int) -> list[list]:
    """Rows spanning {y : y A = 0} given A^T as ``rows_t`` (r x c = A^T shape)."""
    return [list(v) for v in field_nullspace(ring, rows_t, r, c)]


# -- kernels, images, cokernels ---------------------------------------------------


def hom_kernel(f: ModuleHom) -> tuple[FgAbelianGroup, ModuleHom]:
    """Canonical kernel K with its inclusion into the source."""
    ring = f.ring
    src = orders_of(f.source)
    tgt = orders_of(f.target)
    m_s, m_t = len(src), len(tgt)
    if ring.is_field:
        basis = field_nullspace(ring, f.matrix.to_lists(), m_t, m_s)
        group = FgAbelianGroup(len(basis), ())
        mat = ExactMatrix.from_rows(ring, [[b[i] for b in basis] for i in range(m_s)], m_s, len(basis))
        return group, ModuleHom(ring, group, f.source, mat)
    rel = _relation_columns(tgt)
    stacked = [list(f.matrix.entries[i]) + [rel[j][i] for j in range(len(rel))] for i in range(m_t)]
    kern = snf.kernel_basis(stacked, m_t, m_s + len(rel))
    gens = [reduce_vector(ring, src, col[:m_s]) for col in kern]
    return subgroup_from_generators(ring, f.source, gens)


def hom_image(f: ModuleHom) -> tuple[FgAbelianGroup, ModuleHom]:
    """Canonical image with its inclusion into the target."""
    cols = [f.matrix.column(j) for j in range(f.matrix.cols)]
    return subgroup_from_generators(f.ring, f.target, cols)


def hom_cokernel(f: ModuleHom) -> tuple[FgAbelianGroup, ModuleHom]:
    """Canonical cokernel with the projection from the target."""
    cols = [list(f.matrix.column(j)) for j in range(f.matrix.cols)]
    return quotient_by_columns(f.ring, f.target, cols)


def hom_is_automorphism(f: ModuleHom) -> bool:
    if orders_of(f.source) != orders_of(f.target):
        return False
    ring = f.ring
    if ring.is_field:
        return f.matrix.rows == f.matrix.cols and f.matrix.is_invertible()
    orders = orders_of(f.source)
    if all(d == 0 for d in orders):
        return f.matrix.is_invertible()
    if orders and all(d == orders[0] for d in orders):
        from math import gcd

        d = _det_lift(f.matrix)
        return gcd(d % orders[0], orders[0]) == 1
    k, _ = hom_kernel(f)
    if not k.is_trivial:
        return False
    c, _ = hom_cokernel(f)
    return c.is_trivial


def _det_lift(m: ExactMatrix) -> int:
    from .matrices import _det_int_bareiss

    return _det_int_bareiss([list(r) for r in m.entries])


def hom_invert(f: ModuleHom) -> ModuleHom:
    """Inverse of an automorphism; raises NotInvertible otherwise."""
    if f.source != f.target:
        raise NotInvertible("source and target differ")
    ring = f.ring
    if ring.is_field:
        return ModuleHom(ring, f.source, f.target, f.matrix.inverse())
    orders = orders_of(f.source)
    m = len(orders)
    if all(d == 0 for d in orders):
        return ModuleHom(ring, f.source, f.target, f.matrix.inverse())
    if not hom_is_automorphism(f):
        raise NotInvertible("homomorphism is not an automorphism")
    rel = _relation_columns(orders)
    stacked = [list(f.matrix.entries[i]) + [rel[j][i] for j in range(len(rel))] for i in range(m)]
    solver = snf.IntSolver(stacked, m, m + len(rel))
    cols = []
    for i in range(m):
        e = [0] * m
        e[i] = 1
        sol = solver.solve(e)
        if sol is None:  # pragma: no cover - contradicts the automorphism check
            raise NotInvertible("no preimage for a generator")
        cols.append(sol[:m])
    rows = [[cols[j][i] for j in range(m)] for i in range(m)]
    inv = ModuleHom.make(ring, f.source, f.target, rows)
    assert hom_compose(inv, f).is_identity() and hom_compose(f, inv).is_identity()
    return inv


# -- subgroup comparison -----------------------------------------------------------


def submodule_equal(ring: Ring, gens_a, gens_b, ambient) -> bool:
    """True iff the two generating sets span the same subgroup of ``ambient``."""
    amb = orders_of(ambient)
    m = len(amb)
    ga = [list(v) for v in gens_a]
    gb = [list(v) for v in gens_b]
    if ring.is_field:
        rows_a = [[g[i] for g in ga] for i in range(m)]
        rows_ab = [[g[i] for g in ga + gb] for i in range(m)]
        rows_b = [[g[i] for g in gb] for i in range(m)]
        _, pa = field_rref(ring, rows_a, m, len(ga))
        _, pab = field_rref(ring, rows_ab, m, len(ga) + len(gb))
        _, pb = field_rref(ring, rows_b, m, len(gb))
        return len(pa) == len(pab) == len(pb)
    rel = _relation_columns(amb)

    def contains(gens, others) -> bool:
        cols = gens + rel
        stacked = [[col[i] for col in cols] for i in range(m)]
        solver = snf.IntSolver(stacked, m, len(cols))
        return all(solver.in_image(list(v)) for v in others)

    return contains(ga, gb) and contains(gb, ga)
