"""Seeded random instances: groups, homomorphisms, operators, tuples.

Everything is driven by :class:`~starmono.prng.SplitMix64`, so a (command,
seed) pair reproduces byte-identically.  Invertibility is guaranteed by
construction: diagonal blocks and torsion automorphisms are assembled from
random elementary operations, never checked after the fact.
"""

from __future__ import annotations

from math import gcd

from .abelian import FgAbelianGroup, ModuleHom
from .prng import SplitMix64
from .rings import Ring
from .star import BlockRowOperator, MonodromyTuple, StarDecomposition


def random_group(rng: SplitMix64, max_free: int = 2, max_torsion: int = 2) -> FgAbelianGroup:
    """Random group with a divisibility chain built multiplicatively."""
    free = rng.int_in(0, max_free)
    factors = []
    d = 1
    for _ in range(rng.int_in(0, max_torsion)):
        d *= rng.choice((2, 2, 3, 4))
        factors.append(d)
    return FgAbelianGroup(free, tuple(factors))


def random_decomposition(
    rng: SplitMix64,
    ring: Ring,
    t: int,
    max_size: int = 4,
    with_torsion: bool = False,
    degree: int = 1,
    sizes=None,
) -> StarDecomposition:
    summands = []
    for i in range(t):
        size = sizes[i] if sizes is not None else rng.int_in(1, max_size)
        if ring.is_field:
            summands.append(FgAbelianGroup(size))
        elif ring.kind == "Zn":
            summands.append(FgAbelianGroup(0, (ring.modulus,) * size))
        elif with_torsion:
            free = rng.int_in(0, size)
            factors = []
            d = 1
            for _ in range(size - free):
                d *= rng.choice((2, 2, 3, 4))
                factors.append(d)
            summands.append(FgAbelianGroup(free, tuple(factors)))
        else:
            summands.append(FgAbelianGroup(size))
    return StarDecomposition(ring, degree, tuple(summands))


def random_hom(rng: SplitMix64, ring: Ring, source: FgAbelianGroup, target) -> ModuleHom:
    """Uniform-ish well-defined homomorphism with small entries."""
    src = source.gens_orders
    tgt = target.gens_orders
    rows = []
    for e in tgt:
        row = []
        for d in src:
            if ring.is_field:
                row.append(rng.int_in(-3, 3))
            elif d == 0 and e == 0:
                row.append(rng.int_in(-3, 3))
            elif d == 0:
                row.append(rng.below(e))
            elif e == 0:
                row.append(0)
            else:
                step = e // gcd(e, d)
                row.append(step * rng.below(max(1, e // step)))
        rows.append(row)
    return ModuleHom.make(ring, source, target, rows)


def random_automorphism(rng: SplitMix64, ring: Ring, space: FgAbelianGroup) -> ModuleHom:
    """Automorphism built as a product of random elementary operations."""
    orders = space.gens_orders
    n = len(orders)
    if n == 0:
        return ModuleHom.identity(ring, space)
    cols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]  # cols[j] = image of gen j

    def addmul(i, j, c):
        # image(e_i) += c * image(e_j)
        if c:
            ci, cj = cols[i], cols[j]
            for k in range(n):
                ci[k] += c * cj[k]

    steps = 2 * n + rng.int_in(2, 5)
    for _ in range(steps):
        kind = rng.below(3)
        if kind == 0 and n >= 2:
            i = rng.below(n)
            j = rng.below(n)
            if i == j:
                continue
            di, dj = orders[i], orders[j]
            if ring.is_field or (di == 0 and dj == 0):
                addmul(i, j, rng.int_in(-2, 2))
            elif di == 0:
                addmul(i, j, rng.int_in(-2, 2))
            elif dj == 0:
                continue  # torsion source cannot acquire a free component
            else:
                step = dj // gcd(dj, di)
                addmul(i, j, step * rng.below(max(1, dj // step)))
        elif kind == 1:
            i = rng.below(n)
            d = orders[i]
            if ring.kind == "Q":
                u = rng.choice((1, -1, 2, -2, 3))
            elif ring.kind == "Fp":
                u = 1 + rng.below(ring.modulus - 1)
            elif d == 0:
                u = rng.choice((1, -1))
            else:
                units = [u for u in range(1, d) if gcd(u, d) == 1]
                u = rng.choice(units)
            for k in range(n):
                cols[i][k] *= u
        else:
            if n >= 2:
                i = rng.below(n)
                j = rng.below(n)
                if i != j and orders[i] == orders[j]:
                    cols[i], cols[j] = cols[j], cols[i]
    rows = [[cols[j][i] for j in range(n)] for i in range(n)]
    return ModuleHom.make(ring, space, space, rows)


def random_block_operator(
    rng: SplitMix64, decomposition: StarDecomposition, row_index: int
) -> BlockRowOperator:
    dec = decomposition
    target = dec.summands[row_index - 1]
    blocks = []
    for i, src in enumerate(dec.summands):
        if i == row_index - 1:
            blocks.append(random_automorphism(rng, dec.ring, target))
        else:
            blocks.append(random_hom(rng, dec.ring, src, target))
    return BlockRowOperator(dec, row_index, tuple(blocks))


def random_tuple(rng: SplitMix64, decomposition: StarDecomposition) -> MonodromyTuple:
    ops = tuple(
        random_block_operator(rng, decomposition, j) for j in range(1, decomposition.t + 1)
    )
    return MonodromyTuple(decomposition, ops)


def random_element(rng: SplitMix64, decomposition: StarDecomposition) -> tuple:
    from .rings import rational

    out = []
    for d in decomposition.gens_orders:
        if decomposition.ring.kind == "Q":
            out.append(rational(rng.int_in(-4, 4)))
        elif decomposition.ring.is_modular:
            out.append(rng.below(decomposition.ring.modulus))
        elif d:
            out.append(rng.below(d))
        else:
            out.append(rng.int_in(-4, 4))
    return tuple(out)


def random_scalar(rng: SplitMix64, ring: Ring):
    from .rings import rational

    if ring.kind == "Q":
        return rational(rng.int_in(-3, 3))
    if ring.is_modular:
        return rng.below(ring.modulus)
    return rng.int_in(-3, 3)
