"""Canned worked examples as executable regression fixtures.

Each fixture carries provenance labels on its assertions: ``classical`` marks
facts established in the literature about the underlying polynomial,
``derived`` marks concrete witnesses chosen here because only the qualitative
shape is classical.  All checks run through the generic modules; nothing in
this file special-cases the fixtures.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import FgAbelianGroup, ModuleHom, hom_image
from .duality import dualize_operator, rationalized_tuple
from .errors import TorsionPresent
from .matrices import ExactMatrix
from .reconstruction import kernel_of_defect
from .rings import ZZ
from .seifert import SeifertDatum, seifert_datum
from .sequence_e import CriticalValueDatum, sequence_E_constraints
from .star import (
    MonodromyTuple,
    StarDecomposition,
    block_operator_from_matrices,
    compose_tuple,
    to_full_operator,
)


@dataclass(frozen=True)
class Fact:
    name: str
    statement: str
    source: str  # "classical" or "derived"
    holds: bool


@dataclass(frozen=True)
class QuarticExample:
    """Monodromy of the cone over the three-cuspidal quartic, on H_1.

    One critical value (t = 1, b_1 = 0); the first homology of the generic
    fiber is Z/3 and the single local operator is multiplication by -1: the
    geometric monodromy has order 4, so it acts through a unit of order
    dividing 4, and it is known to act nontrivially, which pins the unit to
    -1 = 2 (the only nontrivial automorphism of Z/3).
    """

    tuple: MonodromyTuple
    bifurcation_values: tuple[int, ...]
    sequence_datum: CriticalValueDatum


def example_quartic() -> QuarticExample:
    v = FgAbelianGroup(0, (3,))
    dec = StarDecomposition(ZZ, 1, (v,))
    op = block_operator_from_matrices(dec, 1, [[[2]]])
    tup = MonodromyTuple(dec, (op,))
    # degree 0: the reduced homology of a connected fiber is trivial
    datum = CriticalValueDatum(
        index=1,
        summand=v,
        operator=op.diagonal_block(),
        kernel_below=FgAbelianGroup(),
        h_c=FgAbelianGroup(),
    )
    return QuarticExample(tup, (0,), datum)


def quartic_facts(example: QuarticExample | None = None) -> list[Fact]:
    """Evaluate the fixture's assertions through the generic machinery."""
    ex = example or example_quartic()
    tup = ex.tuple
    dec = tup.decomposition
    m_full = to_full_operator(tup.operators[0])
    n = dec.total_dim
    defect = ModuleHom(ZZ, dec, dec, m_full.matrix - ExactMatrix.identity(ZZ, n))
    image, _ = hom_image(defect)
    facts = [
        Fact(
            "image_of_defect",
            "Im(m - 1) is the whole Z/3",
            "classical",
            image == FgAbelianGroup(0, (3,)),
        ),
        Fact(
            "homology_operator_nontrivial",
            "the operator at infinity on H_1 is not the identity",
            "classical",
            not compose_tuple(tup).is_identity(),
        ),
    ]
    try:
        dualize_operator(m_full)
        duality_refused = False
    except TorsionPresent:
        duality_refused = True
    facts.append(
        Fact(
            "duality_needs_torsion_free",
            "inverse-transpose duality refuses the torsion group",
            "derived",
            duality_refused,
        )
    )
    shadow = rationalized_tuple(tup)
    facts.append(
        Fact(
            "rational_shadow_trivial",
            "the torsion-free shadow (rank 0) has identity operator at infinity",
            "classical",
            compose_tuple(shadow).is_identity(),
        )
    )
    facts.append(
        Fact(
            "sequence_consistent",
            "vanishing H_c at the one critical value balances the exact sequence",
            "classical",
            sequence_E_constraints(ex.sequence_datum).consistent,
        )
    )
    # fixed part of the degree-0 data used by the sequence: trivial by construction
    below, _ = kernel_of_defect(to_full_operator(tup.operators[0]))
    facts.append(
        Fact(
            "fixed_kernel_on_torsion",
            "Ker(m - 1) on H_1 is trivial (multiplication by -2 is injective on Z/3)",
            "derived",
            below.is_trivial,
        )
    )
    return facts


def example_degenerate_seifert() -> SeifertDatum:
    """Rank-2 witness that S = 0 does not force trivial monodromy.

    Only the qualitative facts are classical (a polynomial with nontrivial
    operator at infinity but vanishing intersection form, its fiber being a
    twice-punctured line); the matrices are a derived witness: L = 0 pairs
    with any unimodular M != 1 to give S = 0 through a singular Seifert form.
    """
    L = ExactMatrix.zeros(ZZ, 2, 2)
    M = ExactMatrix.from_rows(ZZ, [[1, 1], [0, 1]])
    return seifert_datum(L, M)
