"""Exact-arithmetic toolkit for star-decomposed monodromy representations.

Layers, bottom up: rings and exact matrices with Smith normal form
(:mod:`~starmono.rings`, :mod:`~starmono.matrices`, :mod:`~starmono.snf`),
finitely generated abelian groups with homomorphism algebra
(:mod:`~starmono.abelian`), the star-decomposition data model
(:mod:`~starmono.star`), reconstruction of a tuple from its operator at
infinity (:mod:`~starmono.reconstruction`), inverse-transpose duality
(:mod:`~starmono.duality`), exact-sequence rank constraints
(:mod:`~starmono.sequence_e`), Seifert-form relations
(:mod:`~starmono.seifert`), worked fixtures (:mod:`~starmono.corpus`) and the
``mono`` CLI (:mod:`~starmono.cli`).
"""

from .abelian import (
    FgAbelianGroup,
    GeneratorSpace,
    ModuleHom,
    hom_cokernel,
    hom_compose,
    hom_image,
    hom_invert,
    hom_is_automorphism,
    hom_kernel,
    submodule_equal,
)
from .errors import (
    DegenerateSeifertForm,
    DiagonalBlockNotInvertible,
    InconsistentData,
    InstanceFormatError,
    NotInvertible,
    NotRealizable,
    ShapeMismatch,
    StarMonoError,
    TorsionPresent,
)
from .matrices import ExactMatrix, invariant_factors, smith_normal_form
from .rings import QQ, ZZ, Ring, integers_mod, prime_field, ring_from_label
from .star import (
    BlockRowOperator,
    FreeGroupWord,
    MonodromyTuple,
    StarDecomposition,
    apply_operator,
    block_operator_from_matrices,
    compose_tuple,
    evaluate_word,
    identity_tuple,
    make_block_operator,
    picard_defect,
    to_full_operator,
)
from .reconstruction import (
    eigen_partial_check,
    fixed_space_at_infinity,
    invariant_subspace,
    kernel_of_defect,
    partial_products,
    reconstruct_tuple,
)
from .duality import (
    CohomologyTuple,
    DimensionChain,
    dimension_chain,
    dualize_operator,
    dualize_tuple,
    general_position_report,
    rationalized_tuple,
)
from .sequence_e import (
    CorollaryBReport,
    CriticalValueDatum,
    SequenceEReport,
    corollary_B_check,
    data_from_tuples,
    sequence_E_constraints,
)
from .seifert import (
    MonodromyRecovery,
    SeifertDatum,
    intersection_from_seifert,
    monodromy_from_seifert,
    seifert_datum,
)

__version__ = "0.1.0"
