"""Weyr canonical forms and block triangular miniversal deformations with exact certificates."""

from .deformations import (
    ContraStructure,
    PencilStructure,
    Template,
    TemplatePair,
    deform_contragredient,
    deform_jordan,
    deform_pencil,
    deform_pencil_kronecker,
    deform_weyr,
    kronecker_to_weyr_permutations,
    triangularize_contragredient,
    triangularizing_permutations,
)
from .exact import ExactMatrix, ExactScalar
from .patterns import PatternMatrix, arrow_block, compose_blocks, star_block, t_block, z_block
from .reduce import NoConvergence, ReduceOptions, ReductionResult, SingularTransform, reduce, reduce_similarity
from .structures import (
    BlockPartition,
    Permutation,
    SegreStructure,
    StripIndex,
    StructureError,
    WeyrCharacteristic,
    build_jordan,
    build_weyr,
    jordan_to_weyr_permutation,
    segre_from_weyr,
    strip_index_sequence,
    weyr_char_from_segre,
    weyr_char_of_matrix,
)
from .verify import (
    CENTRALIZER_ORIENTATION,
    VersalityReport,
    centralizer_basis,
    certify,
    codim_similarity_formula,
    is_block_triangular,
    tangent_matrix,
)

__version__ = "0.1.0"
