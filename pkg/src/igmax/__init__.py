"""Realize groups as maximal subgroups of free idempotent generated
semigroups.

The library builds, from either a finitely presented group (in product-form
presentation) or a finite group given by its multiplication table, a
semigroup of row/column transformation pairs whose free idempotent generated
semigroup has the input group as the maximal subgroup at a band element.  It
enumerates the semigroup, its singular squares, and the canonical
presentation of that maximal subgroup, then verifies end-to-end that the
presentation defines the input group.
"""

from .cayley import (
    CayleyTable,
    CayleyValidationError,
    cyclic_group,
    evaluate,
    groups_up_to_order_6,
    klein_four_group,
    make_cayley_table,
    symmetric_group_3,
    trivial_group,
)
from .constructions import (
    CayleyConstruction,
    CensusReport,
    ConstructionInputError,
    ConstructionInvariantError,
    LabelMatrix,
    StructureReport,
    TriangularConstruction,
    cayley_label_matrix,
    cayley_pattern_idempotents,
    construct_from_cayley,
    construct_from_triangular,
    relation_idempotent,
    row_idempotent,
    triangular_label_matrix,
)
from .coset_enum import CosetEnumeration, cayley_from_coset_table, todd_coxeter
from .presentations import (
    GroupPresentation,
    SimplificationResult,
    TriangularPresentation,
    abelian_invariants,
    smith_normal_form,
    tietze_simplify,
    triangularize,
)
from .semigroups import (
    CapacityExceeded,
    FiniteSemigroup,
    GreensStructure,
    close,
    greens,
    is_regular_biorder,
    is_regular_semigroup,
    rig_relations,
    sandwich_set,
)
from .squares import (
    GridPresentation,
    SingularSquare,
    classify,
    close_identifications,
    grid_presentation,
    h1_group_presentation,
    identification_matches_matrix,
    residual_relations,
    residue_presentation,
    singular_squares,
)
from .transforms import (
    RowColMap,
    Transformation,
    constant_element,
    rect_band,
    rect_band_coords,
)
from .verify import (
    VerificationReport,
    cayley_presentation,
    run_cayley_pipeline,
    run_rect_band_pipeline,
    run_triangular_pipeline,
    verify_order,
    verify_soundness,
)

__version__ = "0.1.0"
