"""Integrality of Cayley graphs of finite permutation groups.

The class algebra of a group gives the spectrum of ``Cay(G, S)`` for every
normal connection set ``S`` exactly; a dense eigendecomposition serves as an
independent numeric oracle and as the fallback for non-normal sets.
"""

from .characters import CentralCharacterTable, central_characters
from .charpoly import CharPolyZ, charpoly_integer, integer_roots
from .classalgebra import (
    ClassData,
    StructureConstants,
    class_matrix,
    conjugacy_classes,
    power_class_map,
    structure_constants,
)
from .errors import CapExceededError, CayleySpecError, ParseError, VerificationError
from .groupalgebra import GroupAlgebraVector, algebra_product, verify_cor5_identity
from .permgroup import (
    GroupTable,
    Permutation,
    builtin_group,
    compose,
    cycle_type,
    element_order,
    generate_group,
    inverse,
    parse_group_spec,
    parse_permutation,
)
from .spectra import (
    SpectrumReport,
    adjacency_matrix,
    certify_integrality,
    components_report,
    spectrum_direct,
    spectrum_via_central_characters,
    subset_class_matrix,
)
from .subsets import (
    SubsetAnalysis,
    analyze_subset,
    euler_closure,
    euler_phi,
    generated_subgroup,
    normal_closure,
    resolve_set_spec,
)

__all__ = [
    "CentralCharacterTable",
    "central_characters",
    "CharPolyZ",
    "charpoly_integer",
    "integer_roots",
    "ClassData",
    "StructureConstants",
    "class_matrix",
    "conjugacy_classes",
    "power_class_map",
    "structure_constants",
    "CapExceededError",
    "CayleySpecError",
    "ParseError",
    "VerificationError",
    "GroupAlgebraVector",
    "algebra_product",
    "verify_cor5_identity",
    "GroupTable",
    "Permutation",
    "builtin_group",
    "compose",
    "cycle_type",
    "element_order",
    "generate_group",
    "inverse",
    "parse_group_spec",
    "parse_permutation",
    "SpectrumReport",
    "adjacency_matrix",
    "certify_integrality",
    "components_report",
    "spectrum_direct",
    "spectrum_via_central_characters",
    "subset_class_matrix",
    "SubsetAnalysis",
    "analyze_subset",
    "euler_closure",
    "euler_phi",
    "generated_subgroup",
    "normal_closure",
    "resolve_set_spec",
]

__version__ = "0.1.0"
