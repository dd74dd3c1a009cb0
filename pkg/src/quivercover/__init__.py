"""Computational algebra on bound quiver presentations: path orders,
transvection normal forms, admissible ideals, homotopy relations, and the
graph of relations with covering certificates."""

from .autos import (
    ArrowSubstitution,
    DecreasingProduct,
    apply,
    compose,
    decreasing_normal_form,
    dilatation,
    evaluate_word,
    invert,
    transvection,
)
from .errors import (
    CapacityError,
    ConsistencyError,
    DomainError,
    HypothesisError,
    NotComparableError,
    NotConjugateError,
    NotInvertibleError,
    NotTransvectionProductError,
    ParseError,
    QuiverCoverError,
    SeedError,
    StructuralError,
)
from .homotopy import (
    GroupPresentation,
    HomotopyRelation,
    SimplifiedPresentation,
    SuccessorProbe,
    SurjectionWitness,
    abelian_invariants,
    direct_successor_case,
    homotopy_closure,
    pi1_presentation,
    relations_equal,
    simplify_presentation,
    spanning_tree,
    surjection_witness,
)
from .ideals import (
    AdmissibleIdeal,
    MinimalRelation,
    SeedSearch,
    canonical_transvection_product,
    find_seed,
    groebner_structure,
    ideal_from_generators,
    is_minimal_relation,
    is_monomial,
    membership,
    minimal_relations,
    preserves_monomial_ideal,
)
from .order import (
    bypass_weight_key,
    compare_bypasses,
    compare_paths,
    path_weight_key,
    sorted_bypasses,
    weight,
)
from .quiver import (
    Arrow,
    Bypass,
    DoubleBypass,
    Path,
    Quiver,
    Walk,
    concat_paths,
    derivation_order,
    replace_arrow,
    validate_quiver,
)
from .relgraph import (
    GammaEdge,
    GammaGraph,
    GammaNode,
    RealizedPath,
    UniversalCoverCertificate,
    build_gamma,
    certify_universal,
    export_dot,
    realize_path,
    unique_source_check,
)
from .vectors import (
    PathVector,
    as_scalar,
    coefficient,
    concatenate,
    normal_form,
    subexpressions,
)
from .workspace import (
    Workspace,
    element_str,
    parse_element,
    parse_word,
    parse_workspace,
    serialize_workspace,
    word_str,
)

__all__ = [
    "AdmissibleIdeal",
    "Arrow",
    "ArrowSubstitution",
    "Bypass",
    "CapacityError",
    "ConsistencyError",
    "DecreasingProduct",
    "DomainError",
    "DoubleBypass",
    "GammaEdge",
    "GammaGraph",
    "GammaNode",
    "GroupPresentation",
    "HomotopyRelation",
    "HypothesisError",
    "MinimalRelation",
    "NotComparableError",
    "NotConjugateError",
    "NotInvertibleError",
    "NotTransvectionProductError",
    "ParseError",
    "Path",
    "PathVector",
    "Quiver",
    "QuiverCoverError",
    "RealizedPath",
    "SeedError",
    "SeedSearch",
    "SimplifiedPresentation",
    "StructuralError",
    "SuccessorProbe",
    "SurjectionWitness",
    "UniversalCoverCertificate",
    "Walk",
    "Workspace",
    "abelian_invariants",
    "apply",
    "as_scalar",
    "build_gamma",
    "bypass_weight_key",
    "canonical_transvection_product",
    "certify_universal",
    "coefficient",
    "compare_bypasses",
    "compare_paths",
    "compose",
    "concat_paths",
    "concatenate",
    "decreasing_normal_form",
    "derivation_order",
    "dilatation",
    "direct_successor_case",
    "element_str",
    "evaluate_word",
    "export_dot",
    "find_seed",
    "groebner_structure",
    "homotopy_closure",
    "ideal_from_generators",
    "invert",
    "is_minimal_relation",
    "is_monomial",
    "membership",
    "minimal_relations",
    "normal_form",
    "parse_element",
    "parse_word",
    "parse_workspace",
    "path_weight_key",
    "pi1_presentation",
    "preserves_monomial_ideal",
    "realize_path",
    "relations_equal",
    "replace_arrow",
    "serialize_workspace",
    "simplify_presentation",
    "sorted_bypasses",
    "spanning_tree",
    "subexpressions",
    "surjection_witness",
    "transvection",
    "unique_source_check",
    "validate_quiver",
    "weight",
    "word_str",
]

__version__ = "0.1.0"
