"""Exact verification for tope families, signed groupoid sets, and the
oriented matroids they induce.

The package works over a finite ground set of root pairs encoded as bit
masks. Tope families are validated against the preacycloid and acycloid
axioms, converted to closure operators or to groupoids with inversion
data, and every classification theorem the package knows is rechecked
on both sides of the translation.
"""

from .core import GroundSet, RootSet, involute, is_half_set, max_pairs
from .errors import (
    AxiomViolation,
    CapExceeded,
    GroundCapExceeded,
    InconsistentRun,
    InternalConsistencyError,
    NotAcycloid,
    ParseError,
    PrerequisiteFailed,
    TopekitError,
)
from .preacycloid import (
    HandaReport,
    Preacycloid,
    canonical_key,
    check_acycloid,
    check_preacycloid,
    elementary_contract,
    handa_test,
    is_simple,
    parallelism_classes,
    preacycloids_isomorphic,
    quasicontract,
)
from .oriented_matroid import (
    OrientedMatroidView,
    check_anti_exchange,
    check_matroid_axioms,
    circuits,
    closure_from_topes,
    cone_closure,
    cone_matroid,
    is_simple_matroid,
    is_simplicial,
    underlying_rank,
)
from .sgs import (
    Mor,
    PropertyReport,
    SignedGroupoidSet,
    check_properties,
    check_sgs_isomorphism,
    compose,
    coxeter_fixture,
    group_action_sgs,
    inverse,
    pa_of,
    real_compression,
    sgs_from_preacycloid,
    simple_roots,
    trivial_action_sgs,
    universal_cover,
    weak_order,
)
from .squares import (
    Square,
    compose_squares,
    is_square,
    least_square_completion,
    multi_zigzag,
    square_join,
    square_orbit,
    zigzag,
    zigzag_run,
)
from .brink_howlett import (
    BoxObject,
    box_hom,
    hypercontract,
    hypercontract_topes,
    quasicontraction_tree,
)
from .pipeline_cli import (
    VerificationVerdict,
    closure_corollary_check,
    fixture_catalogue,
    main,
    main_theorem_pipeline,
    parse_preacycloid_json,
    parse_vectors_json,
    preacycloid_to_json,
    search_nonmatroid,
    vectors_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomViolation",
    "BoxObject",
    "CapExceeded",
    "GroundCapExceeded",
    "GroundSet",
    "HandaReport",
    "InconsistentRun",
    "InternalConsistencyError",
    "Mor",
    "NotAcycloid",
    "OrientedMatroidView",
    "ParseError",
    "Preacycloid",
    "PrerequisiteFailed",
    "PropertyReport",
    "RootSet",
    "SignedGroupoidSet",
    "Square",
    "TopekitError",
    "VerificationVerdict",
    "box_hom",
    "canonical_key",
    "check_acycloid",
    "check_anti_exchange",
    "check_matroid_axioms",
    "check_preacycloid",
    "check_properties",
    "check_sgs_isomorphism",
    "circuits",
    "closure_corollary_check",
    "closure_from_topes",
    "compose",
    "compose_squares",
    "cone_closure",
    "cone_matroid",
    "coxeter_fixture",
    "elementary_contract",
    "fixture_catalogue",
    "group_action_sgs",
    "handa_test",
    "hypercontract",
    "hypercontract_topes",
    "inverse",
    "involute",
    "is_half_set",
    "is_simple",
    "is_simple_matroid",
    "is_simplicial",
    "is_square",
    "least_square_completion",
    "main",
    "main_theorem_pipeline",
    "max_pairs",
    "multi_zigzag",
    "pa_of",
    "parallelism_classes",
    "parse_preacycloid_json",
    "parse_vectors_json",
    "preacycloid_to_json",
    "preacycloids_isomorphic",
    "quasicontract",
    "quasicontraction_tree",
    "real_compression",
    "search_nonmatroid",
    "sgs_from_preacycloid",
    "simple_roots",
    "square_join",
    "square_orbit",
    "trivial_action_sgs",
    "underlying_rank",
    "universal_cover",
    "vectors_to_json",
    "weak_order",
    "zigzag",
    "zigzag_run",
]
