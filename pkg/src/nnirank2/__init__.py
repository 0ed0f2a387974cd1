"""Exact decision procedure and factorization for nonnegative integer rank 2."""

from .diagram import (
    CanonicalDiagram,
    Diagram,
    build_diagram,
    canonicalize,
    column_lattice_basis,
    extreme_rays,
    point_coordinates,
)
from .instances import GenSpec, dgauss2, gen_bt, gen_near_t, gen_product
from .linalg import (
    SnfResult,
    as_int_matrix,
    cross2,
    det_exact,
    ext_gcd,
    gcd,
    primitive,
    rank_exact,
    reduce_basis_rank2,
    smith_normal_form,
    solve2,
)
from .oracle import OracleVerdict, brute_force, generated_by
from .reduction import (
    EquivalenceReport,
    ReductionTrace,
    build_3xm,
    primitivize_in_lattice,
    reduce_to_3x3,
    validate_equivalence,
)
from .solver import (
    NOT_RANK2,
    RANK2,
    RANK_LE_1,
    CandidatePair,
    ConeDecomposition,
    Rank2Certificate,
    SolveOutcome,
    check_pair,
    decompose,
    search,
    solve,
    solve_diagram,
    triangle_points,
    verify_factorization,
)

__all__ = [
    "CanonicalDiagram",
    "CandidatePair",
    "ConeDecomposition",
    "Diagram",
    "EquivalenceReport",
    "GenSpec",
    "NOT_RANK2",
    "OracleVerdict",
    "RANK2",
    "RANK_LE_1",
    "Rank2Certificate",
    "ReductionTrace",
    "SnfResult",
    "SolveOutcome",
    "as_int_matrix",
    "brute_force",
    "build_3xm",
    "build_diagram",
    "canonicalize",
    "check_pair",
    "column_lattice_basis",
    "cross2",
    "decompose",
    "det_exact",
    "dgauss2",
    "ext_gcd",
    "extreme_rays",
    "gcd",
    "gen_bt",
    "gen_near_t",
    "gen_product",
    "generated_by",
    "point_coordinates",
    "primitive",
    "primitivize_in_lattice",
    "rank_exact",
    "reduce_basis_rank2",
    "reduce_to_3x3",
    "search",
    "smith_normal_form",
    "solve",
    "solve2",
    "solve_diagram",
    "triangle_points",
    "validate_equivalence",
    "verify_factorization",
]
