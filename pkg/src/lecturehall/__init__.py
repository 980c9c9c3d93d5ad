"""Exact-arithmetic constructions, enumeration, and certification for the
lecture hall cone family."""

from .errors import BudgetError, DomainError, LectureHallError, VerificationError
from .exact import (
    AffineChart,
    IntMatrix,
    IntPolynomial,
    SeriesTrunc,
    det,
    mat_inverse_unimodular,
    series_expand_rational,
)
from .lp import RationalLP, lp_feasible, lp_feasible_strict, lp_optimize, rational_lp
from .geometry import (
    ConeH,
    Grading,
    PolytopeH,
    PolytopeV,
    ReflexivityCertificate,
    SubsetA,
    all_subsets,
    degree_grading,
    difference_polytope,
    difference_pyramid_base,
    flip_convention,
    interior_lattice_points,
    is_reflexive_after_translation,
    lecture_hall_cone,
    lecture_hall_polytope,
    make_polytope_v,
    ones_grading,
    ray_slice_polytope,
    row_difference_map,
    subset_encodings,
)
from .enumeration import (
    EhrhartData,
    GradedCount,
    bme_rhs,
    ceiling_series,
    ehrhart_count,
    ehrhart_data_for,
    eulerian,
    eulerian_worpitzky_check,
    hilbert_count,
    hilbert_series_trunc,
    hstar_from_counts,
)
from .hilbert import (
    Decomposition,
    HilbertBasis,
    construct_hilbert_basis,
    decompose,
    minimal_generators_bruteforce,
)
from .triangulation import (
    CONSTRUCTION_ID,
    ChimneySpec,
    LiftingCertificate,
    Triangulation,
    check_covering,
    check_flag,
    check_regular,
    check_unimodular,
    make_triangulation,
    triangulate_difference_polytope,
    triangulate_tube,
    triangulation_from_json,
    triangulation_to_json,
    verify_lifting,
)
from .conjecture import (
    ShellingReport,
    braid_triangulation,
    conjecture_report,
    find_descent_shelling,
    is_shelling_order,
    minimal_nonedges,
    sperner_pairs,
)

__version__ = "0.1.0"
