"""Exact lattice-point enumeration and invariant checks for preorder polytopes."""

from .ehrhart import (
    DEFAULT_Q_SAMPLES,
    EhrhartRecord,
    NablaBlock,
    double_ehrhart,
    double_reciprocity_check,
    ehrhart_dual_formula,
    ehrhart_interpolation,
    ehrhart_record,
    nabla_block,
    normalized_volume,
    qzeta_check,
    qzeta_sides,
    zeta_polynomial,
)
from .families import (
    FAMILY_NAMES,
    SERIES_NAMES,
    FamilySpec,
    antichain_sum_h,
    build_family,
    delannoy,
    family_table_check,
    narayana,
    series_identity_check,
)
from .geometry import (
    HPolytope,
    VPolytope,
    ehrhart_Rvee,
    euler_relation_holds,
    f_vector,
    q_h_polytope,
    reflexive_conjecture_checks,
    reflexive_pair,
    vertex_enumeration,
)
from .harness import (
    ALL_CHECKS,
    CHECK_DEFS,
    ConjectureReport,
    run_invariants,
    run_sweep,
    summarize,
)
from .mtriangle import MTriangle, m_duality_check, m_triangle, transmute
from .points import (
    PointPoset,
    count_points,
    cover_count,
    enumerate_points,
    h_vector,
    maximal_elements,
    multichain_count,
    upper_boundary_complement,
)
from .polynomials import (
    BiPoly,
    UniPoly,
    binom_poly,
    gamma_vector,
    hstar_from_ehrhart,
    interpolate,
    is_polytopal_h,
    is_real_rooted,
    magic_coefficients,
    roots_on_critical_line,
)
from .preorder import (
    IdealFamily,
    Preorder,
    build_preorder,
    canonical_key,
    combine,
    dual,
    enumerate_preorders,
    load_preorder,
    order_ideals,
    parse_preorder,
    preorder_to_json,
)
from .report import emit_report
from .series import LaurentPoly, TruncSeries, series_ops
from .words import (
    WordClass,
    hstar_asc_star,
    hstar_filter_formula,
    hstar_words_descent,
    total_order_independence,
    words_W,
)

__version__ = "0.1.0"
