"""Spherical convex geometry kernel: polar bodies, width and diameter, Wulff shapes."""
from .bodies import (
    CapIntersectionBody,
    SphericalPolytope,
    boundary_point,
    boundary_sample,
    cap_body,
    contains,
    from_hemispheres,
    interior_point,
    s_conv,
    supporting_centers,
)
from .errors import (
    DegenerateDirectionError,
    DegenerateLuneError,
    DimensionMismatchError,
    EmptyInteriorError,
    EquatorSingularityError,
    GeometryError,
    ImproperBodyError,
    NotOnBoundaryError,
    NotSupportingError,
    UnboundedWulffError,
)
from .generators import gen_cap, gen_gamma, gen_orthant, gen_random_polytope, gen_reuleaux
from .kernels import BACKEND
from .metrics import (
    ConstancyReport,
    WidthReport,
    diameter,
    farthest_point,
    is_constant_diameter,
    is_constant_width,
    thickness,
    verify_theorem_1,
    width_wrt,
)
from .polar import check_lemma_2_2, polar_body, polar_polytope
from .sphere import Cap, Lune, ToleranceConfig, distance, geodesic, lune_thickness, normalize
from .wulff import (
    GammaField,
    WulffPolytope,
    build_wulff,
    central_project,
    central_unproject,
    check_prop_3_3,
    check_self_dual,
    corollary_3_2_report,
    dual_gamma,
    dual_wulff,
    euclidean_polar,
    radial,
    spherical_wulff,
)
