"""Free boundary minimal annuli in the unit ball: analysis and classification tools."""
from .analysis import (
    FundamentalForms,
    HopfSample,
    Partials,
    SurfaceGrid,
    conformality_residual,
    estimate_hopf_constant,
    forms,
    forms_at,
    gauss_curvature,
    gauss_curvature_from_constant,
    gauss_equation_residual,
    harmonicity_residual,
    hopf_field,
    hopf_quartic,
    hopf_spread,
    laplacian_phi,
    minimality_residual,
    partials,
    wirtinger,
)
from .boundary import (
    BoundaryCurve,
    CircleFit,
    LocalExpansion,
    RelationResiduals,
    antipodality_check,
    boundary_relations_residual,
    fit_plane_circle,
    free_boundary_residual,
    local_expansion,
    third_derivative_check,
    torsion_profile,
)
from .catenoid import (
    CatenoidParams,
    catenoid_forms,
    catenoid_immersion,
    catenoid_partials,
    catenoid_surface,
    solve_catenoid_params,
)
from .classify import ClassificationReport, classify
from .domain import AnnulusSpec, PolarGrid, circle_samples, contour_integral, make_grid
from .errors import *  # noqa: F401,F403
from .io import emit_plot_data, load_data, load_surface, save_data, save_surface
from .spectral import (
    LaurentSeries,
    fourier_vanishing_check,
    laurent_expand,
    laurent_extract,
    recover_gauss_map,
)
from .weierstrass import (
    ClosedForm,
    WeierstrassData,
    hopf_identity,
    integrate_immersion,
    metric_lambda,
    path_integral,
    periods,
)

__version__ = "0.1.0"
