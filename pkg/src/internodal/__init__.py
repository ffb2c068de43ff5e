"""Internodal distance distributions for nodes in concentric disks and balls.

Two nodes sit in concentric regions of radii ``r1 <= r2``; each is either
static (uniform placement) or mobile (random-waypoint stationary density).
The package evaluates the exact density of their distance, cross-checks it
against a numerical mixture integral and Monte Carlo, and fits moment-matched
beta approximations.
"""

from .analysis import (
    BetaParams,
    CdfTable,
    beta_pdf,
    cdf,
    fit_beta_moments,
    fit_beta_scenario,
    ks_distance,
    mixture_pdf_oracle,
    moment,
    pdf_curve,
)
from .closedform import pdf, pdf_2d_equal, pdf_2d_general, pdf_3d_equal, pdf_3d_general
from .conditional import conditional_pdf
from .core import (
    Dimension,
    NetworkConfig,
    PlacementKind,
    Scenario,
    make_config,
    validate_config,
)
from .montecarlo import McSummary, rwp_density_crosscheck, simulate
from .spatial import radial_cdf, radial_pdf

__version__ = "0.1.0"
