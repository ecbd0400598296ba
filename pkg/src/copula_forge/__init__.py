"""Bivariate copulas as composable expressions, with numerical dependence
measures and seeded property checks."""

from .catalog import (
    force_perturbed_p,
    force_perturbed_q,
    independence,
    lower_frechet,
    marshall_olkin,
    perturbation_p,
    perturbation_q,
    perturbed_p,
    perturbed_q,
    upper_frechet,
)
from .core import CopulaExpr, GridCopula, Point, Rectangle, c_volume, evaluate, sample_grid
from .grammar import CopulaSpecError, parse_copula_spec, unparse
from .measures import (
    MeasureReport,
    asymmetry_mu,
    blomqvist_beta,
    concordance,
    full_report,
    gini_gamma,
    kendall_tau,
    radial_asymmetry_nu,
    spearman_rho,
    sup_distance,
    tail_lower,
    tail_upper,
)
from .transforms import (
    mix,
    normalize,
    radial_symmetrize,
    semantically_equal,
    structurally_equal,
    survival,
    symmetrize,
    transpose,
)
from .verify import AxiomReport, check_axioms, check_radial_symmetry, check_symmetry

__version__ = "0.1.0"
