"""meanstab: exact asymptotic expansions, resultant mean-maps and power-mean
stabilizability analysis for bivariate means.

The exact layer (rationals, polynomials, series, catalog, resultant, solver)
computes every coefficient and parameter over Q; the numeric lab cross-checks
against direct floating-point evaluation.
"""

from .catalog import (
    ALIASES,
    ClassicMean,
    LAlpha,
    M1,
    M2,
    M3,
    M4,
    M5,
    MAlphaR,
    MeanExpansion,
    MeanSpec,
    MuGenerated,
    PowerMean,
    SAlpha,
    expand_l_alpha,
    expand_mean,
    expand_mu_generated,
    expand_power_mean,
    expand_quotient_mean,
    expand_s_alpha,
    expand_stable,
)
from .polynomials import (
    IntervalRoot,
    QuadraticSurdRoot,
    RationalRoot,
    UniPoly,
    isolate_real_roots,
    lagrange_interpolate,
)
from .rationals import Rational, binomial, parse_rational
from .resultant import (
    ResultantInput,
    resultant_coeffs,
    resultant_expansion,
    resultant_mean_map,
    resultant_power_means,
)
from .series import (
    integrate_formal,
    series_compose,
    series_mul,
    series_power,
)
from .solver import (
    DifferenceExpansion,
    StabilizabilityVerdict,
    coefficient_polynomial,
    difference_expansion,
    first_order_locus,
    is_stable,
    optimal_parameters,
    stability_parameter_scan,
)

__version__ = "0.1.0"
