"""Exact arithmetic for local Bessel functions, quadratic form classes and
Saito-Kurokawa Fourier coefficients."""

from .bessel import (
    BesselClassification,
    BesselKind,
    SphericalParams,
    b0,
    b0_closed_sk,
    blm_sk,
    classify,
    obstruction,
    poly_h_x0,
    poly_p,
    siegel_series_value,
)
from .quadforms import (
    ArchDecomposition,
    CosetInvariants,
    DiscFactorization,
    QForm,
    arch_decompose,
    bessel_arch,
    class_count_formula,
    coset_invariants,
    disc_content,
    enumerate_classes,
    fundamental_split,
    gl2_coset_level,
    gsp4_coset,
    kronecker,
    principal_form,
    reduce,
    s_d,
)
from .scalars import QuadExtScalar, chebyshev_u, field_ops, series_div, valuation
from .sk import (
    CoefficientTable,
    EllipticHecke,
    SKLiftSpec,
    Verdict,
    average_coeff,
    detect_asymptotic,
    detect_sk,
    generate_table,
    hecke_power,
    maass_check,
    sk_coefficient,
    sk_coefficient_bessel,
    sk_coefficient_dks,
)

__version__ = "0.1.0"
