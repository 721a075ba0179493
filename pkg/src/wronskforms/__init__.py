"""Exact q-series, character Wronskians and the modular forms they produce.

The usual entry points::

    from wronskforms import Family, f_form, decompose, check_zero_location
    res = f_form(Family.affine(5))
    dec = decompose(res.normalized_f, res.f_weight)
    check_zero_location(dec.g)
"""

from .characters import (
    AFFINE_IDENTITY_READING,
    VIRASORO_SIGN_RULE,
    AffineCharSpec,
    IdentityReport,
    VanishingClassification,
    VirasoroCharSpec,
    affine_basis_specs,
    affine_char,
    affine_theta,
    classify_vanishing_affine,
    classify_vanishing_virasoro,
    integral_power_modules,
    solve_almost_linear_dependence,
    verify_affine_identity,
    verify_jacobi_rearrangement,
    verify_virasoro_identity,
    virasoro_basis_specs,
    virasoro_char,
)
from .errors import *  # noqa: F401,F403
from .modforms import (
    Decomposition,
    JPolynomial,
    bernoulli,
    decompose,
    delta_form,
    e2m3,
    eisenstein,
    j_function,
    jacobi_moment,
    weight_exponents,
)
from .modp import (
    CongruenceReport,
    check_f_integrality,
    check_hasse_conjecture,
    check_jacobi_moment_congruence,
    check_theta_congruence,
    congruent_mod,
    is_p_integral,
    p_valuation,
    probe_w_congruence_mod_p2,
)
from .qseries import (
    QSeries,
    divide_by_eta_power,
    eta_power,
    euler_product_power,
    invert,
    mul,
    ramanujan_derive,
)
from .roots import RootReport, check_zero_location, is_squarefree, isolate_real_roots, refine_root
from .wronskian import (
    Family,
    WronskianResult,
    determinant,
    eta_exponent,
    f_form,
    leibniz_determinant,
    verify_eta_closed_form,
)

__version__ = "0.1.0"
