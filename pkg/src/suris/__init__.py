"""Suris standard map: integrable separatrix, Melnikov lobe areas, and the
extended-precision symmetric-orbit finder that measures them directly."""

from .numerics import (
    DEFAULT_DIGITS,
    MIN_DIGITS,
    DomainError,
    GammaEval,
    InternalCheckError,
    area_asymptotic_delta,
    dilog,
    ellip_k,
    gamma_asymptotic,
    gamma_elliptic,
    gamma_eval,
    gamma_series,
    gamma0_series,
    gamma0_tsum,
    h_inv,
    h_inv_complement,
    h_map,
    nu_from_delta,
)
from .surismap import (
    Z_A,
    Z_B,
    MapParams,
    PhasePoint,
    canonical_theta,
    d2potential,
    dpotential,
    gen_action,
    invariant,
    jacobian,
    map_forward,
    map_forward_lift,
    map_inverse,
    map_inverse_lift,
    potential,
    reversor,
    symmetry_residual,
)
from .connection import chi_minus, chi_plus, h_conn, h_conn_inv, h_conn_pow
from .melnikov import (
    MelnikovProfile,
    anti_integrable_area,
    critical_points,
    lobe_area_first_order,
    melnikov_L,
    melnikov_d1,
    melnikov_d2,
    melnikov_profile,
)
from .heteroclinic import (
    BisectionFailed,
    FinderError,
    FinderOptions,
    LobeAreaRecord,
    MultiplierTooLarge,
    NoSignChange,
    SymmetricOrbit,
    TailDivergence,
    find_symmetric_orbit,
    lobe_area_numeric,
    saddle_multiplier,
    unstable_direction,
)

__version__ = "0.1.0"
