"""First-order separatrix splitting for the cos^2 perturbation.

The splitting profile L(theta) sums the perturbation along the connection
orbit through theta. Each term has a closed rational form alpha_t in
z = tan(pi theta / 2), which also gives exact term-wise derivatives; direct
iteration of the connection map is kept in the tests as the independent
route. The gap L(0) - L(theta_p) between the two principal critical values
reproduces the series Gamma(nu) exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

from .numerics import DomainError, InternalCheckError, dilog, gamma_series
from .surismap import MapParams, potential


def _z_of_theta(theta):
    # tan(pi theta / 2) via half-angle sinpi/cospi, exact at theta = 0
    th = mpf(theta)
    return mp.sinpi(th / 2) / mp.cospi(th / 2)


def _check_interior(theta, endpoint_zero):
    th = mpf(theta)
    if abs(th) >= mpf(1) / 2:
        if endpoint_zero and abs(abs(th) - mpf(1) / 2) <= mpf(10) ** (-(mp.dps // 2)):
            return None
        raise DomainError(f"melnikov profile is defined on the open interval, got {th}")
    return th


def alpha_term(nu, t: int, z) -> mpf:
    """Perturbation value at the t-th connection image:
    alpha_t(z) = 4 nu^{2t} (1-z^2)^2 / ((1+z)^2 + nu^{2t} (1-z)^2)^2."""
    mu = mpf(nu) ** (2 * t)
    u = 1 - z * z
    den = (1 + z) ** 2 + mu * (1 - z) ** 2
    return 4 * mu * u * u / den ** 2


def _alpha_d1(nu, t, z):
    mu = mpf(nu) ** (2 * t)
    u = 1 - z * z
    up = -2 * z
    den = (1 + z) ** 2 + mu * (1 - z) ** 2
    dp = 2 * (1 + z) - 2 * mu * (1 - z)
    return 8 * mu * u * (up * den - u * dp) / den ** 3


def _alpha_d2(nu, t, z):
    mu = mpf(nu) ** (2 * t)
    u = 1 - z * z
    up = -2 * z
    den = (1 + z) ** 2 + mu * (1 - z) ** 2
    dp = 2 * (1 + z) - 2 * mu * (1 - z)
    dpp = 2 + 2 * mu
    e = u * (up * den - u * dp)
    ep = up * (up * den - u * dp) + u * (-2 * den - u * dpp)
    return 8 * mu * (ep * den - 3 * e * dp) / den ** 4


def melnikov_L(nu, theta, endpoint_zero: bool = False) -> mpf:
    """Two-sided splitting sum L(theta) = sum_t alpha_t(z(theta)).

    Terms are nonnegative and decay like nu^{2|t|} on each side, so the
    realized term is a safe stopping signal. At theta = +-1/2 every term
    vanishes; pass endpoint_zero=True to get that continuous extension
    instead of a domain error.
    """
    n = mpf(nu)
    if not 0 < n < 1:
        raise DomainError(f"nu must lie in (0,1), got {n}")
    th = _check_interior(theta, endpoint_zero)
    if th is None:
        return mpf(0)
    z = _z_of_theta(th)
    tol = mpf(10) ** (-mp.dps)
    total = alpha_term(n, 0, z)
    for direction in (1, -1):
        t = 0
        while True:
            t += direction
            term = alpha_term(n, t, z)
            total += term
            if term <= tol * (1 + total):
                break
    return total


def _t_range(nu):
    # |t| beyond which nu^{2|t|} is below tolerance regardless of z
    digits_needed = mp.dps + 8
    return int(mp.ceil(digits_needed * mp.log(10) / (2 * mp.log(1 / nu)))) + 8


def melnikov_d1(nu, theta) -> mpf:
    """Term-wise derivative of the splitting sum, chain-ruled through z(theta)."""
    n = mpf(nu)
    if not 0 < n < 1:
        raise DomainError(f"nu must lie in (0,1), got {n}")
    th = _check_interior(theta, False)
    z = _z_of_theta(th)
    tmax = _t_range(n)
    s1 = mpf(0)
    for t in range(-tmax, tmax + 1):
        s1 += _alpha_d1(n, t, z)
    return s1 * (mp.pi / 2) * (1 + z * z)


def melnikov_d2(nu, theta) -> mpf:
    """Term-wise second derivative of the splitting sum."""
    n = mpf(nu)
    if not 0 < n < 1:
        raise DomainError(f"nu must lie in (0,1), got {n}")
    th = _check_interior(theta, False)
    z = _z_of_theta(th)
    tmax = _t_range(n)
    s1 = mpf(0)
    s2 = mpf(0)
    for t in range(-tmax, tmax + 1):
        s1 += _alpha_d1(n, t, z)
        s2 += _alpha_d2(n, t, z)
    dz = (mp.pi / 2) * (1 + z * z)
    d2z = (mp.pi ** 2 / 2) * z * (1 + z * z)
    return s2 * dz * dz + s1 * d2z


def critical_points(nu):
    """The two principal critical angles of L: the maximum theta_q = 0 and the
    minimum theta_p = (2/pi) arctan((1 - sqrt(nu))/(1 + sqrt(nu))).

    A Newton polish from the closed form guards against transcription errors;
    disagreement or wrong curvature signs raises InternalCheckError.
    """
    n = mpf(nu)
    if not 0 < n < 1:
        raise DomainError(f"nu must lie in (0,1), got {n}")
    theta_q = mpf(0)
    rn = mp.sqrt(n)
    theta_p = (2 / mp.pi) * mp.atan((1 - rn) / (1 + rn))
    check_tol = mpf(10) ** (2 - mp.dps)
    polished = theta_p
    for _ in range(3):
        polished -= melnikov_d1(n, polished) / melnikov_d2(n, polished)
    if abs(polished - theta_p) > check_tol:
        raise InternalCheckError(f"theta_p polish drifted from closed form: {polished} vs {theta_p}")
    if abs(melnikov_d1(n, theta_p)) > check_tol or abs(melnikov_d1(n, theta_q)) > check_tol:
        raise InternalCheckError("critical point gradient check failed")
    if not melnikov_d2(n, theta_q) < 0 < melnikov_d2(n, theta_p):
        raise InternalCheckError("critical point curvature signs are wrong")
    return theta_q, theta_p


@dataclass(frozen=True)
class MelnikovProfile:
    nu: mpf
    thetas: tuple
    l_values: tuple
    theta_q: mpf
    theta_p: mpf
    l_q: mpf
    l_p: mpf
    gap: mpf


def melnikov_profile(nu, n_points: int = 101) -> MelnikovProfile:
    """Sample L on an interior grid and attach the critical data.

    The grid is symmetric about 0 and stays strictly inside (-1/2, 1/2).
    """
    n = mpf(nu)
    theta_q, theta_p = critical_points(n)
    thetas = tuple(-mpf(1) / 2 + mpf(i + 1) / (n_points + 1) for i in range(n_points))
    l_values = tuple(melnikov_L(n, th) for th in thetas)
    l_q = melnikov_L(n, theta_q)
    l_p = melnikov_L(n, theta_p)
    return MelnikovProfile(
        nu=n, thetas=thetas, l_values=l_values,
        theta_q=theta_q, theta_p=theta_p, l_q=l_q, l_p=l_p, gap=l_q - l_p,
    )


def lobe_area_first_order(params: MapParams) -> mpf:
    """First-order turnstile area eps (L(theta_q) - L(theta_p)) = eps Gamma(nu)."""
    theta_q, theta_p = critical_points(params.nu)
    return params.eps * (melnikov_L(params.nu, theta_q) - melnikov_L(params.nu, theta_p))


def anti_integrable_area(params: MapParams) -> mpf:
    """Large-eps limit of the lobe area:
    eps - 1/4 - (1/pi^2)(dilog(1+delta) - dilog(1-delta)).

    The dilog bracket equals pi^2 V(1/2), so the area is also
    eps - 1/4 - V(1/2); both routes are kept in the tests.
    """
    d = params.delta
    bracket = (dilog(1 + d) - dilog(1 - d)) / mp.pi ** 2
    return params.eps - mpf(1) / 4 - bracket


def _gap_vs_gamma(nu) -> mpf:
    # residual of the gap identity; exposed for diagnostics
    theta_q, theta_p = critical_points(nu)
    gap = melnikov_L(nu, theta_q) - melnikov_L(nu, theta_p)
    return gap - gamma_series(nu)
