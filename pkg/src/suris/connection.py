"""Dynamics along the saddle connection: the interval diffeomorphism h and
the two separatrix graphs chi+-.

h is pinned to the right-moving orientation, h(theta) > theta with
h'(-1/2) = 1/nu (unstable end) and h'(1/2) = nu (stable end). The arctan
increment form used here has denominators 1 +- sqrt(delta) sin(pi theta),
strictly positive for delta < 1, so there is no singularity management.
"""

from __future__ import annotations

from mpmath import mp, mpf

from .numerics import DomainError
from .surismap import MapParams


def _check_theta(theta) -> mpf:
    th = mpf(theta)
    # allow roundoff-scale overshoot at the endpoints
    if abs(th) > mpf(1) / 2 + mpf(10) ** (-(mp.dps // 2)):
        raise DomainError(f"connection coordinate must lie in [-1/2, 1/2], got {th}")
    return th


def _sqrt_delta(nu) -> mpf:
    n = mpf(nu)
    if not 0 < n < 1:
        raise DomainError(f"nu must lie in (0,1), got {n}")
    return (1 - n) / (1 + n)


def h_conn(nu, theta) -> mpf:
    """Right-moving connection map h(theta) = theta + (2/pi) arctan(sqrt(delta) cos(pi theta)/(1 + sqrt(delta) sin(pi theta)))."""
    th = _check_theta(theta)
    s = _sqrt_delta(nu)
    return th + (2 / mp.pi) * mp.atan(s * mp.cospi(th) / (1 + s * mp.sinpi(th)))


def h_conn_inv(nu, theta) -> mpf:
    """Inverse connection map; same increment form with the sign of sqrt(delta) flipped,
    which is h with parameter 1/nu."""
    th = _check_theta(theta)
    s = _sqrt_delta(nu)
    return th - (2 / mp.pi) * mp.atan(s * mp.cospi(th) / (1 - s * mp.sinpi(th)))


def h_conn_pow(nu, t: int, theta) -> mpf:
    """h^t in a single evaluation: the family is closed under composition,
    with h^t given by the increment form at parameter nu^t (t may be negative)."""
    th = _check_theta(theta)
    n = mpf(nu)
    if not 0 < n < 1:
        raise DomainError(f"nu must lie in (0,1), got {n}")
    if t == 0:
        return th
    p = n ** t
    s = (1 - p) / (1 + p)  # in (-1, 1) for either sign of t
    return th + (2 / mp.pi) * mp.atan(s * mp.cospi(th) / (1 + s * mp.sinpi(th)))


def chi_plus(params: MapParams, theta) -> mpf:
    """Upper separatrix graph chi+(theta) = theta - h^{-1}(theta) >= 0; zero at +-1/2."""
    th = _check_theta(theta)
    return th - h_conn_inv(params.nu, th)


def chi_minus(params: MapParams, theta) -> mpf:
    """Lower separatrix graph chi-(theta) = theta - h(theta) <= 0; zero at +-1/2."""
    th = _check_theta(theta)
    return th - h_conn(params.nu, th)
