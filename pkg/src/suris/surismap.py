"""The integrable map, its cos^2 perturbation, actions, and the reversor.

Angles are 1-periodic for the dynamics, but the canonical chart is the
width-2 window [-1/2, 3/2) so that both saddles (+-1/2, 0) stay distinct
interior points; reduction is therefore mod 2. Action sums always work on
lifted (unwrapped) angle sequences, never on chart representatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from mpmath import mp, mpf

from .numerics import DomainError, nu_from_delta


@dataclass(frozen=True)
class MapParams:
    """Map parameters (delta, eps) with the derived multiplier parameter nu.

    Construct inside the working precision context; values are converted to
    mpf once and frozen. Pass decimal strings to keep inputs exact.
    """

    delta: object
    eps: object = 0
    nu: mpf = field(init=False)

    def __post_init__(self):
        d = mpf(self.delta)
        e = mpf(self.eps)
        if not 0 < d < 1:
            raise DomainError(f"delta must lie in (0,1), got {d}")
        if e < 0:
            raise DomainError(f"eps must be >= 0, got {e}")
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "eps", e)
        object.__setattr__(self, "nu", nu_from_delta(d))


@dataclass(frozen=True)
class PhasePoint:
    theta: object
    r: object

    def __post_init__(self):
        object.__setattr__(self, "theta", mpf(self.theta))
        object.__setattr__(self, "r", mpf(self.r))


# the two saddles; exact binary values, valid at any precision
Z_A = PhasePoint(mpf("-0.5"), 0)
Z_B = PhasePoint(mpf("0.5"), 0)


def canonical_theta(theta) -> mpf:
    """Canonical angle representative in [-1/2, 3/2); idempotent."""
    th = mpf(theta)
    return th - 2 * mp.floor((th + mpf(1) / 2) / 2)


def potential(params: MapParams, theta) -> mpf:
    """Integrable potential V(theta) = (1/pi^2) sum_k (-delta)^k (1 - cos 2 pi k theta)/k^2.

    Even, 1-periodic, V(0) = 0. The stop test uses the envelope 2|delta|^k/k^2:
    individual terms vanish identically whenever 2 k theta is an integer, so
    the realized term is not a safe truncation signal.
    """
    d = params.delta
    th = mpf(theta)
    tol = mpf(10) ** (-mp.dps)
    s = mpf(0)
    p = mpf(1)
    k = 0
    while True:
        k += 1
        p *= -d
        s += p * (1 - mp.cospi(2 * k * th)) / k ** 2
        if 2 * abs(p) / k ** 2 <= tol * (1 + abs(s)):
            break
    return s / mp.pi ** 2


def dpotential(params: MapParams, theta, perturbed: bool = True) -> mpf:
    """V'(theta) = -(2/pi) arctan(delta sin 2 pi theta / (1 + delta cos 2 pi theta)),
    plus eps P'(theta) = -eps pi sin 2 pi theta when perturbed is set."""
    d = params.delta
    th = mpf(theta)
    s2 = mp.sinpi(2 * th)
    out = -(2 / mp.pi) * mp.atan(d * s2 / (1 + d * mp.cospi(2 * th)))
    if perturbed:
        out -= params.eps * mp.pi * s2
    return out


def d2potential(params: MapParams, theta, perturbed: bool = True) -> mpf:
    """Second derivative of the (optionally perturbed) potential."""
    d = params.delta
    th = mpf(theta)
    c2 = mp.cospi(2 * th)
    out = -4 * d * (c2 + d) / (1 + 2 * d * c2 + d * d)
    if perturbed:
        out -= params.eps * 2 * mp.pi ** 2 * c2
    return out


def map_forward_lift(params: MapParams, theta, r):
    """One forward step on the lift (no angle reduction)."""
    rp = mpf(r) + dpotential(params, theta)
    return mpf(theta) + rp, rp


def map_forward(params: MapParams, z: PhasePoint) -> PhasePoint:
    th, rp = map_forward_lift(params, z.theta, z.r)
    return PhasePoint(canonical_theta(th), rp)


def map_inverse_lift(params: MapParams, theta, r):
    thp = mpf(theta) - mpf(r)
    return thp, mpf(r) - dpotential(params, thp)


def map_inverse(params: MapParams, z: PhasePoint) -> PhasePoint:
    th, rp = map_inverse_lift(params, z.theta, z.r)
    return PhasePoint(canonical_theta(th), rp)


def jacobian(params: MapParams, z: PhasePoint):
    """Differential [[1 + W'', 1], [W'', 1]] with W'' the full potential curvature."""
    w2 = d2potential(params, z.theta)
    return mp.matrix([[1 + w2, 1], [w2, 1]])


def invariant(params: MapParams, z: PhasePoint) -> mpf:
    """Conserved quantity of the unperturbed map: cos(pi r) + delta cos(pi(2 theta - r)).

    Only meaningful with eps = 0 semantics; the perturbed map does not
    conserve it.
    """
    return mp.cospi(z.r) + params.delta * mp.cospi(2 * z.theta - z.r)


def gen_action(params: MapParams, theta, theta_next) -> mpf:
    """Generating function S(theta, theta') = (theta' - theta)^2/2 + V(theta) + eps cos^2(pi theta).

    Arguments are lift coordinates; the quadratic term is wrong on chart
    representatives that differ by a period.
    """
    a = mpf(theta)
    b = mpf(theta_next)
    return (b - a) ** 2 / 2 + potential(params, a) + params.eps * mp.cospi(a) ** 2


def reversor(params: MapParams, z: PhasePoint) -> PhasePoint:
    """Reversing involution R(theta, r) = (-theta, r + V'(theta) + eps P'(theta)).

    Valid because the total potential is even; conjugates the map to its
    inverse and swaps the two saddles.
    """
    return PhasePoint(canonical_theta(-z.theta), z.r + dpotential(params, z.theta))


def symmetry_residual(params: MapParams, z: PhasePoint, line: str) -> mpf:
    """Signed residual whose zero set is the symmetry line.

    line "R" is the set theta = 0 (residual theta); line "fR" is r = 2 theta
    (residual r - 2 theta). Evaluated verbatim on the given coordinates, so
    feed lift coordinates when marching across the chart seam.
    """
    if line == "R":
        return z.theta
    if line == "fR":
        return z.r - 2 * z.theta
    raise DomainError(f"unknown symmetry line {line!r}, expected 'R' or 'fR'")
