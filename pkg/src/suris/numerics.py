"""Extended-precision special functions behind the lobe-area predictions.

Everything runs on mpmath's global context: callers choose a precision with
mp.workdps (the CLI does this from --digits) and functions return values
rounded to that ambient context. Where a known cancellation would eat digits
(the alternating q-series near nu = 1), the function elevates internally and
rounds back down on return, so the contract stays "correct to the ambient
precision" without the caller having to know.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from mpmath import mp, mpf

DEFAULT_DIGITS = 40
MIN_DIGITS = 30


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class InternalCheckError(RuntimeError):
    """A built-in cross-check failed; indicates an implementation bug, not bad input."""


def resolve_digits(digits=None) -> int:
    """Precision to run at: explicit argument, then SURIS_DIGITS, then the default."""
    if digits is None:
        env = os.environ.get("SURIS_DIGITS")
        digits = int(env) if env else DEFAULT_DIGITS
    digits = int(digits)
    if digits < MIN_DIGITS:
        raise DomainError(f"precision must be at least {MIN_DIGITS} digits, got {digits}")
    return digits


def _tol():
    return mpf(10) ** (-mp.dps)


def nu_from_delta(delta) -> mpf:
    """Multiplier parameter nu = (1 - sqrt(delta))/(1 + sqrt(delta))."""
    d = mpf(delta)
    if not 0 < d < 1:
        raise DomainError(f"delta must lie in (0,1), got {d}")
    s = mp.sqrt(d)
    return (1 - s) / (1 + s)


def ellip_k(x) -> mpf:
    """Complete elliptic integral (2/pi) int_0^{pi/2} dt/sqrt(1 - x sin^2 t).

    Normalized so K(0) = 1. Evaluated by the AGM, K(x) = 1/agm(1, sqrt(1-x)),
    which converges quadratically at any precision. For x very close to 1 the
    subtraction 1 - x costs digits; internal callers avoid it by carrying the
    complement (see _ellip_k_complement).
    """
    x = mpf(x)
    if x < 0 or x >= 1:
        raise DomainError(f"elliptic modulus must lie in [0,1), got {x}")
    return 1 / mp.agm(1, mp.sqrt(1 - x))


def _ellip_k_complement(y):
    # K(1 - y) without ever forming 1 - y; exact for tiny y
    return 1 / mp.agm(1, mp.sqrt(y))


def h_map(x) -> mpf:
    """The nome as a function of the modulus: H(x) = exp(-pi K(1-x)/K(x)).

    Increasing bijection of (0,1) with H(1/2) = e^{-pi} and H(x) ~ x/16 as
    x -> 0. Satisfies log H(x) log H(1-x) = pi^2.
    """
    x = mpf(x)
    if not 0 < x < 1:
        raise DomainError(f"h_map argument must lie in (0,1), got {x}")
    return mp.exp(-mp.pi * _ellip_k_complement(x) / ellip_k(x))


def _h_inv_small(nu):
    """Solve H(x) = nu for nu <= e^{-pi} (so x <= 1/2), on log-log scale.

    False position with the Illinois modification: keeps a guaranteed bracket
    (H is monotone) while converging superlinearly, which matters when the
    solution is thousands of orders of magnitude below 1. Seeded from
    H(x) ~ x/16, so the initial bracket is one factor of e wide.
    """
    target = mp.log(nu)

    def f(t):
        return mp.log(h_map(mp.exp(t))) - target

    # H(x) >= x/16 on (0, 1/2], so x* <= 16 nu and t_hi has f >= 0
    t_hi = min(mp.log(16 * nu), mp.log(mpf(1) / 2))
    f_hi = f(t_hi)
    if f_hi == 0:
        return mp.exp(t_hi)
    t_lo = t_hi - 1
    f_lo = f(t_lo)
    expands = 0
    while f_lo > 0:
        t_hi, f_hi = t_lo, f_lo
        t_lo -= 1
        f_lo = f(t_lo)
        expands += 1
        if expands > 60:
            raise InternalCheckError("h_inv bracket expansion ran away")

    stop = mpf(10) ** (2 - mp.dps)
    side = 0
    for _ in range(40 * 30 + mp.dps * 4):
        tm = (t_lo * f_hi - t_hi * f_lo) / (f_hi - f_lo)
        if not t_lo < tm < t_hi:
            tm = (t_lo + t_hi) / 2
        fm = f(tm)
        if abs(fm) <= stop * max(1, abs(target)) or (t_hi - t_lo) <= stop:
            return mp.exp(tm)
        if fm < 0:
            t_lo, f_lo = tm, fm
            if side == -1:
                f_hi /= 2
            side = -1
        else:
            t_hi, f_hi = tm, fm
            if side == 1:
                f_lo /= 2
            side = 1
    raise InternalCheckError("h_inv failed to converge")


def h_inv(nu) -> mpf:
    """Inverse of h_map, bracketed search guaranteed by monotonicity.

    Above the symmetric point e^{-pi} the solution is found on the small side
    through the functional equation log H(x) log H(1-x) = pi^2, which keeps
    the complement 1 - x exact; see h_inv_complement when you need 1 - x
    itself without cancellation.
    """
    nu = mpf(nu)
    if not 0 < nu < 1:
        raise DomainError(f"h_inv argument must lie in (0,1), got {nu}")
    if nu > mp.exp(-mp.pi):
        return 1 - h_inv_complement(nu)
    return _h_inv_small(nu)


def h_inv_complement(nu) -> mpf:
    """Return 1 - h_inv(nu) computed directly (no cancellation for nu near 1)."""
    nu = mpf(nu)
    if not 0 < nu < 1:
        raise DomainError(f"h_inv argument must lie in (0,1), got {nu}")
    if nu > mp.exp(-mp.pi):
        nu_hat = mp.exp(mp.pi ** 2 / mp.log(nu))
        return _h_inv_small(nu_hat)
    return 1 - _h_inv_small(nu)


def _li2(y):
    # real dilogarithm Li2(y), y <= 1; argument reduced until |y| <= 1/2
    if y == 1:
        return mp.pi ** 2 / 6
    if y < -1:
        return -_li2(1 / y) - mp.pi ** 2 / 6 - mp.log(-y) ** 2 / 2
    if y < mpf("-0.5"):
        # Landen transform into (1/3, 1/2]
        return -_li2(y / (y - 1)) - mp.log(1 - y) ** 2 / 2
    if y > mpf("0.5"):
        return mp.pi ** 2 / 6 - mp.log(y) * mp.log(1 - y) - _li2(1 - y)
    tol = _tol()
    s = mpf(0)
    p = mpf(1)
    k = 0
    while True:
        k += 1
        p *= y
        s += p / k ** 2
        if abs(p) / k ** 2 <= tol * (1 + abs(s)):
            return s


def dilog(x) -> mpf:
    """The dilogarithm in the convention int_1^x log(z)/(1-z) dz, equal to
    Li2(1 - x). Real branch, defined for x > 0; dilog(1) = 0, dilog(0+) = pi^2/6,
    dilog(2) = -pi^2/12."""
    x = mpf(x)
    if x <= 0:
        raise DomainError(f"dilog needs x > 0, got {x}")
    return _li2(1 - x)


def _alternating_guard(nu):
    # partial sums of the alternating q-series stay O(1) while the total is
    # ~ exp(-pi^2/L), L = log(1/nu): that quotient is the digit loss
    L = float(mp.log(1 / nu))
    return int(math.ceil(math.pi ** 2 / (L * math.log(10)))) + 12


def _gamma_series_core(nu):
    tol = _tol()
    tot = mpf(1)
    p = mpf(1)
    k = 0
    sign = 1
    while True:
        k += 1
        p *= nu
        sign = -sign
        tot += sign * 8 * k * p / (1 + p)
        if 8 * k * p <= tol * (1 + abs(tot)):
            return tot, k


def gamma_series(nu) -> mpf:
    """Gamma(nu) = 1 + 8 sum_k (-1)^k k nu^k/(1 + nu^k), the lobe-area series.

    Strictly positive on [0,1). Internally elevated near nu = 1 where the
    alternating sum cancels almost completely; the elliptic route
    (gamma_elliptic) is far cheaper there and agrees to all digits.
    """
    nu = mpf(nu)
    if nu < 0 or nu >= 1:
        raise DomainError(f"gamma_series needs 0 <= nu < 1, got {nu}")
    if nu == 0:
        return mpf(1)
    with mp.extradps(_alternating_guard(nu)):
        tot, _ = _gamma_series_core(nu)
    return +tot


def gamma0_series(nu) -> mpf:
    """Gamma0(nu) = 1 + 16 sum_k (-1)^k k^3 nu^k/(1 - nu^k) (rearranged form)."""
    nu = mpf(nu)
    if nu < 0 or nu >= 1:
        raise DomainError(f"gamma0_series needs 0 <= nu < 1, got {nu}")
    if nu == 0:
        return mpf(1)
    # cancellation is twice as deep as for gamma_series (the total ~ exp(-2pi^2/L))
    with mp.extradps(2 * _alternating_guard(nu)):
        tol = _tol()
        tot = mpf(1)
        p = mpf(1)
        k = 0
        sign = 1
        while True:
            k += 1
            p *= nu
            sign = -sign
            tot += sign * 16 * k ** 3 * p / (1 - p)
            if 16 * k ** 3 * p / (1 - p) <= tol * (1 + abs(tot)):
                break
    return +tot


def gamma0_tsum(nu) -> mpf:
    """Gamma0 as the direct orbit-sum form 1 - 16 sum_{t>=1} (1 - 4 nu^t + nu^{2t}) nu^t/(1+nu^t)^4.

    Kept as an independent route; must agree with gamma0_series.
    """
    nu = mpf(nu)
    if nu < 0 or nu >= 1:
        raise DomainError(f"gamma0_tsum needs 0 <= nu < 1, got {nu}")
    if nu == 0:
        return mpf(1)
    with mp.extradps(2 * _alternating_guard(nu)):
        tol = _tol()
        tot = mpf(1)
        p = mpf(1)
        while True:
            p *= nu
            tot -= 16 * (1 - 4 * p + p * p) * p / (1 + p) ** 4
            # envelope: the numerator factor can vanish (at nu^t = 2 - sqrt 3),
            # so the stop test uses a bound, not the realized term
            if 16 * p * (1 + 4 * p + p * p) <= tol * (1 + abs(tot)):
                break
    return +tot


def gamma_elliptic(nu) -> mpf:
    """Gamma through the identity Gamma(H(x)) = K(x)^2 (1 - x).

    The complement 1 - x is obtained directly (functional equation) when nu is
    past the symmetric point, so the route stays fully accurate as nu -> 1
    where the series route is hopeless.
    """
    nu = mpf(nu)
    if not 0 < nu < 1:
        raise DomainError(f"gamma_elliptic needs 0 < nu < 1, got {nu}")
    with mp.extradps(10):
        if nu > mp.exp(-mp.pi):
            y = h_inv_complement(nu)
            g = _ellip_k_complement(y) ** 2 * y
        else:
            x = _h_inv_small(nu)
            g = ellip_k(x) ** 2 * (1 - x)
    return +g


def gamma_asymptotic(nu) -> mpf:
    """Leading behavior of Gamma as nu -> 1: (4 pi/L)^2 exp(-pi^2/L), L = log(1/nu)."""
    nu = mpf(nu)
    if not 0 < nu < 1:
        raise DomainError(f"gamma_asymptotic needs 0 < nu < 1, got {nu}")
    L = mp.log(1 / nu)
    return (4 * mp.pi / L) ** 2 * mp.exp(-mp.pi ** 2 / L)


def area_asymptotic_delta(delta, eps) -> mpf:
    """Small-delta area form eps (4 pi^2/delta) exp(-pi^2/(2 sqrt(delta))).

    The exponent argument 2 sqrt(delta) only approximates log(1/nu) at finite
    delta (off by a few percent already at delta = 0.1), so this form degrades
    much sooner than gamma_asymptotic in nu.
    """
    d = mpf(delta)
    e = mpf(eps)
    if not 0 < d < 1:
        raise DomainError(f"delta must lie in (0,1), got {d}")
    if e < 0:
        raise DomainError(f"eps must be >= 0, got {e}")
    return e * (4 * mp.pi ** 2 / d) * mp.exp(-mp.pi ** 2 / (2 * mp.sqrt(d)))


@dataclass(frozen=True)
class GammaEval:
    """One nu evaluated by all three routes, with the series term count."""

    nu: mpf
    gamma: mpf
    gamma_elliptic: mpf
    gamma_asymptotic: mpf
    terms_used: int


def gamma_eval(nu) -> GammaEval:
    """Evaluate Gamma by series and elliptic routes and cross-check them."""
    nu = mpf(nu)
    if not 0 < nu < 1:
        raise DomainError(f"gamma_eval needs 0 < nu < 1, got {nu}")
    with mp.extradps(_alternating_guard(nu)):
        tot, terms = _gamma_series_core(nu)
    g = +tot
    ge = gamma_elliptic(nu)
    ga = gamma_asymptotic(nu)
    if not g > 0:
        raise InternalCheckError(f"gamma_series({nu}) not positive: {g}")
    if abs(g - ge) > mpf(10) ** (6 - mp.dps) * abs(g):
        raise InternalCheckError(f"gamma routes disagree at nu={nu}: {g} vs {ge}")
    return GammaEval(nu=nu, gamma=g, gamma_elliptic=ge, gamma_asymptotic=ga, terms_used=terms)
