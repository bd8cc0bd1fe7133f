"""Asymptotic growth rate of the average weight spectrum and its landmarks.

For a (c, d)-regular ensemble over GF(q) the normalized log of the average
weight distribution converges to

    omega(x) = H_q(x) + (c/d) * (delta(x) - ln q),

where H_q is the q-ary entropy with natural logs and delta(x) is the
infimum over a tilt parameter of a single-check exponent:

    delta(x) = inf_{xhat in (0,1)}  d * D(x || xhat) + rho(xhat),
    rho(xhat) = ln(1 + (q-1) * zhat**d),      zhat = 1 - q*xhat/(q-1).

The infimum is attained where a strictly increasing rational map zeta of
the tilt equals z = 1 - q*x/(q-1); that stationary condition is solved by
bisection.  Extended reals are first class here: delta and omega take the
value -inf on the unreachable weight range that appears for q = 2 and odd
d, and one-sided derivative limits at the domain endpoints are returned
as +/-inf where the slope diverges.

All logs are natural; x is the normalized weight in [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, ParameterError
from .gf import ORDER_LIMIT, _factor_prime_power

# Default absolute tolerance and iteration cap for bisection solves.
BISECT_TOL = 1e-12
BISECT_MAXIT = 200
# Width of the bands around x = 0 and x = x1 inside which evaluation
# returns the analytic endpoint/limit values instead of solving.
ENDPOINT_BAND = 1e-8

INF = float("inf")


def _check_q(q: int) -> None:
    if _factor_prime_power(q) is None or not 2 <= q <= ORDER_LIMIT:
        raise ParameterError(f"q must be a prime power in [2, {ORDER_LIMIT}], got {q}")


def _check_d(d: int, minimum: int = 3) -> None:
    if d < minimum:
        raise ParameterError(f"check degree must be at least {minimum}, got {d}")


def _check_c(c: int) -> None:
    if c < 1:
        raise ParameterError(f"variable degree must be at least 1, got {c}")


def _check_x(x: float) -> None:
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"normalized weight must lie in [0, 1], got {x}")


# ---------------------------------------------------------------------------
# Scalar building blocks
# ---------------------------------------------------------------------------


def entropy_q(x: float, q: int) -> float:
    """q-ary entropy with natural logs: H_q(0) = 0, H_q(1 - 1/q) = ln q."""
    _check_q(q)
    _check_x(x)
    out = x * math.log(q - 1.0) if q > 2 else 0.0
    if 0.0 < x < 1.0:
        out += -x * math.log(x) - (1.0 - x) * math.log(1.0 - x)
    return out


def divergence(x: float, y: float) -> float:
    """Binary KL divergence D(x || y) in nats; +inf when y is a mismatched endpoint."""
    _check_x(x)
    _check_x(y)
    out = 0.0
    if x > 0.0:
        if y == 0.0:
            return INF
        out += x * math.log(x / y)
    if x < 1.0:
        if y == 1.0:
            return INF
        out += (1.0 - x) * math.log((1.0 - x) / (1.0 - y))
    return out


def _powi(t: float, e: int) -> float:
    # Repeated multiplication, matching the kernel backends bit for bit.
    out = t
    for _ in range(e - 1):
        out *= t
    return 1.0 if e == 0 else out


def rho(q: int, d: int, x: float) -> float:
    """Single-check log moment at tilt x: ln(1 + (q-1) z**d), z = 1 - qx/(q-1).

    Continuous and finite on [0, 1] except for q = 2 with odd d, where the
    argument vanishes at x = 1 and the value is -inf.
    """
    _check_q(q)
    if d < 1:
        raise ParameterError(f"check degree must be at least 1, got {d}")
    _check_x(x)
    z = 1.0 - q * x / (q - 1.0)
    arg = 1.0 + (q - 1.0) * _powi(z, d)
    if arg <= 0.0:
        return -INF
    return math.log(arg)


def zeta(q: int, d: int, zhat: float) -> float:
    """Strictly increasing stationarity map of the tilt parameter.

    zeta(zhat) = (zhat + zhat**(d-1) + (q-2) zhat**d) / (1 + (q-1) zhat**d)
    on [-1/(q-1), 1], fixing 0 and 1.  For q = 2 and odd d the formula is
    0/0 at zhat = -1; the continuous extension 2/d - 1 is returned there.
    """
    _check_q(q)
    _check_d(d, 2)
    lo = -1.0 / (q - 1.0)
    if not lo - 1e-12 <= zhat <= 1.0 + 1e-12:
        raise DomainError(f"tilt {zhat} outside [{lo}, 1]")
    if q == 2 and d % 2 == 1 and zhat == -1.0:
        return 2.0 / d - 1.0
    tp = _powi(zhat, d - 1)
    td = tp * zhat
    num = zhat + tp + (q - 2.0) * td
    den = 1.0 + (q - 1.0) * td
    return num / den


def z_left_endpoint(q: int, d: int) -> float:
    """Smallest reachable value of zeta: 2/d - 1 for q = 2 with odd d, else -1/(q-1)."""
    _check_q(q)
    _check_d(d, 2)
    if q == 2 and d % 2 == 1:
        return 2.0 / d - 1.0
    return -1.0 / (q - 1.0)


def x1_right_endpoint(q: int, d: int) -> float:
    """Right edge of the reachable weight range: 1 - 1/d for q = 2 with odd d, else 1."""
    _check_q(q)
    _check_d(d, 2)
    if q == 2 and d % 2 == 1:
        return 1.0 - 1.0 / d
    return 1.0


def solve_zhat1(
    q: int, d: int, z: float, tol: float = BISECT_TOL, maxit: int = BISECT_MAXIT
) -> float:
    """Invert zeta: the unique tilt zhat1 in [-1/(q-1), 1] with zeta(zhat1) = z.

    Raises DomainError when z lies below the left endpoint of zeta's range
    (no tilt reaches it).  The returned root is clamped into the open
    bracket by tol/2 so downstream logs stay finite.
    """
    _check_q(q)
    _check_d(d)
    z1 = z_left_endpoint(q, d)
    if z > 1.0 + 1e-12 or z < z1 - 1e-12:
        raise DomainError(f"no tilt solves zeta = {z}; range is [{z1}, 1]")
    if z >= 1.0:
        return 1.0
    if z == 0.0:
        return 0.0
    lo = -1.0 / (q - 1.0)
    if z <= z1:
        return lo
    root = kernels.solve_zhat_batch(
        q, d, np.array([z], np.float64), lo, 1.0, tol, maxit
    )[0]
    return float(min(max(root, lo + tol / 2), 1.0 - tol / 2))


def _solve_zhat_grid(q: int, d: int, z: np.ndarray, tol: float = BISECT_TOL) -> np.ndarray:
    lo = -1.0 / (q - 1.0)
    roots = kernels.solve_zhat_batch(q, d, z, lo, 1.0, tol, BISECT_MAXIT)
    return np.clip(roots, lo + tol / 2, 1.0 - tol / 2)


def delta_two_arg(q: int, d: int, x: float, xhat: float) -> float:
    """The tilted single-check objective d * D(x || xhat) + rho(q, d, xhat).

    delta(x) is the infimum of this over xhat in (0, 1); evaluating on a
    grid of xhat values gives an independent upper envelope for tests.
    """
    _check_q(q)
    _check_d(d)
    _check_x(x)
    if not 0.0 < xhat < 1.0:
        raise DomainError(f"tilt weight must lie in (0, 1), got {xhat}")
    return d * divergence(x, xhat) + rho(q, d, xhat)


# ---------------------------------------------------------------------------
# Vectorized evaluation core
# ---------------------------------------------------------------------------


def _xlogx(x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    m = x > 0.0
    out[m] = x[m] * np.log(x[m])
    return out


def _entropy_vec(x: np.ndarray, q: int) -> np.ndarray:
    out = -_xlogx(x) - _xlogx(1.0 - x)
    if q > 2:
        out = out + x * math.log(q - 1.0)
    return out


def _divergence_vec(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # y strictly interior; x may touch 0 or 1.
    out = _xlogx(x) + _xlogx(1.0 - x)
    out -= x * np.log(y) + (1.0 - x) * np.log(1.0 - y)
    return out


def _powi_vec(t: np.ndarray, e: int) -> np.ndarray:
    if e == 0:
        return np.ones_like(t)
    out = t.copy()
    for _ in range(e - 1):
        out = out * t
    return out


def _region_masks(q: int, d: int, x: np.ndarray):
    x1 = x1_right_endpoint(q, d)
    near0 = x < ENDPOINT_BAND
    near1 = np.abs(x - x1) <= ENDPOINT_BAND
    beyond = (x > x1 + ENDPOINT_BAND) & ~near1
    interior = ~(near0 | near1 | beyond)
    return near0, near1, beyond, interior


def _delta_grid(q: int, d: int, x: np.ndarray, tol: float = BISECT_TOL):
    """Vector delta evaluation: returns (value, zhat1, xhat1, z) arrays."""
    qm1 = q - 1.0
    z = 1.0 - q * x / qm1
    value = np.empty_like(x)
    zh = np.empty_like(x)
    xh = np.empty_like(x)
    near0, near1, beyond, interior = _region_masks(q, d, x)

    value[near0] = math.log(q)
    zh[near0] = 1.0
    xh[near0] = 0.0

    if q == 2 and d % 2 == 1:
        x1_value = math.log(2 * d) - d * entropy_q(1.0 / d, 2)
        value[near1] = x1_value
        zh[near1] = -1.0
        xh[near1] = 1.0
        value[beyond] = -INF
        zh[beyond] = -1.0
        xh[beyond] = 1.0
    else:
        value[near1] = rho(q, d, 1.0)
        zh[near1] = -1.0 / qm1
        xh[near1] = 1.0

    if interior.any():
        zi = _solve_zhat_grid(q, d, z[interior], tol)
        xi_ = (qm1 / q) * (1.0 - zi)
        zd = _powi_vec(zi, d)
        rho_i = np.log(1.0 + qm1 * zd)
        value[interior] = d * _divergence_vec(x[interior], xi_) + rho_i
        zh[interior] = zi
        xh[interior] = xi_
    return value, zh, xh, z


def _domega_limit_zero(q: int, c: int, d: int) -> float:
    if c == 1:
        return INF
    if c == 2:
        return math.log(d - 1.0)
    return -INF


def _domega_limit_x1(q: int, c: int, d: int) -> float:
    if q == 2 and d % 2 == 0:
        if c == 1:
            return -INF
        if c == 2:
            return -math.log(d - 1.0)
        return INF
    return -INF


def _omega_grid(q: int, c: int, d: int, x: np.ndarray, tol: float = BISECT_TOL):
    """Vector omega evaluation: returns (omega, domega) arrays."""
    dval, zh, _, _ = _delta_grid(q, d, x, tol)
    om = _entropy_vec(x, q) + (c / d) * (dval - math.log(q))
    dom = np.empty_like(x)
    near0, near1, beyond, interior = _region_masks(q, d, x)
    dom[near0] = _domega_limit_zero(q, c, d)
    dom[near1] = _domega_limit_x1(q, c, d)
    dom[beyond] = math.nan
    if interior.any():
        qm1 = q - 1.0
        zi = zh[interior]
        zd1 = _powi_vec(zi, d - 1)
        dom[interior] = np.log((1.0 + qm1 * zi) / (1.0 - zi)) + (c - 1) * np.log(
            (1.0 - zd1) / (1.0 + qm1 * zd1)
        )
    return om, dom


# ---------------------------------------------------------------------------
# Public scalar API
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DeltaEval:
    """A delta evaluation with its minimizing tilt.

    zhat1/xhat1 are the stationary tilt in both coordinates; at the domain
    endpoints they carry the analytic limits.  value is -inf on the
    unreachable range (q = 2, odd d, x beyond 1 - 1/d).
    """

    x: float
    z: float
    zhat1: float
    xhat1: float
    value: float


@dataclass(frozen=True)
class GrowthPoint:
    """Growth rate and its derivative at one normalized weight."""

    x: float
    omega: float
    domega: float


def delta(q: int, d: int, x: float, tol: float = BISECT_TOL) -> DeltaEval:
    """Evaluate the inner infimum delta(x) with its minimizer.

    Within 1e-8 of x = 0 or of the right endpoint x1 the analytic
    endpoint/limit values are returned directly.
    """
    _check_q(q)
    _check_d(d)
    _check_x(x)
    xs = np.array([x], np.float64)
    value, zh, xh, z = _delta_grid(q, d, xs, tol)
    return DeltaEval(x=x, z=float(z[0]), zhat1=float(zh[0]), xhat1=float(xh[0]), value=float(value[0]))


def omega(q: int, c: int, d: int, x: float, tol: float = BISECT_TOL) -> GrowthPoint:
    """Growth rate omega(x) = H_q(x) + (c/d) (delta(x) - ln q), with derivative."""
    _check_q(q)
    _check_c(c)
    _check_d(d)
    _check_x(x)
    xs = np.array([x], np.float64)
    om, dom = _omega_grid(q, c, d, xs, tol)
    return GrowthPoint(x=x, omega=float(om[0]), domega=float(dom[0]))


def domega(q: int, c: int, d: int, x: float, tol: float = BISECT_TOL) -> float:
    """Derivative of the growth rate in the tilt form.

    d omega/dx = ln[(1 + (q-1) zhat1)/(1 - zhat1)]
               + (c-1) ln[(1 - zhat1**(d-1))/(1 + (q-1) zhat1**(d-1))].

    At x = 0 and x = x1 the one-sided limits are returned (extended reals);
    beyond x1, where omega is identically -inf, the result is nan.
    """
    return omega(q, c, d, x, tol).domega


def domega_alt(q: int, c: int, d: int, x: float, tol: float = BISECT_TOL) -> float:
    """Derivative of the growth rate in the weight form (equal to domega).

    d omega/dx = ln[(x/(1-x))**(c-1) * ((1-xhat1)/xhat1)**c] + ln(q-1).
    Only defined for x strictly inside (0, x1).
    """
    _check_c(c)
    x1 = x1_right_endpoint(q, d)
    if not ENDPOINT_BAND <= x <= x1 - ENDPOINT_BAND:
        raise DomainError(f"weight-form derivative needs x inside ({ENDPOINT_BAND}, {x1 - ENDPOINT_BAND})")
    xh = delta(q, d, x, tol).xhat1
    return (
        (c - 1) * math.log(x / (1.0 - x))
        + c * math.log((1.0 - xh) / xh)
        + math.log(q - 1.0)
    )


def omega_curve(q: int, c: int, d: int, xs, tol: float = BISECT_TOL):
    """Vectorized omega and its derivative over an array of weights in [0, 1]."""
    _check_q(q)
    _check_c(c)
    _check_d(d)
    xs = np.ascontiguousarray(xs, np.float64)
    if xs.size and (xs.min() < 0.0 or xs.max() > 1.0):
        raise DomainError("weights must lie in [0, 1]")
    return _omega_grid(q, c, d, xs, tol)


def delta_curve(q: int, d: int, xs, tol: float = BISECT_TOL):
    """Vectorized delta over an array of weights: (value, zhat1, xhat1) arrays."""
    _check_q(q)
    _check_d(d)
    xs = np.ascontiguousarray(xs, np.float64)
    if xs.size and (xs.min() < 0.0 or xs.max() > 1.0):
        raise DomainError("weights must lie in [0, 1]")
    value, zh, xh, _ = _delta_grid(q, d, xs, tol)
    return value, zh, xh


# ---------------------------------------------------------------------------
# Curvature polynomial and landmarks
# ---------------------------------------------------------------------------


def xi_coefficients(q: int, c: int, d: int) -> list[int]:
    """Integer coefficients (degree 0 upward) of the curvature sign polynomial.

    xi(t) = sum_{i=0}^{d-3} t**i - [(c-1)(d-1) - 1] (t**(d-2) + (q-1) t**(d-1))
          + (q-1) sum_{i=d}^{2d-3} t**i.

    The sign of the second derivative of omega at x is the opposite of the
    sign of xi at the stationary tilt zhat1(x): the tilt decreases in x and
    the remaining factors are positive.  xi(0) = 1, xi(1) = -q(c-2)(d-1).
    """
    _check_q(q)
    _check_c(c)
    _check_d(d)
    k = (c - 1) * (d - 1) - 1
    coef = [0] * (2 * d - 2)
    for i in range(d - 2):
        coef[i] = 1
    coef[d - 2] = -k
    coef[d - 1] = -(q - 1) * k
    for i in range(d, 2 * d - 2):
        coef[i] = q - 1
    return coef


def xi(q: int, c: int, d: int, zhat: float) -> float:
    """Evaluate the curvature sign polynomial at a tilt value."""
    coef = xi_coefficients(q, c, d)
    out = 0.0
    for a in reversed(coef):
        out = out * zhat + a
    return out


@dataclass(frozen=True)
class Landmarks:
    """Distinguished weights of the growth rate curve for one ensemble.

    x1 is the right edge of the reachable range.  For c >= 3: x3 is the
    unique stationary weight of omega in (0, 1 - 1/q), x0 the zero of omega
    in (x3, 1 - 1/q] (the normalized typical minimum distance), and x2 the
    inflection weight where convexity flips, located through the positive
    root zhat2 of the curvature polynomial.  zhat2_neg is the extra
    negative root present for q = 2 with even d (curvature flip mirrored
    beyond 1 - 1/q).  Fields are None in regimes where the landmark does
    not exist (c <= 2 concave cases and the c = d boundary is x0 = 1-1/q).
    """

    q: int
    c: int
    d: int
    x1: float
    x0: float | None
    x2: float | None
    x3: float | None
    zhat2: float | None
    zhat2_neg: float | None


def _bisect(f, lo: float, hi: float, tol: float = 0.0, maxit: int = BISECT_MAXIT) -> float:
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo < 0.0) == (fhi < 0.0):
        raise DomainError(f"bisection bracket [{lo}, {hi}] does not change sign")
    for _ in range(maxit):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi or (hi - lo) <= tol:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def landmarks(q: int, c: int, d: int, tol: float = BISECT_TOL) -> Landmarks:
    """Locate the landmark weights of omega for one ensemble.

    Bisection solves run to the floating point floor (within the iteration
    cap), well inside the advertised absolute tolerance.
    """
    _check_q(q)
    _check_c(c)
    _check_d(d)
    if c > d:
        raise ParameterError(f"variable degree c = {c} exceeds check degree d = {d}")
    x_sym = (q - 1.0) / q
    x1 = x1_right_endpoint(q, d)
    zhat2 = None
    zhat2_neg = None
    x2 = None
    x3 = None
    x0 = None

    wants_x2 = c >= 3 or (c == 2 and q >= 3)
    if wants_x2:
        poly = lambda t: xi(q, c, d, t)
        if c >= 3:
            zhat2 = _bisect(poly, 1e-12, 1.0 - 1e-12)
        else:
            lo, hi = 1e-12, 1.0 - 1e-6
            if (poly(lo) < 0.0) != (poly(hi) < 0.0):
                zhat2 = _bisect(poly, lo, hi)
            else:
                # xi(1) = 0 exactly when c = 2: the flip degenerates to the edge.
                zhat2 = 1.0
        x2 = (q - 1.0) * (1.0 - zeta(q, d, zhat2)) / q

    if q == 2 and d % 2 == 0 and c >= 3:
        zhat2_neg = _bisect(lambda t: xi(q, c, d, t), -1.0 + 1e-12, -1e-12)

    if c >= 3:
        dom_f = lambda t: omega(q, c, d, t, tol).domega
        x3 = _bisect(dom_f, 1e-6, x_sym - 1e-6)
        if c == d:
            x0 = x_sym
        else:
            om_f = lambda t: omega(q, c, d, t, tol).omega
            x0 = _bisect(om_f, x3, x_sym)

    return Landmarks(
        q=q, c=c, d=d, x1=x1, x0=x0, x2=x2, x3=x3, zhat2=zhat2, zhat2_neg=zhat2_neg
    )


def gv_threshold(q: int, r: float) -> float:
    """Gilbert-Varshamov weight: the x in (0, 1 - 1/q] with H_q(x) = r ln q.

    r is the redundancy fraction (1 - rate); r = 1 returns 1 - 1/q exactly.
    """
    _check_q(q)
    if not 0.0 < r <= 1.0:
        raise ParameterError(f"redundancy fraction must lie in (0, 1], got {r}")
    if r == 1.0:
        return (q - 1.0) / q
    target = r * math.log(q)
    return _bisect(
        lambda t: entropy_q(t, q) - target, 1e-300, (q - 1.0) / q
    )


__all__ = [
    "BISECT_MAXIT",
    "BISECT_TOL",
    "DeltaEval",
    "ENDPOINT_BAND",
    "GrowthPoint",
    "Landmarks",
    "delta",
    "delta_curve",
    "delta_two_arg",
    "divergence",
    "domega",
    "domega_alt",
    "entropy_q",
    "gv_threshold",
    "landmarks",
    "omega",
    "omega_curve",
    "rho",
    "solve_zhat1",
    "x1_right_endpoint",
    "xi",
    "xi_coefficients",
    "z_left_endpoint",
    "zeta",
]
