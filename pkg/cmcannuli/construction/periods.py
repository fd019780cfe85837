"""
Singular-endpoint quadrature for the periods sigma, Theta, Per and the
half-periods of the separated system, plus the level sets of Per.

Every integral here has the shape

    int_a^b f(x) / sqrt((x - a)(b - x)) dx

with f smooth on [a, b]. Substituting x = (a + b)/2 + (b - a)/2 cos(theta)
turns it into pi times the mean of f over Chebyshev-Gauss nodes, which
converges spectrally.
"""

import math
from collections.abc import Callable

import numpy as np
from loguru import logger
from numpy.polynomial.chebyshev import chebgauss
from scipy.integrate import quad
from scipy.optimize import brentq

from cmcannuli.config import settings
from cmcannuli.construction.parameters import (
    cubic,
    derive_constants,
    eval_h,
    quartic,
    validate_point,
)
from cmcannuli.models.exceptions import (
    BracketException,
    DomainException,
    QuadratureException,
)
from cmcannuli.models.parameters import ParamPoint
from cmcannuli.models.periods import PeriodData, STPeriods

CLOSED_FORM_WINDOW = 1e-8
DOUBLE_ROOT_CUTOFF = 1e-10


def chebyshev_mean(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float | None = None,
    n_start: int = 8,
    n_max: int = 2**16,
) -> float:
    """
    Mean of f over the Chebyshev-Gauss nodes of [a, b], refined by doubling
    the node count until two successive values agree.

    Parameters
    ----------
    f : Callable
        Vectorized integrand.
    a, b : float
        Interval end points.
    tol : float, optional
        Refinement tolerance, relative to max(1, |mean|).
    n_start, n_max : int
        First and largest node counts.

    Returns
    -------
    float
        (1/pi) int_a^b f(x) / sqrt((x - a)(b - x)) dx.
    """
    tol = settings.tol_quad if tol is None else tol

    center, half_width = 0.5 * (a + b), 0.5 * (b - a)

    def level(n: int) -> float:
        nodes, _ = chebgauss(n)
        return float(np.mean(f(center + half_width * nodes)))

    n = n_start
    previous = level(n)

    while n < n_max:
        n *= 2
        current = level(n)

        if abs(current - previous) <= tol * max(1.0, abs(current)):
            return current

        previous = current

    raise QuadratureException(
        f"Chebyshev quadrature on [{a}, {b}] did not reach {tol} with {n} nodes",
        estimate=previous,
    )


def _q_factor(p: ParamPoint, x):
    """
    The factor (x + beta gamma)(x + gamma/beta) = x^2 + 2B gamma x + gamma^2
    of p(x) that stays positive on [rho0, rho1].
    """
    B = derive_constants(p).B
    return x * x + 2.0 * B * p.gamma * x + p.gamma**2


def _closed_form_denominator(p: ParamPoint) -> float:
    g2 = p.gamma**2
    return math.sqrt(1.0 + (p.beta + 1.0 / p.beta) * g2 + g2 * g2)


def per_map(p: ParamPoint, tol: float | None = None) -> float:
    """
    Per = Theta/pi = (1/pi) int_{rho0}^{rho1} (x - 1/x)/sqrt(p(x)) dx, through
    its analytic extension to alpha, beta > 0 and the closed form at alpha = 1.
    """
    validate_point(p)

    if abs(p.alpha - 1.0) < CLOSED_FORM_WINDOW:
        return (1.0 - p.gamma**2) / _closed_form_denominator(p)

    data = quartic(p)

    def integrand(x):
        return (x - 1.0 / x) / np.sqrt(_q_factor(p, x))

    return chebyshev_mean(integrand, data.rho0, data.rho1, tol=tol)


def sigma_period(p: ParamPoint, tol: float | None = None) -> float:
    """
    sigma = int_{rho0}^{rho1} 2/sqrt(p(x)) dx, the half-period of x(v).
    """
    validate_point(p)

    if abs(p.alpha - 1.0) < CLOSED_FORM_WINDOW:
        return 2.0 * math.pi * p.gamma / _closed_form_denominator(p)

    data = quartic(p)

    def integrand(x):
        return 1.0 / np.sqrt(_q_factor(p, x))

    return 2.0 * math.pi * chebyshev_mean(integrand, data.rho0, data.rho1, tol=tol)


def period_data(p: ParamPoint, tol: float | None = None) -> PeriodData:
    per = per_map(p, tol=tol)
    return PeriodData(sigma=sigma_period(p, tol=tol), theta=math.pi * per, per=per)


def raw_per_integral(p: ParamPoint) -> float:
    """
    Per from the unregularized integral, using QUADPACK's algebraic endpoint
    weight. Independent of the Chebyshev rule; used for cross-validation.
    """
    validate_point(p)
    data = quartic(p)

    if data.rho0 == data.rho1:
        raise DomainException("The raw period integral needs alpha != 1")

    value, _ = quad(
        lambda x: (x - 1.0 / x) / math.sqrt(_q_factor(p, x)),
        data.rho0,
        data.rho1,
        weight="alg",
        wvar=(-0.5, -0.5),
        epsabs=1e-14,
        epsrel=1e-13,
        limit=200,
    )

    return value / math.pi


def gamma_level(
    c: float,
    alpha: float,
    beta: float,
    tol_root: float | None = None,
    tol_quad: float | None = None,
) -> float:
    """
    Solve Per(alpha, beta, gamma) = c for gamma.

    Per is strictly decreasing in gamma, equals 0 at gamma = 1 and tends to
    -1, so the bracket [1, 2^k] is grown until Per drops below c.
    """
    if not -1.0 < c <= 0.0:
        raise DomainException(f"Level {c} is outside (-1, 0]")

    if c == 0.0:
        return 1.0

    tol_root = settings.tol_root if tol_root is None else tol_root

    def residual(gamma: float) -> float:
        return per_map(ParamPoint(alpha=alpha, beta=beta, gamma=gamma), tol=tol_quad) - c

    lower, upper = 1.0, 2.0

    for _ in range(64):
        if residual(upper) < 0.0:
            break

        lower, upper = upper, 2.0 * upper
    else:
        raise BracketException(
            f"Could not bracket the level {c} at alpha={alpha}, beta={beta}",
            estimate=upper,
        )

    logger.debug(f"Level {c} bracketed in [{lower}, {upper}]")

    return brentq(residual, lower, upper, xtol=tol_root, maxiter=200)


def gamma_level_closed_form(c: float, beta: float) -> float:
    """
    The level set at alpha = 1: C^2 = c^2 (B + 1) / (2 (1 - c^2)).
    """
    B = 0.5 * (beta + 1.0 / beta)
    C = math.sqrt(c * c * (B + 1.0) / (2.0 * (1.0 - c * c)))
    return C + math.sqrt(C * C + 1.0)


def turning_angle_nodoid(gamma: float, beta: float) -> float:
    """
    At alpha = 1 the boundary row is a circle with geodesic curvature
    e^-omega sinh(omega) traversed at speed e^omega, so it turns by -C sigma
    over one half-period.
    """
    p = ParamPoint(alpha=1.0, beta=beta, gamma=gamma)
    return -derive_constants(p).C * sigma_period(p)


def st_half_periods(p: ParamPoint, tol: float | None = None) -> STPeriods:
    """
    L = int_1^{r3} ds / sqrt(s (s - 1) q(s)) and
    M = int_{r2}^0 dt / sqrt(-t (1 - t) q(t)).

    M is infinite when r2 = 0 or when r1 = r2; in the latter case the
    integral diverges logarithmically.
    """
    validate_point(p, strict_gamma=True)
    data = cubic(p)

    L_half = math.pi * chebyshev_mean(
        lambda s: 1.0 / np.sqrt(s * eval_h(data, s)), 1.0, data.r3, tol=tol
    )

    if (
        data.vanishes_at_zero
        or data.double_root
        or data.r2 - data.r1 < DOUBLE_ROOT_CUTOFF
    ):
        return STPeriods(L_half=L_half, M_half=math.inf)

    M_half = math.pi * chebyshev_mean(
        lambda t: 1.0 / np.sqrt((1.0 - t) * (data.r3 - t) * (t - data.r1)),
        data.r2,
        0.0,
        tol=tol,
    )

    return STPeriods(L_half=L_half, M_half=M_half)
