"""
The Hamiltonian (y, z) system: integration, first integrals, the separated
(s, t) oracle and the roots u1 and tau.
"""

import math

import numpy as np
from loguru import logger
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from cmcannuli.config import settings
from cmcannuli.construction.parameters import (
    cubic,
    derive_constants,
    eval_h,
    region_membership,
    validate_point,
)
from cmcannuli.construction.periods import chebyshev_mean, st_half_periods
from cmcannuli.models.dynamics import STPath, YZState, YZTrajectory
from cmcannuli.models.exceptions import (
    DomainException,
    IntegrationException,
    NumericException,
    SearchWindowException,
)
from cmcannuli.models.parameters import ParamPoint


def first_integrals(state: YZState, a_hat: float) -> tuple[float, float]:
    """
    h = y'^2 - z'^2 - (a_hat - 1)y^2 + a_hat z^2 + (y^2 - z^2)^2 and
    k = (z y' - y z')^2 + z'^2 + z^2 (y^2 - z^2 - a_hat).
    """
    return _first_integrals(state.y, state.z, state.y_prime, state.z_prime, a_hat)


def _first_integrals(y, z, yp, zp, a_hat):
    d = y * y - z * z
    h = yp * yp - zp * zp - (a_hat - 1.0) * y * y + a_hat * z * z + d * d
    k = (z * yp - y * zp) ** 2 + zp * zp + z * z * (d - a_hat)
    return h, k


def initial_state(p: ParamPoint) -> np.ndarray:
    constants = derive_constants(p)
    A, B, C = constants.A, constants.B, constants.C

    return np.array(
        [0.0, 0.0, 0.5 * (A + B) * C, 0.5 * (B - A) * math.sqrt(C * C + 1.0)]
    )


def default_u_window(p: ParamPoint, factor: float | None = None) -> float:
    """
    A window guaranteed to contain u1 = u(2L).

    u(2L) = S1 + (1/2) int_0^{2L} (-t) dlambda <= S1 + L |r2| where
    S1 = int_1^{r3} s ds / sqrt(s (s - 1) q(s)).
    """
    factor = settings.u_window_factor if factor is None else factor

    if p.gamma == 1.0:
        return factor

    data = cubic(p)
    periods = st_half_periods(p)

    S1 = math.pi * chebyshev_mean(
        lambda s: np.sqrt(s / eval_h(data, s)), 1.0, data.r3
    )

    return factor * (S1 + periods.L_half * abs(data.r2))


def integrate_yz(
    p: ParamPoint, u_max: float | None = None, tol: float | None = None
) -> YZTrajectory:
    """
    Integrate the (y, z) system from y = z = 0 with DOP853 and dense output.

    u1 and tau are located when they exist in the window: u1 whenever
    gamma > 1, tau whenever the point also lies in W.
    """
    validate_point(p)
    tol = settings.tol_ode if tol is None else tol
    u_max = default_u_window(p) if u_max is None else u_max

    if u_max <= 0.0 or tol <= 0.0:
        raise DomainException(f"Need u_max > 0 and tol > 0, got {u_max}, {tol}")

    a_hat = derive_constants(p).a_hat

    def rhs(_, w):
        y, z, yp, zp = w
        d = y * y - z * z
        return [yp, zp, (a_hat - 1.0) * y - 2.0 * y * d, a_hat * z - 2.0 * z * d]

    result = solve_ivp(
        rhs,
        (0.0, u_max),
        initial_state(p),
        method="DOP853",
        rtol=tol,
        atol=tol,
        dense_output=True,
    )

    if not result.success:
        raise IntegrationException(
            f"(y, z) integration failed at {p}: {result.message}",
            estimate=float(result.t[-1]),
        )

    h, k = _first_integrals(*result.y, a_hat)
    max_drift = float(max(np.max(np.abs(h - h[0])), np.max(np.abs(k - k[0]))))

    if max_drift > 10.0 * tol:
        logger.warning(f"First integral drift {max_drift:.3e} above 10 tol at {p}")

    trajectory = YZTrajectory(
        point=p,
        a_hat=a_hat,
        u_max=u_max,
        tol=tol,
        u=result.t,
        states=result.y,
        solution=result.sol,
        h0=float(h[0]),
        k0=float(k[0]),
        max_drift=max_drift,
    )

    if p.gamma == 1.0:
        return trajectory

    try:
        u1 = find_u1(trajectory)
    except SearchWindowException:
        logger.debug(f"No zero of y in [0, {u_max}] at {p}")
        return trajectory

    trajectory = trajectory.model_copy(update={"u1": u1})

    if region_membership(p).in_W:
        trajectory = trajectory.model_copy(update={"tau": find_tau(trajectory, p)})

    return trajectory


def _scan_grid(end: float, number: int = 2001) -> np.ndarray:
    """
    A grid on (0, end] dense near both ends.
    """
    return np.union1d(
        np.geomspace(end * 1e-9, end * 1e-2, 64), np.linspace(0.0, end, number)[1:]
    )


def _first_sign_change(f, grid: np.ndarray) -> tuple[float, float] | None:
    values = f(grid)
    negative = np.flatnonzero(values <= 0.0)

    if len(negative) == 0:
        return None

    index = negative[0]

    if index == 0:
        return None

    return float(grid[index - 1]), float(grid[index])


def find_u1(trajectory: YZTrajectory, tol: float | None = None) -> float:
    """
    The first positive zero of y.
    """
    if trajectory.point.gamma <= 1.0:
        raise DomainException("u1 only exists for gamma > 1")

    tol = settings.tol_root if tol is None else tol

    bracket = _first_sign_change(trajectory.y, _scan_grid(trajectory.u_max))

    if bracket is None:
        raise SearchWindowException(
            f"y has no sign change in (0, {trajectory.u_max}]",
            estimate=trajectory.u_max,
        )

    return brentq(trajectory.y, *bracket, xtol=tol, maxiter=200)


def find_tau(
    trajectory: YZTrajectory, p: ParamPoint, tol: float | None = None
) -> float:
    """
    The first u in (0, u1] with y(u) = z(u). Equal to u1 when alpha = beta.
    """
    if not region_membership(p).in_W:
        raise DomainException(f"{p} is not in W; tau is undefined")

    u1 = trajectory.u1 if trajectory.u1 is not None else find_u1(trajectory)

    if cubic(p).vanishes_at_zero:
        return u1

    tol = settings.tol_root if tol is None else tol

    def difference(u):
        y, z = trajectory.evaluate(u)[:2]
        return y - z

    bracket = _first_sign_change(difference, _scan_grid(u1))

    if bracket is None:
        raise NumericException(
            f"No crossing of y and z found in (0, {u1}] at {p}", estimate=u1
        )

    return brentq(difference, *bracket, xtol=tol, maxiter=200)


def st_oracle(
    p: ParamPoint,
    lambda_max: float | None = None,
    samples: int = 2001,
    tol: float = 1e-12,
) -> STPath:
    """
    Integrate the separated system in angular form.

    With s = 1 + (r3 - 1) sin^2(theta) and t = r2 sin^2(chi) the square-root
    right-hand sides become theta' = sqrt(s h(s))/2 and
    chi' = sqrt((1 - t)(r3 - t)(t - r1))/2, regular at the turning points.
    """
    validate_point(p, strict_gamma=True)
    data = cubic(p)
    L_half = st_half_periods(p).L_half
    lambda_max = 2.0 * L_half if lambda_max is None else lambda_max

    r1, r2, r3 = data.r1, data.r2, data.r3

    def rhs(_, w):
        theta, chi, _u = w
        s = 1.0 + (r3 - 1.0) * math.sin(theta) ** 2
        t = r2 * math.sin(chi) ** 2
        return [
            0.5 * math.sqrt(max(s * eval_h(data, s), 0.0)),
            0.5 * math.sqrt(max((1.0 - t) * (r3 - t) * (t - r1), 0.0)),
            0.5 * (s - t),
        ]

    result = solve_ivp(
        rhs,
        (0.0, lambda_max),
        [0.0, 0.0, 0.0],
        method="DOP853",
        rtol=tol,
        atol=tol,
        dense_output=True,
        t_eval=np.linspace(0.0, lambda_max, samples),
    )

    if not result.success:
        raise IntegrationException(
            f"(s, t) integration failed at {p}: {result.message}",
            estimate=float(result.t[-1]),
        )

    theta, chi, u = result.y
    constants = derive_constants(p)

    return STPath(
        point=p,
        L_half=L_half,
        lam=result.t,
        s=1.0 + (r3 - 1.0) * np.sin(theta) ** 2,
        t=r2 * np.sin(chi) ** 2,
        u=u,
        solution=result.sol,
        z_sign=float(np.sign(constants.B - constants.A)),
    )
