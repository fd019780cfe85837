"""
The boundary row x(v) = exp(omega(0, v)) and the rotational (alpha = 1)
reference solutions.
"""

import math

import numpy as np
from scipy.integrate import solve_ivp

from cmcannuli.config import settings
from cmcannuli.construction.parameters import derive_constants, quartic, validate_point
from cmcannuli.models.exceptions import IntegrationException
from cmcannuli.models.parameters import ParamPoint
from cmcannuli.models.surface import ProfileSamples


def profile_x(p: ParamPoint, v_grid, tol: float | None = None) -> ProfileSamples:
    """
    Sample the non-constant solution of 4 x'^2 = p(x) with x(0) = rho0.

    Writing x = rho0 + (rho1 - rho0)(1 - cos(theta))/2 gives the regular
    equation theta' = sqrt((x + beta gamma)(x + gamma/beta))/2, so theta
    passes pi exactly at v = sigma. x is even in v.

    Parameters
    ----------
    p : ParamPoint
        Parameter point.
    v_grid : array_like
        Sample abscissae.
    tol : float, optional
        ODE tolerance.

    Returns
    -------
    ProfileSamples
        x and x' at the requested abscissae. For alpha = 1 x is the constant
        1/gamma.
    """
    validate_point(p)
    tol = settings.tol_ode if tol is None else tol

    v = np.asarray(v_grid, dtype=float)
    data = quartic(p)

    if data.rho0 == data.rho1:
        return ProfileSamples(v=v, x=np.full_like(v, data.rho0), x_prime=np.zeros_like(v))

    B = derive_constants(p).B
    gamma = p.gamma
    rho0, width = data.rho0, data.rho1 - data.rho0

    def position(theta):
        return rho0 + 0.5 * width * (1.0 - np.cos(theta))

    def speed(theta):
        x = position(theta)
        return 0.5 * np.sqrt(x * x + 2.0 * B * gamma * x + gamma * gamma)

    magnitude = np.abs(v)
    end = float(magnitude.max()) if magnitude.size else 0.0

    if end == 0.0:
        theta = np.zeros_like(v)
    else:
        result = solve_ivp(
            lambda _, w: [speed(w[0])],
            (0.0, end),
            [0.0],
            method="DOP853",
            rtol=tol,
            atol=tol,
            dense_output=True,
        )

        if not result.success:
            raise IntegrationException(f"Profile integration failed: {result.message}")

        theta = result.sol(magnitude)[0]

    x_prime = 0.5 * width * np.sin(theta) * speed(theta) * np.where(v < 0.0, -1.0, 1.0)

    return ProfileSamples(v=v, x=position(theta), x_prime=x_prime)


def necksize(gamma: float) -> float:
    """
    Radius of the neck circle psi(0, v) of the alpha = 1 surface.
    """
    return 2.0 / (gamma * gamma - 1.0)


def _nodoid_rhs(_, w):
    return [w[1], -math.sinh(w[0]) * math.cosh(w[0])]


def nodoid_omega(gamma: float, u, tol: float | None = None) -> np.ndarray:
    """
    Solve omega'' + sinh(omega) cosh(omega) = 0, omega(0) = -log(gamma),
    omega'(0) = 0. The solution is even in u.
    """
    tol = settings.tol_ode if tol is None else tol
    u = np.asarray(u, dtype=float)
    end = float(np.abs(u).max())

    result = solve_ivp(
        _nodoid_rhs,
        (0.0, max(end, 1e-12)),
        [-math.log(gamma), 0.0],
        method="DOP853",
        rtol=tol,
        atol=tol,
        dense_output=True,
    )

    if not result.success:
        raise IntegrationException(f"Nodoid integration failed: {result.message}")

    return result.sol(np.abs(u))[0]


def nodoid_period(gamma: float, tol: float | None = None) -> float:
    """
    Period of omega-hat: twice the first u > 0 where omega-hat' vanishes.
    """
    tol = settings.tol_ode if tol is None else tol

    def turning(_, w):
        return w[1]

    turning.terminal = True
    turning.direction = -1

    result = solve_ivp(
        _nodoid_rhs,
        (0.0, 1e3),
        [-math.log(gamma), 0.0],
        method="DOP853",
        rtol=tol,
        atol=tol,
        events=turning,
    )

    if len(result.t_events[0]) == 0:
        raise IntegrationException(f"omega-hat did not turn for gamma={gamma}")

    return 2.0 * float(result.t_events[0][0])
