"""
The conformal factor omega(u, v): Riccati transport in u from the boundary
row log x(v), with omega_v from the closed form 4 X_v^2 = phi.
"""

import numpy as np
from loguru import logger
from scipy.integrate import solve_ivp

from cmcannuli.config import settings
from cmcannuli.construction.profile import profile_x
from cmcannuli.models.dynamics import YZTrajectory
from cmcannuli.models.exceptions import ConsistencyException, IntegrationException
from cmcannuli.models.parameters import ParamPoint
from cmcannuli.models.surface import OmegaField

PHI_FLOOR = 1e-9


def riccati_phi(rows: np.ndarray, X: np.ndarray, a_hat: float) -> np.ndarray:
    """
    phi = -(1 + (y+z)^2) X^4 - 4(y'+z') X^3 + 6 g X^2 + 4(y'-z') X - (1 + (y-z)^2)
    with 6 g = 6(y^2 - z^2) - 4(a_hat - 1/2).

    ``rows`` holds y, z, y', z' with shape (4, m) broadcastable against X.
    """
    y, z, yp, zp = rows
    six_g = 6.0 * (y * y - z * z) - 4.0 * (a_hat - 0.5)

    return (
        -(1.0 + (y + z) ** 2) * X**4
        - 4.0 * (yp + zp) * X**3
        + six_g * X**2
        + 4.0 * (yp - zp) * X
        - (1.0 + (y - z) ** 2)
    )


def _transport(trajectory: YZTrajectory, omega0, targets, tol):
    """
    Integrate omega_u = y cosh(omega) + z sinh(omega) for every column from
    u = 0 through ``targets`` (all of one sign, ordered away from 0).
    """
    if len(targets) == 0:
        return np.empty((0, len(omega0)))

    def rhs(u, w):
        y, z = trajectory.evaluate(u)[:2]
        return y * np.cosh(w) + z * np.sinh(w)

    end = float(targets[-1])

    if end == 0.0:
        return np.tile(omega0, (len(targets), 1))

    result = solve_ivp(
        rhs,
        (0.0, end),
        omega0,
        method="DOP853",
        rtol=tol,
        atol=tol,
        t_eval=targets,
    )

    if not result.success:
        raise IntegrationException(
            f"Riccati transport failed towards u={end}: {result.message}",
            estimate=float(result.t[-1]) if len(result.t) else None,
        )

    return result.y.T


def build_omega(
    p: ParamPoint,
    trajectory: YZTrajectory,
    u_grid,
    v_grid,
    tol: float | None = None,
) -> OmegaField:
    """
    Build omega on the tensor grid ``u_grid`` x ``v_grid``.

    Every v column is transported in u by a single vectorized integration
    per sign of u. omega_u is evaluated from the transport equation and
    omega_v = sign(x'(v)) sqrt(phi) / (2X); the sign of X_v is constant in
    u because X_uv = (y + z) X X_v.

    Parameters
    ----------
    p : ParamPoint
        Parameter point.
    trajectory : YZTrajectory
        Must cover max |u_grid|.
    u_grid : array_like
        Increasing u samples.
    v_grid : array_like
        v samples.
    tol : float, optional
        ODE tolerance.

    Returns
    -------
    OmegaField
        omega, omega_u and omega_v indexed [u, v].
    """
    tol = settings.tol_ode if tol is None else tol

    u = np.asarray(u_grid, dtype=float)
    v = np.asarray(v_grid, dtype=float)

    profile = profile_x(p, v, tol=tol)
    omega0 = np.log(profile.x)

    ahead = u >= 0.0
    omega = np.empty((len(u), len(v)))
    omega[ahead] = _transport(trajectory, omega0, u[ahead], tol)
    omega[~ahead] = _transport(trajectory, omega0, u[~ahead][::-1], tol)[::-1]

    rows = trajectory.evaluate(u)[:, :, None]
    y, z = rows[0], rows[1]
    omega_u = y * np.cosh(omega) + z * np.sinh(omega)

    X = np.exp(omega)
    phi = riccati_phi(rows, X, trajectory.a_hat)
    scale = (1.0 + (y + z) ** 2) * X**4 + 1.0 + (y - z) ** 2

    worst = float(np.min(phi / scale))
    if worst < -PHI_FLOOR:
        raise ConsistencyException(
            f"phi reached {worst:.3e} (relative) on the omega grid at {p}"
        )

    logger.debug(f"omega grid {omega.shape} at {p}, min relative phi {worst:.2e}")

    sign = np.where(profile.x_prime < 0.0, -1.0, 1.0)[None, :]
    omega_v = sign * np.sqrt(np.maximum(phi, 0.0)) / (2.0 * X)

    return OmegaField(u=u, v=v, omega=omega, omega_u=omega_u, omega_v=omega_v)
