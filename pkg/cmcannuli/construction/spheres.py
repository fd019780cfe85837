"""
Spheres carrying the curvature lines v -> psi(u, v), and the parameter u*
at which the sphere center crosses the plane x3 = 0.
"""

import math

import numpy as np
from scipy.optimize import brentq

from cmcannuli.config import settings
from cmcannuli.models.dynamics import YZTrajectory
from cmcannuli.models.exceptions import BracketException, DomainException
from cmcannuli.models.parameters import ParamPoint
from cmcannuli.models.surface import FrameCurve, OmegaField, SphereData

PLANAR_CUTOFF = 1e-14


def sphere_rows(
    frame_curve: FrameCurve, u
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Centers, radii and intersection angles for every u, evaluated on the
    profile curve v = 0.

    c = psi - e1 / y + ((y - z) / y) N, R^2 = (1 + (z - y)^2) / y^2 and
    tan(angle) = -1 / (y - z). Rows with y = 0 are planar: NaN center and
    infinite radius.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    y, z = frame_curve.trajectory.evaluate(u)[:2]
    psi, e1, _, N = frame_curve.frames(u)

    planar = np.abs(y) < PLANAR_CUTOFF
    safe = np.where(planar, 1.0, y)

    centers = psi - e1 / safe[:, None] + ((y - z) / safe)[:, None] * N
    centers[planar] = np.nan

    radii = np.sqrt(1.0 + (z - y) ** 2) / np.abs(safe)
    radii[planar] = np.inf

    angles = np.arctan2(1.0, z - y)

    return centers, radii, angles


def center_height(frame_curve: FrameCurve, u) -> np.ndarray:
    """
    Third coordinate of the sphere center, c3(u).
    """
    return sphere_rows(frame_curve, u)[0][:, 2]


def sphere_data_at(
    u: float,
    trajectory: YZTrajectory,
    frame_curve: FrameCurve,
    field: OmegaField | None = None,
) -> SphereData:
    """
    Sphere (or plane) containing the v-curvature line through psi(u, 0).

    Parameters
    ----------
    u : float
        Row parameter.
    trajectory : YZTrajectory
        Must be the trajectory the frame curve was built from.
    frame_curve : FrameCurve
        Profile curve covering u.
    field : OmegaField, optional
        Unused by the analytic formulas; accepted so callers holding a
        field can pass it along.

    Returns
    -------
    SphereData
        ``center`` and ``c3`` are None on the plane case y(u) = 0.
    """
    if trajectory.point != frame_curve.point:
        raise DomainException("Trajectory and frame curve belong to different points")

    centers, radii, angles = sphere_rows(frame_curve, u)

    if math.isinf(radii[0]):
        return SphereData(u=u, center=None, radius=math.inf, angle=float(angles[0]), c3=None)

    center = tuple(float(c) for c in centers[0])

    return SphereData(
        u=u, center=center, radius=float(radii[0]), angle=float(angles[0]), c3=center[2]
    )


def find_u_star(
    p: ParamPoint,
    trajectory: YZTrajectory,
    frame_curve: FrameCurve,
    field: OmegaField | None = None,
    tol: float | None = None,
) -> float:
    """
    The unique u* in (0, u1) with c3(u*) = 0.

    c3 increases on (0, u1) from -inf, so the first non-negative sample of
    a scan brackets the root.
    """
    if p.gamma <= 1.0:
        raise DomainException(f"u* only exists for gamma > 1, got {p.gamma}")

    tol = settings.tol_root if tol is None else tol
    u1 = trajectory.u1

    if u1 is None:
        raise BracketException(
            f"No u1 in the integration window at {p}", estimate=trajectory.u_max
        )

    upper = min(u1, frame_curve.u_max) * (1.0 - 1e-9)
    grid = np.union1d(
        np.geomspace(upper * 1e-6, upper * 1e-2, 32), np.linspace(0.0, upper, 513)[1:]
    )
    heights = center_height(frame_curve, grid)

    positive = np.flatnonzero(heights >= 0.0)

    if len(positive) == 0 or positive[0] == 0:
        raise BracketException(
            f"c3 does not change sign on (0, u1) at {p}",
            estimate=float(grid[np.argmax(heights)]),
            table=list(zip(grid.tolist(), heights.tolist())),
        )

    index = positive[0]

    return brentq(
        lambda s: center_height(frame_curve, s)[0],
        float(grid[index - 1]),
        float(grid[index]),
        xtol=tol,
        maxiter=200,
    )
