"""
Moving frame integration: the planar profile psi(u, 0) and the transport of
the frame along the v-curvature lines (and along u, for cross-checks).

Frames are stored as 3x3 matrices whose rows are e1, e2 and N. Along v the
Gauss-Weingarten equations read

    psi_v = e^w e2, e1_v = w_u e2, e2_v = -w_u e1 + sinh(w) N, N_v = -sinh(w) e2

and along u

    psi_u = e^w e1, e1_u = -w_v e2 + cosh(w) N, e2_u = w_v e1, N_u = -cosh(w) e1.
"""

import math

import numpy as np
from loguru import logger
from scipy.integrate import solve_ivp

from cmcannuli.config import settings
from cmcannuli.construction.parameters import quartic
from cmcannuli.construction.spheres import sphere_rows
from cmcannuli.models.dynamics import YZTrajectory
from cmcannuli.models.exceptions import (
    ConsistencyException,
    DomainException,
    FrameDriftException,
    IntegrationException,
)
from cmcannuli.models.parameters import ParamPoint
from cmcannuli.models.surface import FrameCurve, FramePoint, OmegaField, SurfacePatch

FRAME_DRIFT_LIMIT = 1e-6


def integrate_profile_frame(
    p: ParamPoint,
    trajectory: YZTrajectory,
    field: OmegaField | None = None,
    u_max: float | None = None,
    tol: float | None = None,
) -> FrameCurve:
    """
    Integrate the profile curve along v = 0, where w_v = 0 and the frame
    turns in the plane x2 = 0.

    With e1 = (sin a, 0, cos a), e2 = (0, -1, 0) and N = (cos a, 0, -sin a)
    the system reduces to w' = y cosh(w) + z sinh(w), a' = cosh(w) and
    psi' = e^w e1, started from w = log(rho0), a = 0, psi = 0.

    Parameters
    ----------
    p : ParamPoint
        Parameter point.
    trajectory : YZTrajectory
        The (y, z) solution at ``p``.
    field : OmegaField, optional
        When given, its v = 0 column is checked against the profile.
    u_max : float, optional
        Half-length of the interval; defaults to u1 when known, otherwise
        the trajectory window.
    tol : float, optional
        ODE tolerance.

    Returns
    -------
    FrameCurve
        Dense profile on [-u_max, u_max].
    """
    tol = settings.tol_ode if tol is None else tol

    if u_max is None:
        u_max = trajectory.u1 if trajectory.u1 is not None else trajectory.u_max

    if u_max > trajectory.u_max * (1.0 + 1e-12):
        raise DomainException(
            f"Profile half-length {u_max} exceeds the trajectory window {trajectory.u_max}"
        )

    omega0 = math.log(quartic(p).rho0)

    def rhs(u, w):
        y, z = trajectory.evaluate(u)[:2]
        omega, a = w[0], w[1]
        scale = math.exp(omega)
        return [
            y * math.cosh(omega) + z * math.sinh(omega),
            math.cosh(omega),
            scale * math.sin(a),
            scale * math.cos(a),
        ]

    def solve(end):
        result = solve_ivp(
            rhs,
            (0.0, end),
            [omega0, 0.0, 0.0, 0.0],
            method="DOP853",
            rtol=tol,
            atol=tol,
            dense_output=True,
        )

        if not result.success:
            raise IntegrationException(
                f"Profile frame integration failed at {p}: {result.message}",
                estimate=float(result.t[-1]),
            )

        return result.sol

    curve = FrameCurve(
        point=p,
        trajectory=trajectory,
        u_min=-u_max,
        u_max=u_max,
        forward=solve(u_max),
        backward=solve(-u_max),
    )

    if field is not None:
        _check_seed_column(curve, field)

    return curve


def _check_seed_column(curve: FrameCurve, field: OmegaField):
    inside = np.abs(field.u) <= curve.u_max
    mismatch = float(np.max(np.abs(field.omega[inside, 0] - curve.omega(field.u[inside]))))
    slope = float(np.max(np.abs(field.omega_v[:, 0])))

    if mismatch > 1e-7 or slope > 1e-4:
        raise ConsistencyException(
            f"v = 0 is not a symmetry row of the field: omega mismatch {mismatch:.2e}, "
            f"max |omega_v| {slope:.2e}"
        )


def _v_generator(omega: np.ndarray, omega_u: np.ndarray) -> np.ndarray:
    K = np.zeros((len(omega), 3, 3))
    K[:, 0, 1] = omega_u
    K[:, 1, 0] = -omega_u
    K[:, 1, 2] = np.sinh(omega)
    K[:, 2, 1] = -np.sinh(omega)
    return K


def _u_generator(omega: np.ndarray, omega_v: np.ndarray) -> np.ndarray:
    K = np.zeros((len(omega), 3, 3))
    K[:, 0, 1] = -omega_v
    K[:, 0, 2] = np.cosh(omega)
    K[:, 1, 0] = omega_v
    K[:, 2, 0] = -np.cosh(omega)
    return K


def orthonormalize(frames: np.ndarray) -> tuple[np.ndarray, float]:
    """
    Polar correction of a stack of frames, returning the corrected frames
    and the orthonormality defect measured before correction.
    """
    defect = np.einsum("mij,mkj->mik", frames, frames) - np.eye(3)
    drift = float(np.max(np.abs(defect)))

    U, _, Vt = np.linalg.svd(frames)

    return U @ Vt, drift


def _rk4_transport(frames, psi, generator, speed, direction: int, step: float, every: int):
    """
    Classical RK4 over a uniform grid of half steps.

    ``generator(k)`` and ``speed(k)`` give the frame generator (m, 3, 3) and
    e^w (m,) at fine index k; a step from fine index 2j to 2j + 2 uses the
    midpoint 2j + 1. Returns frames and positions at every coarse node.
    """
    count = generator.count // 2
    m = frames.shape[0]

    all_frames = np.empty((count + 1, m, 3, 3))
    all_psi = np.empty((count + 1, m, 3))
    all_frames[0], all_psi[0] = frames, psi
    worst = 0.0

    half = 0.5 * step

    for j in range(count):
        K0, Km, K1 = generator(2 * j), generator(2 * j + 1), generator(2 * j + 2)
        s0, sm, s1 = speed(2 * j), speed(2 * j + 1), speed(2 * j + 2)

        k1 = K0 @ frames
        p1 = s0[:, None] * frames[:, direction]

        F2 = frames + half * k1
        k2 = Km @ F2
        p2 = sm[:, None] * F2[:, direction]

        F3 = frames + half * k2
        k3 = Km @ F3
        p3 = sm[:, None] * F3[:, direction]

        F4 = frames + step * k3
        k4 = K1 @ F4
        p4 = s1[:, None] * F4[:, direction]

        frames = frames + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        psi = psi + (step / 6.0) * (p1 + 2.0 * p2 + 2.0 * p3 + p4)

        if (j + 1) % every == 0 or j + 1 == count:
            frames, drift = orthonormalize(frames)
            worst = max(worst, drift)

            if drift > FRAME_DRIFT_LIMIT:
                raise FrameDriftException(
                    f"Frame orthonormality defect {drift:.3e} after step {j + 1}",
                    estimate=drift,
                )

        all_frames[j + 1], all_psi[j + 1] = frames, psi

    logger.debug(f"RK4 transport over {count} steps, worst frame defect {worst:.2e}")

    return all_frames, all_psi


class _Sampled:
    """
    Index a (m, fine) array column-wise through a transform, for the RK4
    driver.
    """

    def __init__(self, function, *arrays):
        self.function = function
        self.arrays = arrays
        self.count = arrays[0].shape[1] - 1

    def __call__(self, k: int):
        return self.function(*(a[:, k] for a in self.arrays))


def _uniform_step(grid: np.ndarray, label: str) -> float:
    if len(grid) < 3 or (len(grid) - 1) % 2 != 0:
        raise DomainException(f"The {label} grid needs an odd number (>= 3) of samples")

    spacing = np.diff(grid)
    if np.max(np.abs(spacing - spacing[0])) > 1e-9 * max(abs(spacing[0]), 1.0):
        raise DomainException(f"The {label} grid must be uniform")

    return 2.0 * float(spacing[0])


def _stack_frames(e1, e2, N) -> np.ndarray:
    return np.stack([e1, e2, N], axis=1)


def sweep_v(
    p: ParamPoint,
    field: OmegaField,
    frame_curve: FrameCurve,
    n: int,
    every: int | None = None,
) -> SurfacePatch:
    """
    Transport the profile frame along every v-curvature line.

    ``field`` must sample [0, 2 n sigma] uniformly with 2 Nv + 1 columns:
    the RK4 steps use the even columns as nodes and the odd ones as
    midpoints. The patch keeps the Nv nodes in [0, 2 n sigma); the last
    node measures the closure residual.

    Parameters
    ----------
    p : ParamPoint
        Parameter point.
    field : OmegaField
        Fine omega field on the patch rows.
    frame_curve : FrameCurve
        Seed curve covering every row of ``field``.
    n : int
        Rotational order; the v grid spans n periods of x(v).
    every : int, optional
        Re-orthonormalize after this many steps.

    Returns
    -------
    SurfacePatch
        Positions, frames, coarse field and per-row sphere data.
    """
    if n < 2:
        raise DomainException(f"n must be at least 2, got {n}")

    every = settings.orthonormalize_every if every is None else every
    step = _uniform_step(field.v, "v")

    if field.v[0] != 0.0:
        raise DomainException("The v grid must start at 0")

    u = field.u
    psi0, e1, e2, N = frame_curve.frames(u)

    generator = _Sampled(_v_generator, field.omega, field.omega_u)
    speed = _Sampled(np.exp, field.omega)

    frames, psi = _rk4_transport(
        _stack_frames(e1, e2, N), psi0, generator, speed, 1, step, every
    )

    count = generator.count // 2
    closure = float(np.max(np.linalg.norm(psi[count] - psi[0], axis=-1)))

    logger.info(f"Swept {len(u)} rows over {count} v-steps at {p}, closure {closure:.2e}")

    # (v, u, ...) -> (u, v, ...)
    frames = np.swapaxes(frames[:count], 0, 1)
    psi = np.swapaxes(psi[:count], 0, 1)

    centers, radii, angles = sphere_rows(frame_curve, u)

    return SurfacePatch(
        n=n,
        sigma=float(field.v[-1]) / (2.0 * n),
        u=u,
        v=field.v[: 2 * count : 2],
        psi=psi,
        e1=frames[:, :, 0],
        e2=frames[:, :, 1],
        N=frames[:, :, 2],
        field=field.columns(2, count),
        yz_rows=frame_curve.trajectory.evaluate(u),
        centers=centers,
        radii=radii,
        angles=angles,
        closure_residual=closure,
    )


def sweep_u(field: OmegaField, start: FramePoint, every: int | None = None):
    """
    Transport a frame along the u-curvature line of a single v column.

    ``field`` holds one column (shape (2S + 1, 1)) sampled uniformly in u
    from the starting point onwards.

    Returns
    -------
    tuple of np.ndarray
        psi of shape (S + 1, 3) and frames of shape (S + 1, 3, 3) with rows
        e1, e2, N, at the even u samples.
    """
    every = settings.orthonormalize_every if every is None else every
    step = _uniform_step(field.u, "u")

    # Columns of the transposed arrays run along u.
    generator = _Sampled(_u_generator, field.omega.T, field.omega_v.T)
    speed = _Sampled(np.exp, field.omega.T)

    frames0 = _stack_frames(start.e1[None], start.e2[None], start.N[None])

    frames, psi = _rk4_transport(
        frames0, start.psi[None], generator, speed, 0, step, every
    )

    return psi[:, 0], frames[:, 0]
