"""
Assembly of the annulus patch from a family point, and its rescaling into
the unit ball.
"""

import numpy as np
from loguru import logger
from opentelemetry import trace

from cmcannuli.config import settings
from cmcannuli.construction.dynamics import default_u_window, integrate_yz
from cmcannuli.construction.frame import integrate_profile_frame, sweep_v
from cmcannuli.construction.omega import build_omega
from cmcannuli.construction.profile import nodoid_period
from cmcannuli.construction.spheres import find_u_star, sphere_rows
from cmcannuli.models.exceptions import ConsistencyException, DomainException
from cmcannuli.models.family import AnnulusModel, FamilyPoint
from cmcannuli.models.parameters import ParamPoint


def symmetric_grid(extent: float, samples: int) -> np.ndarray:
    """
    An odd number of samples on [-extent, extent], exactly symmetric and
    containing 0.
    """
    if samples < 3 or samples % 2 == 0:
        raise DomainException(f"Need an odd number (>= 3) of u samples, got {samples}")

    half = np.linspace(0.0, extent, (samples - 1) // 2 + 1)
    return np.concatenate([-half[:0:-1], half])


def _profile_frame(p: ParamPoint, u_extent: float | None = None):
    window = default_u_window(p)

    if u_extent is not None:
        window = max(window, 1.05 * u_extent)

    trajectory = integrate_yz(p, u_max=window)
    reach = max(trajectory.u1 or 0.0, u_extent or 0.0)

    return trajectory, integrate_profile_frame(p, trajectory, u_max=min(reach, window))


def boundary_sphere(fp: FamilyPoint) -> tuple[np.ndarray, float]:
    """
    Center and radius of the sphere through the boundary rows of the
    unscaled surface, from the profile frame alone. The rescaled mean
    curvature is half the radius.
    """
    trajectory, frame_curve = _profile_frame(fp.param)
    u_star = find_u_star(fp.param, trajectory, frame_curve)
    centers, radii, _ = sphere_rows(frame_curve, [u_star])

    return centers[0], float(radii[0])


def assemble_annulus(
    fp: FamilyPoint,
    resolution: tuple[int, int] | None = None,
    u_extent: float | None = None,
    tracer: trace.Tracer | None = None,
) -> AnnulusModel:
    """
    Build the surface over [-u*, u*] x [0, 2 n sigma) and the homothety
    taking its boundary sphere to the unit sphere.

    Parameters
    ----------
    fp : FamilyPoint
        Point on the family.
    resolution : tuple of int, optional
        (u samples, v samples); defaults from the settings.
    u_extent : float, optional
        Half-width in u replacing u*. Such models are flagged as controls
        and skip the boundary consistency check.
    tracer : trace.Tracer, optional
        Tracer for the assembly span.

    Returns
    -------
    AnnulusModel
        The assembled model, without verdicts.

    Raises
    ------
    ConsistencyException
        The boundary rows do not lie on a common sphere.
    """
    tracer = tracer or trace.get_tracer("cmcannuli-annulus")
    n, p = fp.n, fp.param

    u_samples, v_samples = (
        (settings.u_samples, settings.v_samples(n)) if resolution is None else resolution
    )

    if v_samples % (2 * n) != 0:
        raise DomainException(
            f"v samples must be a multiple of 2n = {2 * n} to resolve the mirror lines"
        )

    with tracer.start_as_current_span(
        "assemble_annulus",
        attributes={
            "n": n,
            "mu": fp.mu,
            "u_samples": u_samples,
            "v_samples": v_samples,
        },
    ) as span:
        trajectory, frame_curve = _profile_frame(p, u_extent)

        u_star = find_u_star(p, trajectory, frame_curve)
        extent = u_star if u_extent is None else u_extent

        u = symmetric_grid(extent, u_samples)
        v = np.linspace(0.0, 2.0 * n * fp.sigma, 2 * v_samples + 1)

        field = build_omega(p, trajectory, u, v)
        patch = sweep_v(p, field, frame_curve, n)

        centers, radii, _ = sphere_rows(frame_curve, [u_star])
        center, radius = centers[0], float(radii[0])

        if u_extent is None:
            try:
                _check_boundary_sphere(patch, center, radius)
            except ConsistencyException:
                span.set_status(trace.Status(trace.StatusCode.ERROR))
                raise

        span.set_status(trace.Status(trace.StatusCode.OK))
        span.set_attribute("annulus:boundary_radius", radius)

        logger.info(
            f"Assembled n={n}, mu={fp.mu} on {u_samples}x{v_samples}: "
            f"u*={u_star}, R={radius}"
        )

        return AnnulusModel(
            family_point=fp,
            patch=patch,
            boundary_center=tuple(float(c) for c in center),
            boundary_radius=radius,
            u_extent=extent,
            control=u_extent is not None,
        )


def _check_boundary_sphere(patch, center: np.ndarray, radius: float):
    tolerance = settings.tol_geom * radius

    for row in (0, len(patch.u) - 1):
        spread = float(
            np.max(np.abs(np.linalg.norm(patch.psi[row] - center, axis=-1) - radius))
        )

        if spread > tolerance:
            raise ConsistencyException(
                f"Boundary row {row} is off the boundary sphere by {spread:.3e} "
                f"(tolerance {tolerance:.3e})"
            )


def assemble_nodoid_control(
    fp: FamilyPoint,
    resolution: tuple[int, int] | None = None,
    tracer: trace.Tracer | None = None,
) -> AnnulusModel:
    """
    The rotational surface over a full period [-P, P] of omega-hat: a
    complete nodoid loop, which self-intersects.
    """
    if fp.param.alpha != 1.0:
        raise DomainException("The nodoid control is only defined at alpha = 1")

    return assemble_annulus(
        fp, resolution, u_extent=nodoid_period(fp.param.gamma), tracer=tracer
    )
