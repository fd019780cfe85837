"""
The v-curvature lines lie on the analytic spheres (or, where y = 0, planes)
and cross them at a constant angle.
"""

import numpy as np

from cmcannuli.config import settings
from cmcannuli.models.family import AnnulusModel
from cmcannuli.models.report import Verdict


def spherical_line_residuals(model: AnnulusModel) -> dict[str, float]:
    """
    Residuals of the fit-free test against the stored sphere data, in the
    rescaled frame.

    ``distance``: max over spherical rows of | |psi - c| - R | / R.
    ``planar``: max deviation of planar rows from their horizontal plane,
    over the diameter.
    ``angle``: max variation along a row of the cosine between N and the
    sphere normal (or the plane normal).
    ``collinear``: spread of the horizontal center coordinates over the
    diameter.
    """
    patch = model.patch
    scale = model.scale
    offset = np.asarray(model.boundary_center)

    positions = model.rescaled_positions()
    planar = ~np.isfinite(patch.radii)
    spherical = ~planar

    centers = (patch.centers[spherical] - offset) * scale
    radii = patch.radii[spherical] * scale

    arms = positions[spherical] - centers[:, None]
    lengths = np.linalg.norm(arms, axis=-1)
    distance = float(np.max(np.abs(lengths - radii[:, None]) / radii[:, None]))

    cosines = np.einsum("rvi,rvi->rv", patch.N[spherical], arms) / lengths
    angle = float(np.max(np.ptp(cosines, axis=1))) if cosines.size else 0.0

    diameter = model.diameter
    residuals = {"distance": distance, "angle": angle}

    if np.any(planar):
        heights = positions[planar][:, :, 2]
        residuals["planar"] = float(np.max(np.ptp(heights, axis=1))) / diameter
        residuals["angle"] = max(angle, float(np.max(np.abs(patch.N[planar][:, :, 2]))))

    residuals["collinear"] = float(np.max(np.ptp(centers[:, :2], axis=0))) / diameter

    return residuals


def check_spherical_lines(model: AnnulusModel, tolerance: float | None = None) -> Verdict:
    tolerance = settings.tol_geom if tolerance is None else tolerance

    residuals = spherical_line_residuals(model)

    return Verdict.from_residual(
        "spherical_lines",
        max(residuals.values()),
        tolerance,
        details=", ".join(f"{label}: {value:.2e}" for label, value in residuals.items()),
    )
