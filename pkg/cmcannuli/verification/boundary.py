"""
Free-boundary and closure checks.
"""

import numpy as np

from cmcannuli.config import settings
from cmcannuli.models.family import AnnulusModel
from cmcannuli.models.report import Verdict


def check_free_boundary(model: AnnulusModel, tolerance: float | None = None) -> Verdict:
    """
    On both boundary rows of the rescaled surface, |psi| = 1 and the normal
    is tangent to the unit sphere.
    """
    tolerance = settings.tol_geom if tolerance is None else tolerance

    positions = model.rescaled_positions()
    rows = list(model.boundary_rows)

    psi = positions[rows]
    N = model.patch.N[rows]

    radius = np.linalg.norm(psi, axis=-1)
    radial = float(np.max(np.abs(radius - 1.0)))
    angle = float(np.max(np.abs(np.einsum("rvi,rvi->rv", N, psi))))
    spread = float(np.max(radius) - np.min(radius))

    return Verdict.from_residual(
        "free_boundary",
        max(radial, angle),
        tolerance,
        details=(
            f"max ||psi| - 1| = {radial:.3e}, max |<N, psi>| = {angle:.3e}, "
            f"boundary radius spread = {spread:.3e}"
        ),
    )


def check_closure(model: AnnulusModel, tolerance: float | None = None) -> Verdict:
    """
    The sweep over [0, 2 n sigma] returns to its starting row.
    """
    tolerance = settings.tol_geom if tolerance is None else tolerance

    residual = model.patch.closure_residual * model.scale / model.diameter

    return Verdict.from_residual(
        "closure",
        residual,
        tolerance,
        details=f"|psi(u, 2n sigma) - psi(u, 0)| / diameter = {residual:.3e}",
    )
