"""
Curvature checks: discrete mean curvature against the declared constant,
discrete Gaussian curvature, and the sinh-Gordon equation for omega.
"""

import math

import numpy as np

from cmcannuli.config import settings
from cmcannuli.models.family import AnnulusModel
from cmcannuli.models.report import Verdict
from cmcannuli.verification.mesh import angle_defect, cotangent_laplacian


def interior_vertices(model: AnnulusModel) -> np.ndarray:
    Nu, Nv = model.patch.shape
    return np.arange(Nv, (Nu - 1) * Nv)


def discrete_mean_curvature(model: AnnulusModel) -> np.ndarray:
    """
    |<Delta x, N>| / 2 at the interior vertices of the rescaled mesh.
    """
    laplacian = cotangent_laplacian(model.vertices(), model.faces())
    normals = model.patch.N.reshape(-1, 3)
    inner = interior_vertices(model)

    return 0.5 * np.abs(np.einsum("ij,ij->i", laplacian[inner], normals[inner]))


def mean_curvature_points_outward(model: AnnulusModel) -> bool:
    """
    Along the u = 0 row the normal, which carries the mean curvature
    vector, points away from the vertical axis.
    """
    row = len(model.patch.u) // 2
    positions = model.rescaled_positions()[row] - model.axis_point
    normals = model.patch.N[row]

    radial = positions * np.array([1.0, 1.0, 0.0])
    return bool(np.all(np.einsum("ij,ij->i", normals, radial) > 0.0))


def check_mean_curvature(model: AnnulusModel, tolerance: float | None = None) -> Verdict:
    """
    Relative spread of the cotangent mean curvature around R/2, the mean
    curvature of the H = 1/2 surface after scaling by 1/R.

    The verdict also fails when the discrete Gaussian curvature (angle
    defect) is not negative at every interior vertex, or when the mean
    curvature vector along u = 0 does not point away from the axis.
    """
    tolerance = settings.tol_discrete if tolerance is None else tolerance

    declared = model.mean_curvature_rescaled
    H = discrete_mean_curvature(model)
    residual = float(np.max(np.abs(H - declared)) / declared)

    K = angle_defect(model.vertices(), model.faces())[interior_vertices(model)]
    negative = bool(K.max() < 0.0)
    outward = mean_curvature_points_outward(model)

    if not (negative and outward):
        residual = math.inf

    return Verdict.from_residual(
        "mean_curvature",
        residual,
        tolerance,
        details=(
            f"declared H = {declared:.12g} (R / 2), discrete H in "
            f"[{H.min():.6g}, {H.max():.6g}], Gaussian curvature in "
            f"[{K.min():.6g}, {K.max():.6g}] (negative: {negative}), "
            f"outward mean curvature vector: {outward}"
        ),
    )


def sinh_gordon_residual(model: AnnulusModel) -> np.ndarray:
    """
    omega_uu + omega_vv + sinh(omega) cosh(omega) on the patch grid.

    omega_vv is a spectral derivative over the periodic v direction;
    omega_uu differentiates the transport equation omega_u = y cosh + z sinh.
    """
    field = model.patch.field
    y, z, yp, zp = (row[:, None] for row in model.patch.yz_rows)

    omega, omega_u = field.omega, field.omega_u
    count = omega.shape[1]
    spacing = 2.0 * model.n * model.patch.sigma / count

    k = 2.0 * np.pi * np.fft.fftfreq(count, d=spacing)
    omega_vv = np.real(np.fft.ifft(-(k**2) * np.fft.fft(omega, axis=1), axis=1))

    omega_uu = (
        yp * np.cosh(omega)
        + zp * np.sinh(omega)
        + (y * np.sinh(omega) + z * np.cosh(omega)) * omega_u
    )

    return omega_uu + omega_vv + np.sinh(omega) * np.cosh(omega)


def check_sinh_gordon(model: AnnulusModel, tolerance: float | None = None) -> Verdict:
    tolerance = settings.tol_sinh_gordon if tolerance is None else tolerance

    residual = float(np.max(np.abs(sinh_gordon_residual(model))))

    return Verdict.from_residual(
        "sinh_gordon",
        residual,
        tolerance,
        details=f"max |Delta omega + sinh(omega) cosh(omega)| = {residual:.3e}",
    )
