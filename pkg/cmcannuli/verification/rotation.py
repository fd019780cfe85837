"""
Rotation index of the planar closed curve psi(0, v).
"""

import math

import numpy as np

from cmcannuli.config import settings
from cmcannuli.models.exceptions import NumericException
from cmcannuli.models.family import AnnulusModel
from cmcannuli.models.report import Verdict


def turning_angles(curve: np.ndarray) -> np.ndarray:
    """
    Signed exterior angles of a closed polygon in the x1 x2 plane, about
    +x3. Entry j is the turn at vertex j + 1.
    """
    tangents = np.roll(curve, -1, axis=0) - curve
    speed = np.linalg.norm(tangents[:, :2], axis=-1)

    if np.any(speed <= 1e-14 * speed.max()):
        raise NumericException("Degenerate tangent on the u = 0 curve")

    following = np.roll(tangents, -1, axis=0)
    cross = tangents[:, 0] * following[:, 1] - tangents[:, 1] * following[:, 0]
    dot = tangents[:, 0] * following[:, 0] + tangents[:, 1] * following[:, 1]

    return np.arctan2(cross, dot)


def segment_turning(angles: np.ndarray, n: int) -> np.ndarray:
    """
    Turning of the 2n arcs between consecutive mirror vertices 0, m, 2m, ...
    with m = len(angles) / 2n. The turn at a mirror vertex is split evenly
    between the two arcs meeting there.
    """
    turn_at = np.roll(angles, 1)
    starts = np.arange(0, len(turn_at), len(turn_at) // (2 * n))

    return (
        np.add.reduceat(turn_at, starts)
        - 0.5 * turn_at[starts]
        + 0.5 * turn_at[np.roll(starts, -1)]
    )


def check_rotation_index(model: AnnulusModel, tolerance: float | None = None) -> Verdict:
    """
    The tangent of psi(0, v) winds exactly once clockwise: total turning
    -2 pi, split into 2n arcs turning by pi Per = -pi / n each. The
    residual is the larger of the total and the per-arc deviations.
    """
    tolerance = settings.tol_turning if tolerance is None else tolerance

    patch = model.patch
    curve = patch.psi[len(patch.u) // 2]

    angles = turning_angles(curve)
    total = float(np.sum(angles))
    index = round(total / (2.0 * math.pi))

    segments = segment_turning(angles, model.n)
    inside = bool(np.all(np.abs(segments) < math.pi))
    expected = math.pi * model.family_point.per
    segment_error = float(np.max(np.abs(segments - expected)))

    if index == -1 and inside:
        residual = max(abs(total + 2.0 * math.pi), segment_error)
    else:
        residual = math.inf

    return Verdict.from_residual(
        "rotation_index",
        residual,
        tolerance,
        details=(
            f"index {index}, total turning {total:.12f}, "
            f"max arc deviation from pi Per {segment_error:.3e}"
        ),
    )
