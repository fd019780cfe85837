"""
Export and import of annulus meshes.
"""

from pathlib import Path

import numpy as np
from loguru import logger

from cmcannuli.artifacts.prototype import ProvidesMeshFormat
from cmcannuli.config import get_mesh_format, settings
from cmcannuli.models.exceptions import MeshException
from cmcannuli.models.family import AnnulusModel


def mesh_format_for(path: Path, format: str | None = None) -> ProvidesMeshFormat:
    """
    The format named explicitly, else the one matching the file suffix,
    else the configured default.
    """
    if format is not None:
        return get_mesh_format(format)

    suffix = Path(path).suffix.lower()

    if suffix in (".obj", ".ply"):
        return get_mesh_format(suffix[1:])

    return settings.mesh_writer


def export_mesh(
    model: AnnulusModel,
    path: Path,
    format: str | None = None,
    tolerance: float | None = None,
) -> Path:
    """
    Write the rescaled, welded triangle mesh of ``model`` with u-major
    vertex order.

    Raises
    ------
    MeshException
        The v seam did not close to within ``tolerance`` of the diameter,
        so welding it would hide a gap.
    """
    tolerance = settings.tol_geom if tolerance is None else tolerance
    path = Path(path)

    gap = model.patch.closure_residual * model.scale / model.diameter

    if gap > tolerance:
        raise MeshException(
            f"Refusing to weld a seam with relative gap {gap:.3e} (tolerance {tolerance:.1e})"
        )

    writer = mesh_format_for(path, format)
    vertices, faces = model.vertices(), model.faces()

    writer.write(vertices, faces, path)

    logger.info(f"Wrote {len(vertices)} vertices and {len(faces)} triangles to {path}")

    return path


def load_mesh(path: Path, format: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """
    Read vertices and zero-based triangles from an exported mesh.
    """
    path = Path(path)

    try:
        return mesh_format_for(path, format).read(path)
    except (OSError, ValueError) as e:
        raise MeshException(f"Could not read mesh {path}: {e}") from e


def load_obj(path: Path) -> tuple[np.ndarray, np.ndarray]:
    return load_mesh(path, "obj")
