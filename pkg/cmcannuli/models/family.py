"""
Points of the annulus family and the assembled, rescaled surfaces.
"""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.spatial import ConvexHull
from scipy.spatial.distance import pdist

from cmcannuli.models.parameters import ParamPoint
from cmcannuli.models.report import Verdict
from cmcannuli.models.surface import SurfacePatch


class FamilyPoint(BaseModel):
    """
    A point on the level set Per = -1/n where the free-boundary matching
    u* = tau holds. ``mu`` is alpha - 1.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    mu: float
    param: ParamPoint
    u_star: float
    tau: float
    sigma: float
    per: float

    @property
    def matching_residual(self) -> float:
        return self.u_star - self.tau


class FamilyBranch(BaseModel):
    """
    The accepted prefix of a continuation in mu. When ``truncated`` is set
    ``notice`` says where and why the corrector gave up.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    points: list[FamilyPoint]
    truncated: bool = False
    notice: str | None = None

    @property
    def mu(self) -> list[float]:
        return [p.mu for p in self.points]


class AnnulusModel(BaseModel):
    """
    An assembled surface patch over [-u_extent, u_extent] x [0, 2 n sigma),
    with the homothety psi -> (psi - center) / radius mapping its boundary
    sphere to the unit sphere.

    ``control`` marks surfaces built on purpose outside the free-boundary
    window (over-extended nodoids, truncated annuli); their boundary rows
    need not lie on the unit sphere.
    """

    model_config = ConfigDict(frozen=True)

    family_point: FamilyPoint
    patch: SurfacePatch = Field(repr=False)

    boundary_center: tuple[float, float, float]
    boundary_radius: float
    u_extent: float
    control: bool = False

    verdicts: list[Verdict] = []

    @property
    def n(self) -> int:
        return self.family_point.n

    @property
    def rotational(self) -> bool:
        return self.family_point.param.alpha == 1.0

    @property
    def scale(self) -> float:
        return 1.0 / self.boundary_radius

    @property
    def mean_curvature_rescaled(self) -> float:
        """
        The surface has H = 1/2 before scaling by 1/R.
        """
        return 0.5 * self.boundary_radius

    @property
    def boundary_rows(self) -> tuple[int, int]:
        return 0, len(self.patch.u) - 1

    def rescaled_positions(self) -> np.ndarray:
        """
        Positions after the homothety, shape (Nu, Nv, 3).
        """
        return (self.patch.psi - np.asarray(self.boundary_center)) * self.scale

    def vertices(self) -> np.ndarray:
        """
        Rescaled positions flattened u-major, shape (Nu * Nv, 3).
        """
        return self.rescaled_positions().reshape(-1, 3)

    def faces(self) -> np.ndarray:
        """
        Triangles of the welded quad grid, indices into ``vertices``.
        Each quad (i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1) is split
        along its (i, j)-(i + 1, j + 1) diagonal.
        """
        Nu, Nv = self.patch.shape
        i, j = np.meshgrid(np.arange(Nu - 1), np.arange(Nv), indexing="ij")

        a = i * Nv + j
        b = (i + 1) * Nv + j
        c = (i + 1) * Nv + (j + 1) % Nv
        d = i * Nv + (j + 1) % Nv

        first = np.stack([a, b, c], axis=-1).reshape(-1, 3)
        second = np.stack([a, c, d], axis=-1).reshape(-1, 3)

        return np.stack([first, second], axis=1).reshape(-1, 3)

    @property
    def diameter(self) -> float:
        points = self.vertices()
        hull = ConvexHull(points)
        return float(pdist(points[hull.vertices]).max())

    @property
    def axis_point(self) -> np.ndarray:
        """
        Where the vertical symmetry axis meets x3 = 0, after rescaling.
        """
        finite = np.isfinite(self.patch.radii)
        center = np.nanmean(self.patch.centers[finite], axis=0)
        return (center - np.asarray(self.boundary_center)) * self.scale * np.array(
            [1.0, 1.0, 0.0]
        )

    def symmetry_plane_normals(self) -> np.ndarray:
        """
        Normals R_z(k pi / n) e2(0, 0) of the n vertical mirror planes, all
        containing the axis. Shape (n, 3).
        """
        e2 = self.patch.e2[len(self.patch.u) // 2, 0]
        angles = np.arange(self.n) * math.pi / self.n

        cos, sin = np.cos(angles), np.sin(angles)
        return np.stack(
            [cos * e2[0] - sin * e2[1], sin * e2[0] + cos * e2[1], np.full_like(cos, e2[2])],
            axis=-1,
        )

    def with_verdicts(self, verdicts: list[Verdict]) -> "AnnulusModel":
        return self.model_copy(update={"verdicts": verdicts})
