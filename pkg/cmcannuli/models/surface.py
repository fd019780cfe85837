"""
Sampled geometry of the surface: the conformal factor, moving frames and
the spheres carrying the v-curvature lines.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from pydantic_numpy.typing import Np1DArrayFp64, Np2DArrayFp64, NpNDArrayFp64
from scipy.integrate import OdeSolution

from cmcannuli.models.dynamics import YZTrajectory
from cmcannuli.models.parameters import ParamPoint


class ProfileSamples(BaseModel):
    """
    x(v) = exp(omega(0, v)) with 4 x'^2 = p(x), x(0) = rho0.
    """

    model_config = ConfigDict(frozen=True)

    v: Np1DArrayFp64
    x: Np1DArrayFp64
    x_prime: Np1DArrayFp64


class OmegaField(BaseModel):
    """
    omega and its first derivatives on a (u, v) grid, indexed [u, v].
    """

    model_config = ConfigDict(frozen=True)

    u: Np1DArrayFp64
    v: Np1DArrayFp64
    omega: Np2DArrayFp64
    omega_u: Np2DArrayFp64
    omega_v: Np2DArrayFp64

    @property
    def X(self) -> np.ndarray:
        return np.exp(self.omega)

    @property
    def kappa1(self) -> np.ndarray:
        return np.exp(-self.omega) * np.cosh(self.omega)

    @property
    def kappa2(self) -> np.ndarray:
        return np.exp(-self.omega) * np.sinh(self.omega)

    @property
    def gaussian_curvature(self) -> np.ndarray:
        return self.kappa1 * self.kappa2

    def columns(self, stride: int, count: int) -> "OmegaField":
        """
        Every ``stride``-th v column, keeping the first ``count``.
        """
        keep = slice(0, stride * count, stride)
        return OmegaField(
            u=self.u,
            v=self.v[keep],
            omega=self.omega[:, keep],
            omega_u=self.omega_u[:, keep],
            omega_v=self.omega_v[:, keep],
        )


class FramePoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    psi: Np1DArrayFp64
    e1: Np1DArrayFp64
    e2: Np1DArrayFp64
    N: Np1DArrayFp64


class FrameCurve(BaseModel):
    """
    The planar profile psi(u, 0) with its frame, stored as the dense solution
    of (omega, a, psi_1, psi_3) where e1 = (sin a, 0, cos a).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    point: ParamPoint
    trajectory: YZTrajectory = Field(repr=False)
    u_min: float
    u_max: float
    forward: OdeSolution = Field(exclude=True, repr=False)
    backward: OdeSolution | None = Field(default=None, exclude=True, repr=False)

    def _state(self, u) -> np.ndarray:
        u = np.atleast_1d(np.asarray(u, dtype=float))
        state = np.empty((4, len(u)))

        ahead = u >= 0.0
        if np.any(ahead):
            state[:, ahead] = self.forward(u[ahead])
        if np.any(~ahead):
            state[:, ~ahead] = self.backward(u[~ahead])

        return state

    def omega(self, u) -> np.ndarray:
        return self._state(u)[0]

    def frames(self, u) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """
        psi, e1, e2, N at the requested u values, each of shape (m, 3).
        """
        omega, a, psi1, psi3 = self._state(u)
        zeros = np.zeros_like(a)

        psi = np.stack([psi1, zeros, psi3], axis=-1)
        e1 = np.stack([np.sin(a), zeros, np.cos(a)], axis=-1)
        e2 = np.stack([zeros, -np.ones_like(a), zeros], axis=-1)
        N = np.stack([np.cos(a), zeros, -np.sin(a)], axis=-1)

        return psi, e1, e2, N

    def frame_point(self, u: float) -> FramePoint:
        psi, e1, e2, N = self.frames(u)
        return FramePoint(psi=psi[0], e1=e1[0], e2=e2[0], N=N[0])


class SphereData(BaseModel):
    """
    The sphere (or plane, when y(u) = 0) containing the curvature line
    v -> psi(u, v), and the constant angle the surface makes with it.
    """

    model_config = ConfigDict(frozen=True)

    u: float
    center: tuple[float, float, float] | None
    radius: float
    angle: float
    c3: float | None

    @property
    def planar(self) -> bool:
        return self.center is None


class SurfacePatch(BaseModel):
    """
    Positions and frames on a (u, v) grid indexed [u, v, coordinate]. The v
    direction is periodic: column ``len(v)`` would coincide with column 0,
    and the mismatch measured there before welding is ``closure_residual``.

    ``yz_rows`` holds y, z, y', z' at every u sample, shape (4, len(u)).
    Planar rows carry NaN centers and an infinite radius.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    sigma: float

    u: Np1DArrayFp64
    v: Np1DArrayFp64
    psi: NpNDArrayFp64
    e1: NpNDArrayFp64
    e2: NpNDArrayFp64
    N: NpNDArrayFp64

    field: OmegaField
    yz_rows: Np2DArrayFp64

    centers: Np2DArrayFp64
    radii: Np1DArrayFp64
    angles: Np1DArrayFp64
    closure_residual: float

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.u), len(self.v)
