"""
Trajectories of the (y, z) system and of its separated (s, t) form.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from pydantic_numpy.typing import Np1DArrayFp64, Np2DArrayFp64
from scipy.integrate import OdeSolution

from cmcannuli.models.exceptions import DomainException
from cmcannuli.models.parameters import ParamPoint


class YZState(BaseModel):
    model_config = ConfigDict(frozen=True)

    u: float
    y: float
    z: float
    y_prime: float
    z_prime: float


class YZTrajectory(BaseModel):
    """
    Dense solution of y'' = (a_hat - 1)y - 2y(y^2 - z^2),
    z'' = a_hat z - 2z(y^2 - z^2) on [0, u_max].

    y and z are odd in u, so negative arguments are answered by parity.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    point: ParamPoint
    a_hat: float
    u_max: float
    tol: float

    u: Np1DArrayFp64
    states: Np2DArrayFp64
    solution: OdeSolution = Field(exclude=True, repr=False)

    h0: float
    k0: float
    max_drift: float

    u1: float | None = None
    tau: float | None = None

    def evaluate(self, u) -> np.ndarray:
        """
        Rows y, z, y', z' at the requested abscissae; shape (4,) for a
        scalar argument and (4, m) otherwise.
        """
        u = np.asarray(u, dtype=float)
        magnitude = np.abs(u)

        if np.any(magnitude > self.u_max * (1.0 + 1e-12)):
            raise DomainException(
                f"Requested |u| = {magnitude.max()} beyond the window {self.u_max}"
            )

        values = np.asarray(self.solution(np.minimum(magnitude, self.u_max)))
        parity = np.where(u < 0.0, -1.0, 1.0)

        values[0] = values[0] * parity
        values[1] = values[1] * parity

        return values

    def y(self, u):
        return self.evaluate(u)[0]

    def z(self, u):
        return self.evaluate(u)[1]

    def state_at(self, u: float) -> YZState:
        y, z, y_prime, z_prime = self.evaluate(u)
        return YZState(
            u=u, y=float(y), z=float(z), y_prime=float(y_prime), z_prime=float(z_prime)
        )

    @property
    def initial_slope(self) -> float:
        """
        y'(0), which governs the motion of the sphere centers.
        """
        return float(self.states[2, 0])


class STState(BaseModel):
    model_config = ConfigDict(frozen=True)

    lam: float
    s: float
    t: float
    u_of_lambda: float


class STPath(BaseModel):
    """
    Sampled solution of the separated system s'^2 = s(s-1)q(s),
    t'^2 = -t(1-t)q(t) with 2 du/dlambda = s - t.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    point: ParamPoint
    L_half: float

    lam: Np1DArrayFp64
    s: Np1DArrayFp64
    t: Np1DArrayFp64
    u: Np1DArrayFp64
    solution: OdeSolution = Field(exclude=True, repr=False)

    z_sign: float

    def state(self, index: int) -> STState:
        return STState(
            lam=float(self.lam[index]),
            s=float(self.s[index]),
            t=float(self.t[index]),
            u_of_lambda=float(self.u[index]),
        )

    def mapped_yz(self) -> tuple[np.ndarray, np.ndarray]:
        """
        y = sqrt((s - 1)(1 - t)) and z = sign(B - A) sqrt(-st), valid while
        lambda stays in [0, 2L].
        """
        y = np.sqrt(np.maximum((self.s - 1.0) * (1.0 - self.t), 0.0))
        z = self.z_sign * np.sqrt(np.maximum(-self.s * self.t, 0.0))
        return y, z
