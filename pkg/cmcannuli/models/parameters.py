"""
Points of the parameter domain and the polynomial data derived from them.
"""

from pydantic import BaseModel, ConfigDict


class ParamPoint(BaseModel):
    """
    A triple (alpha, beta, gamma). The construction domain is alpha, beta,
    gamma >= 1; alpha and beta may be any positive number through the
    analytic extension of the period map.
    """

    model_config = ConfigDict(frozen=True)

    alpha: float
    beta: float
    gamma: float


class DerivedConstants(BaseModel):
    """
    A = (alpha + 1/alpha)/2, B = (beta + 1/beta)/2, C = (gamma - 1/gamma)/2
    and a_hat = 1 - AB + C^2.
    """

    model_config = ConfigDict(frozen=True)

    A: float
    B: float
    C: float
    a_hat: float


class QuarticData(BaseModel):
    """
    The quartic p(x) = -(x - rho0)(x - rho1)(x + beta gamma)(x + gamma/beta).

    Coefficients are stored in ascending powers of x.
    """

    model_config = ConfigDict(frozen=True)

    coefficients: tuple[float, float, float, float, float]
    rho0: float
    rho1: float
    negative_roots: tuple[float, float]


class CubicData(BaseModel):
    """
    The cubic q(x) = -(x - r3) h(x) with h(x) = x^2 - (1 - AB)x + (A - B)^2/4.

    ``double_root`` marks r1 = r2 (A = 1 or B = 1) and ``vanishes_at_zero``
    marks r2 = 0 (A = B). Both are decided from the parameters, never from
    the computed roots.
    """

    model_config = ConfigDict(frozen=True)

    coefficients: tuple[float, float, float, float]
    h_coefficients: tuple[float, float, float]
    r1: float
    r2: float
    r3: float
    double_root: bool
    vanishes_at_zero: bool


class RegionMembership(BaseModel):
    model_config = ConfigDict(frozen=True)

    in_O: bool
    in_W: bool
    L_aux: float
    in_W_boundary: bool = False
    sign_remark: bool = False
