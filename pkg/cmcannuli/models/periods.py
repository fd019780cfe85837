"""
Periods of the boundary row and of the separated (s, t) system.
"""

import math

from pydantic import BaseModel, ConfigDict


class PeriodData(BaseModel):
    """
    The half-period sigma of x(v), the turning angle theta of the planar
    geodesic over one half-period and the normalized period per = theta/pi.
    """

    model_config = ConfigDict(frozen=True)

    sigma: float
    theta: float
    per: float


class STPeriods(BaseModel):
    """
    Half-periods of s and t. ``M_half`` is infinite when t is not periodic.
    """

    model_config = ConfigDict(frozen=True)

    L_half: float
    M_half: float

    @property
    def t_periodic(self) -> bool:
        return math.isfinite(self.M_half)
