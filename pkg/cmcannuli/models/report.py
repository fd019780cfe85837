"""
Check verdicts and the machine-readable reports built from them.
"""

import math

from pydantic import BaseModel, ConfigDict


class Verdict(BaseModel):
    """
    Outcome of one check: ``passed`` holds exactly when the (finite)
    residual does not exceed the tolerance.
    """

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    name: str
    residual: float
    tolerance: float
    passed: bool
    details: str = ""

    @classmethod
    def from_residual(
        cls, name: str, residual: float, tolerance: float, details: str = ""
    ) -> "Verdict":
        residual = float(residual)
        return cls(
            name=name,
            residual=residual,
            tolerance=tolerance,
            passed=math.isfinite(residual) and residual <= tolerance,
            details=details,
        )


class AnnulusReport(BaseModel):
    """
    Everything needed to identify and re-verify one constructed annulus.
    ``necksize_unscaled`` is only present for the rotational (mu = 0) model.
    """

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    n: int
    mu: float
    alpha: float
    beta: float
    gamma: float

    sigma: float
    per: float
    u_star: float
    tau: float

    boundary_radius: float
    H_rescaled: float
    necksize_unscaled: float | None = None

    verdicts: list[Verdict]
    grid: tuple[int, int]
    tool_version: str

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)


class FamilyReport(BaseModel):
    """
    The roots found along the rotational arc for one n.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    beta1: float
    beta_star: float
    gamma_star: float
    u_star: float
    tau: float
    sigma: float
    per: float
    tool_version: str


class SweepRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    mu: float
    alpha: float
    beta: float
    gamma: float
    H: float

    free_boundary: bool
    closure: bool
    symmetry: bool
    rotation_index: bool
    embedded: bool
    mean_curvature: bool
    spherical_lines: bool
    sinh_gordon: bool

    @property
    def passed(self) -> bool:
        return all(
            (
                self.free_boundary,
                self.closure,
                self.symmetry,
                self.rotation_index,
                self.embedded,
                self.mean_curvature,
                self.spherical_lines,
                self.sinh_gordon,
            )
        )
