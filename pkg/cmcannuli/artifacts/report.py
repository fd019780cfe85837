"""
JSON reports for constructed annuli and for the family roots.
"""

from pathlib import Path
from typing import TypeVar

import numpy as np
from loguru import logger
from pydantic import BaseModel

from cmcannuli import __version__
from cmcannuli.models.family import AnnulusModel, FamilyPoint
from cmcannuli.models.report import AnnulusReport, FamilyReport, Verdict

ReportT = TypeVar("ReportT", bound=BaseModel)


def measured_necksize(model: AnnulusModel) -> float:
    """
    Mean distance of the unscaled u = 0 row from the vertical axis.
    """
    patch = model.patch
    finite = np.isfinite(patch.radii)
    axis = np.mean(patch.centers[finite][:, :2], axis=0)

    row = patch.psi[len(patch.u) // 2][:, :2]
    return float(np.mean(np.linalg.norm(row - axis, axis=-1)))


def annulus_report(
    model: AnnulusModel, verdicts: list[Verdict] | None = None
) -> AnnulusReport:
    fp = model.family_point
    p = fp.param

    return AnnulusReport(
        n=fp.n,
        mu=fp.mu,
        alpha=p.alpha,
        beta=p.beta,
        gamma=p.gamma,
        sigma=fp.sigma,
        per=fp.per,
        u_star=fp.u_star,
        tau=fp.tau,
        boundary_radius=model.boundary_radius,
        H_rescaled=model.mean_curvature_rescaled,
        necksize_unscaled=measured_necksize(model) if fp.mu == 0.0 else None,
        verdicts=model.verdicts if verdicts is None else verdicts,
        grid=model.patch.shape,
        tool_version=__version__,
    )


def family_report(fp: FamilyPoint, beta1: float) -> FamilyReport:
    return FamilyReport(
        n=fp.n,
        beta1=beta1,
        beta_star=fp.param.beta,
        gamma_star=fp.param.gamma,
        u_star=fp.u_star,
        tau=fp.tau,
        sigma=fp.sigma,
        per=fp.per,
        tool_version=__version__,
    )


def write_report(report: BaseModel, path: Path) -> Path:
    """
    Serialize in field order; optional fields that are unset are omitted.
    """
    path = Path(path)
    path.write_text(report.model_dump_json(indent=2, exclude_none=True) + "\n")

    logger.info(f"Wrote {type(report).__name__} to {path}")

    return path


def read_report(path: Path, model: type[ReportT] = AnnulusReport) -> ReportT:
    return model.model_validate_json(Path(path).read_text())
