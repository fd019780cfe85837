"""
Sweep the family in mu: continuation, assembly and verification per point.
"""

from pathlib import Path

import numpy as np
import pandas as pd
from loguru import logger
from opentelemetry import trace
from tqdm import tqdm

from cmcannuli.construction.annulus import assemble_annulus
from cmcannuli.construction.family import continue_family
from cmcannuli.models.exceptions import CMCAnnuliException, DomainException
from cmcannuli.models.family import AnnulusModel
from cmcannuli.models.report import SweepRow
from cmcannuli.verification.runner import verify_model_sync


def sweep_row(model: AnnulusModel) -> SweepRow:
    p = model.family_point.param
    flags = {v.name: v.passed for v in model.verdicts}

    return SweepRow(
        mu=model.family_point.mu,
        alpha=p.alpha,
        beta=p.beta,
        gamma=p.gamma,
        H=model.mean_curvature_rescaled,
        **flags,
    )


def sweep_family(
    n: int,
    mu_max: float,
    steps: int,
    resolution: tuple[int, int] | None = None,
    beta_star: float | None = None,
    tracer: trace.Tracer | None = None,
) -> list[SweepRow]:
    """
    Build and verify the annuli at mu = 0, mu_max / steps, ..., mu_max.

    The sweep stops at the first point that fails a check or cannot be
    constructed; rows up to and including a failing point are returned, so
    the accepted prefix is every row before the first failure.
    """
    if steps < 1 or mu_max <= 0.0:
        raise DomainException(f"Need steps >= 1 and mu_max > 0, got {steps}, {mu_max}")

    tracer = tracer or trace.get_tracer("cmcannuli-sweep")

    with tracer.start_as_current_span(
        "sweep_family", attributes={"n": n, "mu_max": mu_max, "steps": steps}
    ) as span:
        branch = continue_family(
            n, list(np.linspace(0.0, mu_max, steps + 1)), beta_star=beta_star, tracer=tracer
        )

        rows = []

        for fp in tqdm(branch.points, desc=f"Sweeping n={n}"):
            try:
                model = assemble_annulus(fp, resolution, tracer=tracer)
            except CMCAnnuliException as e:
                logger.warning(f"Stopping the sweep at mu={fp.mu}: {e}")
                break

            model = model.with_verdicts(verify_model_sync(model))
            row = sweep_row(model)
            rows.append(row)

            if not row.passed:
                logger.warning(f"Stopping the sweep at mu={fp.mu}: a check failed")
                break

        accepted = sum(row.passed for row in rows)
        span.set_attribute("sweep:accepted", accepted)
        span.set_status(trace.Status(trace.StatusCode.OK))

        logger.info(f"Sweep for n={n} accepted {accepted} of {len(branch.points)} points")

        return rows


def write_sweep_csv(rows: list[SweepRow], path: Path) -> Path:
    table = pd.DataFrame([row.model_dump() for row in rows], columns=list(SweepRow.model_fields))
    table.to_csv(path, index=False, float_format="%.17g")
    return Path(path)
