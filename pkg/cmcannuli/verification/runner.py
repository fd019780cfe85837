"""
Run the checks concurrently over one read-only model.
"""

import asyncio

from asyncer import asyncify
from loguru import logger
from opentelemetry import trace

from cmcannuli.models.exceptions import DomainException
from cmcannuli.models.family import AnnulusModel
from cmcannuli.models.report import Verdict
from cmcannuli.verification.boundary import check_closure, check_free_boundary
from cmcannuli.verification.curvature import check_mean_curvature, check_sinh_gordon
from cmcannuli.verification.embedding import check_embedded
from cmcannuli.verification.rotation import check_rotation_index
from cmcannuli.verification.spherical import check_spherical_lines
from cmcannuli.verification.symmetry import check_symmetry

CHECKS = {
    "free_boundary": check_free_boundary,
    "closure": check_closure,
    "symmetry": check_symmetry,
    "rotation_index": check_rotation_index,
    "embedded": check_embedded,
    "mean_curvature": check_mean_curvature,
    "spherical_lines": check_spherical_lines,
    "sinh_gordon": check_sinh_gordon,
}


async def verify_model(
    model: AnnulusModel,
    checks: list[str] | None = None,
    tracer: trace.Tracer | None = None,
) -> list[Verdict]:
    """
    Run the named checks (all by default) and return their verdicts in the
    order of ``CHECKS``.
    """
    tracer = tracer or trace.get_tracer("cmcannuli-verifier")
    names = list(CHECKS) if checks is None else [c for c in CHECKS if c in checks]

    unknown = set(checks or []) - set(CHECKS)
    if unknown:
        raise DomainException(f"Unknown checks: {sorted(unknown)}")

    with tracer.start_as_current_span(
        "verify_model",
        attributes={"n": model.n, "mu": model.family_point.mu, "checks": names},
    ) as span:
        verdicts = await asyncio.gather(
            *[asyncify(CHECKS[name])(model) for name in names]
        )

        for verdict in verdicts:
            log = logger.info if verdict.passed else logger.warning
            log(
                f"{verdict.name}: {'pass' if verdict.passed else 'FAIL'} "
                f"(residual {verdict.residual:.3e}, tolerance {verdict.tolerance:.1e})"
            )

        passed = all(v.passed for v in verdicts)
        span.set_attribute("verify:passed", passed)
        span.set_status(trace.Status(trace.StatusCode.OK))

        return list(verdicts)


def verify_model_sync(
    model: AnnulusModel, checks: list[str] | None = None
) -> list[Verdict]:
    return asyncio.run(verify_model(model, checks))
