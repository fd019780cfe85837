"""
Tests the concurrent check runner.
"""

import pytest

from cmcannuli.models.exceptions import DomainException
from cmcannuli.verification.runner import CHECKS, verify_model, verify_model_sync


@pytest.mark.asyncio(loop_scope="session")
async def test_verify_selected_checks(deformed_model):
    verdicts = await verify_model(deformed_model, checks=["sinh_gordon", "closure"])

    assert [v.name for v in verdicts] == ["closure", "sinh_gordon"]
    assert all(v.passed for v in verdicts)


@pytest.mark.asyncio(loop_scope="session")
async def test_verify_rejects_unknown_check(deformed_model):
    with pytest.raises(DomainException):
        await verify_model(deformed_model, checks=["closure", "flatness"])


def test_verify_sync_matches(rotational_model, rotational_verdicts):
    verdicts = verify_model_sync(rotational_model, checks=["free_boundary"])

    assert len(verdicts) == 1
    assert verdicts[0] == rotational_verdicts["free_boundary"]
    assert len(rotational_verdicts) == len(CHECKS)
