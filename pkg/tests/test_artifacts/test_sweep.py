"""
Tests the mu sweep and its CSV table.
"""

import pandas as pd
import pytest

import cmcannuli.artifacts.sweep as sweep
from cmcannuli.artifacts.sweep import sweep_family, sweep_row, write_sweep_csv
from cmcannuli.models.exceptions import ConsistencyException, DomainException
from cmcannuli.models.report import SweepRow, Verdict


@pytest.fixture
def rows(rotational_model, rotational_verdicts, deformed_model, deformed_verdicts):
    return [
        sweep_row(rotational_model.with_verdicts(list(rotational_verdicts.values()))),
        sweep_row(deformed_model.with_verdicts(list(deformed_verdicts.values()))),
    ]


def test_sweep_rows(rows):
    assert [row.mu for row in rows] == [0.0, 0.04]
    assert all(row.passed for row in rows)
    assert rows[0].H != rows[1].H


def test_sweep_csv(rows, tmp_path):
    path = write_sweep_csv(rows, tmp_path / "sweep.csv")
    table = pd.read_csv(path)

    assert list(table.columns) == list(SweepRow.model_fields)
    assert len(table) == 2
    assert table["H"].tolist() == [row.H for row in rows]
    assert table["embedded"].tolist() == [True, True]


def test_sweep_rejects_arguments():
    with pytest.raises(DomainException):
        sweep_family(2, 0.04, 0)

    with pytest.raises(DomainException):
        sweep_family(2, -0.1, 4)


@pytest.fixture
def patched_sweep(monkeypatch, branch, rotational_model, rotational_verdicts):
    """
    Replace the construction stages with the session models so the stopping
    rule can be exercised without rebuilding anything.
    """

    def assemble(fp, resolution=None, tracer=None):
        if fp.mu == 0.0:
            return rotational_model
        raise ConsistencyException(f"refusing mu={fp.mu}")

    monkeypatch.setattr(sweep, "continue_family", lambda *args, **kwargs: branch)
    monkeypatch.setattr(sweep, "assemble_annulus", assemble)
    monkeypatch.setattr(
        sweep, "verify_model_sync", lambda model: list(rotational_verdicts.values())
    )

    return monkeypatch


def test_sweep_stops_at_construction_failure(patched_sweep):
    rows = sweep_family(2, 0.04, 2)

    assert len(rows) == 1
    assert rows[0].passed


def test_sweep_stops_at_failed_check(patched_sweep, rotational_model, rotational_verdicts):
    verdicts = list(rotational_verdicts.values())
    verdicts[4] = Verdict.from_residual("embedded", 3.0, 0.0)

    patched_sweep.setattr(sweep, "assemble_annulus", lambda fp, *a, **k: rotational_model)
    patched_sweep.setattr(sweep, "verify_model_sync", lambda model: verdicts)

    rows = sweep_family(2, 0.04, 2)

    assert len(rows) == 1
    assert not rows[0].passed
    assert not rows[0].embedded


def test_sweep_accepts_n2_family(beta_star):
    rows = sweep_family(2, 0.04, 2, resolution=(65, 1024), beta_star=beta_star)
    H = [row.H for row in rows]

    assert [row.mu for row in rows] == pytest.approx([0.0, 0.02, 0.04])
    assert all(row.passed for row in rows)
    assert max(H) - min(H) > 1e-9
