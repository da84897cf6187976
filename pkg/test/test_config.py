import json

import pytest
from pydantic import ValidationError

from motivic_verifier.algebra import Bidegree
from motivic_verifier.catalog import RING_NAMES
from motivic_verifier.checks import CHECK_NAMES
from motivic_verifier.config import OutputFormat, RunConfig, Settings, load_run_config
from motivic_verifier.models import Box, CheckReport, CheckStatus, Finding


def test_run_config_defaults():
    run = RunConfig()
    assert run.box == Box(p_max=20, q_max=12, m_max=24)
    assert run.rings == list(RING_NAMES)
    assert run.checks == list(CHECK_NAMES)
    assert run.format is OutputFormat.TEXT
    assert run.jobs == 1


def test_run_config_splits_names():
    run = RunConfig(checks="squares, ker_t2", rings="chow,motivic-z")
    assert run.checks == ["squares", "ker_t2"]
    assert run.rings == ["chow", "motivic-z"]


@pytest.mark.parametrize(
    "fields",
    [
        {"checks": "squares,nope"},
        {"checks": ""},
        {"rings": ["motivic-q"]},
        {"p_max": -1},
        {"jobs": 0},
        {"colour": "red"},
    ],
)
def test_run_config_rejects(fields):
    with pytest.raises(ValidationError):
        RunConfig(**fields)


def test_load_run_config_overrides(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"p_max": 6, "q_max": 3, "checks": ["squares"], "format": "csv"}), encoding="utf-8")
    run = load_run_config(path, q_max=5, format=None, checks=None)
    assert run.box == Box(p_max=6, q_max=5, m_max=24)
    assert run.checks == ["squares"]
    assert run.format is OutputFormat.CSV
    assert load_run_config(None, m_max=2).m_max == 2


def test_load_run_config_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_run_config(tmp_path / "missing.json")


def test_settings_from_env(monkeypatch):
    monkeypatch.setenv("MRV_JOBS", "3")
    monkeypatch.setenv("MRV_SQUARE_ROOT_CAP", "12")
    settings = Settings()
    assert settings.jobs == 3
    assert settings.square_root_cap == 12


def test_report_status():
    box = Box(p_max=1, q_max=1, m_max=1)
    late = Finding.at(Bidegree(4, 2), "a", "b")
    early = Finding.at(Bidegree(3, 2), "a", "b", ["x"])
    report = CheckReport.build("squares", box, [late, early])
    assert report.status is CheckStatus.FAIL
    assert report.findings == [early, late]
    assert CheckReport.build("squares", box, []).status is CheckStatus.PASS
    assert not CheckReport.build("presentation_vs_uct", box, [late], report_only=True).failed


def test_classical_finding_bidegree_has_an_empty_weight():
    finding = Finding.at(Bidegree(7), "a", "b", ["p1·β̃w2"])
    assert finding.model_dump(mode="json")["bidegree"] == [7, None]
    assert Finding.at(Bidegree(7, 4), "a", "b").bidegree == [7, 4]
