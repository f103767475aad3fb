import json

import pytest

from iso4d.config import REPORT_SCHEMA_VERSION, TOOLKIT_VERSION, ToolkitConfig
from iso4d.errors import UnknownSystemError
from iso4d.models.report_models import FAIL, PASS, SKIPPED, CheckRecord, VerificationReport
from iso4d.services.verification_service import get_verification_service


def _report(*verdicts):
    records = [
        CheckRecord(check_id=f"corpus:{k}", kind="corpus", subject="spectral", verdict=v, wall_time=0.25)
        for k, v in enumerate(verdicts)
    ]
    return VerificationReport(
        schema_version=REPORT_SCHEMA_VERSION, toolkit_version=TOOLKIT_VERSION, seed=7, samples=2, records=records,
    )


# ---------- 报告模型 ----------

def test_report_excludes_wall_time_by_default():
    report = _report(PASS, PASS)
    payload = json.loads(report.to_json())
    assert all("wall_time" not in r for r in payload["records"])
    timed = json.loads(report.to_json(timings=True))
    assert timed["records"][0]["wall_time"] == 0.25


def test_report_verdict_and_summary():
    assert _report(PASS, PASS).passed
    assert not _report(PASS, SKIPPED).passed
    report = _report(PASS, FAIL, SKIPPED, PASS)
    assert not report.passed
    assert report.summary() == {PASS: 2, FAIL: 1, SKIPPED: 1}


def test_empty_report_passes():
    assert _report().passed


# ---------- 配置 ----------

def test_config_dict():
    data = ToolkitConfig.as_dict()
    assert data["version"] == TOOLKIT_VERSION
    assert data["seed"] == ToolkitConfig.SEED


def test_config_objects():
    assert ToolkitConfig.get_sampling_config().seed == ToolkitConfig.SEED
    assert ToolkitConfig.get_flow_config().rtol == ToolkitConfig.RTOL
    assert ToolkitConfig.get_analysis_config().cluster_tol == ToolkitConfig.CLUSTER_TOL


# ---------- 编排 ----------

def test_unknown_check_kind():
    with pytest.raises(UnknownSystemError):
        get_verification_service().plan(["nonsense"])


def test_unknown_subject():
    with pytest.raises(UnknownSystemError):
        get_verification_service().plan(["greek"], subjects=["Gar:6"])


def test_plan_expands_subjects():
    tasks = get_verification_service().plan(["compat"], samples=1, seed=1, subjects=["Gar:5"])
    ids = [t.check_id for t in tasks]
    assert ids == [
        "compat:Gar:((((1))))((((1))))/t1",
        "compat:Gar:((((1))))((((1))))/t2",
        "compat:Gar:((((1))))((((1))))/cross",
    ]


def test_corpus_run_is_reproducible():
    service = get_verification_service()
    first = service.run(["corpus"], seed=3)
    second = service.run(["corpus"], seed=3)
    assert first.passed, first.to_json()
    assert [r.check_id for r in first.records] == ["corpus:edges", "corpus:flagged", "corpus:round-trip"]
    assert first.to_json() == second.to_json()
    assert first.discrepancies


def test_progress_callback_sees_every_record():
    seen = []
    report = get_verification_service().run(["corpus"], progress=seen.append)
    assert sorted(r.check_id for r in seen) == [r.check_id for r in report.records]
