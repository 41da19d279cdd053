"""检查结果与横幅输出"""

import io

import pytest

from reporting import CONJECTURE, OBSERVATION, THEOREM, CheckReport, Reporter, summary_frame


def test_status_by_kind():
    assert CheckReport("a", THEOREM, False).status == "FAIL"
    assert CheckReport("b", CONJECTURE, False).status == "refuted"
    assert CheckReport("c", OBSERVATION, False).status == "reported"


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        CheckReport("x", "lemma-ish", True)


def test_summary_frame_columns():
    frame = summary_frame([CheckReport("a", THEOREM, True, note="5 samples")])
    assert list(frame.columns) == ["check", "kind", "status", "witness", "note"]
    assert frame.iloc[0]["note"] == "5 samples"


def test_reporter_banner_and_witness():
    out = io.StringIO()
    reporter = Reporter(stream=out)
    reporter.banner("theorem checks")
    reporter.report(CheckReport("linearity", THEOREM, False, witness=(4, 7)))
    text = out.getvalue()
    assert "=" * 80 in text
    assert "❌" in text and "(4, 7)" in text


def test_quiet_reporter_prints_nothing():
    out = io.StringIO()
    Reporter(quiet=True, stream=out).banner("x")
    assert out.getvalue() == ""
