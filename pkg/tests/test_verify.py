import pytest

from paretodialog.verify import SUITES, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_clean_at_small_scale(name):
    report = run_suite(name, instances=40, seed=3)
    assert report.ok, report.violations[:3]
    assert report.instances == 40
    assert report.checks > 0


def test_reports_are_deterministic():
    a = run_suite("nesting", instances=10, seed=9)
    b = run_suite("nesting", instances=10, seed=9)
    assert a.to_json() == b.to_json()


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("made-up", 1, 0)


def test_report_json_shape():
    doc = run_suite("eq6", instances=5, seed=0).to_json()
    assert doc["suite"] == "eq6"
    assert doc["instances"] == 5
    assert doc["violations"] == []
    assert doc["checks"] > 0
