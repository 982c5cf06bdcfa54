import pytest

from distfrob.report import Report
from distfrob.suites import NORM_SUITES, run_suite


@pytest.mark.parametrize("name", list(NORM_SUITES))
def test_norm_suites_p5(name):
    rep = run_suite(name, 5)
    assert rep.ok, rep.to_text()
    assert rep.checked > 0


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("prop-9.9.9", 3)


def test_bad_prime():
    with pytest.raises(ValueError):
        run_suite("cor-2.1.4", 4)


def test_report_schema():
    rep = run_suite("prop-3.2.1", 5, m=1)
    assert set(rep.to_dict()) == {"suite", "p", "m", "bounds", "checked", "failures", "seed"}


def test_report_records_failures_sorted():
    rep = Report("demo", 3)
    rep.record("b", 1, 2)
    rep.record("a", 1, 2)
    rep.record("c", 1, 1)
    assert not rep.ok and rep.checked == 3
    assert [f["case"] for f in rep.to_dict()["failures"]] == ["a", "b"]


def test_small_splitting_sweep():
    rep = run_suite("prop-2.2.1", 3, bounds=2)
    assert rep.ok, rep.to_text()


def test_small_oracle_run():
    assert run_suite("weyl-oracle", 5, bounds=4).ok
