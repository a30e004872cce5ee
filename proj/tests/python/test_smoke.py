import os
import pathlib

import pytest

import densdeg

FIXTURES = pathlib.Path(
    os.environ.get("DENSDEG_FIXTURES", pathlib.Path(__file__).resolve().parents[2] / "fixtures" / "worked_examples.json")
)


def test_genus2_index2_is_even_degrees():
    r = densdeg.evaluate("curve", {"curve": {"genus": 2, "facts": {"index": 2}}})
    assert r["exact"]
    assert r["lower"]["members"][:5] == [2, 4, 6, 8, 10]


def test_missing_fact_raises():
    with pytest.raises(densdeg.NeedsFact):
        densdeg.evaluate("curve", {"curve": {"genus": 2, "facts": {}}})


def test_lenient_mode_records_skips():
    r = densdeg.evaluate("curve", {"curve": {"genus": 2, "facts": {}}}, strict=False)
    assert any(t["status"] == "skipped" for t in r["trace"])


def test_bad_kind():
    with pytest.raises(ValueError):
        densdeg.evaluate("surface", {})


def test_formulas():
    assert densdeg.n_pointed(2, 2, 1, 1) == 10
    assert densdeg.n_general(2, 2, 13) == 512


def test_rule_roster_ids_unique():
    ids = [r["id"] for r in densdeg.rules()]
    assert len(ids) == len(set(ids))


def test_set_spec():
    assert densdeg.materialize({"step": 2, "from": 4, "with": [2]}, 10) == [2, 4, 6, 8, 10]


def test_fixture_selftest():
    results = densdeg.selftest(FIXTURES)
    assert results
    assert all(ok for _, ok, _ in results), [r for r in results if not r[1]]
