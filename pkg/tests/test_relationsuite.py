import json

import pytest

from catsl2.qlaurent import Laurent
from catsl2.relationsuite import (
    MANIFEST,
    SUITE_ORDER,
    inventory,
    quantum_integer,
    resolve_suites,
    run_suite,
)


def test_quantum_integer_values():
    assert quantum_integer(0).is_zero()
    assert quantum_integer(1) == Laurent({0: 1})
    assert quantum_integer(2) == Laurent({1: 1, -1: 1})
    assert quantum_integer(-3) == -Laurent({2: 1, 0: 1, -2: 1})
    for n in range(-6, 7):
        assert quantum_integer(-n) == -quantum_integer(n)


def test_coverage_lock():
    # every relation display has exactly one check, locked by the manifest
    assert inventory() == MANIFEST
    assert set(MANIFEST) == set(SUITE_ORDER)


def test_resolve_suites():
    assert resolve_suites(None) == SUITE_ORDER
    assert resolve_suites(["bubbles"]) == ("bubbles",)
    assert resolve_suites(["d"]) == ("bubbles",)
    assert resolve_suites(["a", "biadjointness"]) == ("biadjointness",)
    with pytest.raises(ValueError):
        resolve_suites(["frobenius"])


def test_run_suite_rank_one_all_pass():
    report = run_suite(1)
    assert report.all_ok()
    by_name = {}
    for result in report.results:
        by_name.setdefault(result.check, []).append(result)
    braid = by_name["nilhecke_braid_eee"]
    assert len(braid) == 1 and braid[0].status == "skipped"
    assert braid[0].reason == "requires N >= 3"
    assert all(r.status == "pass" for r in by_name["biadjointness_zigzag_e1"])


def test_run_suite_selected_bubbles():
    report = run_suite(2, suites=["bubbles"])
    assert report.all_ok()
    ks = {r.k for r in report.results if r.check == "bubble_unit"}
    assert ks == {0, 1, 2}
    assert {r.check for r in report.results} == set(MANIFEST["bubbles"])


def test_run_suite_identity_decomposition_covers_all_weights():
    report = run_suite(3, suites=["identity_decomposition"])
    assert report.all_ok()
    fe = {r.k for r in report.results if r.check == "identity_decomposition_fe"}
    ef = {r.k for r in report.results if r.check == "identity_decomposition_ef"}
    weights = {2 * k - 3 for k in fe} | {2 * k - 3 for k in ef}
    assert weights == {-3, -1, 1, 3}


def test_run_suite_input_validation():
    with pytest.raises(ValueError):
        run_suite(0)
    with pytest.raises(ValueError):
        run_suite(7)
    assert run_suite(5, suites=["k0_shadow"], max_rank=5).all_ok()


def test_reports_deterministic():
    a = run_suite(2, suites=["well_definedness", "k0_shadow"])
    b = run_suite(2, suites=["well_definedness", "k0_shadow"])

    def strip(report):
        payload = json.loads(report.to_json())
        for entry in payload["checks"]:
            entry.pop("millis")
        return json.dumps(payload, sort_keys=True)

    assert strip(a) == strip(b)


def test_report_shapes():
    report = run_suite(1, suites=["bubbles"])
    payload = json.loads(report.to_json())
    assert payload["engine"] == "catsl2"
    assert payload["N"] == 1
    assert payload["summary"]["fail"] == 0
    for entry in payload["checks"]:
        assert entry["status"] in ("pass", "fail", "skipped")
    text = report.render_text()
    assert "bubble_unit" in text and "pass" in text


def test_k0_shadow_all_ranks():
    for N in (1, 2, 3, 4):
        report = run_suite(N, suites=["k0_shadow"])
        assert report.all_ok(), report.render_text()
