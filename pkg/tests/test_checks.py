from __future__ import annotations

import random

import pytest
from quasijac import checks, forms
from quasijac.seriescore import ZETA


def _flip_gtilde2(monkeypatch):
    original = forms.gtilde

    def broken(k, order, alpha=1, shift=0):
        out = original(k, order, alpha, shift)
        return out.scale(-1) if k == 2 else out

    monkeypatch.setattr(forms, "gtilde", broken)


def test_sign_error_in_gtilde2_is_caught_with_a_witness(monkeypatch):
    _flip_gtilde2(monkeypatch)
    report = checks.run_suite("quasi-basics", checks.Settings(q_order=4))
    assert not report.passed
    failed = [c for c in report.checks if not c.passed]
    assert [c.check_id for c in failed] == ["gtilde2"]
    w = failed[0].witness
    assert set(w) == {"q", "monomial", "expected", "actual"}
    assert w["q"] == "0" and w["expected"] != w["actual"]


def test_suite_exceptions_become_failing_checks(monkeypatch):
    def boom(*args, **kwargs):
        raise RuntimeError("injected")

    monkeypatch.setattr(forms, "weier_p", boom)
    report = checks.run_suite("quasi-basics", checks.Settings(q_order=4))
    assert not report.passed
    assert report.checks[0].check_id == "error"
    assert "injected" in report.checks[0].witness["error"]


def test_unknown_suite():
    with pytest.raises(KeyError):
        checks.run_suite("nope")
    with pytest.raises(ValueError):
        checks.run_suite("determinism")


def test_settings_defaults():
    assert checks.Settings().order(12) == 12
    assert checks.Settings(q_order=5).order(12) == 5


def test_reports_serialize_deterministically():
    a = checks.run_suite("heat-theta", checks.Settings(q_order=4))
    b = checks.run_suite("heat-theta", checks.Settings(q_order=4))
    assert a.passed and a.digest() == b.digest()
    d = a.to_dict()
    assert d["status"] == "pass" and d["digest"] == a.digest()
    assert [c["check"] for c in d["checks"]] == sorted(c["check"] for c in d["checks"])


def test_determinism_flags_a_golden_mismatch():
    st = checks.Settings(q_order=3)
    first = {"heat-theta": checks.run_suite("heat-theta", st)}
    golden = {"heat-theta": "0" * 64}
    report = checks.determinism_report(first, st, golden=golden)
    bad = [c for c in report.checks if not c.passed]
    assert [c.check_id for c in bad] == ["rerun-heat-theta"]
    assert bad[0].witness["golden"] == "0" * 64


def test_random_series_is_reproducible():
    a = checks.random_series(random.Random(7), 4)
    b = checks.random_series(random.Random(7), 4)
    assert a.equals(b) and not a.is_zero()


def test_series_witness_none_when_equal():
    g = forms.gtilde(2, 3)
    assert checks.series_witness(g, g) is None


def test_swap_variables_is_an_involution():
    p = forms.ptilde(1, 3)
    assert checks.swap_variables(checks.swap_variables(p)).equals(p)


def test_printed_derivative_sign_fails():
    k = 2
    lhs = forms.gtilde(k, 4).derive_q()
    printed = forms.gtilde(k + 1, 4).derive(ZETA).scale(-k)
    w = checks.series_witness(lhs, printed)
    assert w is not None and w["q"] == "1"


@pytest.mark.parametrize("suite", ["quasi-basics", "heat-theta", "sumzero", "fermion-kernel"])
def test_small_suites_pass_at_low_order(suite):
    assert checks.run_suite(suite, checks.Settings(q_order=4)).passed


def test_residue_suite_reports_raised_cyclotomic_order():
    report = checks.run_suite("residue-vanishing", checks.Settings(q_order=2))
    assert report.passed
    assert report.params["cyclotomic_order_alpha3"] == 12
