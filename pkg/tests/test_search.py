"""Exact extremal values: the branch-and-bound search, its certificates,
the definitional oracle, and the desk-scale reports."""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from trace_sperner.constructions import (
    middle_band_family,
    middle_band_family_low,
    sum_largest_binomials,
)
from trace_sperner.families import (
    CapacityError,
    Family,
    PreconditionError,
    canonical_form,
)
from trace_sperner.search import (
    ORACLE_CAP,
    PLAIN_CAP,
    SYMMETRY_CAP,
    ConjecturePoint,
    SearchCertificate,
    SearchConfig,
    conjecture_report,
    dual_reading_values,
    f_exact,
    f_exact_oracle,
    uniqueness_report,
)
from trace_sperner.sperner import is_l_trace_k_sperner


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(4, 0, 3)
    with pytest.raises(ValueError):
        SearchConfig(4, 2, 5)
    with pytest.raises(ValueError):
        SearchConfig(4, 2, 3, seed_construction="fancy")
    with pytest.raises(ValueError):
        SearchConfig(4, 2, 3, time_budget=0.0)
    with pytest.raises(CapacityError):
        SearchConfig(SYMMETRY_CAP + 1, 2, 3)
    with pytest.raises(CapacityError):
        SearchConfig(PLAIN_CAP + 1, 2, 3, use_symmetry=False)


def test_f_exact_golden_singleton_windows():
    cert = f_exact(3, 1, 3)
    assert cert.value == 3
    assert cert.exhaustive
    assert cert.witnesses_complete
    classes = {w.members for w in cert.witnesses}
    assert classes == {
        Family.from_sets(3, [[1], [2], [3]]).members,
        Family.from_sets(3, [[1, 2], [1, 3], [2, 3]]).members,
    }


def test_f_exact_golden_one_omitted_element():
    cert = f_exact(4, 2, 3)
    assert cert.value == 6
    assert cert.exhaustive and cert.witnesses_complete
    assert cert.witness_class_count == 1
    assert cert.witnesses[0] == canonical_form(middle_band_family(4, 2, 1))


def test_f_exact_golden_five_points():
    cert = f_exact(5, 2, 4)
    assert cert.value == 10
    assert cert.exhaustive
    assert cert.witness_class_count == 2
    expected = {
        canonical_form(middle_band_family(5, 2, 1)),
        canonical_form(middle_band_family_low(5, 2, 1)),
    }
    assert set(cert.witnesses) == expected


def test_f_exact_witnesses_attain_the_value():
    cert = f_exact(4, 2, 3)
    for fam in cert.witnesses:
        assert len(fam) == cert.value
        assert is_l_trace_k_sperner(fam, 3, 2)[0]


def test_f_exact_fast_paths():
    assert f_exact(4, 2, 0).value == 16
    assert f_exact(3, 4, 3).value == 8
    cert = f_exact(3, 5, 2)
    assert cert.value == 8 and cert.exhaustive


def test_f_exact_symmetry_off_agrees():
    for n, k, l in [(3, 1, 3), (4, 2, 3), (4, 1, 4)]:
        with_sym = f_exact(n, k, l)
        without = f_exact(n, k, l, use_symmetry=False)
        assert with_sym.value == without.value
        assert set(with_sym.witnesses) == set(without.witnesses)


def test_f_exact_seed_choices_agree():
    for seed in ("greedy", "band", "none"):
        assert f_exact(5, 2, 4, seed_construction=seed).value == 10


def test_band_seed_needs_band_parameters():
    # l == 0 short-circuits to the full powerset before any seeding happens
    assert f_exact(4, 2, 0, seed_construction="band").value == 16
    with pytest.raises(PreconditionError):
        f_exact(4, 2, 2, seed_construction="band")


def test_f_exact_deadline_reports_incomplete():
    cert = f_exact(8, 2, 5, collect_witnesses=False, time_budget=0.05)
    assert not cert.exhaustive
    assert cert.value >= 1
    assert cert.witnesses == ()


def test_certificate_json_round_trip():
    cert = f_exact(4, 2, 3)
    doc = cert.to_jsonable()
    again = SearchCertificate.from_jsonable(doc)
    assert again == cert
    assert doc["value"] == 6


def test_oracle_golden_values():
    assert f_exact_oracle(2, 1, 2) == 2
    assert f_exact_oracle(3, 1, 3) == 3
    # the empty trace forces antichain-like collapses well below 2^n
    assert f_exact_oracle(3, 2, 2) == 4
    assert f_exact_oracle(3, 1, 0) == 8


def test_oracle_capacity():
    with pytest.raises(CapacityError):
        f_exact_oracle(ORACLE_CAP + 1, 2, 1)


def test_oracle_agrees_with_search_spot_checks():
    for n, k, l in [(2, 1, 1), (2, 2, 2), (3, 1, 2), (3, 2, 3), (3, 3, 1)]:
        assert f_exact(n, k, l).value == f_exact_oracle(n, k, l)


@given(st.data())
@settings(max_examples=20, deadline=None)
def test_search_value_matches_oracle(data):
    n = data.draw(st.integers(1, 3))
    k = data.draw(st.integers(1, 4))
    l = data.draw(st.integers(0, n))
    assert f_exact(n, k, l).value == f_exact_oracle(n, k, l)


def test_full_window_reproduces_layer_sums():
    for n in range(1, 4):
        for k in range(1, n + 1):
            assert f_exact(n, k, n).value == sum_largest_binomials(n, k)


def test_conjecture_report_equal_case():
    point = conjecture_report(4, 2, 3)
    assert isinstance(point, ConjecturePoint)
    assert point.in_regime
    assert point.expected == sum_largest_binomials(4, 1)
    assert point.status == "equal"
    assert point.certificate.value == 6


def test_conjecture_report_out_of_regime():
    point = conjecture_report(4, 3, 1)
    assert not point.in_regime
    assert point.expected is None
    assert point.status == "no_expectation"
    assert point.certificate.value == 16


def test_conjecture_report_accepts_matching_certificate():
    cert = f_exact(4, 2, 3)
    point = conjecture_report(4, 2, 3, certificate=cert)
    assert point.certificate is cert
    with pytest.raises(ValueError):
        conjecture_report(5, 2, 4, certificate=cert)


def test_conjecture_report_jsonable():
    doc = conjecture_report(3, 2, 2).to_jsonable()
    assert set(doc) >= {"n", "k", "l", "in_regime", "expected", "status", "certificate"}


def test_uniqueness_report_even_case():
    report = uniqueness_report(4, 2)
    assert report.expected_value == 6
    assert len(report.expected) == 1
    assert report.matches is True
    assert report.missing == ()
    assert report.extra_count == 0
    assert report.witness_count == 1
    assert report.parity_note


def test_uniqueness_report_odd_case_has_two_bands():
    report = uniqueness_report(5, 2)
    assert len(report.expected) == 2
    assert report.matches is True
    assert report.witness_count == 2


def test_uniqueness_report_validates_parameters():
    with pytest.raises(ValueError):
        uniqueness_report(4, 1)
    with pytest.raises(ValueError):
        uniqueness_report(4, 5)
    cert = f_exact(4, 2, 3)
    with pytest.raises(ValueError):
        uniqueness_report(5, 2, certificate=cert)


def test_dual_reading_golden():
    report = dual_reading_values(3)
    assert report.small_window.value == 8
    assert report.small_k.value == 1
    assert report.note
    doc = report.to_jsonable()
    assert doc["small_window"]["value"] == 8
