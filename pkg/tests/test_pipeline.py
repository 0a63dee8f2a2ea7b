"""Full-analysis orchestration, report invariants, and the sequence-power split."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cvpower import (
    AnalysisRequest,
    InvalidConfigError,
    NeutralConfig,
    PhasorTriple,
    WaveformGrid,
    analyze,
    builtin_fixtures,
    ieee1459_compare,
    run_fixture,
)

from conftest import (
    EX1_CURRENTS,
    EX1_VOLTAGES,
    EX2_CURRENTS,
    EX2_RHO,
    EX2_VOLTAGES,
)

_S3 = math.sqrt(3.0)

moderate_complex = st.complex_numbers(
    max_magnitude=100.0, allow_nan=False, allow_infinity=False, allow_subnormal=False
)
moderate_triples = st.tuples(moderate_complex, moderate_complex, moderate_complex)


def _request(voltages, currents, rho, label="", frequency=50.0, unit_system="per_unit"):
    return AnalysisRequest(
        voltages=PhasorTriple.from_polar(voltages, "volt"),
        currents=PhasorTriple.from_polar(currents, "ampere"),
        neutral=NeutralConfig.four_wire(rho),
        frequency_hz=frequency,
        unit_system=unit_system,
        label=label,
    )


REQUEST1 = _request(EX1_VOLTAGES, EX1_CURRENTS, 1.0, "example1")
REQUEST2 = _request(EX2_VOLTAGES, EX2_CURRENTS, EX2_RHO, "example2", 60.0, "si")


# ---------------------------------------------------------------------------
# request validation
# ---------------------------------------------------------------------------


def test_request_rejects_bad_frequency():
    with pytest.raises(InvalidConfigError):
        _request(EX1_VOLTAGES, EX1_CURRENTS, 1.0, frequency=0.0)
    with pytest.raises(InvalidConfigError):
        _request(EX1_VOLTAGES, EX1_CURRENTS, 1.0, frequency=float("nan"))


def test_request_rejects_bad_unit_system():
    with pytest.raises(InvalidConfigError):
        _request(EX1_VOLTAGES, EX1_CURRENTS, 1.0, unit_system="imperial")


# ---------------------------------------------------------------------------
# reference analyses
# ---------------------------------------------------------------------------


def test_reference_set_one_report():
    report = analyze(REQUEST1, include_ieee1459=True)
    assert abs(report.p) <= 1e-12
    assert abs(report.q) <= 1e-12
    expected = 3.0 * math.sqrt(35.0) / 5.0
    assert report.d_norm == pytest.approx(expected, rel=1e-9)
    assert report.s_norm == pytest.approx(expected, rel=1e-9)
    assert report.d_seq_e.norm == pytest.approx(expected, rel=1e-9)
    assert report.sigma_d == pytest.approx(expected / math.sqrt(2.0), rel=1e-9)
    assert report.ieee1459.s_plus <= 1e-9
    assert report.ieee1459.s_u == pytest.approx(expected, rel=1e-9)
    assert report.pf == pytest.approx(0.0, abs=1e-12)


def test_reference_feeder_report():
    report = analyze(REQUEST2, include_ieee1459=True)
    assert report.p == pytest.approx(648.66, rel=0.01)
    assert report.q == pytest.approx(542.72, rel=0.01)
    assert report.d_norm == pytest.approx(228.40, rel=0.01)
    assert report.s_norm == pytest.approx(876.05, rel=0.01)
    assert report.pf == pytest.approx(0.74, rel=0.01)
    assert report.v_e_norm == pytest.approx(159.163, rel=0.005)
    assert report.i_e_norm == pytest.approx(5.504, rel=0.005)
    assert report.sigma_d == pytest.approx(228.40 / math.sqrt(2.0), rel=0.01)


def test_balanced_resistive_request():
    request = _request(EX1_VOLTAGES, EX1_VOLTAGES, 1.0, "balanced")
    report = analyze(request, include_ieee1459=True)
    assert report.p == pytest.approx(report.s_norm, rel=1e-12)
    assert abs(report.q) <= 1e-12
    assert report.d_norm <= 1e-12
    assert report.pf == pytest.approx(1.0, abs=1e-12)
    assert report.ieee1459.s_u <= 1e-9 * report.s_norm
    assert report.ieee1459.s_plus == pytest.approx(report.s_norm, rel=1e-9)


# ---------------------------------------------------------------------------
# report self-consistency
# ---------------------------------------------------------------------------


@given(moderate_triples, moderate_triples, st.floats(min_value=0.0, max_value=100.0))
def test_report_invariants_on_random_requests(v, i, rho):
    request = AnalysisRequest(
        voltages=PhasorTriple(v, "volt"),
        currents=PhasorTriple(i, "ampere"),
        neutral=NeutralConfig.four_wire(rho),
        frequency_hz=60.0,
        unit_system="si",
    )
    report = analyze(request, include_ieee1459=True)
    scale = report.v_e_norm * report.i_e_norm
    assert abs(report.s_norm - scale) <= 1e-12 * scale + 1e-300
    total = math.sqrt(report.p**2 + report.q**2 + report.d_norm**2)
    assert abs(report.s_norm - total) <= 1e-12 * scale + 1e-300
    assert abs(report.d_norm - report.d_seq_e.norm) <= 1e-12 * scale + 1e-300
    assert report.ieee1459.s_plus <= report.s_norm * (1.0 + 1e-9)


def test_instantaneous_summary_can_be_skipped():
    report = analyze(REQUEST1, include_instantaneous=False)
    assert report.sigma_d is None
    assert report.ieee1459 is None


def test_custom_grid_override():
    report = analyze(REQUEST1, grid=WaveformGrid(50.0, samples_per_cycle=64, cycles=1))
    assert report.sigma_d == pytest.approx(3.0 * math.sqrt(35.0) / 5.0 / math.sqrt(2.0), rel=1e-9)


# ---------------------------------------------------------------------------
# rho sweeps
# ---------------------------------------------------------------------------


def test_balanced_voltage_powers_independent_of_rho():
    baseline = analyze(_request(EX1_VOLTAGES, EX1_CURRENTS, 0.0), include_instantaneous=False)
    for rho in (0.1, 0.5, 1.0, 2.4, 10.0, 100.0):
        report = analyze(_request(EX1_VOLTAGES, EX1_CURRENTS, rho), include_instantaneous=False)
        assert report.p == pytest.approx(baseline.p, abs=1e-12)
        assert report.q == pytest.approx(baseline.q, abs=1e-12)


def test_cross_norm_grows_with_rho_on_reference_inputs():
    # Regression observation on this input family, not a theorem.
    norms = [
        analyze(_request(EX1_VOLTAGES, EX1_CURRENTS, rho), include_instantaneous=False).d_norm
        for rho in (0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0)
    ]
    assert all(b >= a - 1e-12 for a, b in zip(norms, norms[1:]))
    assert norms[0] == pytest.approx(math.sqrt(5.04), rel=1e-9)
    assert norms[3] == pytest.approx(3.0 * math.sqrt(35.0) / 5.0, rel=1e-9)


# ---------------------------------------------------------------------------
# sequence-power split
# ---------------------------------------------------------------------------


def test_ieee1459_reference_feeder():
    report = analyze(REQUEST2, include_ieee1459=True)
    # Brute-force expected values from the quoted sequence magnitudes.
    s_plus_expected = 159.10 * 5.33
    s_u_expected = math.sqrt(876.05**2 - s_plus_expected**2)
    assert report.ieee1459.s_plus == pytest.approx(s_plus_expected, rel=0.02)
    assert report.ieee1459.s_u == pytest.approx(s_u_expected, rel=0.02)


def test_ieee1459_compare_matches_inline_result():
    report = analyze(REQUEST2, include_ieee1459=True)
    recomputed = ieee1459_compare(report)
    assert recomputed == report.ieee1459


# ---------------------------------------------------------------------------
# built-in fixtures
# ---------------------------------------------------------------------------


def test_builtin_fixture_inventory():
    fixtures = builtin_fixtures()
    assert len(fixtures) == 2
    assert fixtures[0].label == "example1"
    assert fixtures[1].label == "example2"
    assert fixtures[0].request.neutral.rho == 1.0
    assert fixtures[1].request.neutral.rho == 2.4
    first_voltage = fixtures[0].request.voltages[0]
    assert abs(first_voltage - 1.0) <= 1e-15


def test_builtin_fixtures_all_pass():
    for fixture in builtin_fixtures():
        _, results = run_fixture(fixture)
        failing = [r.line(fixture.label) for r in results if not r.passed]
        assert not failing, f"fixture {fixture.label} failing checks: {failing}"
