"""Built-in regression fixtures: two reference measurement sets with expected values.

The first set is an exact per-unit configuration (balanced supply, strongly
asymmetric purely reactive load, rho = 1) whose expected values are closed
forms, asserted at 1e-9 relative.  The second is a realistic 60 Hz four-wire
feeder measurement (rho = 2.4) whose inputs are rounded to instrument
precision, so expected values are asserted at 1 percent relative and 0.3
degrees on angles (0.5 percent on rms norms, 2 percent on the derived
sequence-power split).

Angle comparisons use shortest-arc distance modulo 360 degrees throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .four_wire import NeutralConfig
from .phasors import PhasorTriple, angle_distance_deg, magnitude_angle
from .pipeline import AnalysisReport, AnalysisRequest, analyze

__all__ = ["FieldCheck", "CheckResult", "Fixture", "builtin_fixtures", "run_fixture"]

_S3 = math.sqrt(3.0)


@dataclass(frozen=True)
class FieldCheck:
    """One expected report field with its tolerance.

    kind is one of:
      abs    -- |observed - expected| <= tol
      rel    -- |observed - expected| <= tol * |expected|
      phasor -- magnitude within tol (relative) and angle within
                angle_tol_deg (shortest arc); expected is complex
      zero   -- |observed| <= tol
    """

    name: str
    kind: str
    extract: Callable[[AnalysisReport], complex | float | None]
    expected: complex
    tol: float
    angle_tol_deg: float = 0.0

    def expected_text(self) -> str:
        if self.kind == "phasor":
            mag, ang = magnitude_angle(complex(self.expected))
            return f"{mag:g}<{ang:g}deg"
        if self.kind == "zero":
            return "0"
        return f"{self.expected.real:g}"

    def evaluate(self, report: AnalysisReport) -> "CheckResult":
        observed = self.extract(report)
        if observed is None:
            return CheckResult(self, False, "undefined")
        observed = complex(observed)
        if self.kind == "abs":
            passed = abs(observed - self.expected) <= self.tol
            text = f"{observed.real:.9g}"
        elif self.kind == "rel":
            passed = abs(observed - self.expected) <= self.tol * abs(self.expected)
            text = f"{observed.real:.9g}"
        elif self.kind == "zero":
            passed = abs(observed) <= self.tol
            text = f"{abs(observed):.3g}"
        elif self.kind == "phasor":
            mag, ang = magnitude_angle(observed)
            exp_mag, exp_ang = magnitude_angle(complex(self.expected))
            passed = (
                abs(mag - exp_mag) <= self.tol * exp_mag
                and angle_distance_deg(ang, exp_ang) <= self.angle_tol_deg
            )
            text = f"{mag:.9g}<{ang:.6g}deg"
        else:
            raise ValueError(f"unknown check kind {self.kind!r}")
        return CheckResult(self, passed, text)


@dataclass(frozen=True)
class CheckResult:
    check: FieldCheck
    passed: bool
    observed_text: str

    def line(self, label: str) -> str:
        status = "PASS" if self.passed else "FAIL"
        tol = self.check.tol
        tol_text = f"{tol * 100:g}%" if self.check.kind in ("rel", "phasor") else f"{tol:g}"
        return (
            f"{label} {self.check.name} {self.check.expected_text()} "
            f"observed={self.observed_text} tol={tol_text} {status}"
        )


@dataclass(frozen=True)
class Fixture:
    label: str
    request: AnalysisRequest
    checks: tuple[FieldCheck, ...]


def run_fixture(fixture: Fixture) -> tuple[AnalysisReport, list[CheckResult]]:
    """Analyze a fixture's request and evaluate all of its checks."""
    report = analyze(fixture.request, include_ieee1459=True)
    return report, [check.evaluate(report) for check in fixture.checks]


def _abs(name, extract, expected, tol):
    return FieldCheck(name, "abs", extract, complex(expected), tol)


def _rel(name, extract, expected, tol):
    return FieldCheck(name, "rel", extract, complex(expected), tol)


def _zero(name, extract, tol):
    return FieldCheck(name, "zero", extract, 0j, tol)


def _phasor(name, extract, expected, tol, angle_tol):
    return FieldCheck(name, "phasor", extract, complex(expected), tol, angle_tol)


def _polar(mag, angle_deg):
    return mag * complex(math.cos(math.radians(angle_deg)), math.sin(math.radians(angle_deg)))


def _example1() -> Fixture:
    request = AnalysisRequest(
        voltages=PhasorTriple.from_polar([(1.0, 0.0), (1.0, -120.0), (1.0, 120.0)], "volt"),
        currents=PhasorTriple.from_polar([(1.0, -90.0), (0.2, -30.0), (0.8, -150.0)], "ampere"),
        neutral=NeutralConfig.four_wire(1.0),
        frequency_hz=50.0,
        unit_system="per_unit",
        label="example1",
    )

    # Exact rectangular forms of every expected quantity.
    i_n = complex(-3.0 * _S3 / 10.0, -1.5)
    i_e = (complex(-_S3 / 10.0, -1.5), complex(0.0, -0.6), complex(-_S3 / 2.0, -0.9))
    i_seq_minus = complex(0.3, -_S3 / 2.0)
    i_seq_h = complex(-0.6, -_S3)
    d_e = (complex(-_S3 / 2.0, 0.9), complex(13.0 * _S3 / 10.0, 1.5), complex(7.0 * _S3 / 10.0, -1.5))
    d_seq_minus = complex(3.0 * _S3 / 5.0, 3.0)
    d_seq_h = complex(3.0 * _S3 / 10.0, -1.5)
    s_norm = 3.0 * math.sqrt(35.0) / 5.0

    rel, ang = 1e-9, 1e-6
    checks = (
        _abs("P", lambda r: r.p, 0.0, 1e-12),
        _abs("Q", lambda r: r.q, 0.0, 1e-12),
        _zero("V_NO", lambda r: r.equivalents.v_no, 1e-12),
        _rel("k", lambda r: r.equivalents.k, 1.0 / 3.0, 1e-15),
        _rel("sqrt(1+3rho)", lambda r: r.equivalents.correction, 2.0, 1e-15),
        _phasor("I_N", lambda r: r.equivalents.i_n, i_n, rel, ang),
        _phasor("I_e[1]", lambda r: r.equivalents.i_e[0], i_e[0], rel, ang),
        _phasor("I_e[2]", lambda r: r.equivalents.i_e[1], i_e[1], rel, ang),
        _phasor("I_e[3]", lambda r: r.equivalents.i_e[2], i_e[2], rel, ang),
        _zero("I_pm_e[+]", lambda r: r.equivalents.i_seq_e.plus, 1e-12),
        _phasor("I_pm_e[-]", lambda r: r.equivalents.i_seq_e.minus, i_seq_minus, rel, ang),
        _phasor("I_pm_e[h]", lambda r: r.equivalents.i_seq_e.homopolar, i_seq_h, rel, ang),
        _phasor("V_pm_e[+]", lambda r: r.equivalents.v_seq_e.plus, complex(_S3, 0.0), rel, ang),
        _zero("V_pm_e[-]", lambda r: r.equivalents.v_seq_e.minus, 1e-12),
        _zero("V_pm_e[h]", lambda r: r.equivalents.v_seq_e.homopolar, 1e-12),
        _rel("‖V_e‖", lambda r: r.v_e_norm, _S3, rel),
        _rel("‖I_e‖", lambda r: r.i_e_norm, math.sqrt(105.0) / 5.0, rel),
        _phasor("D_e[1]", lambda r: r.d_e[0], d_e[0], rel, ang),
        _phasor("D_e[2]", lambda r: r.d_e[1], d_e[1], rel, ang),
        _phasor("D_e[3]", lambda r: r.d_e[2], d_e[2], rel, ang),
        _zero("D_pm_e[+]", lambda r: r.d_seq_e.plus, 1e-12),
        _phasor("D_pm_e[-]", lambda r: r.d_seq_e.minus, d_seq_minus, rel, ang),
        _phasor("D_pm_e[h]", lambda r: r.d_seq_e.homopolar, d_seq_h, rel, ang),
        _rel("‖D_e‖", lambda r: r.d_norm, s_norm, rel),
        _rel("‖S_e‖", lambda r: r.s_norm, s_norm, rel),
        _abs("PF", lambda r: r.pf, 0.0, 1e-12),
        _rel("sigma_d", lambda r: r.sigma_d, s_norm / math.sqrt(2.0), rel),
        _zero("S_plus", lambda r: r.ieee1459.s_plus, 1e-9),
        _rel("S_u", lambda r: r.ieee1459.s_u, s_norm, rel),
    )
    return Fixture("example1", request, checks)


def _example2() -> Fixture:
    request = AnalysisRequest(
        voltages=PhasorTriple.from_polar(
            [(91.50, -5.50), (94.78, -123.81), (89.62, 121.25)], "volt"
        ),
        currents=PhasorTriple.from_polar(
            [(3.562, -38.28), (2.863, -166.17), (2.822, 74.76)], "ampere"
        ),
        neutral=NeutralConfig.four_wire(2.4),
        frequency_hz=60.0,
        unit_system="si",
        label="example2",
    )

    rel, ang = 0.01, 0.3
    checks = (
        _phasor("V_NO", lambda r: r.equivalents.v_no, _polar(3.985, 53.214), 0.005, 0.3),
        _phasor("I_N", lambda r: r.equivalents.i_n, _polar(0.776, -12.52), rel, ang),
        # k(2.4) via the equivalent algebraic form (sqrt(1+3rho)-1)/(3rho).
        _rel("k", lambda r: r.equivalents.k, (math.sqrt(8.2) - 1.0) / 7.2, 1e-12),
        _rel("sqrt(1+3rho)", lambda r: r.equivalents.correction, math.sqrt(8.2), 1e-12),
        _phasor("V_O[1]", lambda r: r.equivalents.v_o[0], _polar(93.63, -3.42), rel, ang),
        _phasor("V_O[2]", lambda r: r.equivalents.v_o[1], _polar(90.80, -123.68), rel, ang),
        _phasor("V_O[3]", lambda r: r.equivalents.v_o[2], _polar(91.19, 118.93), rel, ang),
        _phasor("V_e[1]", lambda r: r.equivalents.v_e[0], _polar(93.07, -3.95), rel, ang),
        _phasor("V_e[2]", lambda r: r.equivalents.v_e[1], _polar(91.83, -123.71), rel, ang),
        _phasor("V_e[3]", lambda r: r.equivalents.v_e[2], _polar(90.77, 119.52), rel, ang),
        _phasor("V_pm_e[+]", lambda r: r.equivalents.v_seq_e.plus, _polar(159.10, -2.73), rel, ang),
        _phasor("V_pm_e[-]", lambda r: r.equivalents.v_seq_e.minus, _polar(3.79, -20.47), rel, ang),
        _phasor("V_pm_e[h]", lambda r: r.equivalents.v_seq_e.homopolar, _polar(2.745, -126.79), rel, ang),
        _rel("‖V_e‖", lambda r: r.v_e_norm, 159.163, 0.005),
        _phasor("I_e[1]", lambda r: r.equivalents.i_e[0], _polar(4.0, -35.28), rel, ang),
        _phasor("I_e[2]", lambda r: r.equivalents.i_e[1], _polar(2.44, -161.14), rel, ang),
        _phasor("I_e[3]", lambda r: r.equivalents.i_e[2], _polar(2.89, 65.15), rel, ang),
        _phasor("I_pm_e[+]", lambda r: r.equivalents.i_seq_e.plus, _polar(5.33, -42.85), rel, ang),
        _phasor("I_pm_e[-]", lambda r: r.equivalents.i_seq_e.minus, _polar(0.51, -11.5), rel, ang),
        _phasor("I_pm_e[h]", lambda r: r.equivalents.i_seq_e.homopolar, _polar(1.28, -12.52), rel, ang),
        _rel("‖I_e‖", lambda r: r.i_e_norm, 5.504, 0.005),
        _rel("P", lambda r: r.p, 648.66, rel),
        _rel("Q", lambda r: r.q, 542.72, rel),
        _phasor("D_e[1]", lambda r: r.d_e[0], _polar(83.6, -109.13), rel, ang),
        _phasor("D_e[2]", lambda r: r.d_e[1], _polar(156.62, 126.392), rel, ang),
        _phasor("D_e[3]", lambda r: r.d_e[2], _polar(143.70, 30.663), rel, ang),
        _phasor("D_pm_e[+]", lambda r: r.d_seq_e.plus, _polar(5.4, -18.52), rel, ang),
        _phasor("D_pm_e[-]", lambda r: r.d_seq_e.minus, _polar(217.5, 166.42), rel, ang),
        _phasor("D_pm_e[h]", lambda r: r.d_seq_e.homopolar, _polar(69.53, -1.57), rel, ang),
        _rel("‖D_e‖", lambda r: r.d_norm, 228.40, rel),
        _rel("‖S_e‖", lambda r: r.s_norm, 876.05, rel),
        _rel("PF", lambda r: r.pf, 0.74, rel),
        _rel("sigma_d", lambda r: r.sigma_d, 161.50, rel),
        _rel("S_plus", lambda r: r.ieee1459.s_plus, 848.0, 0.02),
        _rel("S_u", lambda r: r.ieee1459.s_u, 219.9, 0.02),
    )
    return Fixture("example2", request, checks)


def builtin_fixtures() -> list[Fixture]:
    """The two reference measurement sets with their expected report fragments."""
    return [_example1(), _example2()]
