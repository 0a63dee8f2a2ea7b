"""Input document schema, report rendering and waveform CSV export.

Input documents are JSON (schema_version 1):

    {
      "schema_version": 1,
      "label": "feeder-7",
      "frequency_hz": 60.0,
      "unit_system": "si",                  // or "per_unit"
      "voltages": [{"mag": 91.5, "angle_deg": -5.5}, ...],   // exactly 3
      "currents": [{"mag": 3.562, "angle_deg": -38.28}, ...],
      "neutral": {"mode": "four_wire", "rho": 2.4}           // or {"mode": "three_wire"}
    }

Angles are degrees at this boundary (radians never appear in files).  The
machine report form is JSON with full-precision numbers (phasors carry both
polar and rectangular parts so values round-trip exactly); the human form is
a fixed-width table.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from typing import Any, TextIO

from .errors import InputDocumentError
from .fortescue import SequenceTriple
from .four_wire import FOUR_WIRE, THREE_WIRE, NeutralConfig
from .phasors import PhasorTriple, magnitude_angle
from .pipeline import UNIT_SYSTEMS, AnalysisReport, AnalysisRequest
from .waveforms import WaveformSet

__all__ = [
    "SCHEMA_VERSION",
    "InputDocument",
    "parse_input",
    "report_to_dict",
    "render_json",
    "render_table",
    "write_waveform_csv",
    "builtin_example_json",
]

SCHEMA_VERSION = 1

WAVEFORM_CSV_HEADER = ["t", "v1", "v2", "v3", "i1", "i2", "i3", "p", "d1", "d2", "d3"]


@dataclass(frozen=True)
class InputDocument:
    """Validated measurement document, still in polar (mag, angle_deg) form."""

    schema_version: int
    label: str
    frequency_hz: float
    unit_system: str
    voltages: tuple[tuple[float, float], ...]
    currents: tuple[tuple[float, float], ...]
    neutral_mode: str
    rho: float | None

    def to_request(self) -> AnalysisRequest:
        if self.neutral_mode == FOUR_WIRE:
            neutral = NeutralConfig.four_wire(self.rho)
        else:
            neutral = NeutralConfig.three_wire()
        return AnalysisRequest(
            voltages=PhasorTriple.from_polar(list(self.voltages), "volt"),
            currents=PhasorTriple.from_polar(list(self.currents), "ampere"),
            neutral=neutral,
            frequency_hz=self.frequency_hz,
            unit_system=self.unit_system,
            label=self.label,
        )


def _field(obj: dict, key: str, path: str) -> Any:
    if key not in obj:
        raise InputDocumentError(f"{path}{key}: missing required field")
    return obj[key]


def _real(value: Any, path: str, *, minimum: float | None = None) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputDocumentError(f"{path}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise InputDocumentError(f"{path}: must be finite, got {value!r}")
    if minimum is not None and value < minimum:
        raise InputDocumentError(f"{path}: must be >= {minimum}, got {value}")
    return value


def _phasor_array(value: Any, path: str) -> tuple[tuple[float, float], ...]:
    if not isinstance(value, list):
        raise InputDocumentError(f"{path}: expected an array of 3 phasor objects")
    if len(value) != 3:
        raise InputDocumentError(f"{path}: expected exactly 3 entries, got {len(value)}")
    entries = []
    for index, entry in enumerate(value):
        entry_path = f"{path}[{index}]"
        if not isinstance(entry, dict):
            raise InputDocumentError(f"{entry_path}: expected an object with mag and angle_deg")
        mag = _real(_field(entry, "mag", f"{entry_path}."), f"{entry_path}.mag", minimum=0.0)
        angle = _real(_field(entry, "angle_deg", f"{entry_path}."), f"{entry_path}.angle_deg")
        entries.append((mag, angle))
    return tuple(entries)


def parse_input(data: bytes | str) -> InputDocument:
    """Parse and validate a measurement document; errors name the offending field."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputDocumentError(f"document is not valid UTF-8: {exc}") from exc
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InputDocumentError(f"document is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise InputDocumentError("top-level value must be an object")

    version = _field(obj, "schema_version", "")
    if version != SCHEMA_VERSION:
        raise InputDocumentError(
            f"schema_version: unsupported value {version!r} (this build reads version {SCHEMA_VERSION})"
        )

    label = obj.get("label", "")
    if not isinstance(label, str):
        raise InputDocumentError(f"label: expected a string, got {label!r}")

    frequency = _real(_field(obj, "frequency_hz", ""), "frequency_hz")
    if frequency <= 0.0:
        raise InputDocumentError(f"frequency_hz: must be > 0, got {frequency}")

    unit_system = _field(obj, "unit_system", "")
    if unit_system not in UNIT_SYSTEMS:
        raise InputDocumentError(
            f"unit_system: unknown value {unit_system!r}, expected one of {list(UNIT_SYSTEMS)}"
        )

    voltages = _phasor_array(_field(obj, "voltages", ""), "voltages")
    currents = _phasor_array(_field(obj, "currents", ""), "currents")

    neutral = _field(obj, "neutral", "")
    if not isinstance(neutral, dict):
        raise InputDocumentError("neutral: expected an object with a mode field")
    mode = _field(neutral, "mode", "neutral.")
    if mode == FOUR_WIRE:
        rho = _real(_field(neutral, "rho", "neutral."), "neutral.rho", minimum=0.0)
    elif mode == THREE_WIRE:
        if "rho" in neutral and neutral["rho"] is not None:
            raise InputDocumentError("neutral.rho: not allowed in three_wire mode")
        rho = None
    else:
        raise InputDocumentError(
            f"neutral.mode: unknown value {mode!r}, expected {FOUR_WIRE!r} or {THREE_WIRE!r}"
        )

    return InputDocument(
        schema_version=SCHEMA_VERSION,
        label=label,
        frequency_hz=frequency,
        unit_system=unit_system,
        voltages=voltages,
        currents=currents,
        neutral_mode=mode,
        rho=rho,
    )


def _phasor_dict(z: complex) -> dict:
    mag, angle = magnitude_angle(z)
    return {"mag": mag, "angle_deg": angle, "re": z.real, "im": z.imag}


def _triple_list(t: PhasorTriple) -> list[dict]:
    return [_phasor_dict(c) for c in t]


def _sequence_dict(s: SequenceTriple) -> dict:
    return {
        "plus": _phasor_dict(s.plus),
        "minus": _phasor_dict(s.minus),
        "homopolar": _phasor_dict(s.homopolar),
    }


def report_to_dict(report: AnalysisReport) -> dict:
    """Machine form of a report; all numbers at full precision."""
    request = report.request
    eq = report.equivalents
    neutral: dict[str, Any] = {"mode": request.neutral.mode}
    if request.neutral.mode == FOUR_WIRE:
        neutral["rho"] = request.neutral.rho
    return {
        "schema_version": SCHEMA_VERSION,
        "label": request.label,
        "unit_system": request.unit_system,
        "frequency_hz": request.frequency_hz,
        "neutral": neutral,
        "inputs": {
            "voltages": _triple_list(request.voltages),
            "currents": _triple_list(request.currents),
        },
        "reference": {
            "v_no": _phasor_dict(eq.v_no),
            "i_n": _phasor_dict(eq.i_n),
            "k": eq.k,
            "homopolar_correction": eq.correction if math.isfinite(eq.correction) else None,
        },
        "vectors": {
            "v_o": _triple_list(eq.v_o),
            "v_e": _triple_list(eq.v_e),
            "i_e": _triple_list(eq.i_e),
            "v_seq_e": _sequence_dict(eq.v_seq_e),
            "i_seq_e": _sequence_dict(eq.i_seq_e),
        },
        "powers": {
            "p": report.p,
            "q": report.q,
            "d_e": _triple_list(report.d_e),
            "d_seq_e": _sequence_dict(report.d_seq_e),
            "d_norm": report.d_norm,
            "s_norm": report.s_norm,
            "pf": report.pf,
            "v_e_norm": report.v_e_norm,
            "i_e_norm": report.i_e_norm,
        },
        "instantaneous": None if report.sigma_d is None else {"sigma_d": report.sigma_d},
        "ieee1459": (
            None
            if report.ieee1459 is None
            else {"s_plus": report.ieee1459.s_plus, "s_u": report.ieee1459.s_u}
        ),
    }


def render_json(report: AnalysisReport) -> str:
    return json.dumps(report_to_dict(report), indent=2)


_UNIT_SUFFIXES = {
    "si": {"V": "V", "A": "A", "W": "W", "var": "var", "VA": "VA"},
    "per_unit": {"V": "pu", "A": "pu", "W": "pu", "var": "pu", "VA": "pu"},
}


def _fmt_phasor(z: complex) -> str:
    mag, angle = magnitude_angle(z)
    return f"{mag:12.6f} ∠ {angle:9.4f}°"


def _vector_row(name: str, unit: str, components) -> str:
    cells = "  ".join(_fmt_phasor(c) for c in components)
    return f"  {name:<8}[{unit:<3}]  {cells}"


def render_table(report: AnalysisReport) -> str:
    """Human-readable fixed-width report."""
    request = report.request
    eq = report.equivalents
    units = _UNIT_SUFFIXES[request.unit_system]
    u_v, u_a, u_w, u_var, u_va = (units[k] for k in ("V", "A", "W", "var", "VA"))

    if request.neutral.mode == FOUR_WIRE:
        neutral_text = f"four-wire, rho = {request.neutral.rho:g}"
        k_text = f"k(rho) = {eq.k:.6f}    sqrt(1+3 rho) = {eq.correction:.6f}"
    else:
        neutral_text = "three-wire"
        k_text = "k(rho) = 0 (three-wire limit)"

    lines = [
        f"complex-vector power analysis: {request.label or '(unlabeled)'}",
        f"  unit system: {request.unit_system}    frequency: {request.frequency_hz:g} Hz",
        f"  neutral: {neutral_text}",
        f"  V_NO = {_fmt_phasor(eq.v_no).strip()} {u_v}    I_N = {_fmt_phasor(eq.i_n).strip()} {u_a}",
        f"  {k_text}",
        "",
        f"  {'vector':<8}{'':7}{'component 1':>24}{'component 2':>26}{'component 3':>26}",
        _vector_row("V", u_v, request.voltages),
        _vector_row("V_O", u_v, eq.v_o),
        _vector_row("V_e", u_v, eq.v_e),
        _vector_row("I", u_a, request.currents),
        _vector_row("I_e", u_a, eq.i_e),
        _vector_row("V_pm_e", u_v, (eq.v_seq_e.plus, eq.v_seq_e.minus, eq.v_seq_e.homopolar)),
        _vector_row("I_pm_e", u_a, (eq.i_seq_e.plus, eq.i_seq_e.minus, eq.i_seq_e.homopolar)),
        _vector_row("D_e", u_va, report.d_e),
        _vector_row("D_pm_e", u_va, (report.d_seq_e.plus, report.d_seq_e.minus, report.d_seq_e.homopolar)),
        "    (sequence rows ordered +, -, homopolar)",
        "",
        f"  ||V_e|| = {report.v_e_norm:.6f} {u_v}    ||I_e|| = {report.i_e_norm:.6f} {u_a}",
        f"  P  = {report.p:.6f} {u_w}",
        f"  Q  = {report.q:.6f} {u_var}",
        f"  ||D_e|| = ||D_pm_e|| = {report.d_norm:.6f} {u_va}",
        f"  ||S_e|| = {report.s_norm:.6f} {u_va}",
        f"  PF = {'undefined' if report.pf is None else format(report.pf, '.6f')}",
    ]
    if report.sigma_d is not None:
        lines.append(f"  sigma_d = {report.sigma_d:.6f} {u_va}  (rms of the oscillatory cross term)")
    if report.ieee1459 is not None:
        lines.append(
            f"  S_plus = {report.ieee1459.s_plus:.6f} {u_va}    "
            f"S_u = {report.ieee1459.s_u:.6f} {u_va}  (derived by this tool)"
        )
    return "\n".join(lines) + "\n"


def write_waveform_csv(w: WaveformSet, stream: TextIO) -> None:
    """Write sampled waveforms as CSV (full-precision decimal columns)."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(WAVEFORM_CSV_HEADER)
    times = w.grid.times()
    for n in range(w.grid.sample_count):
        writer.writerow(
            [
                repr(float(times[n])),
                repr(float(w.v[0, n])),
                repr(float(w.v[1, n])),
                repr(float(w.v[2, n])),
                repr(float(w.i[0, n])),
                repr(float(w.i[1, n])),
                repr(float(w.i[2, n])),
                repr(float(w.p[n])),
                repr(float(w.d[0, n])),
                repr(float(w.d[1, n])),
                repr(float(w.d[2, n])),
            ]
        )


def builtin_example_json(label: str) -> str:
    """Serialize a built-in fixture's measurement set as an input document."""
    from .fixtures import builtin_fixtures

    for fixture in builtin_fixtures():
        if fixture.label == label:
            request = fixture.request
            neutral: dict[str, Any] = {"mode": request.neutral.mode}
            if request.neutral.mode == FOUR_WIRE:
                neutral["rho"] = request.neutral.rho
            document = {
                "schema_version": SCHEMA_VERSION,
                "label": request.label,
                "frequency_hz": request.frequency_hz,
                "unit_system": request.unit_system,
                "voltages": [
                    {"mag": m, "angle_deg": a}
                    for m, a in (magnitude_angle(c) for c in request.voltages)
                ],
                "currents": [
                    {"mag": m, "angle_deg": a}
                    for m, a in (magnitude_angle(c) for c in request.currents)
                ],
                "neutral": neutral,
            }
            return json.dumps(document, indent=2)
    known = [fixture.label for fixture in builtin_fixtures()]
    raise KeyError(f"no built-in example {label!r}; known labels: {known}")
