"""End-to-end analysis: measurements in, fully cross-checked report out.

``analyze`` chains the four-wire equivalent construction, the complex-vector
power decomposition of the equivalent pair, the sequence-domain consistency
checks and an instantaneous-waveform summary.  Every identity the pipeline
relies on is re-verified numerically on each run; a violation raises
IntegrityError instead of returning a silently wrong report.

P and Q are invariant under the artificial-neutral construction (the
homopolar metric correction exactly cancels the reference shift), so the
reported P + jQ equals the raw measured dot product as well as the
equivalent-coordinate one.  The reported power factor is the signed ratio
P / s_norm, left undefined (None) when the apparent power is zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import IntegrityError, InvalidConfigError
from .fortescue import SequenceTriple, sequence_cross, sequence_dot
from .four_wire import FourWireEquivalents, NeutralConfig, equivalent_coordinates
from .phasors import PhasorTriple, cvp, dot_power
from .waveforms import WaveformGrid, decompose_cross_term, synthesize

__all__ = [
    "UNIT_SYSTEMS",
    "AnalysisRequest",
    "Ieee1459Comparison",
    "AnalysisReport",
    "analyze",
    "ieee1459_compare",
]

UNIT_SYSTEMS = ("per_unit", "si")

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class AnalysisRequest:
    """Measured phasors at the point of common coupling plus the neutral model."""

    voltages: PhasorTriple
    currents: PhasorTriple
    neutral: NeutralConfig
    frequency_hz: float
    unit_system: str = "si"
    label: str = ""

    def __post_init__(self) -> None:
        if not (math.isfinite(self.frequency_hz) and self.frequency_hz > 0.0):
            raise InvalidConfigError(f"frequency must be finite and > 0, got {self.frequency_hz!r}")
        if self.unit_system not in UNIT_SYSTEMS:
            raise InvalidConfigError(
                f"unknown unit system {self.unit_system!r}, expected one of {UNIT_SYSTEMS}"
            )


@dataclass(frozen=True)
class Ieee1459Comparison:
    """Positive-sequence apparent power and the unbalance power derived from it."""

    s_plus: float
    s_u: float


@dataclass(frozen=True)
class AnalysisReport:
    """Structured result of a full complex-vector power analysis."""

    request: AnalysisRequest
    equivalents: FourWireEquivalents
    v_e_norm: float
    i_e_norm: float
    p: float
    q: float
    d_e: PhasorTriple
    d_seq_e: SequenceTriple
    d_norm: float
    s_norm: float
    pf: float | None
    sigma_d: float | None = None
    ieee1459: Ieee1459Comparison | None = None


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise IntegrityError(message)


def analyze(
    request: AnalysisRequest,
    *,
    include_instantaneous: bool = True,
    include_ieee1459: bool = False,
    kcl_tol: float = 1e-9,
    grid: WaveformGrid | None = None,
) -> AnalysisReport:
    """Run the full decomposition for one measurement set.

    ``kcl_tol`` is the relative tolerance on the net line current in
    three-wire mode.  ``grid`` overrides the default waveform grid
    (256 samples/cycle, 2 cycles) used for the instantaneous summary.
    """
    eq = equivalent_coordinates(request.voltages, request.currents, request.neutral, kcl_tol=kcl_tol)
    result = cvp(eq.v_e, eq.i_e)
    d_seq_e = sequence_cross(eq.v_seq_e, eq.i_seq_e)

    v_e_norm = eq.v_e.norm
    i_e_norm = eq.i_e.norm
    scale = v_e_norm * i_e_norm
    s_eq = complex(result.p, result.q)

    seq_dot = sequence_dot(eq.v_seq_e, eq.i_seq_e)
    _check(
        abs(seq_dot - s_eq) <= 1e-12 * scale + 1e-300,
        f"P+jQ differs between phase and sequence coordinates: {s_eq} vs {seq_dot}",
    )

    raw_dot = dot_power(request.voltages, request.currents)
    raw_scale = request.voltages.norm * request.currents.norm
    raw_tol = 1e-12 if request.neutral.mode == "four_wire" else 1e-12 + kcl_tol
    _check(
        abs(raw_dot - s_eq) <= raw_tol * raw_scale + 1e-300,
        f"P+jQ not preserved by the equivalent construction: raw {raw_dot} vs {s_eq}",
    )

    d_norm = result.d.norm
    _check(
        abs(d_norm - d_seq_e.norm) <= 1e-12 * scale + 1e-300,
        f"cross-term norm differs between coordinates: {d_norm} vs {d_seq_e.norm}",
    )
    _check(
        abs(result.s_norm - scale) <= 1e-12 * scale + 1e-300,
        f"apparent power {result.s_norm} deviates from ||v_e|| ||i_e|| = {scale}",
    )

    sigma_d = None
    if include_instantaneous:
        wave_grid = grid if grid is not None else WaveformGrid(request.frequency_hz)
        waves = synthesize(eq.v_e, eq.i_e, wave_grid)
        decomposition = decompose_cross_term(waves)
        _check(
            abs(waves.p.mean() - result.p) <= 1e-9 * max(1.0, scale),
            "time-averaged instantaneous power deviates from P",
        )
        _check(
            abs(decomposition.sigma_d - d_norm / _SQRT2) <= 1e-9 * scale + 1e-300,
            "rms of the instantaneous cross term deviates from ||d_e|| / sqrt(2)",
        )
        _check(
            bool((decomposition.residual <= 1e-9 * decomposition.amplitude + 1e-12 * scale + 1e-300).all()),
            "instantaneous cross term is not a pure double-frequency sinusoid",
        )
        sigma_d = decomposition.sigma_d

    report = AnalysisReport(
        request=request,
        equivalents=eq,
        v_e_norm=v_e_norm,
        i_e_norm=i_e_norm,
        p=result.p,
        q=result.q,
        d_e=result.d,
        d_seq_e=d_seq_e,
        d_norm=d_norm,
        s_norm=result.s_norm,
        pf=result.pf,
        sigma_d=sigma_d,
    )
    if include_ieee1459:
        report = replace(report, ieee1459=ieee1459_compare(report))
    return report


def ieee1459_compare(report: AnalysisReport) -> Ieee1459Comparison:
    """Positive-sequence apparent power and the residual unbalance power.

    In power-invariant sequence coordinates the positive-sequence apparent
    power is ``|v_+| * |i_+|``; the unbalance power is the orthogonal
    remainder ``sqrt(s_norm^2 - s_plus^2)``.  These are derived by this tool
    for comparison purposes; the unbalance power does not in general coincide
    with the cross-term norm ||d_e||.
    """
    s_plus = abs(report.equivalents.v_seq_e.plus) * abs(report.equivalents.i_seq_e.plus)
    if s_plus > report.s_norm * (1.0 + 1e-9):
        raise IntegrityError(
            f"positive-sequence apparent power {s_plus} exceeds total {report.s_norm}"
        )
    s_u = math.sqrt(max(report.s_norm * report.s_norm - s_plus * s_plus, 0.0))
    return Ieee1459Comparison(s_plus=s_plus, s_u=s_u)
