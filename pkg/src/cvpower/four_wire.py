"""Artificial-neutral reference and equivalent coordinates for four-wire systems.

A four-wire network needs an explicit voltage reference before a
three-coordinate power decomposition is meaningful.  The reference is an
artificial point O fixed by the barycentric condition

    V_1O + V_2O + V_3O + V_NO / rho = 0,

where ``rho = R_N / R_S`` is the neutral-to-phase resistance ratio.  Shifting
the measured line-to-neutral voltages onto O and scaling the homopolar
sequence components by ``sqrt(1 + 3 rho)`` produces equivalent vectors
``v_e, i_e`` whose norms reproduce the effective rms voltage and current, and
whose dot product equals the measured P + jQ regardless of the shift.

Two equivalent construction routes exist: the explicit phase-domain shift
formulas, and the sequence-domain homopolar correction followed by the
inverse transform.  Both are computed here and compared, as a mutual oracle
against transcription errors in either path.

``rho = 0`` is the perfect-neutral limit (no shift at all); three-wire
operation (``rho -> infinity``) is a separate explicit mode that requires the
line currents to sum to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import IntegrityError, InvalidConfigError, KclViolationError
from .fortescue import SequenceTriple, from_sequence, to_sequence
from .phasors import PhasorTriple

__all__ = [
    "FOUR_WIRE",
    "THREE_WIRE",
    "NeutralConfig",
    "FourWireEquivalents",
    "artificial_neutral_shift",
    "k_factor",
    "homopolar_correction",
    "equivalent_coordinates",
]

FOUR_WIRE = "four_wire"
THREE_WIRE = "three_wire"


def _require_rho(rho: float) -> float:
    rho = float(rho)
    if not math.isfinite(rho) or rho < 0.0:
        raise InvalidConfigError(f"rho must be finite and >= 0, got {rho!r}")
    return rho


@dataclass(frozen=True)
class NeutralConfig:
    """Neutral-conductor model: four-wire with a resistance ratio, or three-wire."""

    mode: str
    rho: float | None = None

    def __post_init__(self) -> None:
        if self.mode == FOUR_WIRE:
            if self.rho is None:
                raise InvalidConfigError("four-wire mode requires rho")
            object.__setattr__(self, "rho", _require_rho(self.rho))
        elif self.mode == THREE_WIRE:
            if self.rho is not None:
                raise InvalidConfigError("three-wire mode takes no rho")
        else:
            raise InvalidConfigError(
                f"unknown neutral mode {self.mode!r}, expected {FOUR_WIRE!r} or {THREE_WIRE!r}"
            )

    @classmethod
    def four_wire(cls, rho: float) -> "NeutralConfig":
        return cls(FOUR_WIRE, rho)

    @classmethod
    def three_wire(cls) -> "NeutralConfig":
        return cls(THREE_WIRE)


@dataclass(frozen=True)
class FourWireEquivalents:
    """Artificial-neutral shift and the equivalent coordinate vectors.

    correction is sqrt(1 + 3 rho) (math.inf in three-wire mode, where the
    homopolar components are identically zero instead of scaled).
    """

    v_no: complex
    i_n: complex
    k: float
    correction: float
    v_o: PhasorTriple
    v_e: PhasorTriple
    i_e: PhasorTriple
    v_seq_e: SequenceTriple
    i_seq_e: SequenceTriple


def artificial_neutral_shift(v: PhasorTriple, rho: float) -> complex:
    """Uniform shift V_NO mapping line-to-neutral onto line-to-O voltages.

    Equals ``-(V_1 + V_2 + V_3) / (3 + 1/rho)``; exactly zero for rho = 0,
    where the physical and artificial neutrals coincide.
    """
    rho = _require_rho(rho)
    if rho == 0.0:
        return 0j
    return -(v[0] + v[1] + v[2]) / (3.0 + 1.0 / rho)


def k_factor(rho: float) -> float:
    """Equivalent-coordinate shift factor k(rho).

    Evaluated as ``1 / (sqrt(1 + 3 rho) + 1)``, algebraically identical to
    ``(sqrt(1 + 3 rho) - 1) / (3 rho)`` but finite at rho = 0, where it equals
    1/2 exactly.  Monotone decreasing; k(1) = 1/3.
    """
    rho = _require_rho(rho)
    return 1.0 / (math.sqrt(1.0 + 3.0 * rho) + 1.0)


def homopolar_correction(rho: float) -> float:
    """Metric correction sqrt(1 + 3 rho) applied to homopolar components."""
    rho = _require_rho(rho)
    return math.sqrt(1.0 + 3.0 * rho)


def _dual_path_check(explicit: PhasorTriple, via_sequence: PhasorTriple, tol: float, what: str) -> None:
    dev = math.sqrt(sum(abs(a - b) ** 2 for a, b in zip(explicit, via_sequence)))
    if dev > tol * explicit.norm + 1e-300:
        raise IntegrityError(
            f"{what}: explicit and sequence-domain constructions disagree "
            f"(deviation {dev:.3e}, norm {explicit.norm:.3e})"
        )


def equivalent_coordinates(
    v: PhasorTriple,
    i: PhasorTriple,
    config: NeutralConfig,
    *,
    kcl_tol: float = 1e-9,
    path_tol: float = 1e-9,
) -> FourWireEquivalents:
    """Compute the artificial-neutral shift and equivalent coordinate vectors.

    Both the explicit phase-domain formulas and the sequence-domain
    construction are evaluated; disagreement beyond ``path_tol`` (relative)
    raises IntegrityError.  In three-wire mode the net line current must
    vanish to within ``kcl_tol`` (relative to ||i||) or KclViolationError is
    raised.
    """
    i_n = i[0] + i[1] + i[2]

    if config.mode == THREE_WIRE:
        if abs(i_n) > kcl_tol * i.norm:
            raise KclViolationError(
                "three-wire analysis requires the line currents to sum to zero "
                f"(|sum| = {abs(i_n):.3e}, ||i|| = {i.norm:.3e})"
            )
        v_no = -(v[0] + v[1] + v[2]) / 3.0
        v_o = PhasorTriple((v[0] + v_no, v[1] + v_no, v[2] + v_no), v.unit)
        v_e = v_o
        i_e = i
        k = 0.0
        correction = math.inf
        v_seq_o = to_sequence(v_o)
        i_seq = to_sequence(i)
        # Homopolar parts are identically zero in the three-wire limit.
        v_seq_e = SequenceTriple(v_seq_o.plus, v_seq_o.minus, 0j, unit=v.unit)
        i_seq_e = SequenceTriple(i_seq.plus, i_seq.minus, 0j, unit=i.unit)
        tol = path_tol + kcl_tol
    else:
        rho = config.rho
        v_no = artificial_neutral_shift(v, rho)
        v_o = PhasorTriple((v[0] + v_no, v[1] + v_no, v[2] + v_no), v.unit)
        k = k_factor(rho)
        correction = homopolar_correction(rho)
        v_shift = k * v_no
        i_shift = rho * k * i_n
        v_e = PhasorTriple((v_o[0] - v_shift, v_o[1] - v_shift, v_o[2] - v_shift), v.unit)
        i_e = PhasorTriple((i[0] + i_shift, i[1] + i_shift, i[2] + i_shift), i.unit)
        v_seq_o = to_sequence(v_o)
        i_seq = to_sequence(i)
        v_seq_e = SequenceTriple(
            v_seq_o.plus, v_seq_o.minus, correction * v_seq_o.homopolar, unit=v.unit
        )
        i_seq_e = SequenceTriple(i_seq.plus, i_seq.minus, correction * i_seq.homopolar, unit=i.unit)
        tol = path_tol

    _dual_path_check(v_e, from_sequence(v_seq_e), tol, "equivalent voltage")
    _dual_path_check(i_e, from_sequence(i_seq_e), tol, "equivalent current")

    return FourWireEquivalents(
        v_no=v_no,
        i_n=i_n,
        k=k,
        correction=correction,
        v_o=v_o,
        v_e=v_e,
        i_e=i_e,
        v_seq_e=v_seq_e,
        i_seq_e=i_seq_e,
    )
