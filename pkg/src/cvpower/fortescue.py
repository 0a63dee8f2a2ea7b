"""Power-invariant symmetrical-component transform for three-phase phasors.

The transform matrix is the unitary (1/sqrt(3)-scaled) variant, so dot
products, norms and therefore the complex-vector power magnitude are
preserved between phase and sequence coordinates.  Row order is fixed as
(positive, negative, homopolar).  The cross product is not preserved
verbatim; it transforms as ``det(A) * conj(A) @ (V x I)`` with det(A) = -1j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .phasors import UNIT_TAGS, PhasorTriple, _require_finite, cross_unbalance

__all__ = [
    "ROTATOR",
    "FORTESCUE_MATRIX",
    "FORTESCUE_INVERSE",
    "FORTESCUE_DET",
    "SequenceTriple",
    "to_sequence",
    "from_sequence",
    "sequence_dot",
    "sequence_cross",
    "cross_transform_check",
]

_SQRT3 = math.sqrt(3.0)

# 120-degree rotator from exact constants (not trig calls): bit-stable unitarity.
ROTATOR = complex(-0.5, _SQRT3 / 2.0)
_A2 = ROTATOR.conjugate()

FORTESCUE_MATRIX = (
    np.array(
        [
            [1.0, ROTATOR, _A2],
            [1.0, _A2, ROTATOR],
            [1.0, 1.0, 1.0],
        ],
        dtype=complex,
    )
    / _SQRT3
)
# A^T A* = I, so the inverse is the conjugate transpose; no matrix inversion noise.
FORTESCUE_INVERSE = FORTESCUE_MATRIX.conj().T.copy()
FORTESCUE_DET = -1j

FORTESCUE_MATRIX.setflags(write=False)
FORTESCUE_INVERSE.setflags(write=False)


@dataclass(frozen=True)
class SequenceTriple:
    """Symmetrical components of a phasor triple, ordered (+, -, homopolar)."""

    plus: complex
    minus: complex
    homopolar: complex
    unit: str = "dimensionless"

    def __post_init__(self) -> None:
        for name in ("plus", "minus", "homopolar"):
            value = _require_finite(complex(getattr(self, name)), f"{name} component")
            object.__setattr__(self, name, value)
        if self.unit not in UNIT_TAGS:
            raise InvalidInputError(f"unknown unit tag {self.unit!r}, expected one of {UNIT_TAGS}")

    def as_array(self) -> np.ndarray:
        return np.array([self.plus, self.minus, self.homopolar], dtype=complex)

    @property
    def norm_squared(self) -> float:
        """Plain sum of squared magnitudes (may under/overflow at extremes)."""
        return (
            self.plus.real * self.plus.real
            + self.plus.imag * self.plus.imag
            + self.minus.real * self.minus.real
            + self.minus.imag * self.minus.imag
            + self.homopolar.real * self.homopolar.real
            + self.homopolar.imag * self.homopolar.imag
        )

    @property
    def norm(self) -> float:
        return math.hypot(
            self.plus.real,
            self.plus.imag,
            self.minus.real,
            self.minus.imag,
            self.homopolar.real,
            self.homopolar.imag,
        )


def to_sequence(x: PhasorTriple) -> SequenceTriple:
    """Map a phase-domain triple to (+, -, homopolar) sequence components."""
    plus, minus, homopolar = FORTESCUE_MATRIX @ x.as_array()
    return SequenceTriple(complex(plus), complex(minus), complex(homopolar), unit=x.unit)


def from_sequence(x: SequenceTriple) -> PhasorTriple:
    """Map (+, -, homopolar) sequence components back to the phase domain."""
    a, b, c = FORTESCUE_INVERSE @ x.as_array()
    return PhasorTriple((complex(a), complex(b), complex(c)), unit=x.unit)


def sequence_dot(v: SequenceTriple, i: SequenceTriple) -> complex:
    """Dot product sum_k V_k * conj(I_k) in sequence coordinates."""
    return (
        v.plus * i.plus.conjugate()
        + v.minus * i.minus.conjugate()
        + v.homopolar * i.homopolar.conjugate()
    )


def sequence_cross(v: SequenceTriple, i: SequenceTriple) -> SequenceTriple:
    """Cross product of two sequence triples, in (+, -, h) component order."""
    return SequenceTriple(
        v.minus * i.homopolar - v.homopolar * i.minus,
        v.homopolar * i.plus - v.plus * i.homopolar,
        v.plus * i.minus - v.minus * i.plus,
        unit="volt-ampere",
    )


def cross_transform_check(v: PhasorTriple, i: PhasorTriple) -> float:
    """Residual of the cross-product transformation law.

    Computes ``|| (A V) x (A I) - det(A) * conj(A) @ (V x I) ||``, which is zero
    in exact arithmetic and stays below ``1e-12 * (||V|| ||I|| + 1)`` in floats.
    """
    left = sequence_cross(to_sequence(v), to_sequence(i)).as_array()
    right = FORTESCUE_DET * (FORTESCUE_MATRIX.conj() @ cross_unbalance(v, i).as_array())
    return float(np.linalg.norm(left - right))
