"""Complex 3-vector phasor arithmetic and the complex-vector power decomposition.

Phasors are complex numbers carrying rms magnitude and phase angle; they are
kept in rectangular form everywhere inside the library, with polar
(magnitude, degrees) used only at the I/O boundary.

The complex-vector power of a voltage/current phasor pair combines the
classical dot-product complex power P + jQ with the cross product of the two
triples, a 3-vector that measures antisymmetric phase-to-phase unbalance.
Its Euclidean norm obeys ``s_norm**2 == P**2 + Q**2 + ||D||**2`` (a complex
Lagrange identity), so the apparent power splits orthogonally into an
intraphase part and a cross-phase part.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import InvalidInputError

__all__ = [
    "UNIT_TAGS",
    "PhasorTriple",
    "CvpResult",
    "phasor",
    "magnitude_angle",
    "angle_distance_deg",
    "dot_power",
    "cross_unbalance",
    "cvp",
    "lagrange_residual",
]

UNIT_TAGS = ("volt", "ampere", "volt-ampere", "dimensionless")


def phasor(magnitude: float, angle_deg: float) -> complex:
    """Build a complex rms phasor from magnitude and angle in degrees."""
    return cmath.rect(magnitude, math.radians(angle_deg))


def magnitude_angle(z: complex) -> tuple[float, float]:
    """Return (magnitude, angle in degrees), with the angle in (-180, 180]."""
    mag, rad = cmath.polar(z)
    deg = math.degrees(rad)
    if deg == -180.0:  # angles rounding onto the branch cut display as +180
        deg = 180.0
    return mag, deg


def angle_distance_deg(a: float, b: float) -> float:
    """Shortest-arc distance between two angles in degrees (result in [0, 180])."""
    return abs((a - b + 180.0) % 360.0 - 180.0)


def _require_finite(z: complex, what: str) -> complex:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidInputError(f"{what} must be finite, got {z!r}")
    return z


@dataclass(frozen=True)
class PhasorTriple:
    """Ordered triple of complex rms phasors (one per phase) with a unit tag."""

    components: tuple[complex, complex, complex]
    unit: str = "dimensionless"

    def __post_init__(self) -> None:
        if len(self.components) != 3:
            raise InvalidInputError(
                f"a phasor triple needs exactly 3 components, got {len(self.components)}"
            )
        comps = tuple(_require_finite(complex(c), "phasor component") for c in self.components)
        object.__setattr__(self, "components", comps)
        if self.unit not in UNIT_TAGS:
            raise InvalidInputError(f"unknown unit tag {self.unit!r}, expected one of {UNIT_TAGS}")

    @classmethod
    def from_polar(
        cls, entries: list[tuple[float, float]], unit: str = "dimensionless"
    ) -> "PhasorTriple":
        """Build from three (magnitude, angle_deg) pairs."""
        if len(entries) != 3:
            raise InvalidInputError(f"a phasor triple needs exactly 3 entries, got {len(entries)}")
        return cls(tuple(phasor(m, a) for m, a in entries), unit)

    def as_array(self) -> np.ndarray:
        return np.array(self.components, dtype=complex)

    @property
    def norm_squared(self) -> float:
        """Plain sum of |c_k|^2 (may under/overflow for extreme magnitudes)."""
        return sum(c.real * c.real + c.imag * c.imag for c in self.components)

    @property
    def norm(self) -> float:
        """Euclidean norm sqrt(sum |c_k|^2), scaling-robust."""
        c1, c2, c3 = self.components
        return math.hypot(c1.real, c1.imag, c2.real, c2.imag, c3.real, c3.imag)

    def __iter__(self) -> Iterator[complex]:
        return iter(self.components)

    def __getitem__(self, index: int) -> complex:
        return self.components[index]

    def __len__(self) -> int:
        return 3


@dataclass(frozen=True)
class CvpResult:
    """Complex-vector power of a voltage/current pair.

    p, q are the classical active and reactive powers; d is the cross-phase
    unbalance vector; s_norm = sqrt(p^2 + q^2 + ||d||^2) is the apparent-power
    magnitude; pf = p / s_norm, or None when s_norm is zero.
    """

    p: float
    q: float
    d: PhasorTriple
    s_norm: float
    pf: float | None


def dot_power(v: PhasorTriple, i: PhasorTriple) -> complex:
    """Classical complex power: sum over phases of V_k * conj(I_k) = P + jQ."""
    return sum(vk * ik.conjugate() for vk, ik in zip(v, i))


def cross_unbalance(v: PhasorTriple, i: PhasorTriple) -> PhasorTriple:
    """Cross product of the two triples (no conjugation of the current).

    Component k is ``V_l * I_m - V_m * I_l`` for (k, l, m) a cyclic permutation
    of (1, 2, 3).  Zero exactly when I is a complex multiple of V.
    """
    v1, v2, v3 = v.components
    i1, i2, i3 = i.components
    return PhasorTriple(
        (v2 * i3 - v3 * i2, v3 * i1 - v1 * i3, v1 * i2 - v2 * i1),
        unit="volt-ampere",
    )


def cvp(v: PhasorTriple, i: PhasorTriple) -> CvpResult:
    """Full complex-vector power decomposition of a voltage/current pair."""
    s = dot_power(v, i)
    d = cross_unbalance(v, i)
    d1, d2, d3 = d.components
    s_norm = math.hypot(s.real, s.imag, abs(d1), abs(d2), abs(d3))
    if s_norm > 0.0:
        pf = min(1.0, max(-1.0, s.real / s_norm))
    else:
        pf = None
    return CvpResult(p=s.real, q=s.imag, d=d, s_norm=s_norm, pf=pf)


def lagrange_residual(v: PhasorTriple, i: PhasorTriple) -> float:
    """Defect of the complex Lagrange identity for the given pair.

    Returns ``||V||^2 ||I||^2 - |V . conj(I)|^2 - sum_{j<k} |V_j I_k - V_k I_j|^2``,
    which vanishes in exact arithmetic; in floats it stays below
    1e-12 * ||V||^2 ||I||^2.  The pairwise sum is evaluated directly so this
    stays an independent route from cross_unbalance.
    """
    vv = v.norm_squared
    ii = i.norm_squared
    dot = dot_power(v, i)
    pairs = 0.0
    comps_v = v.components
    comps_i = i.components
    for j in range(3):
        for k in range(j + 1, 3):
            z = comps_v[j] * comps_i[k] - comps_v[k] * comps_i[j]
            pairs += z.real * z.real + z.imag * z.imag
    return vv * ii - (dot.real * dot.real + dot.imag * dot.imag) - pairs
