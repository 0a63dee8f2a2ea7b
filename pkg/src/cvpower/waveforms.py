"""Time-domain synthesis and double-frequency analysis of three-phase sets.

Sampling uses the sine reference convention: a phasor of rms magnitude M and
angle alpha becomes ``sqrt(2) * M * sin(w t + alpha)``.  On a uniform grid
covering an integer number of cycles the instantaneous cross term
``d(t) = v(t) x i(t)`` is exactly a constant plus a double-frequency
sinusoid per component, so plain arithmetic means recover every quantity of
interest without a quadrature scheme.

Under this convention the oscillatory part of component k works out to
``-Re{ D_k * exp(2j w t) }``, i.e. a cosine of amplitude |D_k| whose phase is
``arg(D_k) + pi``; the fitted phase reported here therefore carries that
half-turn offset relative to arg(D_k), while the amplitude and rms relations
(sigma_k = |D_k| / sqrt(2)) are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidConfigError
from .phasors import CvpResult, PhasorTriple

__all__ = [
    "WaveformGrid",
    "WaveformSet",
    "CrossTermDecomposition",
    "synthesize",
    "decompose_cross_term",
    "verify_mean_power",
]

_SQRT2 = math.sqrt(2.0)

MIN_SAMPLES_PER_CYCLE = 16


@dataclass(frozen=True)
class WaveformGrid:
    """Uniform sampling grid: an integer number of cycles at a fixed rate."""

    frequency_hz: float
    samples_per_cycle: int = 256
    cycles: int = 2

    def __post_init__(self) -> None:
        if not (math.isfinite(self.frequency_hz) and self.frequency_hz > 0.0):
            raise InvalidConfigError(f"frequency must be finite and > 0, got {self.frequency_hz!r}")
        if int(self.samples_per_cycle) != self.samples_per_cycle or self.samples_per_cycle < MIN_SAMPLES_PER_CYCLE:
            raise InvalidConfigError(
                f"samples_per_cycle must be an integer >= {MIN_SAMPLES_PER_CYCLE}, "
                f"got {self.samples_per_cycle!r}"
            )
        if int(self.cycles) != self.cycles or self.cycles < 1:
            raise InvalidConfigError(f"cycles must be an integer >= 1, got {self.cycles!r}")
        object.__setattr__(self, "samples_per_cycle", int(self.samples_per_cycle))
        object.__setattr__(self, "cycles", int(self.cycles))

    @property
    def sample_count(self) -> int:
        return self.samples_per_cycle * self.cycles

    def times(self) -> np.ndarray:
        """Sample instants in seconds."""
        step = 1.0 / (self.frequency_hz * self.samples_per_cycle)
        return np.arange(self.sample_count) * step


@lru_cache(maxsize=32)
def _grid_basis(samples_per_cycle: int, cycles: int):
    """Cached per-grid vectors: e^{j w t_n} plus the 2w cosine/sine basis.

    Phase angles are reduced modulo one cycle before evaluating, so every
    cycle is sampled bit-identically and integer-cycle sums cancel exactly.
    """
    index = np.arange(samples_per_cycle * cycles) % samples_per_cycle
    theta = (2.0 * np.pi / samples_per_cycle) * index
    rotator = np.exp(1j * theta)
    cos2 = np.cos(2.0 * theta)
    sin2 = np.sin(2.0 * theta)
    for arr in (rotator, cos2, sin2):
        arr.setflags(write=False)
    return rotator, cos2, sin2


@dataclass(frozen=True, eq=False)
class WaveformSet:
    """Sampled per-phase voltages/currents with instantaneous power and cross term.

    v and i have shape (3, n); p has shape (n,); d has shape (3, n) with
    components ``d_k = v_l i_m - v_m i_l`` for cyclic (k, l, m).
    """

    grid: WaveformGrid
    v: np.ndarray
    i: np.ndarray
    p: np.ndarray
    d: np.ndarray

    def __post_init__(self) -> None:
        for arr in (self.v, self.i, self.p, self.d):
            arr.setflags(write=False)


@dataclass(frozen=True, eq=False)
class CrossTermDecomposition:
    """Mean plus double-frequency structure of the instantaneous cross term.

    amplitude[k] and phase_deg[k] describe the least-squares fit
    ``A cos(2wt) + B sin(2wt)`` to the oscillatory part of d_k; sigma[k] is
    its discrete rms and sigma_d the rms of the full 3-vector; residual[k] is
    the rms misfit, which vanishes for an exact sinusoidal regime.
    """

    mean: np.ndarray
    amplitude: np.ndarray
    phase_deg: np.ndarray
    sigma: np.ndarray
    residual: np.ndarray
    sigma_d: float

    def __post_init__(self) -> None:
        for arr in (self.mean, self.amplitude, self.phase_deg, self.sigma, self.residual):
            arr.setflags(write=False)


def synthesize(v: PhasorTriple, i: PhasorTriple, grid: WaveformGrid) -> WaveformSet:
    """Sample the sinusoids of two phasor triples and form p(t) and d(t)."""
    rotator, _, _ = _grid_basis(grid.samples_per_cycle, grid.cycles)
    v_t = _SQRT2 * np.outer(v.as_array(), rotator).imag
    i_t = _SQRT2 * np.outer(i.as_array(), rotator).imag
    p_t = (v_t * i_t).sum(axis=0)
    d_t = np.cross(v_t, i_t, axisa=0, axisb=0, axisc=0)
    return WaveformSet(grid=grid, v=v_t, i=i_t, p=p_t, d=d_t)


def decompose_cross_term(w: WaveformSet) -> CrossTermDecomposition:
    """Split each d_k(t) into its mean and a fitted 2w sinusoid."""
    grid = w.grid
    n = grid.sample_count
    if w.d.shape != (3, n):
        raise InvalidConfigError(
            f"waveform arrays with shape {w.d.shape} do not cover the grid's "
            f"{grid.cycles} cycle(s) of {grid.samples_per_cycle} samples"
        )
    _, cos2, sin2 = _grid_basis(grid.samples_per_cycle, grid.cycles)

    mean = w.d.mean(axis=1)
    oscillatory = w.d - mean[:, None]

    gram = np.array(
        [[cos2 @ cos2, cos2 @ sin2], [cos2 @ sin2, sin2 @ sin2]]
    )
    rhs = np.stack([oscillatory @ cos2, oscillatory @ sin2])
    coef = np.linalg.solve(gram, rhs)  # rows: A, B per component

    amplitude = np.hypot(coef[0], coef[1])
    phase_deg = np.degrees(np.arctan2(-coef[1], coef[0]))
    fit = coef[0][:, None] * cos2 + coef[1][:, None] * sin2
    residual = np.sqrt(np.mean((oscillatory - fit) ** 2, axis=1))
    sigma = np.sqrt(np.mean(oscillatory**2, axis=1))
    sigma_d = float(math.sqrt(float(np.sum(sigma**2))))

    return CrossTermDecomposition(
        mean=mean,
        amplitude=amplitude,
        phase_deg=phase_deg,
        sigma=sigma,
        residual=residual,
        sigma_d=sigma_d,
    )


def verify_mean_power(w: WaveformSet, expected: CvpResult) -> float:
    """Absolute deviation between the time average of p(t) and the phasor P.

    Stays below ``1e-9 * max(1, |P|)`` for grids of at least 64 samples per
    cycle.
    """
    return float(abs(w.p.mean() - expected.p))
