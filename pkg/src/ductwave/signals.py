"""Inflow signal waveforms.

A signal is the time-dependent boundary datum at x = 0: either a velocity
u0(t) [m/s] or the acoustic part of a pressure pi(t) - p0 [Pa], depending
on the scenario's inflow kind. All waveforms expose value(t) and
derivative(t) plus conservative amplitude/rate bounds used for shock
distance estimates and time-step sizing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SignalRangeError


@dataclass(frozen=True)
class SineSignal:
    """A sin(omega0 t) waveform."""

    amplitude: float
    omega0: float   # pulsation [rad/s]

    def __post_init__(self):
        if self.omega0 <= 0.0:
            raise ValueError("pulsation must be positive")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega0

    def value(self, t: float) -> float:
        return self.amplitude * math.sin(self.omega0 * t)

    def derivative(self, t: float) -> float:
        return self.amplitude * self.omega0 * math.cos(self.omega0 * t)

    def peak(self) -> float:
        return abs(self.amplitude)

    def max_rate(self) -> float:
        return abs(self.amplitude) * self.omega0


@dataclass(frozen=True)
class MultiHarmonicSignal:
    """Sum of harmonics A_i sin(k_i omega0 t + phi_i) on a fundamental omega0.

    components is a sequence of (harmonic index k, amplitude, phase).
    """

    omega0: float
    components: tuple[tuple[int, float, float], ...]

    def __post_init__(self):
        if self.omega0 <= 0.0:
            raise ValueError("pulsation must be positive")
        if not self.components:
            raise ValueError("at least one harmonic component is required")
        for k, _, _ in self.components:
            if k < 1:
                raise ValueError(f"harmonic index must be >= 1, got {k}")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega0

    def value(self, t: float) -> float:
        w = self.omega0 * t
        return sum(a * math.sin(k * w + phi) for k, a, phi in self.components)

    def derivative(self, t: float) -> float:
        w = self.omega0 * t
        return sum(a * k * self.omega0 * math.cos(k * w + phi)
                   for k, a, phi in self.components)

    def peak(self) -> float:
        return sum(abs(a) for _, a, _ in self.components)

    def max_rate(self) -> float:
        # Dense deterministic sampling over one period; the analytic bound
        # sum(|a| k omega0) overestimates badly for mixed phases.
        t = np.linspace(0.0, self.period, 4097)
        rates = np.abs([self.derivative(ti) for ti in t])
        return float(rates.max())


@dataclass(frozen=True)
class SampledSignal:
    """Table of values on a uniform time grid t_i = i * dtau.

    Evaluation uses linear interpolation; asking for a time outside the
    table is an error so that an under-covered run fails loudly instead of
    extrapolating.
    """

    dtau: float
    values: tuple[float, ...] = field(repr=False)

    def __post_init__(self):
        if self.dtau <= 0.0:
            raise ValueError("sample spacing must be positive")
        if len(self.values) < 2:
            raise ValueError("at least two samples are required")

    @property
    def duration(self) -> float:
        return (len(self.values) - 1) * self.dtau

    def value(self, t: float) -> float:
        if t < 0.0 or t > self.duration * (1.0 + 1e-12):
            raise SignalRangeError(
                f"t={t} outside sampled range [0, {self.duration}]"
            )
        pos = min(t / self.dtau, len(self.values) - 1.0)
        i = min(int(pos), len(self.values) - 2)
        frac = pos - i
        return self.values[i] + frac * (self.values[i + 1] - self.values[i])

    def derivative(self, t: float) -> float:
        if t < 0.0 or t > self.duration * (1.0 + 1e-12):
            raise SignalRangeError(
                f"t={t} outside sampled range [0, {self.duration}]"
            )
        i = min(int(t / self.dtau), len(self.values) - 2)
        return (self.values[i + 1] - self.values[i]) / self.dtau

    def peak(self) -> float:
        return max(abs(v) for v in self.values)

    def max_rate(self) -> float:
        diffs = np.diff(np.asarray(self.values))
        return float(np.abs(diffs).max() / self.dtau)


def raised_cosine_pulse(peak: float, width: float, dtau: float,
                        total: float) -> SampledSignal:
    """One-sided sin^2 pulse of given peak and base width, then silence.

    Convenience for boundary-transparency experiments: smooth, compactly
    supported, and exactly zero after the pulse has been emitted.
    """
    n = int(round(total / dtau)) + 1
    t = np.arange(n) * dtau
    vals = np.where(t < width, peak * np.sin(np.pi * t / width) ** 2, 0.0)
    return SampledSignal(dtau=dtau, values=tuple(float(v) for v in vals))
