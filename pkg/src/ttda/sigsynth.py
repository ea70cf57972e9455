"""Test-signal synthesis: pure tones, harmonic series and spectrally shaped noise.

A synthetic tone with harmonic strength ``a`` is

    s(t; a) = (1 - a) sin(2 pi f0 t) + a * (sum_n A(n) sin(2 pi n f0 t) + noise(t))

where ``noise`` is white Gaussian noise filtered in the frequency domain by a
weight law B(f) and rescaled to unit standard deviation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ConfigError, DomainError
from .signal import Signal

__all__ = [
    "PRESETS",
    "Spectrum",
    "SynthesisConfig",
    "WaveformPreset",
    "dft",
    "get_preset",
    "harmonic_sum",
    "idft",
    "shape_noise",
    "sine",
    "synthesize",
    "white_noise",
]


@dataclass(frozen=True)
class SynthesisConfig:
    f0: float
    sample_rate: float
    duration: float
    max_harmonic_order: int = 10
    noise_seed: int = 0
    num_samples_override: Optional[int] = None

    def __post_init__(self):
        if not self.sample_rate > 0:
            raise ConfigError(f"sample_rate must be > 0, got {self.sample_rate}")
        if not 0 < self.f0 < self.sample_rate / 2:
            raise ConfigError(
                f"f0 must satisfy 0 < f0 < sample_rate/2 = {self.sample_rate / 2}, got {self.f0}"
            )
        if self.max_harmonic_order < 1:
            raise ConfigError(f"max_harmonic_order must be >= 1, got {self.max_harmonic_order}")
        if self.num_samples < 2:
            raise ConfigError(
                f"duration * sample_rate must give >= 2 samples, got {self.num_samples}"
            )

    @classmethod
    def from_samples(cls, f0, sample_rate, n, **kw) -> "SynthesisConfig":
        """Config with an exact sample count (avoids float flooring of ``n / fs * fs``)."""
        return cls(f0, sample_rate, n / sample_rate, num_samples_override=int(n), **kw)

    @property
    def num_samples(self) -> int:
        if self.num_samples_override is not None:
            return int(self.num_samples_override)
        # guard against 0.02 * 48000 == 959.9999...
        return int(math.floor(self.duration * self.sample_rate + 1e-9))

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.num_samples) / self.sample_rate


@dataclass(frozen=True)
class WaveformPreset:
    name: str
    harmonic_amplitude: Callable[[int], float]
    odd_only: bool
    noise_weight: Optional[Callable[[np.ndarray], np.ndarray]]
    has_harmonics: bool = True

    @property
    def harmonic_parity(self) -> str:
        return "odd" if self.odd_only else "all"

    @property
    def is_noise(self) -> bool:
        return self.noise_weight is not None

    def amplitude(self, n: int) -> float:
        if not self.has_harmonics or (self.odd_only and n % 2 == 0):
            return 0.0
        return float(self.harmonic_amplitude(n))

    def weight(self, f) -> np.ndarray:
        """Noise weight B(f) on ``|f|``; 0 everywhere for deterministic presets."""
        f = np.abs(np.asarray(f, dtype=np.float64))
        if self.noise_weight is None:
            return np.zeros_like(f)
        return self.noise_weight(f)


def _inverse_power(p):
    def law(f):
        out = np.zeros_like(f)
        nz = f > 0
        out[nz] = f[nz] ** -p  # DC weight fixed to 0
        return out

    return law


PRESETS = {
    "triangle": WaveformPreset("triangle", lambda n: 1.0 / n**2, True, None),
    "square": WaveformPreset("square", lambda n: 1.0 / n, True, None),
    "sawtooth": WaveformPreset("sawtooth", lambda n: 1.0 / n, False, None),
    "modified_sawtooth": WaveformPreset("modified_sawtooth", lambda n: 1.0 / n**2, False, None),
    "white_noise": WaveformPreset(
        "white_noise", lambda n: 0.0, False, lambda f: np.ones_like(f), has_harmonics=False
    ),
    "pink_noise": WaveformPreset(
        "pink_noise", lambda n: 0.0, False, _inverse_power(0.5), has_harmonics=False
    ),
    "brown_noise": WaveformPreset(
        "brown_noise", lambda n: 0.0, False, _inverse_power(1.0), has_harmonics=False
    ),
}

DETERMINISTIC_PRESETS = ("triangle", "square", "sawtooth", "modified_sawtooth")
NOISE_PRESETS = ("white_noise", "pink_noise", "brown_noise")


def get_preset(name: str) -> WaveformPreset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


@dataclass(frozen=True, eq=False)
class Spectrum:
    bins: np.ndarray
    bin_resolution: float

    def __len__(self):
        return self.bins.shape[0]

    @property
    def frequencies(self) -> np.ndarray:
        """Signed bin frequencies in Hz, numpy FFT ordering."""
        n = len(self)
        return np.fft.fftfreq(n, d=1.0 / (n * self.bin_resolution))

    def magnitude(self) -> np.ndarray:
        return np.abs(self.bins)


def dft(s: Signal) -> Spectrum:
    x = s.samples
    if x.size == 0:
        raise DomainError("dft of an empty signal")
    return Spectrum(np.fft.fft(x), s.sample_rate / x.size)


def idft(sp: Spectrum, sample_rate: Optional[float] = None) -> Signal:
    if len(sp) == 0:
        raise DomainError("idft of an empty spectrum")
    fs = sample_rate if sample_rate is not None else sp.bin_resolution * len(sp)
    return Signal(np.fft.ifft(sp.bins).real, fs)


def sine(cfg: SynthesisConfig) -> Signal:
    t = cfg.times
    return Signal(np.sin(2 * np.pi * cfg.f0 * t), cfg.sample_rate, cfg.f0)


def harmonic_sum(preset: WaveformPreset, cfg: SynthesisConfig) -> np.ndarray:
    """Sum of A(n) sin(2 pi n f0 t) up to the configured order, dropping n f0 >= Nyquist."""
    t = cfg.times
    out = np.zeros_like(t)
    nyquist = cfg.sample_rate / 2
    for n in range(1, cfg.max_harmonic_order + 1):
        amp = preset.amplitude(n)
        if amp == 0.0 or n * cfg.f0 >= nyquist:
            continue
        out += amp * np.sin(2 * np.pi * n * cfg.f0 * t)
    return out


def white_noise(n: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).standard_normal(n)


def shape_noise(xi: Signal, preset: WaveformPreset) -> Signal:
    """Filter ``xi`` by the preset's weight law B(|f|) in the frequency domain."""
    xi.require_nonempty()
    sp = dft(xi)
    w = preset.weight(sp.frequencies)
    # conjugate-symmetric real weights keep the output real
    shaped = idft(Spectrum(sp.bins * w, sp.bin_resolution), xi.sample_rate)
    return Signal(shaped.samples, xi.sample_rate)


def synthesize(preset: WaveformPreset, a: float, cfg: SynthesisConfig) -> Signal:
    if not 0.0 <= a <= 1.0:
        raise DomainError(f"harmonic strength a must lie in [0, 1], got {a}")
    base = sine(cfg).samples
    extra = harmonic_sum(preset, cfg)
    if preset.is_noise:
        xi = Signal(white_noise(cfg.num_samples, cfg.noise_seed), cfg.sample_rate)
        noise = shape_noise(xi, preset).samples
        sd = noise.std()
        if sd > 0:
            noise = noise / sd
        extra = extra + noise
    return Signal((1.0 - a) * base + a * extra, cfg.sample_rate, cfg.f0)
