"""Time delay embedding and distance preparation for Rips filtrations."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import ConfigError, DomainError, EmbeddingError
from .signal import Signal

__all__ = [
    "DistanceMatrix",
    "EmbeddingConfig",
    "PointCloud",
    "delay_embed",
    "delay_from_period",
    "distance_matrix",
    "enclosing_radius",
    "parse_fraction",
]


@dataclass(frozen=True)
class EmbeddingConfig:
    delay_samples: int
    dimension: int = 2
    stride: int = 1

    def __post_init__(self):
        if self.dimension < 2:
            raise ConfigError(f"embedding dimension must be >= 2, got {self.dimension}")
        if self.delay_samples < 1:
            raise ConfigError(f"delay must be >= 1 sample, got {self.delay_samples}")
        if self.stride < 1:
            raise ConfigError(f"stride must be >= 1, got {self.stride}")

    def delay_seconds(self, sample_rate: float) -> float:
        return self.delay_samples / sample_rate

    def max_delay(self, length: int) -> int:
        """Largest delay that still leaves one point for a signal of ``length`` samples."""
        return (length - 1) // (self.dimension - 1)


@dataclass(frozen=True, eq=False)
class PointCloud:
    points: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.points, dtype=np.float64)
        if p.ndim != 2:
            raise DomainError(f"point cloud must be 2-D (n, d), got shape {p.shape}")
        object.__setattr__(self, "points", p)

    def __len__(self):
        return self.points.shape[0]

    @property
    def dimension(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Dense symmetric Euclidean distance matrix with zero diagonal."""

    values: np.ndarray

    def __len__(self):
        return self.values.shape[0]

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def upper(self) -> np.ndarray:
        i, j = np.triu_indices(self.size, 1)
        return self.values[i, j]


def delay_embed(s: Union[Signal, np.ndarray], cfg: EmbeddingConfig) -> PointCloud:
    x = s.samples if isinstance(s, Signal) else np.asarray(s, dtype=np.float64)
    span = (cfg.dimension - 1) * cfg.delay_samples
    if span >= x.shape[0]:
        max_tau = cfg.max_delay(x.shape[0])
        raise EmbeddingError(
            f"delay {cfg.delay_samples} too large for {x.shape[0]} samples "
            f"in dimension {cfg.dimension}; max feasible delay is {max_tau}",
            max_tau=max_tau,
        )
    n = x.shape[0] - span
    cols = [x[k * cfg.delay_samples : k * cfg.delay_samples + n] for k in range(cfg.dimension)]
    pts = np.stack(cols, axis=1)
    if cfg.stride > 1:
        pts = pts[:: cfg.stride]
    return PointCloud(np.ascontiguousarray(pts))


def distance_matrix(pc: PointCloud) -> DistanceMatrix:
    p = pc.points
    if len(p) == 0:
        raise DomainError("distance matrix of an empty point cloud")
    diff = p[:, None, :] - p[None, :, :]
    d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    # exact symmetry and zero diagonal regardless of rounding
    d = np.triu(d, 1)
    d = d + d.T
    return DistanceMatrix(np.ascontiguousarray(d))


def enclosing_radius(m: DistanceMatrix) -> float:
    """Smallest radius at which some vertex is adjacent to every other vertex."""
    if m.size == 0:
        raise DomainError("enclosing radius of an empty matrix")
    return float(m.values.max(axis=1).min())


def parse_fraction(text: Union[str, Fraction, float, int]) -> Fraction:
    if isinstance(text, Fraction):
        return text
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"cannot parse period fraction {text!r}; expected p/q") from None


def delay_from_period(f0: float, fraction, sample_rate: float) -> int:
    """Delay in samples for ``fraction`` of the fundamental period, rounded half-up."""
    if f0 <= 0 or sample_rate <= 0:
        raise ConfigError("f0 and sample_rate must be positive")
    frac = parse_fraction(fraction)
    exact = Fraction(frac) * Fraction(sample_rate).limit_denominator(10**9) / Fraction(
        f0
    ).limit_denominator(10**9)
    tau = math.floor(exact + Fraction(1, 2))
    if tau < 1:
        raise ConfigError(
            f"delay of {frac} T0 at f0={f0} Hz, fs={sample_rate} Hz rounds to {tau} samples"
        )
    return tau
