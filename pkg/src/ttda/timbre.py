"""Topological timbre feature and harmonic-strength sweeps.

The timbre feature of a signal is the Wasserstein distance between the
dimension-1 Rips diagram of its 2-D delay embedding and that of a unit sine
at the same fundamental with the same sample count.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from . import __version__
from .embed import EmbeddingConfig, delay_embed, delay_from_period, parse_fraction
from .errors import ConfigError, DomainError
from .homology.diagram import PersistenceDiagram
from .homology.rips import rips_persistence
from .sigsynth import SynthesisConfig, WaveformPreset, get_preset, synthesize
from .signal import Signal
from .wasserstein import diagram_distance

__all__ = [
    "DEFAULT_A_GRID",
    "SweepResult",
    "TimbreFeature",
    "default_tau_fractions",
    "embedding_diagram",
    "feature_surface",
    "growth_rates",
    "best_delays",
    "real_signal_features",
    "reference_sine",
    "timbre_feature",
]

DEFAULT_A_GRID = tuple(round(0.1 * k, 1) for k in range(11))
DEFAULT_NOISE_SEEDS = 5


def default_tau_fractions(steps: int = 32) -> List[Fraction]:
    return [Fraction(k, steps) for k in range(1, steps + 1)]


@dataclass(frozen=True)
class TimbreFeature:
    value: float
    tau_samples: int
    f0: float
    tau_fraction_of_period: Optional[Fraction] = None

    def to_dict(self) -> dict:
        return {
            "m": self.value,
            "tau_samples": self.tau_samples,
            "tau_fraction": None
            if self.tau_fraction_of_period is None
            else str(self.tau_fraction_of_period),
            "f0": self.f0,
        }


def reference_sine(n: int, f0: float, sample_rate: float) -> Signal:
    t = np.arange(n) / sample_rate
    return Signal(np.sin(2 * np.pi * f0 * t), sample_rate, f0)


def embedding_diagram(samples, tau: int, backend: Optional[str] = None) -> PersistenceDiagram:
    """Finite dimension-1 diagram of the 2-D delay embedding of ``samples``."""
    pc = delay_embed(samples, EmbeddingConfig(int(tau), 2))
    d = rips_persistence(pc, backend=backend)
    f = d.features
    return PersistenceDiagram(f[(f[:, 0] == 1) & np.isfinite(f[:, 2])])


def timbre_feature(
    s: Signal,
    f0: float,
    tau_samples: int,
    tau_fraction: Optional[Fraction] = None,
    backend: Optional[str] = None,
) -> TimbreFeature:
    s.require_nonempty()
    ref = reference_sine(len(s), f0, s.sample_rate)
    d_ref = embedding_diagram(ref.samples, tau_samples, backend)
    d_sig = embedding_diagram(s.samples, tau_samples, backend)
    m = diagram_distance(d_ref, d_sig, dim=1)
    return TimbreFeature(m, int(tau_samples), float(f0), tau_fraction)


def real_signal_features(
    s: Signal, f0: float, backend: Optional[str] = None
) -> Tuple[TimbreFeature, TimbreFeature]:
    """Feature at delays of half and quarter of the fundamental period."""
    out = []
    for frac in (Fraction(1, 2), Fraction(1, 4)):
        tau = delay_from_period(f0, frac, s.sample_rate)
        out.append(timbre_feature(s, f0, tau, frac, backend))
    return out[0], out[1]


@dataclass
class SweepResult:
    preset: str
    a_grid: List[float]
    tau_grid: List[int]
    tau_fractions: List[Optional[Fraction]]
    m_values: np.ndarray
    f0: float
    sample_rate: float
    seeds: List[Optional[int]]
    per_seed: np.ndarray = field(repr=False, default=None)
    periods: int = 1
    max_harmonic_order: int = 10

    def __post_init__(self):
        self.m_values = np.asarray(self.m_values, dtype=np.float64)
        if self.m_values.shape != (len(self.a_grid), len(self.tau_grid)):
            raise ValueError("m_values shape does not match the grids")
        if self.per_seed is None:
            self.per_seed = self.m_values[None, :, :].copy()

    def tau_label(self, j: int) -> str:
        f = self.tau_fractions[j]
        return "" if f is None else str(f)

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("preset", "a", "tau_samples", "tau_fraction", "m", "seed"))
        noisy = any(s is not None for s in self.seeds)
        for i, a in enumerate(self.a_grid):
            for j, tau in enumerate(self.tau_grid):
                if noisy:
                    for k, seed in enumerate(self.seeds):
                        w.writerow(
                            (self.preset, repr(float(a)), tau, self.tau_label(j),
                             repr(float(self.per_seed[k, i, j])), seed)
                        )
                    w.writerow(
                        (self.preset, repr(float(a)), tau, self.tau_label(j),
                         repr(float(self.m_values[i, j])), "mean")
                    )
                else:
                    w.writerow(
                        (self.preset, repr(float(a)), tau, self.tau_label(j),
                         repr(float(self.m_values[i, j])), "")
                    )
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text

    def to_json(self, path=None) -> str:
        doc = {
            "preset": self.preset,
            "f0": self.f0,
            "sample_rate": self.sample_rate,
            "periods": self.periods,
            "max_harmonic_order": self.max_harmonic_order,
            "a_grid": [float(a) for a in self.a_grid],
            "tau_grid": [int(t) for t in self.tau_grid],
            "tau_fractions": [self.tau_label(j) or None for j in range(len(self.tau_grid))],
            "seeds": list(self.seeds),
            "m_values": self.m_values.tolist(),
            "per_seed": self.per_seed.tolist(),
            "version": __version__,
        }
        text = json.dumps(doc, indent=1)
        if path is not None:
            Path(path).write_text(text)
        return text

    @classmethod
    def from_json(cls, source) -> "SweepResult":
        text = Path(source).read_text() if not str(source).lstrip().startswith("{") else source
        doc = json.loads(text)
        return cls(
            preset=doc["preset"],
            a_grid=doc["a_grid"],
            tau_grid=doc["tau_grid"],
            tau_fractions=[None if f is None else Fraction(f) for f in doc["tau_fractions"]],
            m_values=np.array(doc["m_values"]),
            f0=doc["f0"],
            sample_rate=doc["sample_rate"],
            seeds=doc["seeds"],
            per_seed=np.array(doc["per_seed"]),
            periods=doc.get("periods", 1),
            max_harmonic_order=doc.get("max_harmonic_order", 10),
        )


def _resolve_taus(tau_grid, f0, fs):
    taus, fracs = [], []
    for t in tau_grid:
        if isinstance(t, (Fraction, str)):
            frac = parse_fraction(t)
            taus.append(delay_from_period(f0, frac, fs))
            fracs.append(frac)
        else:
            if int(t) != t or t < 1:
                raise ConfigError(f"integer delays must be >= 1 sample, got {t}")
            taus.append(int(t))
            fracs.append(None)
    return taus, fracs


def _cell(args):
    samples, tau, backend = args
    return embedding_diagram(samples, tau, backend)


def feature_surface(
    preset: Union[str, WaveformPreset],
    a_grid: Sequence[float] = DEFAULT_A_GRID,
    tau_grid: Optional[Sequence] = None,
    cfg: Optional[SynthesisConfig] = None,
    seeds: Optional[Sequence[int]] = None,
    periods: int = 1,
    jobs: int = 1,
    backend: Optional[str] = None,
) -> SweepResult:
    """m(a, tau) over a grid of harmonic strengths and delays.

    Every cell embeds ``periods`` fundamental periods' worth of points, so
    the synthesized signal has ``floor(periods * fs / f0) + tau`` samples.
    ``cfg.duration`` is ignored; ``cfg.noise_seed`` seeds noise presets when
    ``seeds`` is not given. ``tau_grid`` entries may be integer sample
    delays or period fractions (``Fraction`` or ``"p/q"`` strings); the
    default is k/32 of the period for k = 1..32.
    """
    if isinstance(preset, str):
        preset = get_preset(preset)
    if cfg is None:
        raise ConfigError("feature_surface needs a SynthesisConfig")
    if not len(a_grid):
        raise ConfigError("empty harmonic-strength grid")
    for a in a_grid:
        if not 0.0 <= a <= 1.0:
            raise DomainError(f"harmonic strength a must lie in [0, 1], got {a}")
    if tau_grid is None:
        tau_grid = default_tau_fractions()
    if not len(tau_grid):
        raise ConfigError("empty delay grid")
    if periods < 1:
        raise ConfigError(f"periods must be >= 1, got {periods}")
    f0, fs = cfg.f0, cfg.sample_rate
    taus, fracs = _resolve_taus(tau_grid, f0, fs)
    n_points = int(math.floor(periods * fs / f0 + 1e-9))
    total = n_points + max(taus)

    if preset.is_noise:
        seeds = list(seeds) if seeds is not None else [
            cfg.noise_seed + k for k in range(DEFAULT_NOISE_SEEDS)
        ]
    else:
        seeds = [None]

    def make(a, seed):
        c = SynthesisConfig.from_samples(
            f0, fs, total, max_harmonic_order=cfg.max_harmonic_order,
            noise_seed=0 if seed is None else seed,
        )
        return synthesize(preset, float(a), c).samples

    # the a = 0 signal is the pure sine for every seed
    ref_full = make(0.0, seeds[0])
    tasks, index = [], []
    for j, tau in enumerate(taus):
        tasks.append((ref_full[: n_points + tau], tau, backend))
        index.append(("ref", j))
    for k, seed in enumerate(seeds):
        for i, a in enumerate(a_grid):
            if a == 0.0:
                continue
            full = make(a, seed)
            for j, tau in enumerate(taus):
                tasks.append((full[: n_points + tau], tau, backend))
                index.append((k, i, j))

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            diagrams = list(pool.map(_cell, tasks, chunksize=8))
    else:
        diagrams = [_cell(t) for t in tasks]

    refs = {}
    per_seed = np.zeros((len(seeds), len(a_grid), len(taus)))
    for key, dgm in zip(index, diagrams):
        if key[0] == "ref":
            refs[key[1]] = dgm
    for key, dgm in zip(index, diagrams):
        if key[0] == "ref":
            continue
        k, i, j = key
        per_seed[k, i, j] = diagram_distance(refs[j], dgm, dim=1)
    m = per_seed.mean(axis=0)
    return SweepResult(
        preset=preset.name,
        a_grid=[float(a) for a in a_grid],
        tau_grid=taus,
        tau_fractions=fracs,
        m_values=m,
        f0=f0,
        sample_rate=fs,
        seeds=seeds,
        per_seed=per_seed,
        periods=periods,
        max_harmonic_order=cfg.max_harmonic_order,
    )


def growth_rates(result: SweepResult) -> np.ndarray:
    """Least-squares slope of m against a, one value per delay column."""
    a = np.asarray(result.a_grid, dtype=np.float64)
    ac = a - a.mean()
    denom = float(ac @ ac)
    if denom == 0:
        raise DomainError("growth rate needs at least two distinct a values")
    return ac @ (result.m_values - result.m_values.mean(axis=0)) / denom


def best_delays(result: SweepResult, rtol: float = 1e-9) -> List[int]:
    """Column indices whose growth rate equals the maximum within ``rtol``.

    More than one index comes back when delays give congruent embeddings,
    e.g. tau and T0/2 - tau for odd-harmonic waveforms.
    """
    g = growth_rates(result)
    top = g.max()
    return [int(j) for j in np.flatnonzero(g >= top - rtol * abs(top))]
