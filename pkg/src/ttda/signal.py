from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError


@dataclass(frozen=True, eq=False)
class Signal:
    """Uniformly sampled real waveform.

    ``samples`` is stored as a read-only float64 array.
    """

    samples: np.ndarray
    sample_rate: float
    fundamental_hz: Optional[float] = None
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        x = np.array(self.samples, dtype=np.float64).ravel()
        if self.sample_rate <= 0:
            raise DomainError(f"sample_rate must be > 0, got {self.sample_rate}")
        if not np.all(np.isfinite(x)):
            raise DomainError("signal contains NaN or Inf samples")
        if self.fundamental_hz is not None and self.fundamental_hz <= 0:
            raise DomainError(f"fundamental_hz must be positive, got {self.fundamental_hz}")
        x.setflags(write=False)
        object.__setattr__(self, "samples", x)

    def __len__(self):
        return self.samples.shape[0]

    @property
    def duration(self) -> float:
        return len(self) / self.sample_rate

    @property
    def times(self) -> np.ndarray:
        return np.arange(len(self)) / self.sample_rate

    def require_nonempty(self):
        if len(self) == 0:
            raise DomainError("empty signal")
        return self

    def replace(self, samples=None, fundamental_hz=None) -> "Signal":
        return Signal(
            self.samples if samples is None else samples,
            self.sample_rate,
            self.fundamental_hz if fundamental_hz is None else fundamental_hz,
        )

    def __mul__(self, c):
        return self.replace(samples=self.samples * float(c))

    __rmul__ = __mul__
