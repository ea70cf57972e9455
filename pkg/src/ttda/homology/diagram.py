from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from ..errors import FormatError

CSV_HEADER = ("dim", "birth", "death")


@dataclass(frozen=True, eq=False)
class PersistenceDiagram:
    """Multiset of (dim, birth, death) features; death may be ``inf``.

    Rows are kept sorted by (dim, birth, death) so two diagrams holding the
    same multiset compare equal element-wise.
    """

    features: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.features, dtype=np.float64).reshape(-1, 3)
        if f.size and np.any(f[:, 2] < f[:, 1]):
            raise ValueError("diagram contains a feature with death < birth")
        order = np.lexsort((f[:, 2], f[:, 1], f[:, 0]))
        f = f[order]
        f.setflags(write=False)
        object.__setattr__(self, "features", f)

    @classmethod
    def from_pairs(cls, dim0=(), dim1=()) -> "PersistenceDiagram":
        rows = [(0, b, d) for b, d in dim0] + [(1, b, d) for b, d in dim1]
        return cls(np.array(rows, dtype=np.float64).reshape(-1, 3))

    def __len__(self):
        return self.features.shape[0]

    def __eq__(self, other):
        if not isinstance(other, PersistenceDiagram):
            return NotImplemented
        return self.features.shape == other.features.shape and bool(
            np.all(self.features == other.features)
        )

    def pairs(self, dim: int, finite: bool = False) -> np.ndarray:
        """(birth, death) array of the features in homology dimension ``dim``."""
        f = self.features[self.features[:, 0] == dim][:, 1:]
        if finite:
            f = f[np.isfinite(f[:, 1])]
        return f

    def persistence(self, dim: int) -> np.ndarray:
        p = self.pairs(dim)
        return p[:, 1] - p[:, 0]

    def essential_count(self, dim: int) -> int:
        return int(np.sum(~np.isfinite(self.pairs(dim)[:, 1])))

    def scaled(self, c: float) -> "PersistenceDiagram":
        f = self.features.copy()
        f[:, 1:] *= c
        return PersistenceDiagram(f)

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for dim, b, d in self.features:
            w.writerow((int(dim), repr(float(b)), "inf" if math.isinf(d) else repr(float(d))))
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text

    @classmethod
    def from_csv(cls, source: Union[str, Path]) -> "PersistenceDiagram":
        p = Path(source) if not isinstance(source, str) or "\n" not in source else None
        text = p.read_text() if p is not None else source
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or tuple(r.strip() for r in rows[0]) != CSV_HEADER:
            raise FormatError(f"diagram CSV must start with header {','.join(CSV_HEADER)}")
        out = []
        for n, r in enumerate(rows[1:], start=2):
            if not r:
                continue
            try:
                out.append((int(r[0]), float(r[1]), float(r[2])))
            except (ValueError, IndexError):
                raise FormatError(f"malformed diagram row at line {n}: {r}") from None
        return cls(np.array(out, dtype=np.float64).reshape(-1, 3))


def betti_curve(d: PersistenceDiagram, k: int, r: float) -> int:
    """Number of dimension-``k`` features alive at radius ``r`` (birth <= r < death)."""
    p = d.pairs(k)
    return int(np.sum((p[:, 0] <= r) & (r < p[:, 1])))
