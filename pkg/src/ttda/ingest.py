"""Audio loading and analysis-segment extraction.

WAV support covers RIFF/WAVE with PCM integer (8/16/24/32 bit) and IEEE
float (32/64 bit) data, including WAVE_FORMAT_EXTENSIBLE headers carrying
either subformat.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .errors import DegenerateInputError, DomainError, ExtractionError, FormatError
from .signal import Signal

__all__ = [
    "AudioFile",
    "extract_segment",
    "load_wav",
    "normalize_peak",
    "read_wav",
    "write_wav",
]

WAVE_FORMAT_PCM = 0x0001
WAVE_FORMAT_IEEE_FLOAT = 0x0003
WAVE_FORMAT_EXTENSIBLE = 0xFFFE

PathLike = Union[str, Path]


@dataclass(frozen=True)
class AudioFile:
    path: Path
    signal: Signal
    channels: int


def _chunks(data: bytes):
    pos = 12
    while pos + 8 <= len(data):
        cid, size = struct.unpack_from("<4sI", data, pos)
        body = data[pos + 8 : pos + 8 + size]
        yield cid, body
        pos += 8 + size + (size & 1)


def _decode(raw: bytes, fmt_tag: int, bits: int, channels: int) -> np.ndarray:
    width = bits // 8
    frame = width * channels
    usable = len(raw) - len(raw) % frame
    raw = raw[:usable]
    if fmt_tag == WAVE_FORMAT_IEEE_FLOAT:
        if bits == 32:
            x = np.frombuffer(raw, dtype="<f4").astype(np.float64)
        elif bits == 64:
            x = np.frombuffer(raw, dtype="<f8").copy()
        else:
            raise FormatError(f"fmt chunk: unsupported float sample width {bits} bits")
    elif bits == 8:
        x = (np.frombuffer(raw, dtype=np.uint8).astype(np.float64) - 128.0) / 128.0
    elif bits == 16:
        x = np.frombuffer(raw, dtype="<i2").astype(np.float64) / 32768.0
    elif bits == 24:
        b = np.frombuffer(raw, dtype=np.uint8).reshape(-1, 3).astype(np.int32)
        v = b[:, 0] | (b[:, 1] << 8) | (b[:, 2] << 16)
        v = np.where(v >= 1 << 23, v - (1 << 24), v)
        x = v.astype(np.float64) / float(1 << 23)
    elif bits == 32:
        x = np.frombuffer(raw, dtype="<i4").astype(np.float64) / float(1 << 31)
    else:
        raise FormatError(f"fmt chunk: unsupported PCM sample width {bits} bits")
    return x.reshape(-1, channels)


def read_wav(path: PathLike) -> AudioFile:
    p = Path(path)
    try:
        data = p.read_bytes()
    except FileNotFoundError:
        raise
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise FormatError(f"{p}: RIFF header missing or not a WAVE file")
    fmt = None
    raw = None
    for cid, body in _chunks(data):
        if cid == b"fmt ":
            if len(body) < 16:
                raise FormatError(f"{p}: fmt chunk truncated ({len(body)} bytes)")
            tag, channels, rate, _, _, bits = struct.unpack_from("<HHIIHH", body)
            if tag == WAVE_FORMAT_EXTENSIBLE:
                if len(body) < 40:
                    raise FormatError(f"{p}: fmt chunk extensible header truncated")
                tag = struct.unpack_from("<H", body, 24)[0]
            fmt = (tag, channels, rate, bits)
        elif cid == b"data":
            raw = body
    if fmt is None:
        raise FormatError(f"{p}: fmt chunk not found")
    if raw is None:
        raise FormatError(f"{p}: data chunk not found")
    tag, channels, rate, bits = fmt
    if tag not in (WAVE_FORMAT_PCM, WAVE_FORMAT_IEEE_FLOAT):
        raise FormatError(f"{p}: fmt chunk declares unsupported codec 0x{tag:04x}")
    if channels < 1 or rate < 1:
        raise FormatError(f"{p}: fmt chunk has channels={channels}, rate={rate}")
    frames = _decode(raw, tag, bits, channels)
    if frames.shape[0] == 0:
        raise FormatError(f"{p}: data chunk holds no complete frames")
    mono = frames.mean(axis=1)
    return AudioFile(p, Signal(mono, float(rate)), channels)


def load_wav(path: PathLike) -> Signal:
    """Mono signal normalized to the format's full scale."""
    return read_wav(path).signal


def write_wav(path: PathLike, s: Union[Signal, np.ndarray], sample_rate=None, bits: int = 32,
              float_format: bool = True):
    """Write a mono WAV: 32-bit IEEE float by default, or 16/24/32-bit PCM."""
    if isinstance(s, Signal):
        x, rate = s.samples, s.sample_rate
    else:
        x, rate = np.asarray(s, dtype=np.float64), sample_rate
    if rate is None:
        raise DomainError("sample rate required")
    rate = int(round(rate))
    if float_format:
        if bits != 32:
            raise DomainError("float WAV output is 32-bit only")
        payload = x.astype("<f4").tobytes()
        tag = WAVE_FORMAT_IEEE_FLOAT
    else:
        full = float(1 << (bits - 1))
        q = np.clip(np.round(x * full), -full, full - 1).astype(np.int64)
        if bits == 16:
            payload = q.astype("<i2").tobytes()
        elif bits == 32:
            payload = q.astype("<i4").tobytes()
        elif bits == 24:
            u = (q & 0xFFFFFF).astype(np.uint32)
            payload = np.stack([u & 0xFF, (u >> 8) & 0xFF, (u >> 16) & 0xFF], 1).astype(
                np.uint8
            ).tobytes()
        else:
            raise DomainError(f"unsupported PCM width {bits}")
        tag = WAVE_FORMAT_PCM
    block = bits // 8
    fmt = struct.pack("<HHIIHH", tag, 1, rate, rate * block, block, bits)
    body = b"WAVE" + b"fmt " + struct.pack("<I", len(fmt)) + fmt
    if tag == WAVE_FORMAT_IEEE_FLOAT:
        # non-PCM formats carry a fact chunk with the frame count
        body += b"fact" + struct.pack("<II", 4, len(x))
    body += b"data" + struct.pack("<I", len(payload)) + payload
    if len(payload) & 1:
        body += b"\x00"
    Path(path).write_bytes(b"RIFF" + struct.pack("<I", len(body)) + body)


def extract_segment(s: Signal, f0: float, periods: int = 4, allow_shift: bool = False) -> Signal:
    """Window of ``floor(periods * fs / f0)`` samples starting at the absolute peak.

    Ties resolve to the earliest peak. With ``allow_shift`` a window that
    would run past the end is moved left to end on the last sample.
    """
    s.require_nonempty()
    if f0 <= 0 or periods < 1:
        raise DomainError(f"need f0 > 0 and periods >= 1, got f0={f0}, periods={periods}")
    length = int(math.floor(periods * s.sample_rate / f0 + 1e-9))
    if length < 1:
        raise DomainError("segment length rounds to zero samples")
    start = int(np.argmax(np.abs(s.samples)))
    available = len(s) - start
    if available < length:
        if not allow_shift or length > len(s):
            raise ExtractionError(
                f"segment of {length} samples from peak at {start} overruns the signal; "
                f"only {available} samples remain",
                available=available,
            )
        start = len(s) - length
    return Signal(s.samples[start : start + length], s.sample_rate, f0)


def normalize_peak(s: Signal) -> Signal:
    peak = float(np.max(np.abs(s.samples))) if len(s) else 0.0
    if peak == 0.0:
        raise DegenerateInputError("cannot peak-normalize an all-zero signal")
    return s.replace(samples=s.samples / peak)
