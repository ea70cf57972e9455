import struct

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ttda.errors import DegenerateInputError, ExtractionError, FormatError
from ttda.ingest import extract_segment, load_wav, normalize_peak, read_wav, write_wav
from ttda.signal import Signal


def riff(fmt_body: bytes, data: bytes, extra: bytes = b"") -> bytes:
    body = b"WAVE" + b"fmt " + struct.pack("<I", len(fmt_body)) + fmt_body + extra
    body += b"data" + struct.pack("<I", len(data)) + data
    return b"RIFF" + struct.pack("<I", len(body)) + body


def fmt(tag, channels, rate, bits):
    block = channels * bits // 8
    return struct.pack("<HHIIHH", tag, channels, rate, rate * block, block, bits)


def test_pcm16_scaling(tmp_path):
    p = tmp_path / "a.wav"
    p.write_bytes(riff(fmt(1, 1, 16000, 16), struct.pack("<3h", 0, 16384, -16384)))
    s = load_wav(p)
    assert s.samples.tolist() == [0.0, 0.5, -0.5]
    assert s.sample_rate == 16000


def test_stereo_average(tmp_path):
    p = tmp_path / "st.wav"
    p.write_bytes(riff(fmt(3, 2, 44100, 32), struct.pack("<2f", 1.0, 0.0)))
    af = read_wav(p)
    assert af.channels == 2
    assert af.signal.samples.tolist() == [0.5]


def test_pcm8_and_24(tmp_path):
    p8 = tmp_path / "8.wav"
    p8.write_bytes(riff(fmt(1, 1, 8000, 8), bytes([128, 192, 64])))
    assert load_wav(p8).samples.tolist() == [0.0, 0.5, -0.5]
    p24 = tmp_path / "24.wav"
    raw = b"".join(int(v).to_bytes(3, "little", signed=True) for v in (0, 1 << 22, -(1 << 22)))
    p24.write_bytes(riff(fmt(1, 1, 8000, 24), raw))
    assert load_wav(p24).samples.tolist() == [0.0, 0.5, -0.5]


def test_extensible_header(tmp_path):
    base = fmt(0xFFFE, 1, 16000, 16)
    ext = struct.pack("<HHI", 22, 16, 0) + struct.pack("<H", 1) + b"\x00" * 14
    p = tmp_path / "ext.wav"
    p.write_bytes(riff(base + ext, struct.pack("<2h", 8192, -8192)))
    assert load_wav(p).samples.tolist() == [0.25, -0.25]


def test_unknown_chunk_skipped(tmp_path):
    p = tmp_path / "list.wav"
    extra = b"LIST" + struct.pack("<I", 3) + b"abc\x00"
    p.write_bytes(riff(fmt(1, 1, 16000, 16), struct.pack("<h", 16384), extra))
    assert load_wav(p).samples.tolist() == [0.5]


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_wav(tmp_path / "nope.wav")


def test_compressed_codec_names_chunk(tmp_path):
    p = tmp_path / "mp3.wav"
    p.write_bytes(riff(fmt(0x55, 1, 16000, 16), b"\x00\x00"))
    with pytest.raises(FormatError, match="fmt chunk"):
        load_wav(p)


def test_not_riff(tmp_path):
    p = tmp_path / "junk.wav"
    p.write_bytes(b"not a wave file at all")
    with pytest.raises(FormatError, match="RIFF"):
        load_wav(p)


def test_missing_data_chunk(tmp_path):
    p = tmp_path / "nodata.wav"
    body = b"WAVE" + b"fmt " + struct.pack("<I", 16) + fmt(1, 1, 16000, 16)
    p.write_bytes(b"RIFF" + struct.pack("<I", len(body)) + body)
    with pytest.raises(FormatError, match="data chunk"):
        load_wav(p)


@pytest.mark.parametrize("bits, float_format, tol", [(32, True, 1e-7), (16, False, 2 ** -15), (24, False, 2 ** -23)])
def test_write_read_roundtrip(tmp_path, bits, float_format, tol):
    x = np.sin(np.linspace(0, 6, 101)) * 0.9
    p = tmp_path / "rt.wav"
    write_wav(p, Signal(x, 22050.0), bits=bits, float_format=float_format)
    s = load_wav(p)
    assert s.sample_rate == 22050
    assert np.max(np.abs(s.samples - x)) <= tol


def decaying_pluck(n=2000, peak=100):
    t = np.arange(n)
    x = np.exp(-np.abs(t - peak) / 300.0) * np.cos(0.3 * (t - peak))
    return Signal(x, 16000.0)


def test_extract_segment_from_peak():
    s = decaying_pluck()
    seg = extract_segment(s, 261.6, 4)
    # floor(4 * 16000 / 261.6) = floor(244.65)
    assert len(seg) == 244
    assert seg.samples[0] == s.samples[100]
    assert np.array_equal(seg.samples, s.samples[100:344])
    assert seg.fundamental_hz == 261.6


def test_extract_segment_tie_earliest():
    n = 320 * 3
    s = Signal(np.sin(2 * np.pi * np.arange(n) / 320) * 0 + np.tile([0.0, 1.0, 0.0, -1.0], n // 4), 48000.0)
    seg = extract_segment(s, 150.0, 1)
    assert len(seg) == 320
    assert np.array_equal(seg.samples, s.samples[1:321])


def test_extract_segment_overrun():
    x = np.zeros(1000)
    x[990] = 1.0
    s = Signal(x, 16000.0)
    with pytest.raises(ExtractionError) as ei:
        extract_segment(s, 261.6, 4)
    assert ei.value.available == 10
    seg = extract_segment(s, 261.6, 4, allow_shift=True)
    assert len(seg) == 244 and seg.samples[-1] == 0.0 and seg.samples[-10] == 1.0


def test_normalize_peak():
    assert normalize_peak(Signal([0.2, -0.5], 1.0)).samples.tolist() == [0.4, -1.0]
    s = Signal([0.3, -1.0, 0.5], 1.0)
    assert np.array_equal(normalize_peak(s).samples, s.samples)
    with pytest.raises(DegenerateInputError):
        normalize_peak(Signal(np.zeros(4), 1.0))


@given(
    st.lists(st.floats(-10, 10, allow_nan=False), min_size=1, max_size=50).filter(
        lambda v: max(abs(x) for x in v) > 1e-6
    ),
    st.sampled_from([0.5, 2.0, 3.7]),
)
def test_normalize_peak_properties(values, c):
    s = Signal(values, 1.0)
    n1 = normalize_peak(s)
    assert np.max(np.abs(n1.samples)) == 1.0
    assert np.array_equal(normalize_peak(n1).samples, n1.samples)
    assert np.allclose(normalize_peak(s * c).samples, n1.samples, rtol=1e-12, atol=0)


@given(st.integers(300, 3000), st.integers(1, 4), st.integers(0, 2**31 - 1))
def test_segment_length_law(n, periods, seed):
    x = np.random.default_rng(seed).standard_normal(n)
    s = Signal(x, 16000.0)
    try:
        seg = extract_segment(s, 261.6, periods)
    except ExtractionError:
        return
    assert len(seg) == int(periods * 16000.0 / 261.6)
