"""Command-line entry point: ``ttda synth|analyze|sweep|batch|betti|replay``.

Exit codes: 0 success, 1 I/O failure, 2 invalid arguments or input,
3 infeasible analysis (delay too long for the segment), 4 batch finished
with some files skipped.

Settings resolve as flags, then ``TTDA_JOBS`` / ``TTDA_SEED`` /
``TTDA_OUT_DIR``, then built-in defaults.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import __version__
from .embed import EmbeddingConfig, delay_embed, delay_from_period, parse_fraction
from .errors import (
    ConfigError,
    DegenerateInputError,
    DomainError,
    EmbeddingError,
    ExtractionError,
    FormatError,
    TTDAError,
)
from .homology.complex import SimplicialComplex, betti_numbers
from .homology.diagram import PersistenceDiagram
from .homology.rips import rips_persistence
from .ingest import extract_segment, load_wav, normalize_peak, write_wav
from .sigsynth import PRESETS, SynthesisConfig, dft, get_preset, synthesize, white_noise
from .signal import Signal
from .timbre import (
    DEFAULT_A_GRID,
    DEFAULT_NOISE_SEEDS,
    default_tau_fractions,
    embedding_diagram,
    feature_surface,
    real_signal_features,
    reference_sine,
)
from .wasserstein import diagram_distance

log = logging.getLogger("ttda")

EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_PARTIAL = 0, 1, 2, 3, 4


class UsageError(Exception):
    """Flag validation failure; message names the offending flag."""


class InfeasibleError(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    argv: List[str]
    params: Dict
    seeds: List
    outputs: Dict[str, str] = field(default_factory=dict)
    duration_s: float = 0.0
    version: str = __version__

    def add_output(self, path: Path):
        self.outputs[str(path)] = hashlib.sha256(Path(path).read_bytes()).hexdigest()

    def write(self, path: Path):
        Path(path).write_text(json.dumps(asdict(self), indent=1, default=str) + "\n")


# ---------------------------------------------------------------- settings


def _env_int(name: str) -> Optional[int]:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {name} must be an integer, got {raw!r}")


def resolve_jobs(flag: Optional[int]) -> int:
    jobs = flag if flag is not None else _env_int("TTDA_JOBS")
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs < 1:
        raise UsageError(f"--jobs must be >= 1, got {jobs}")
    return jobs


def resolve_seed(flag: Optional[int]) -> int:
    seed = flag if flag is not None else _env_int("TTDA_SEED")
    return 0 if seed is None else seed


def resolve_out_dir(flag: Optional[str]) -> Path:
    out = flag or os.environ.get("TTDA_OUT_DIR") or "."
    p = Path(out)
    p.mkdir(parents=True, exist_ok=True)
    return p


def _positive(name: str, value: float):
    if not (value > 0 and math.isfinite(value)):
        raise UsageError(f"{name} must be a positive number, got {value}")


def _write_rows(path: Path, header: Sequence[str], rows) -> Path:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return path


# ---------------------------------------------------------------- svg


def _svg(path: Path, series, title: str, lines: bool = False, diagonal: bool = False):
    """Bare-bones scatter or polyline plot of (x, y) arrays."""
    w, h, pad = 480, 360, 40
    pts = np.vstack([np.asarray(s) for s in series if len(s)]) if any(len(s) for s in series) else np.zeros((1, 2))
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    if diagonal:
        lo[:] = min(lo)
        hi[:] = max(hi)
    span = np.where(hi > lo, hi - lo, 1.0)

    def tx(p):
        x = pad + (p[:, 0] - lo[0]) / span[0] * (w - 2 * pad)
        y = h - pad - (p[:, 1] - lo[1]) / span[1] * (h - 2 * pad)
        return x, y

    colors = ("#1f77b4", "#d62728", "#2ca02c")
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">',
           f'<rect width="{w}" height="{h}" fill="white"/>',
           f'<text x="{w / 2}" y="20" text-anchor="middle" font-size="14">{title}</text>']
    if diagonal:
        x, y = tx(np.array([lo, hi]))
        out.append(f'<line x1="{x[0]:.2f}" y1="{y[0]:.2f}" x2="{x[1]:.2f}" y2="{y[1]:.2f}" stroke="gray"/>')
    for k, s in enumerate(series):
        s = np.asarray(s)
        if not len(s):
            continue
        x, y = tx(s)
        c = colors[k % len(colors)]
        if lines:
            coords = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(x, y))
            out.append(f'<polyline fill="none" stroke="{c}" points="{coords}"/>')
        else:
            out.extend(f'<circle cx="{a:.2f}" cy="{b:.2f}" r="2" fill="{c}"/>' for a, b in zip(x, y))
    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n")


# ---------------------------------------------------------------- synth


def _check_a(a: float):
    if not 0.0 <= a <= 1.0:
        raise UsageError(f"--a must lie in the range [0, 1], got {a}")


def cmd_synth(args, manifest: RunManifest) -> int:
    _check_a(args.a)
    for flag, v in (("--f0", args.f0), ("--fs", args.fs), ("--dur", args.dur)):
        _positive(flag, v)
    seed = resolve_seed(args.seed)
    try:
        cfg = SynthesisConfig(args.f0, args.fs, args.dur, args.harmonics, seed)
    except ConfigError as e:
        raise UsageError(str(e))
    s = synthesize(get_preset(args.preset), args.a, cfg)
    out = Path(args.out) if args.out else resolve_out_dir(args.out_dir) / f"{args.preset}_a{args.a:g}.wav"
    write_wav(out, s)
    manifest.params = dict(preset=args.preset, a=args.a, f0=args.f0, fs=args.fs, dur=args.dur,
                           harmonics=args.harmonics, num_samples=len(s))
    manifest.seeds = [seed]
    manifest.add_output(out)
    print(out)
    return EXIT_OK


# ---------------------------------------------------------------- analyze


def _parse_partial(text: str):
    try:
        ratio, amp = text.split(":")
        return float(ratio), float(amp)
    except ValueError:
        raise UsageError(f"--partial expects RATIO:AMPLITUDE, got {text!r}")


def _analysis_signal(args, seed: int) -> Signal:
    if args.input:
        s = load_wav(args.input)
        if args.segment_periods:
            s = extract_segment(s, args.f0, args.segment_periods)
        return s.replace(fundamental_hz=args.f0)
    _positive("--fs", args.fs)
    _positive("--dur", args.dur)
    try:
        cfg = SynthesisConfig(args.f0, args.fs, args.dur, args.harmonics, seed)
    except ConfigError as e:
        raise UsageError(str(e))
    if args.preset:
        _check_a(args.a)
        s = synthesize(get_preset(args.preset), args.a, cfg)
    else:
        s = Signal(np.sin(2 * np.pi * args.f0 * cfg.times), cfg.sample_rate, args.f0)
    x = s.samples.copy()
    t = cfg.times
    for ratio, amp in args.partial or ():
        x += amp * np.sin(2 * np.pi * ratio * args.f0 * t)
    if args.noise:
        x += args.noise * white_noise(len(x), seed)
    return Signal(x, s.sample_rate, args.f0)


def _resolve_tau(args, fs: float) -> (int, Optional[Fraction]):
    if args.tau_samples is not None:
        if args.tau_samples < 1:
            raise UsageError(f"--tau-samples must be >= 1, got {args.tau_samples}")
        return args.tau_samples, None
    if args.tau_ms is not None:
        _positive("--tau-ms", args.tau_ms)
        tau = int(math.floor(args.tau_ms * 1e-3 * fs + 0.5))
        if tau < 1:
            raise UsageError(f"--tau-ms {args.tau_ms} rounds to zero samples at fs={fs:g}")
        return tau, None
    try:
        frac = parse_fraction(args.tau_frac)
        return delay_from_period(args.f0, frac, fs), frac
    except (ConfigError, DomainError) as e:
        raise UsageError(f"--tau-frac: {e}")


def cmd_analyze(args, manifest: RunManifest) -> int:
    _positive("--f0", args.f0)
    seed = resolve_seed(args.seed)
    s = _analysis_signal(args, seed)
    tau, frac = _resolve_tau(args, s.sample_rate)
    out = resolve_out_dir(args.out_dir)
    try:
        pc = delay_embed(s, EmbeddingConfig(tau, 2))
    except EmbeddingError as e:
        raise InfeasibleError(
            f"{e}; with {len(s)} samples the feasible delays are 1..{e.max_tau} samples"
        )
    full = rips_persistence(pc, backend=args.backend)
    f = full.features
    d_sig = PersistenceDiagram(f[(f[:, 0] == 1) & np.isfinite(f[:, 2])])
    d_ref = embedding_diagram(reference_sine(len(s), args.f0, s.sample_rate).samples, tau, args.backend)
    m = diagram_distance(d_ref, d_sig, dim=1)

    spec = dft(s)
    half = len(spec) // 2 + 1
    paths = {
        "waveform": _write_rows(out / "waveform.csv", ("t", "x"), zip(s.times, s.samples)),
        "spectrum": _write_rows(out / "spectrum.csv", ("frequency_hz", "magnitude"),
                                zip(np.abs(spec.frequencies[:half]), spec.magnitude()[:half])),
        "embedding": _write_rows(out / "embedding.csv", ("x", "x_delayed"), pc.points),
        "diagram": out / "diagram.csv",
    }
    full.to_csv(paths["diagram"])
    feature = {"m": m, "tau_samples": tau, "tau_ms": tau / s.sample_rate * 1e3,
               "tau_fraction": None if frac is None else str(frac), "f0": args.f0,
               "num_samples": len(s), "dim1_features": int(len(d_sig))}
    paths["feature"] = out / "feature.json"
    paths["feature"].write_text(json.dumps(feature, indent=1) + "\n")
    if args.svg:
        _svg(out / "waveform.svg", [np.column_stack([s.times, s.samples])], "waveform", lines=True)
        _svg(out / "spectrum.svg",
             [np.column_stack([np.abs(spec.frequencies[:half]), spec.magnitude()[:half]])],
             "spectrum", lines=True)
        _svg(out / "embedding.svg", [pc.points], "delay embedding")
        _svg(out / "diagram.svg", [full.pairs(0, finite=True), d_sig.pairs(1)], "persistence diagram",
             diagonal=True)
        for name in ("waveform", "spectrum", "embedding", "diagram"):
            paths[name + "_svg"] = out / f"{name}.svg"
    manifest.params = dict(input=args.input, preset=args.preset, a=args.a, f0=args.f0, fs=s.sample_rate,
                           num_samples=len(s), tau_samples=tau, partials=args.partial, noise=args.noise,
                           segment_periods=args.segment_periods, backend=args.backend)
    manifest.seeds = [seed]
    for p in paths.values():
        manifest.add_output(p)
    print(f"m={m!r}")
    return EXIT_OK


# ---------------------------------------------------------------- sweep


def _parse_grid(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"--a-grid expects comma-separated numbers, got {text!r}")


def cmd_sweep(args, manifest: RunManifest) -> int:
    names = list(PRESETS) if args.all else (args.preset or [])
    if not names:
        raise UsageError("--preset or --all is required")
    _positive("--f0", args.f0)
    _positive("--fs", args.fs)
    a_grid = _parse_grid(args.a_grid) if args.a_grid else list(DEFAULT_A_GRID)
    for a in a_grid:
        if not 0.0 <= a <= 1.0:
            raise UsageError(f"--a-grid values must lie in the range [0, 1], got {a}")
    if args.tau_steps < 1:
        raise UsageError(f"--tau-steps must be >= 1, got {args.tau_steps}")
    if args.seeds < 1:
        raise UsageError(f"--seeds must be >= 1, got {args.seeds}")
    jobs = resolve_jobs(args.jobs)
    seed = resolve_seed(args.seed)
    out = resolve_out_dir(args.out_dir)
    cfg = SynthesisConfig(args.f0, args.fs, 1.0 / args.f0, args.harmonics, seed)
    taus = default_tau_fractions(args.tau_steps)
    seeds_used = {}
    for name in names:
        t0 = time.perf_counter()
        seeds = [seed + k for k in range(args.seeds)]
        try:
            r = feature_surface(name, a_grid, taus, cfg, seeds=seeds, periods=args.periods,
                                jobs=jobs, backend=args.backend)
        except (ConfigError, DomainError) as e:
            raise UsageError(str(e))
        csv_path, json_path = out / f"sweep_{name}.csv", out / f"sweep_{name}.json"
        r.to_csv(csv_path)
        r.to_json(json_path)
        manifest.add_output(csv_path)
        manifest.add_output(json_path)
        seeds_used[name] = [s for s in r.seeds if s is not None]
        log.info("sweep %s done in %.1f s", name, time.perf_counter() - t0)
        print(csv_path)
    manifest.params = dict(presets=names, a_grid=a_grid, tau_steps=args.tau_steps, f0=args.f0,
                           fs=args.fs, periods=args.periods, harmonics=args.harmonics,
                           jobs=jobs, backend=args.backend)
    manifest.seeds = seeds_used
    return EXIT_OK


# ---------------------------------------------------------------- batch


def load_metadata(path: Path, filename_key: str, category_key: str) -> Dict[str, str]:
    """filename -> category from a metadata JSON.

    Accepts a list of records, a mapping of filename to category string, or a
    mapping of id to record (the record's filename defaults to ``id + .wav``).
    """
    doc = json.loads(Path(path).read_text())
    out = {}
    if isinstance(doc, list):
        for k, rec in enumerate(doc):
            if not isinstance(rec, dict) or filename_key not in rec or category_key not in rec:
                raise UsageError(
                    f"--metadata record {k} lacks '{filename_key}' or '{category_key}'"
                )
            out[str(rec[filename_key])] = str(rec[category_key])
    elif isinstance(doc, dict):
        for key, rec in doc.items():
            if isinstance(rec, dict):
                if category_key not in rec:
                    raise UsageError(f"--metadata entry {key!r} lacks '{category_key}'")
                name = str(rec.get(filename_key, key))
                if not Path(name).suffix:
                    name += ".wav"
                out[name] = str(rec[category_key])
            else:
                out[str(key)] = str(rec)
    else:
        raise UsageError("--metadata must hold a JSON list or object")
    return out


def _batch_item(task):
    path, category, f0, periods, backend = task
    try:
        s = load_wav(path)
        seg = normalize_peak(extract_segment(s, f0, periods))
        half, quarter = real_signal_features(seg, f0, backend)
        return path.name, category, half.value, quarter.value, None
    except (OSError, TTDAError) as e:
        return path.name, category, None, None, f"{type(e).__name__}: {e}"


def _quartiles(v):
    q1, med, q3 = np.percentile(v, [25, 50, 75])
    return float(med), float(q1), float(q3)


def cmd_batch(args, manifest: RunManifest) -> int:
    _positive("--f0", args.f0)
    audio_dir = Path(args.audio_dir)
    if not audio_dir.is_dir():
        raise OSError(f"audio directory {audio_dir} not found")
    wavs = sorted(p for p in audio_dir.iterdir() if p.is_file())
    if not wavs:
        raise UsageError(f"audio directory {audio_dir} is empty")
    meta = load_metadata(Path(args.metadata), args.filename_key, args.category_key)
    if not meta:
        raise UsageError(f"--metadata {args.metadata} has no entries")
    if args.category:
        meta = {k: v for k, v in meta.items() if v in set(args.category)}
    tasks = [(audio_dir / name, cat, args.f0, args.periods, args.backend)
             for name, cat in sorted(meta.items())]
    if not tasks:
        raise UsageError("no metadata entries match --category")
    jobs = min(resolve_jobs(args.jobs), len(tasks))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_batch_item, tasks))
    else:
        results = [_batch_item(t) for t in tasks]

    out = resolve_out_dir(args.out_dir)
    rows, failures = [], 0
    for name, cat, mh, mq, err in results:
        if err is not None:
            failures += 1
            log.warning("skipped %s: %s", name, err)
        else:
            rows.append((name, cat, mh, mq))
    feat_path = _write_rows(out / "batch_features.csv", ("file", "category", "m_half", "m_quarter"), rows)
    summary = []
    for cat in sorted({r[1] for r in rows}):
        mh = [r[2] for r in rows if r[1] == cat]
        mq = [r[3] for r in rows if r[1] == cat]
        summary.append((cat, len(mh), *_quartiles(mh), *_quartiles(mq)))
    sum_path = _write_rows(
        out / "batch_summary.csv",
        ("category", "count", "m_half_median", "m_half_q1", "m_half_q3",
         "m_quarter_median", "m_quarter_q1", "m_quarter_q3"),
        summary,
    )
    manifest.params = dict(audio_dir=str(audio_dir), metadata=args.metadata, f0=args.f0,
                           periods=args.periods, filename_key=args.filename_key,
                           category_key=args.category_key, categories=args.category,
                           jobs=jobs, processed=len(rows), skipped=failures)
    manifest.seeds = []
    manifest.add_output(feat_path)
    manifest.add_output(sum_path)
    print(f"processed={len(rows)} skipped={failures}")
    return EXIT_PARTIAL if failures else EXIT_OK


# ---------------------------------------------------------------- betti


def read_complex_file(path: Path) -> SimplicialComplex:
    K = SimplicialComplex()
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            simplex = [int(tok) for tok in body.split()]
        except ValueError:
            raise UsageError(f"{path}:{lineno}: expected whitespace-separated integer vertex ids")
        if any(v < 0 for v in simplex):
            raise UsageError(f"{path}:{lineno}: vertex ids must be non-negative")
        try:
            K.add(simplex)
        except (ValueError, DomainError) as e:
            raise UsageError(f"{path}:{lineno}: {e}")
    return K


def cmd_betti(args, manifest: RunManifest) -> int:
    K = read_complex_file(Path(args.complex))
    b = betti_numbers(K, 2)
    line = " ".join(f"beta_{k}={v}" for k, v in enumerate(b))
    print(line)
    manifest.params = dict(complex=args.complex, betti=b)
    manifest.seeds = []
    if args.out_dir or os.environ.get("TTDA_OUT_DIR"):
        p = resolve_out_dir(args.out_dir) / "betti.txt"
        p.write_text(line + "\n")
        manifest.add_output(p)
    return EXIT_OK


# ---------------------------------------------------------------- replay


def cmd_replay(args, manifest: RunManifest) -> int:
    doc = json.loads(Path(args.manifest).read_text())
    argv = doc.get("argv")
    if not isinstance(argv, list) or not argv or argv[0] == "replay":
        raise UsageError(f"--manifest {args.manifest} holds no replayable command")
    return main(argv)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ttda", description="Topological timbre analysis of audio signals.")
    p.add_argument("--version", action="version", version=f"ttda {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, jobs=False):
        sp.add_argument("--out-dir", help="output directory (env TTDA_OUT_DIR, default .)")
        sp.add_argument("--backend", choices=("compiled", "python"), default=None,
                        help="persistence kernel (default: compiled when built)")
        if jobs:
            sp.add_argument("--jobs", type=int, help="worker processes (env TTDA_JOBS, default: cores)")

    s = sub.add_parser("synth", help="write a synthesized test signal as 32-bit float WAV")
    s.add_argument("--preset", required=True, choices=sorted(PRESETS))
    s.add_argument("--a", type=float, required=True, help="harmonic strength in [0, 1]")
    s.add_argument("--f0", type=float, default=150.0)
    s.add_argument("--fs", type=float, default=48000.0)
    s.add_argument("--dur", type=float, default=0.02, help="seconds")
    s.add_argument("--harmonics", type=int, default=10, help="highest harmonic order N")
    s.add_argument("--seed", type=int, help="noise seed (env TTDA_SEED, default 0)")
    s.add_argument("--out", help="output WAV path")
    s.add_argument("--out-dir")
    s.set_defaults(func=cmd_synth)

    a = sub.add_parser("analyze", help="diagram, embedding, spectrum and m for one signal")
    src = a.add_mutually_exclusive_group()
    src.add_argument("--input", help="WAV file (default: synthesize)")
    src.add_argument("--preset", choices=sorted(PRESETS))
    a.add_argument("--a", type=float, default=1.0, help="harmonic strength for --preset")
    a.add_argument("--f0", type=float, default=150.0)
    a.add_argument("--fs", type=float, default=48000.0)
    a.add_argument("--dur", type=float, default=0.02)
    a.add_argument("--harmonics", type=int, default=10)
    a.add_argument("--partial", action="append", type=_parse_partial, metavar="RATIO:AMP",
                   help="add AMP*sin(2*pi*RATIO*f0*t); repeatable")
    a.add_argument("--noise", type=float, default=0.0, help="white-noise gain")
    a.add_argument("--seed", type=int)
    a.add_argument("--segment-periods", type=int, default=None,
                   help="for --input: analyze N periods starting at the absolute peak")
    tau = a.add_mutually_exclusive_group(required=True)
    tau.add_argument("--tau-ms", type=float)
    tau.add_argument("--tau-samples", type=int)
    tau.add_argument("--tau-frac", help="fraction p/q of the fundamental period")
    a.add_argument("--svg", action="store_true", help="also write SVG plots")
    common(a)
    a.set_defaults(func=cmd_analyze)

    w = sub.add_parser("sweep", help="m over the harmonic-strength x delay grid")
    grp = w.add_mutually_exclusive_group()
    grp.add_argument("--preset", action="append", choices=sorted(PRESETS))
    grp.add_argument("--all", action="store_true", help="all seven presets")
    w.add_argument("--f0", type=float, default=150.0)
    w.add_argument("--fs", type=float, default=48000.0)
    w.add_argument("--a-grid", help="comma-separated strengths (default 0,0.1,...,1)")
    w.add_argument("--tau-steps", type=int, default=32, help="delays k/STEPS of the period, k=1..STEPS")
    w.add_argument("--periods", type=int, default=1, help="fundamental periods of embedded points")
    w.add_argument("--harmonics", type=int, default=10)
    w.add_argument("--seeds", type=int, default=DEFAULT_NOISE_SEEDS, help="noise realizations to average")
    w.add_argument("--seed", type=int, help="first noise seed (env TTDA_SEED, default 0)")
    common(w, jobs=True)
    w.set_defaults(func=cmd_sweep)

    b = sub.add_parser("batch", help="features for a directory of recordings")
    b.add_argument("audio_dir")
    b.add_argument("--metadata", required=True, help="JSON mapping files to categories")
    b.add_argument("--f0", type=float, default=261.6, help="fundamental (default C4)")
    b.add_argument("--periods", type=int, default=4)
    b.add_argument("--filename-key", default="filename")
    b.add_argument("--category-key", default="category")
    b.add_argument("--category", action="append", help="only these categories; repeatable")
    common(b, jobs=True)
    b.set_defaults(func=cmd_batch)

    t = sub.add_parser("betti", help="Betti numbers of a complex listed by maximal simplices")
    t.add_argument("complex")
    t.add_argument("--out-dir")
    t.set_defaults(func=cmd_betti)

    r = sub.add_parser("replay", help="re-run the command recorded in a manifest")
    r.add_argument("manifest")
    r.set_defaults(func=cmd_replay)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    manifest = RunManifest(args.command, argv, {}, [])
    t0 = time.perf_counter()
    try:
        code = args.func(args, manifest)
    except UsageError as e:
        print(f"ttda {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (InfeasibleError, ExtractionError) as e:
        print(f"ttda {args.command}: infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (FormatError, OSError) as e:
        print(f"ttda {args.command}: I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, DomainError, DegenerateInputError) as e:
        print(f"ttda {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    manifest.duration_s = time.perf_counter() - t0
    if args.command != "replay" and (manifest.outputs or args.command == "betti"):
        if manifest.outputs:
            first = Path(next(iter(manifest.outputs)))
            mpath = first.parent / f"{args.command}_manifest.json"
        else:
            mpath = resolve_out_dir(getattr(args, "out_dir", None)) / "betti_manifest.json"
        manifest.write(mpath)
    return code


if __name__ == "__main__":
    sys.exit(main())
