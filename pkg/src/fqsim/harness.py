"""Reproducible experiment driver: point-set files, seeded sampling,
batch sweeps, and report persistence.

Point-set file format (text):
    # comments start with '#', blank lines are skipped
    q=5 d=2
    0,0
    1,2
The header line declares the field order and dimension; every following
line is one point with d comma-separated coordinates in [0, q).

Sampling is driven entirely by SplitMix64 (see `prng`), so a given
(q, d, n, seed) produces the same point set on every platform, and
re-running a sweep cell reproduces its outcome payload byte for byte.
"""

from __future__ import annotations

import hashlib
import io
import json
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .configurations import (
    find_det_similar,
    find_similar_config,
    similarity_threshold,
)
from .errors import FqsimError, HeaderMismatch, ParseError, TooMany
from .field import PrimeField, as_field
from .geometry import PointSet, Vector
from .groups import Space
from .prng import SplitMix64, derive_seed

__version__ = "0.1.0"


# --- point-set I/O ---

def _index_to_coords(index: int, q: int, d: int) -> tuple[int, ...]:
    coords = []
    for _ in range(d):
        coords.append(index % q)
        index //= q
    return tuple(reversed(coords))


def random_pointset(q_or_field, dim: int, n: int, seed: int) -> PointSet:
    """n distinct points of F_q^d, uniform without replacement, seeded.

    Indices into the lexicographic enumeration of the space are chosen
    by a SplitMix64-driven partial shuffle, then decoded to coordinates;
    memory stays O(n) regardless of q^d.
    """
    field = as_field(q_or_field)
    total = field.q ** dim
    if n < 0:
        raise ValueError(f"sample size must be nonnegative, got {n}")
    if n > total:
        raise TooMany(f"cannot sample {n} distinct points from a space of {total}")
    rng = SplitMix64(seed)
    picks = rng.sample_indices(total, n)
    return PointSet(
        field, dim, [Vector(field, _index_to_coords(i, field.q, dim)) for i in picks]
    )


def random_subset(space: Space, n: int, seed: int) -> PointSet:
    """n distinct points drawn from an enumerated space (seeded)."""
    if n > space.size:
        raise TooMany(f"cannot sample {n} distinct points from a space of {space.size}")
    rng = SplitMix64(seed)
    picks = rng.sample_indices(space.size, n)
    return PointSet(space.field, space.dim, [space.elements[i] for i in picks])


def parse_pointset(text_or_lines) -> PointSet:
    """Parse the point-set format; duplicates are dropped with a warning."""
    if isinstance(text_or_lines, str):
        lines = io.StringIO(text_or_lines)
    else:
        lines = text_or_lines
    field: PrimeField | None = None
    dim = 0
    points = []
    seen: set[tuple[int, ...]] = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if field is None:
            parts = line.replace("=", " = ").split()
            if len(parts) != 6 or parts[0] != "q" or parts[1] != "=" or parts[3] != "d" or parts[4] != "=":
                raise ParseError(lineno, f"expected header 'q=<int> d=<int>', got {line!r}")
            try:
                q = int(parts[2])
                dim = int(parts[5])
            except ValueError:
                raise ParseError(lineno, f"non-integer header values in {line!r}") from None
            if dim < 1:
                raise ParseError(lineno, f"dimension must be positive, got {dim}")
            field = as_field(q)
            continue
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != dim:
            raise HeaderMismatch(lineno, f"expected {dim} coordinates, got {len(cells)}")
        try:
            coords = tuple(int(c) for c in cells)
        except ValueError:
            raise ParseError(lineno, f"non-integer coordinate in {line!r}") from None
        for c in coords:
            if not 0 <= c < field.q:
                raise HeaderMismatch(lineno, f"coordinate {c} out of range for q={field.q}")
        if coords in seen:
            warnings.warn(f"line {lineno}: duplicate point {coords} ignored")
            continue
        seen.add(coords)
        points.append(Vector(field, coords))
    if field is None:
        raise ParseError(0, "missing header line 'q=<int> d=<int>'")
    return PointSet(field, dim, points)


def load_pointset(path) -> PointSet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_pointset(fh)


def format_pointset(points: PointSet) -> str:
    lines = [f"q={points.field.q} d={points.dim}"]
    lines.extend(",".join(str(c) for c in p.coords) for p in points)
    return "\n".join(lines) + "\n"


def save_pointset(points: PointSet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_pointset(points))


def file_digest(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


# --- reports and sweeps ---

def canonical_json(obj) -> str:
    """Stable serialization used wherever payloads are compared byte-wise."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass
class Report:
    """One experiment cell: config echo, outcome, timing, provenance.

    Re-running an identical config reproduces the outcome payload
    exactly; only `timing_ms` varies.
    """

    config: dict
    outcome: dict
    timing_ms: float
    version: str = __version__
    input_digests: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "outcome": self.outcome,
            "timing_ms": self.timing_ms,
            "version": self.version,
            "input_digests": self.input_digests,
        }

    def outcome_bytes(self) -> bytes:
        return canonical_json(self.outcome).encode()


@dataclass(frozen=True)
class SweepConfig:
    """Cartesian grid of similarity-search cells.

    ratios: "all-squares" expands, per q, to every nonzero square of
    F_q; otherwise a fixed tuple of residues.  size: "threshold" uses
    the smallest set size meeting |E|^2 >= (k+1) q^d, otherwise a fixed
    count.  Each cell's sampling seed is derived from the base seed and
    the cell parameters, so cells are independent of grid order.
    """

    qs: tuple[int, ...]
    d: int
    ks: tuple[int, ...]
    ratios: str | tuple[int, ...] = "all-squares"
    trials: int = 1
    base_seed: int = 1
    size: str | int = "threshold"
    kind: str = "similarity"

    def __post_init__(self):
        if self.kind not in ("similarity", "det-similarity"):
            raise ValueError(f"unknown sweep kind {self.kind!r}")
        if self.d < 1:
            raise ValueError("dimension must be positive")
        if self.trials < 1:
            raise ValueError("need at least one trial per cell")
        if self.base_seed < 0 or self.base_seed >= 1 << 64:
            raise ValueError("base seed must fit in 64 bits")

    def cells(self) -> list[dict]:
        out = []
        for q in self.qs:
            field = as_field(q)  # validates primality up front
            if self.ratios == "all-squares":
                ratios = sorted({v * v % q for v in range(1, q)})
            else:
                ratios = [r % q for r in self.ratios]
            for k in self.ks:
                thr = similarity_threshold(field, self.d, k)
                n = thr.min_points if self.size == "threshold" else int(self.size)
                for r in ratios:
                    for trial in range(self.trials):
                        out.append({
                            "kind": self.kind,
                            "q": q,
                            "d": self.d,
                            "k": k,
                            "r": r,
                            "trial": trial,
                            "seed": derive_seed(self.base_seed, q, self.d, k, r, trial),
                            "n": n,
                            "meets_threshold": thr.met_by(n),
                        })
        return out


def run_cell(cell: dict) -> Report:
    """Execute one sweep cell; errors become part of the outcome."""
    start = time.perf_counter()
    try:
        field = as_field(cell["q"])
        ratio = field(cell["r"])
        if cell["kind"] == "similarity":
            points = random_pointset(field, cell["d"], cell["n"], cell["seed"])
            witness = find_similar_config(points, ratio, cell["k"])
        else:
            space = Space.punctured(field, cell["d"])
            points = random_subset(space, cell["n"], cell["seed"])
            witness = find_det_similar(points, ratio, cell["k"])
        outcome = {
            "status": "witness",
            "witness": witness.to_json(),
            "best_count": witness.report.best_count,
            "bound_num": witness.report.bound_num,
            "bound_den": witness.report.bound_den,
        }
    except (FqsimError, ValueError) as exc:
        outcome = {"status": "error", "error": type(exc).__name__, "message": str(exc)}
        if hasattr(exc, "best_count"):
            outcome["best_count"] = exc.best_count
    timing = (time.perf_counter() - start) * 1000.0
    return Report(config=dict(cell), outcome=outcome, timing_ms=timing)


def run_sweep(config: SweepConfig, jobs: int = 1) -> list[Report]:
    """Execute every cell; reports come back in grid order regardless of jobs."""
    cells = config.cells()
    if jobs <= 1:
        return [run_cell(c) for c in cells]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_cell, cells))


def sweep_summary(reports: Sequence[Report]) -> dict:
    """Pass/fail counts; a 'violation' is a failed search that met the
    size guarantee, which the counting argument rules out."""
    witnesses = sum(1 for r in reports if r.outcome["status"] == "witness")
    errors = [r for r in reports if r.outcome["status"] == "error"]
    violations = sum(
        1
        for r in errors
        if r.outcome.get("error") == "InsufficientIntersection"
        and r.config.get("meets_threshold")
    )
    return {
        "summary": True,
        "cells": len(reports),
        "witnesses": witnesses,
        "errors": len(errors),
        "violations": violations,
    }


def write_sweep(config: SweepConfig, stream, jobs: int = 1) -> dict:
    """Stream one JSON line per cell plus a final summary line.

    Lines are flushed as written, so an interrupted sweep leaves a
    valid JSON-lines prefix behind.
    """
    reports: list[Report] = []
    cells = config.cells()

    def emit(report: Report):
        reports.append(report)
        stream.write(canonical_json(report.to_json()) + "\n")
        stream.flush()

    if jobs <= 1:
        for cell in cells:
            emit(run_cell(cell))
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for report in pool.map(run_cell, cells):
                emit(report)
    summary = sweep_summary(reports)
    stream.write(canonical_json(summary) + "\n")
    stream.flush()
    return summary
