"""Mobility scenarios: waypoint traces, position interpolation, periodic
resampling, and pairwise distance tables.

A scenario file carries one waypoint per line as `node time x y`
(whitespace or comma separated, `#` comments allowed). Between
waypoints a node moves on a straight line at constant speed; after its
last waypoint it stays put.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


class ScenarioParseError(ValueError):
    """Malformed scenario text (bad field count, non-numeric values, ...)."""


class ScenarioValidationError(ValueError):
    """Structurally valid text that violates trace invariants."""


@dataclass(frozen=True, order=True)
class Waypoint:
    node: int
    time: float
    x: float
    y: float


@dataclass(frozen=True)
class Scenario:
    """Waypoint traces for nodes 0..M-1 plus the simulated duration.

    bounding_box is (min_x, min_y, max_x, max_y) over all waypoints.
    """

    traces: tuple[tuple[Waypoint, ...], ...]
    duration: float
    bounding_box: tuple[float, float, float, float]

    @property
    def nodes(self) -> int:
        return len(self.traces)


def _bbox_of(traces) -> tuple[float, float, float, float]:
    xs = [w.x for t in traces for w in t]
    ys = [w.y for t in traces for w in t]
    return (min(xs), min(ys), max(xs), max(ys))


@dataclass(frozen=True)
class PositionFrame:
    """All node positions sampled at one instant."""

    epoch_index: int
    time: float
    positions: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class DistanceTable:
    """Pairwise node distances for every sampled epoch.

    matrix has shape (epochs, nodes, nodes), symmetric with zero
    diagonal per epoch.
    """

    times: tuple[float, ...]
    matrix: np.ndarray = field(repr=False)

    @property
    def epochs(self) -> int:
        return self.matrix.shape[0]

    @property
    def nodes(self) -> int:
        return self.matrix.shape[1]


def parse_scenario(text: str, duration: float | None = None) -> Scenario:
    """Parse `node time x y` waypoint lines into a Scenario.

    Node ids must be 0..M-1 with every node contributing a waypoint at
    t=0; waypoint times must be unique per node and non-negative. The
    duration defaults to the largest time seen; pass one explicitly to
    simulate past the final waypoint (nodes hold their last position).
    """
    rows: dict[int, list[Waypoint]] = {}
    max_time = 0.0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 4:
            raise ScenarioParseError(
                f"line {lineno}: expected 4 fields `node time x y`, got {len(parts)}"
            )
        try:
            node = int(parts[0])
            t, x, y = (float(p) for p in parts[1:])
        except ValueError:
            raise ScenarioParseError(f"line {lineno}: non-numeric field in {raw!r}") from None
        if not all(math.isfinite(v) for v in (t, x, y)):
            raise ScenarioParseError(f"line {lineno}: non-finite value in {raw!r}")
        rows.setdefault(node, []).append(Waypoint(node, t, x, y))
        max_time = max(max_time, t)

    if not rows:
        raise ScenarioValidationError("scenario has no waypoints")
    if duration is None:
        duration = max_time
    if duration <= 0:
        raise ScenarioValidationError(f"duration must be positive, got {duration}")
    ids = sorted(rows)
    if ids != list(range(len(ids))):
        raise ScenarioValidationError(f"node ids must be contiguous from 0, got {ids[:8]}...")
    traces = []
    for node in ids:
        wps = sorted(rows[node], key=lambda w: w.time)
        times = [w.time for w in wps]
        if times[0] < 0:
            raise ScenarioValidationError(f"node {node}: negative waypoint time {times[0]}")
        if times[0] != 0:
            raise ScenarioValidationError(f"node {node}: first waypoint must be at t=0")
        if len(set(times)) != len(times):
            raise ScenarioValidationError(f"node {node}: duplicate waypoint times")
        traces.append(tuple(wps))
    return Scenario(tuple(traces), float(duration), _bbox_of(traces))


def format_scenario(scenario: Scenario) -> str:
    """Inverse of parse_scenario (modulo comments and field spacing)."""
    lines = [f"{w.node} {w.time} {w.x} {w.y}" for trace in scenario.traces for w in trace]
    return "\n".join(lines) + "\n"


def position_at(trace: Sequence[Waypoint], t: float, end: float | None = None) -> tuple[float, float]:
    """Linear interpolation along a waypoint trace; holds the last point.

    With `end` given, t is range-checked against [0, end].
    """
    if t < 0 or (end is not None and t > end):
        raise ValueError(f"time {t} outside scenario range [0, {end}]")
    if t <= trace[0].time:
        return trace[0].x, trace[0].y
    times = [w.time for w in trace]
    i = bisect_right(times, t)
    if i >= len(trace):
        return trace[-1].x, trace[-1].y
    a, b = trace[i - 1], trace[i]
    frac = (t - a.time) / (b.time - a.time)
    return a.x + frac * (b.x - a.x), a.y + frac * (b.y - a.y)


def resample(scenario: Scenario, interval: float) -> list[PositionFrame]:
    """Sample positions every `interval` seconds starting at t=0.

    Yields exactly floor(duration / interval) frames, so a 21600 s
    scenario at 600 s spacing gives 36 frames at t=0, 600, ..., 21000.
    """
    if interval <= 0:
        raise ValueError(f"interval must be positive, got {interval}")
    count = int(scenario.duration // interval)
    if count == 0:
        raise ValueError("interval exceeds scenario duration, no frames to sample")
    frames = []
    for k in range(count):
        t = k * interval
        pos = tuple(position_at(trace, t, scenario.duration) for trace in scenario.traces)
        frames.append(PositionFrame(k, t, pos))
    return frames


def distances(frames: Sequence[PositionFrame]) -> DistanceTable:
    """Euclidean pairwise distances for each frame, vectorized."""
    if not frames:
        raise ValueError("no frames")
    pts = np.asarray([f.positions for f in frames], dtype=float)  # (E, M, 2)
    diff = pts[:, :, None, :] - pts[:, None, :, :]
    mat = np.sqrt((diff**2).sum(axis=-1))
    return DistanceTable(tuple(f.time for f in frames), mat)


DISTANCE_CSV_HEADER = "source,target,time,distance"


def distance_csv_text(table: DistanceTable) -> str:
    """CSV with one row per unordered pair per epoch."""
    out = [DISTANCE_CSV_HEADER]
    m = table.nodes
    for e, t in enumerate(table.times):
        snap = table.matrix[e]
        for i in range(m):
            for j in range(i + 1, m):
                out.append(f"{i},{j},{t:g},{snap[i, j]:.4f}")
    return "\n".join(out) + "\n"


def parse_distance_csv(text: str) -> DistanceTable:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != DISTANCE_CSV_HEADER:
        raise ValueError(f"expected header {DISTANCE_CSV_HEADER!r}")
    by_time: dict[float, list[tuple[int, int, float]]] = {}
    nodes = 0
    for ln in lines[1:]:
        s, g, t, d = ln.split(",")
        i, j = int(s), int(g)
        by_time.setdefault(float(t), []).append((i, j, float(d)))
        nodes = max(nodes, i + 1, j + 1)
    times = sorted(by_time)
    mat = np.zeros((len(times), nodes, nodes))
    for e, t in enumerate(times):
        for i, j, d in by_time[t]:
            mat[e, i, j] = mat[e, j, i] = d
    return DistanceTable(tuple(times), mat)


def generate_synthetic(
    nodes: int,
    duration: float,
    bbox: tuple[float, float],
    speed_range: tuple[float, float] = (0.5, 2.0),
    pause_range: tuple[float, float] = (0.0, 60.0),
    seed: int = 0,
) -> Scenario:
    """Random-waypoint mobility inside a `bbox = (width, height)` arena.

    Each node starts uniformly in the box, then repeatedly draws a
    destination, walks there at a uniform random speed, and pauses.
    The final leg is cut off at exactly `duration`.
    """
    if nodes < 2:
        raise ValueError(f"need at least two nodes, got {nodes}")
    if duration <= 0:
        raise ValueError("duration must be positive")
    duration = float(duration)
    w, h = bbox
    if w <= 0 or h <= 0:
        raise ValueError(f"degenerate arena {bbox}")
    lo, hi = speed_range
    if not 0 < lo <= hi:
        raise ValueError(f"bad speed range {speed_range}")
    if not 0 <= pause_range[0] <= pause_range[1]:
        raise ValueError(f"bad pause range {pause_range}")
    rng = random.Random(seed)
    traces = []
    for node in range(nodes):
        x, y = rng.uniform(0, w), rng.uniform(0, h)
        t = 0.0
        wps = [Waypoint(node, t, x, y)]
        while t < duration:
            nx, ny = rng.uniform(0, w), rng.uniform(0, h)
            dist = math.hypot(nx - x, ny - y)
            if dist == 0:
                continue
            speed = rng.uniform(lo, hi)
            arrive = t + dist / speed
            if arrive >= duration:
                # clip the leg so the trace ends exactly at duration
                frac = (duration - t) / (arrive - t)
                wps.append(Waypoint(node, duration, x + frac * (nx - x), y + frac * (ny - y)))
                break
            wps.append(Waypoint(node, arrive, nx, ny))
            x, y, t = nx, ny, arrive
            pause = rng.uniform(*pause_range)
            if pause > 0:
                t = min(t + pause, duration)
                wps.append(Waypoint(node, t, x, y))
        traces.append(tuple(wps))
    return Scenario(tuple(traces), float(duration), _bbox_of(traces))
