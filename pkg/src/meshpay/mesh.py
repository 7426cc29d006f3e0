"""Mobility-aware mesh construction.

Two nodes get a mesh edge when they sit within radio coverage of each
other in at least k of the sampled epochs; such pairs are treated as
stable enough to anchor a payment channel. Per-epoch snapshots of the
instantaneous mesh decide which links are actually up while payments
execute.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .scenario import DistanceTable


@dataclass(frozen=True)
class MeshSnapshot:
    """Instantaneous mesh at one sampled epoch."""

    epoch_index: int
    graph: Graph


@dataclass(frozen=True)
class MobilityAwareMesh:
    """Time-aggregated mesh: edges that held in >= threshold_k epochs."""

    graph: Graph
    coverage_d: float
    threshold_k: int


def snapshot(table: DistanceTable, epoch_index: int, coverage_d: float) -> MeshSnapshot:
    """Mesh at one epoch: edge iff pairwise distance <= coverage_d."""
    if not 0 <= epoch_index < table.epochs:
        raise IndexError(f"epoch {epoch_index} out of range 0..{table.epochs - 1}")
    if coverage_d <= 0:
        raise ValueError(f"coverage_d must be positive, got {coverage_d}")
    m = table.nodes
    g = Graph(vertices=range(m))
    snap = table.matrix[epoch_index]
    for i, j in zip(*np.nonzero(np.triu(snap <= coverage_d, k=1))):
        g.add_edge(int(i), int(j))
    return MeshSnapshot(epoch_index, g)


def mobility_aware_mesh(
    table: DistanceTable, coverage_d: float = 90.0, threshold_k: int = 5
) -> MobilityAwareMesh:
    """Aggregate per-epoch proximity into a stable mesh.

    Edge (u, v) exists iff dist(u, v) <= coverage_d in at least
    threshold_k of the sampled epochs (both bounds inclusive). Every
    node appears as a vertex even when isolated.
    """
    if coverage_d <= 0:
        raise ValueError(f"coverage_d must be positive, got {coverage_d}")
    if not 1 <= threshold_k <= table.epochs:
        raise ValueError(
            f"threshold_k must be in 1..{table.epochs} (epochs sampled), got {threshold_k}"
        )
    counts = (table.matrix <= coverage_d).sum(axis=0)
    m = table.nodes
    g = Graph(vertices=range(m))
    for i, j in zip(*np.nonzero(np.triu(counts >= threshold_k, k=1))):
        g.add_edge(int(i), int(j))
    return MobilityAwareMesh(g, float(coverage_d), int(threshold_k))


@dataclass(frozen=True)
class ScreenReport:
    """Connectivity screen over the aggregated mesh."""

    connected: bool
    component_sizes: tuple[int, ...]
    isolated: tuple[int, ...]

    @property
    def largest_fraction(self) -> float:
        return max(self.component_sizes) / sum(self.component_sizes)


def screen_connectivity(mesh: MobilityAwareMesh) -> ScreenReport:
    """Summarize components so unusable scenarios can be rejected early."""
    comps = mesh.graph.components()
    sizes = tuple(sorted((len(c) for c in comps), reverse=True))
    isolated = tuple(v for c in comps if len(c) == 1 for v in c)
    return ScreenReport(len(comps) == 1, sizes, isolated)
