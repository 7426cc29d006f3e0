import math
import random

import pytest

from meshpay.mesh import mobility_aware_mesh, screen_connectivity, snapshot
from meshpay.scenario import PositionFrame, distances, generate_synthetic, resample


def frames_from_positions(epochs):
    """epochs: list of position lists [(x, y), ...], one per node."""
    return [
        PositionFrame(i, i * 600.0, tuple(pos))
        for i, pos in enumerate(epochs)
    ]


def table_for_pair_proximity(close_epochs, total_epochs=36):
    """Two nodes: together (distance 50) in the chosen epochs, far apart
    (distance 500) otherwise."""
    frames = []
    for e in range(total_epochs):
        gap = 50.0 if e in close_epochs else 500.0
        frames.append(PositionFrame(e, e * 600.0, ((0.0, 0.0), (gap, 0.0))))
    return distances(frames)


class TestSnapshot:
    def test_boundary_inclusive(self):
        tab = distances(frames_from_positions([[(0, 0), (90, 0)]]))
        snap = snapshot(tab, 0, 90.0)
        assert snap.graph.has_edge(0, 1)

    def test_boundary_exceeded(self):
        tab = distances(frames_from_positions([[(0, 0), (90.0001, 0)]]))
        assert not snapshot(tab, 0, 90.0).graph.has_edge(0, 1)

    def test_colocated_complete_graph(self):
        m = 7
        tab = distances(frames_from_positions([[(5.0, 5.0)] * m]))
        snap = snapshot(tab, 0, 90.0)
        assert snap.graph.edge_count == m * (m - 1) // 2

    def test_epoch_out_of_range(self):
        tab = distances(frames_from_positions([[(0, 0), (1, 1)]]))
        with pytest.raises(IndexError):
            snapshot(tab, 1, 90.0)
        with pytest.raises(IndexError):
            snapshot(tab, -1, 90.0)

    def test_bad_coverage(self):
        tab = distances(frames_from_positions([[(0, 0), (1, 1)]]))
        with pytest.raises(ValueError):
            snapshot(tab, 0, 0)


class TestMobilityAwareMesh:
    def test_exactly_at_threshold(self):
        tab = table_for_pair_proximity(close_epochs={0, 7, 14, 21, 28})
        mesh = mobility_aware_mesh(tab, 90.0, 5)
        assert mesh.graph.has_edge(0, 1)

    def test_below_threshold(self):
        tab = table_for_pair_proximity(close_epochs={0, 7, 14, 21})
        mesh = mobility_aware_mesh(tab, 90.0, 5)
        assert not mesh.graph.has_edge(0, 1)

    def test_k_one_equals_snapshot_union(self):
        sc = generate_synthetic(15, 7200, (500, 500), seed=13)
        tab = distances(resample(sc, 600))
        mesh = mobility_aware_mesh(tab, 90.0, 1)
        union = set()
        for e in range(tab.epochs):
            union |= set(snapshot(tab, e, 90.0).graph.edges())
        assert set(mesh.graph.edges()) == union

    def test_threshold_bounds_validated(self):
        tab = table_for_pair_proximity(set(), total_epochs=10)
        with pytest.raises(ValueError):
            mobility_aware_mesh(tab, 90.0, 0)
        with pytest.raises(ValueError):
            mobility_aware_mesh(tab, 90.0, 11)

    def test_monotone_in_k(self):
        sc = generate_synthetic(20, 7200, (400, 400), seed=21)
        tab = distances(resample(sc, 600))
        prev = None
        for k in (1, 3, 5, 8, 12):
            edges = set(mobility_aware_mesh(tab, 90.0, k).graph.edges())
            if prev is not None:
                assert edges <= prev
            prev = edges

    def test_monotone_in_d(self):
        sc = generate_synthetic(20, 7200, (400, 400), seed=22)
        tab = distances(resample(sc, 600))
        for e in range(0, tab.epochs, 4):
            narrow = set(snapshot(tab, e, 60.0).graph.edges())
            wide = set(snapshot(tab, e, 120.0).graph.edges())
            assert narrow <= wide

    def test_matches_pure_python_count_oracle(self):
        sc = generate_synthetic(10, 3600, (300, 300), seed=31)
        frames = resample(sc, 600)
        tab = distances(frames)
        d, k = 90.0, 3
        mesh = mobility_aware_mesh(tab, d, k)
        for i in range(10):
            for j in range(i + 1, 10):
                count = 0
                for f in frames:
                    xi, yi = f.positions[i]
                    xj, yj = f.positions[j]
                    if math.hypot(xi - xj, yi - yj) <= d:
                        count += 1
                assert mesh.graph.has_edge(i, j) == (count >= k)

    def test_all_vertices_retained(self):
        tab = table_for_pair_proximity(set())  # never close: no edges at all
        mesh = mobility_aware_mesh(tab, 90.0, 5)
        assert mesh.graph.vertices() == [0, 1]
        assert mesh.graph.edge_count == 0


class TestScreen:
    def test_connected_passes(self):
        tab = distances(frames_from_positions([[(0, 0), (10, 0), (20, 0)]]))
        mesh = mobility_aware_mesh(tab, 90.0, 1)
        report = screen_connectivity(mesh)
        assert report.connected
        assert report.component_sizes == (3,)
        assert report.isolated == ()

    def test_isolated_node_reported(self):
        tab = distances(
            frames_from_positions([[(0, 0), (10, 0), (20, 0), (0, 0), (10, 0), (20, 0), (5000, 5000), (10, 5)]])
        )
        mesh = mobility_aware_mesh(tab, 90.0, 1)
        report = screen_connectivity(mesh)
        assert not report.connected
        assert report.isolated == (6,)

    def test_two_components_sizes(self):
        tab = distances(frames_from_positions([[(0, 0), (10, 0), (5000, 0), (5010, 0)]]))
        mesh = mobility_aware_mesh(tab, 90.0, 1)
        report = screen_connectivity(mesh)
        assert not report.connected
        assert report.component_sizes == (2, 2)
        assert report.largest_fraction == 0.5


def test_random_meshes_connectivity_sane():
    rng = random.Random(55)
    for seed in range(5):
        sc = generate_synthetic(30, 7200, (250, 250), seed=seed)
        tab = distances(resample(sc, 600))
        mesh = mobility_aware_mesh(tab, 90.0, 5)
        report = screen_connectivity(mesh)
        assert sum(report.component_sizes) == 30
