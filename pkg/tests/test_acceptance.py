"""End-to-end acceptance checks for the simulator.

Each test covers one numbered criterion and prints a single
`[ACCEPT] C<n> PASS ...` line with the measured quantities (visible
with `pytest -s` or `-rA`). Structural criteria are exact; statistical
criteria carry the stated tolerances; every timed criterion asserts
its wall-clock budget.
"""

import random
import time
from statistics import fmean

import pytest

from meshpay.assign import LnTopology, assign_cds, assign_ust
from meshpay.experiment import (
    ScenarioRejectedError,
    SweepGrid,
    cell_means,
    derive_seed,
    prepare_scenario,
    results_csv_text,
    sweep,
)
from meshpay.graph import Graph, graph_hash, mcds, uniform_spanning_tree
from meshpay.mesh import MeshSnapshot, MobilityAwareMesh
from meshpay.payment import PaymentRequest, execute, fund
from meshpay.scenario import generate_synthetic
from _support import (
    brute_force_min_cds_size,
    is_connected_dominating_set,
    oracle_execute,
    random_connected_graph,
)

ACCEPT_SEED = 0
ARENA = (650.0, 650.0)
DURATION = 21600.0
STRATEGIES = ("cds", "ust", "baseline")
AMOUNTS = (1, 5, 10, 20, 50, 100)


def synth_corpus(nodes, want, max_candidates):
    """First `want` synthetic scenarios that pass the connectivity
    screen at default mesh parameters, drawn from a fixed seed stream."""
    kept = []
    i = 0
    while len(kept) < want and i < max_candidates:
        sid = f"m{nodes}_{i:03d}"
        scn = generate_synthetic(
            nodes, DURATION, ARENA, seed=derive_seed(ACCEPT_SEED, "synth", i)
        )
        try:
            prepare_scenario(scn, sid)
        except ScenarioRejectedError:
            i += 1
            continue
        kept.append((sid, scn))
        i += 1
    assert len(kept) == want, f"only {len(kept)}/{want} scenarios passed the screen"
    return kept


@pytest.fixture(scope="module")
def m100_scenarios():
    return synth_corpus(100, want=10, max_candidates=20)


@pytest.fixture(scope="module")
def m300_scenarios():
    return synth_corpus(300, want=20, max_candidates=30)


@pytest.fixture(scope="module")
def c7_sweep(m100_scenarios):
    grid = SweepGrid(
        strategies=STRATEGIES,
        payments_per_epoch=(50,),
        investments=(50_000, 100_000, 200_000, 400_000),
        seed_base=ACCEPT_SEED,
    )
    t0 = time.perf_counter()
    out = sweep(grid, m100_scenarios, jobs=1)
    return out, time.perf_counter() - t0


@pytest.fixture(scope="module")
def c8_sweep(m300_scenarios):
    grid = SweepGrid(
        strategies=STRATEGIES,
        payments_per_epoch=(60, 80, 100),
        investments=(50_000,),
        seed_base=ACCEPT_SEED,
    )
    t0 = time.perf_counter()
    out = sweep(grid, m300_scenarios, jobs=1)
    return out, time.perf_counter() - t0


def test_c01_tree_channel_counts():
    # tree strategies on a connected mesh: exactly M-1 channels
    times = []
    for m in (100, 200, 300):
        sid, scn = synth_corpus(m, want=1, max_candidates=10)[0]
        prep = prepare_scenario(scn, sid)
        for strategy, build in (("cds", assign_cds),
                                ("ust", lambda mesh: assign_ust(mesh, seed=1))):
            t0 = time.perf_counter()
            topo = build(prep.mesh)
            dt = time.perf_counter() - t0
            assert topo.graph.edge_count == m - 1, (m, strategy)
            assert dt < 1.0, (m, strategy, dt)
            times.append(dt)
    print(f"\n[ACCEPT] C1 PASS 99/199/299 channels exact, "
          f"max build {max(times) * 1000:.0f} ms")


def test_c02_spanning_tree_invariants():
    rng = random.Random(2)
    t0 = time.perf_counter()
    checked = 0
    for i in range(500):
        n = rng.randrange(5, 301)
        g = random_connected_graph(n, rng.randrange(0, 2 * n), rng)
        mesh = MobilityAwareMesh(g, 90.0, 5)
        for topo in (assign_cds(mesh), assign_ust(mesh, seed=i)):
            t = topo.graph
            assert t.edge_count == n - 1
            assert len(t.components()) == 1
            assert all(g.has_edge(u, v) for u, v in t.edges())
            assert sorted(t.vertices()) == sorted(g.vertices())
            checked += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0, elapsed
    print(f"\n[ACCEPT] C2 PASS {checked} trees (500 graphs, 5-300 vertices), "
          f"0 violations, {elapsed:.1f}s")


def test_c03_mcds_validity_and_optimality():
    rng = random.Random(3)
    t0 = time.perf_counter()
    exact = 0
    worst = 1.0
    total = 220
    for _ in range(total):
        n = rng.randrange(3, 9)
        g = random_connected_graph(n, rng.randrange(0, n + 1), rng)
        ds = mcds(g)
        assert is_connected_dominating_set(g, ds.dominators)
        best = brute_force_min_cds_size(g)
        ratio = len(ds.dominators) / best
        assert ratio <= 2.0, (n, ratio)
        worst = max(worst, ratio)
        exact += len(ds.dominators) == best
    elapsed = time.perf_counter() - t0
    assert exact / total >= 0.70, exact / total
    assert elapsed < 60.0, elapsed
    print(f"\n[ACCEPT] C3 PASS {total} graphs, all valid CDS, "
          f"{100 * exact / total:.1f}% exact, worst ratio {worst:.2f}x, {elapsed:.1f}s")


def test_c04_ust_uniformity():
    from scipy.stats import chisquare

    t0 = time.perf_counter()
    cases = [
        ("triangle", Graph([(0, 1), (0, 2), (1, 2)]), 3, 6000),
        ("K4", Graph([(a, b) for a in range(4) for b in range(a + 1, 4)]), 16, 20_800),
    ]
    pvalues = []
    for name, g, n_trees, samples in cases:
        counts = {}
        for i in range(samples):
            tree = uniform_spanning_tree(g, derive_seed(ACCEPT_SEED, "ust", name, i))
            counts[frozenset(tree.edges())] = counts.get(frozenset(tree.edges()), 0) + 1
        assert len(counts) == n_trees, (name, len(counts))
        assert min(counts.values()) >= 1000, name  # every tree well sampled
        p = chisquare(list(counts.values())).pvalue
        assert p > 0.001, (name, p)
        pvalues.append((name, p))
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0, elapsed
    detail = ", ".join(f"{n} p={p:.3f}" for n, p in pvalues)
    print(f"\n[ACCEPT] C4 PASS chi-square {detail}, {elapsed:.1f}s")


def test_c05_conservation_and_atomicity():
    rng = random.Random(5)
    t0 = time.perf_counter()
    nets = []
    for _ in range(25):
        n = rng.randrange(6, 25)
        g = random_connected_graph(n, rng.randrange(0, n), rng)
        topo = LnTopology(g, "baseline", graph_hash(g))
        net = fund(topo, rng.randrange(g.edge_count * 50, 60_000))
        nets.append((net, MeshSnapshot(0, g), g.vertices()))
    total = fails = 0
    while total < 100_000:
        for net, snap, verts in nets:
            a, b = rng.sample(verts, 2)
            before = net.state_hash()
            out = execute(net, snap, PaymentRequest(0, a, b, rng.choice(AMOUNTS)))
            if not out.ok:
                assert net.state_hash() == before
                fails += 1
            for c in net.channels():
                assert c.balance_uv + c.balance_vu == c.capacity
                assert c.balance_uv >= 0 and c.balance_vu >= 0
            total += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0, elapsed
    print(f"\n[ACCEPT] C5 PASS {total} payments ({fails} fails, all state-preserving), "
          f"0 conservation violations, {elapsed:.1f}s")


def test_c06_routing_oracle_equivalence():
    rng = random.Random(6)
    t0 = time.perf_counter()
    compared = 0
    for trial in range(120):
        n = rng.randrange(3, 9)
        g = random_connected_graph(n, rng.randrange(0, n), rng)
        topo = LnTopology(g, "baseline", graph_hash(g))
        net = fund(topo, rng.randrange(g.edge_count * 10, 5000))
        if trial % 3 == 0:
            mesh_graph = Graph(vertices=g.vertices())
            for u, v in g.edges():
                if rng.random() < 0.6:
                    mesh_graph.add_edge(u, v)
        else:
            mesh_graph = g.copy()
        snap = MeshSnapshot(0, mesh_graph)
        for _ in range(10):
            a, b = rng.sample(g.vertices(), 2)
            req = PaymentRequest(0, a, b, rng.choice(AMOUNTS))
            want_status, want_path = oracle_execute(net, snap, req)
            got = execute(net, snap, req)
            assert got.status is want_status, (trial, a, b)
            assert got.path == want_path, (trial, a, b)
            compared += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0, elapsed
    print(f"\n[ACCEPT] C6 PASS {compared} payments on 120 networks, "
          f"0 disagreements, {elapsed:.1f}s")


def test_c07_investment_monotonicity(c7_sweep):
    out, elapsed = c7_sweep
    assert out.ok, out.errors
    assert len(out.rows) == 10 * 3 * 4
    means = cell_means(out.rows)
    investments = (50_000, 100_000, 200_000, 400_000)
    lines = []
    for strategy in STRATEGIES:
        series = [means[(strategy, 100, 50, inv)] for inv in investments]
        for lo, hi in zip(series, series[1:]):
            assert hi >= lo - 0.02, (strategy, series)
        lines.append(f"{strategy} " + "->".join(f"{r:.3f}" for r in series))
    assert elapsed < 300.0, elapsed
    print(f"\n[ACCEPT] C7 PASS success rate vs investment: "
          f"{'; '.join(lines)}; {elapsed:.1f}s")


def test_c08_strategy_ordering(c8_sweep):
    out, elapsed = c8_sweep
    assert out.ok, out.errors
    assert len(out.rows) == 20 * 3 * 3
    means = cell_means(out.rows)
    lines = []
    for n in (60, 80, 100):
        cds = means[("cds", 300, n, 50_000)]
        ust = means[("ust", 300, n, 50_000)]
        base = means[("baseline", 300, n, 50_000)]
        assert cds >= ust - 0.03, (n, cds, ust)
        assert ust >= base - 0.03, (n, ust, base)
        lines.append(f"N={n} {cds:.3f}/{ust:.3f}/{base:.3f}")
    assert elapsed < 900.0, elapsed
    print(f"\n[ACCEPT] C8 PASS cds/ust/baseline ordering at M=300: "
          f"{'; '.join(lines)}; {elapsed:.1f}s")


def test_c09_failure_partition_and_magnitude(c7_sweep, c8_sweep):
    rows = list(c7_sweep[0].rows) + list(c8_sweep[0].rows)
    for r in rows:
        assert r.success + r.fail_capacity + r.fail_mesh == r.total
    mesh_mean = fmean(r.fail_mesh for r in rows)
    cap_mean = fmean(r.fail_capacity for r in rows)
    assert mesh_mean < cap_mean, (mesh_mean, cap_mean)
    print(f"\n[ACCEPT] C9 PASS partition identity on {len(rows)} rows; "
          f"mean mesh-fail {mesh_mean:.1f} < mean capacity-fail {cap_mean:.1f}")


def test_c10_end_to_end_determinism(m100_scenarios):
    grid = SweepGrid(
        strategies=STRATEGIES,
        payments_per_epoch=(20, 50),
        investments=(50_000, 200_000),
        seed_base=ACCEPT_SEED,
    )
    scns = m100_scenarios[:3]
    first = results_csv_text(sweep(grid, scns, jobs=1).rows)
    second = results_csv_text(sweep(grid, scns, jobs=1).rows)
    parallel = results_csv_text(sweep(grid, scns, jobs=2).rows)
    assert first == second
    assert first == parallel
    print(f"\n[ACCEPT] C10 PASS byte-identical CSV across re-run and jobs=2 "
          f"({first.count(chr(10)) - 1} rows)")


def test_c11_desk_scale_runtime(m100_scenarios):
    grid = SweepGrid(
        strategies=STRATEGIES,
        payments_per_epoch=tuple(range(20, 101, 10)),
        investments=(100_000,),
        seed_base=ACCEPT_SEED,
    )
    t0 = time.perf_counter()
    out = sweep(grid, m100_scenarios, jobs=1)
    elapsed = time.perf_counter() - t0
    assert out.ok, out.errors
    assert len(out.rows) == 3 * 9 * 1 * 10
    assert elapsed < 300.0, elapsed
    print(f"\n[ACCEPT] C11 PASS 270-row sweep (3 strategies x 9 loads x 10 "
          f"scenarios, M=100) in {elapsed:.1f}s")
