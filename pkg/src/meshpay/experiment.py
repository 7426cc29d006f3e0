"""Seeded experiment harness: workload generation, single runs, and
parameter sweeps over (scenario, strategy, payments-per-epoch,
investment).

Seeding contract: every run's PRNG state derives from (seed_base,
scenario id) via a stable hash, and the payment workload draws from its
own named substream. Consequently the request list is identical across
strategies and investments for a given scenario and seed base, which is
what makes strategy comparisons fair, while tree sampling randomness
stays isolated in a second substream.
"""

from __future__ import annotations

import hashlib
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from statistics import fmean, pvariance
from typing import Iterable, Sequence

from .assign import STRATEGIES, LnTopology, assign
from .graph import mean_closeness
from .mesh import (
    MeshSnapshot,
    MobilityAwareMesh,
    ScreenReport,
    mobility_aware_mesh,
    screen_connectivity,
    snapshot,
)
from .payment import PaymentRequest, fund, run_epoch
from .scenario import Scenario, distances, resample

AMOUNTS = (1, 5, 10, 20, 50, 100)

DEFAULT_COVERAGE_D = 90.0
DEFAULT_THRESHOLD_K = 5
DEFAULT_EPOCH_INTERVAL = 600.0


def derive_seed(*parts) -> int:
    """Stable 64-bit seed from a tuple of labels.

    Built on sha256 rather than hash() so values survive interpreter
    restarts and hash randomization.
    """
    text = "\x1f".join(str(p) for p in parts)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


class ScenarioRejectedError(Exception):
    """Scenario's aggregated mesh failed the connectivity screen."""

    def __init__(self, scenario_id: str, report: ScreenReport):
        self.scenario_id = scenario_id
        self.report = report
        super().__init__(
            f"scenario {scenario_id}: mesh not connected "
            f"(component sizes {list(report.component_sizes)[:6]})"
        )


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one run needs besides the scenario itself."""

    strategy: str
    nodes: int
    payments_per_epoch: int
    total_investment: int
    coverage_d: float = DEFAULT_COVERAGE_D
    threshold_k: int = DEFAULT_THRESHOLD_K
    epoch_interval: float = DEFAULT_EPOCH_INTERVAL
    seed: int = 0
    amounts: tuple[int, ...] = AMOUNTS
    restrict_to_mesh_component: bool = True

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}, expected one of {STRATEGIES}")
        if self.nodes < 2:
            raise ValueError("need at least 2 nodes to route payments")
        if self.payments_per_epoch < 1:
            raise ValueError("payments_per_epoch must be positive")
        if self.total_investment < 1:
            raise ValueError("total_investment must be positive")
        if self.coverage_d <= 0:
            raise ValueError("coverage_d must be positive")
        if self.threshold_k < 1:
            raise ValueError("threshold_k must be at least 1")
        if self.epoch_interval <= 0:
            raise ValueError("epoch_interval must be positive")
        if not self.amounts or any(a < 1 for a in self.amounts):
            raise ValueError("amounts must be positive satoshi values")


def generate_workload(config: ExperimentConfig, epochs: int) -> list[PaymentRequest]:
    """Draw N random sender/receiver/amount triples per epoch.

    Senders are uniform over nodes, receivers uniform over the other
    nodes, amounts uniform over the configured list. The draw sequence
    is a pure function of config.seed, independent of strategy and
    investment.
    """
    if epochs < 1:
        raise ValueError("need at least one epoch")
    m = config.nodes
    if m < 2:
        raise ValueError("workload needs at least 2 nodes")
    rng = random.Random(derive_seed(config.seed, "workload"))
    amounts = config.amounts
    reqs = []
    for epoch in range(epochs):
        for _ in range(config.payments_per_epoch):
            sender = rng.randrange(m)
            receiver = rng.randrange(m - 1)
            if receiver >= sender:
                receiver += 1
            reqs.append(PaymentRequest(epoch, sender, receiver, rng.choice(amounts)))
    return reqs


@dataclass
class PreparedScenario:
    """Mesh artifacts shared by every run over one scenario.

    Holds per-epoch snapshots plus a per-strategy topology cache so a
    sweep visiting many (N, investment) cells only builds each topology
    and its structure metrics once.
    """

    scenario_id: str
    nodes: int
    mesh: MobilityAwareMesh
    screen: ScreenReport
    snapshots: list[MeshSnapshot]
    _topologies: dict = field(default_factory=dict, repr=False)

    @property
    def epochs(self) -> int:
        return len(self.snapshots)

    def topology_for(self, strategy: str, seed: int | None) -> tuple[LnTopology, float, float]:
        """Topology plus (degree variance, mean closeness), memoized."""
        key = (strategy, seed if strategy == "ust" else None)
        hit = self._topologies.get(key)
        if hit is None:
            topo = assign(self.mesh, strategy, seed)
            g = topo.graph
            degs = [g.degree(v) for v in g.vertices()]
            hit = (topo, pvariance(degs), mean_closeness(g))
            self._topologies[key] = hit
        return hit


def prepare_scenario(
    scenario: Scenario,
    scenario_id: str,
    coverage_d: float = DEFAULT_COVERAGE_D,
    threshold_k: int = DEFAULT_THRESHOLD_K,
    epoch_interval: float = DEFAULT_EPOCH_INTERVAL,
) -> PreparedScenario:
    """Resample, build the aggregated mesh, screen it, and precompute
    per-epoch snapshots. Raises ScenarioRejectedError on a failed screen.
    """
    frames = resample(scenario, epoch_interval)
    table = distances(frames)
    mesh = mobility_aware_mesh(table, coverage_d, threshold_k)
    screen = screen_connectivity(mesh)
    if not screen.connected:
        raise ScenarioRejectedError(scenario_id, screen)
    snaps = [snapshot(table, e, coverage_d) for e in range(table.epochs)]
    return PreparedScenario(scenario_id, scenario.nodes, mesh, screen, snaps)


@dataclass(frozen=True)
class RunResult:
    """Aggregated outcome counts and topology metrics for one run."""

    scenario_id: str
    config: ExperimentConfig
    channels: int
    total: int
    success: int
    fail_capacity: int
    fail_mesh: int
    degree_variance: float
    mean_closeness: float

    @property
    def success_rate(self) -> float:
        return self.success / self.total

    def to_row(self) -> "ResultRow":
        c = self.config
        return ResultRow(
            scenario=self.scenario_id,
            strategy=c.strategy,
            nodes=c.nodes,
            n_per_epoch=c.payments_per_epoch,
            investment=c.total_investment,
            seed=c.seed,
            channels=self.channels,
            total=self.total,
            success=self.success,
            fail_capacity=self.fail_capacity,
            fail_mesh=self.fail_mesh,
            success_rate=self.success_rate,
            degree_variance=self.degree_variance,
            mean_closeness=self.mean_closeness,
        )


def run_prepared(config: ExperimentConfig, prep: PreparedScenario) -> RunResult:
    """Assign, fund, and push the whole seeded workload through one
    prepared scenario."""
    if config.nodes != prep.nodes:
        raise ValueError(
            f"config expects {config.nodes} nodes but scenario "
            f"{prep.scenario_id} has {prep.nodes}"
        )
    ust_seed = derive_seed(config.seed, "ust") if config.strategy == "ust" else None
    topo, degree_variance, closeness = prep.topology_for(config.strategy, ust_seed)
    net = fund(topo, config.total_investment)
    reqs = generate_workload(config, prep.epochs)
    n = config.payments_per_epoch
    counts = {s: 0 for s in ("success", "fail_no_capacity", "fail_no_mesh_path")}
    for e, snap in enumerate(prep.snapshots):
        outcomes = run_epoch(
            net, snap, reqs[e * n : (e + 1) * n], config.restrict_to_mesh_component
        )
        for o in outcomes:
            counts[o.status.value] += 1
    return RunResult(
        scenario_id=prep.scenario_id,
        config=config,
        channels=net.channel_count,
        total=len(reqs),
        success=counts["success"],
        fail_capacity=counts["fail_no_capacity"],
        fail_mesh=counts["fail_no_mesh_path"],
        degree_variance=degree_variance,
        mean_closeness=closeness,
    )


def run(config: ExperimentConfig, scenario: Scenario, scenario_id: str = "scenario") -> RunResult:
    """Full pipeline for one (config, scenario) pair."""
    prep = prepare_scenario(
        scenario, scenario_id, config.coverage_d, config.threshold_k, config.epoch_interval
    )
    return run_prepared(config, prep)


RESULTS_CSV_HEADER = (
    "scenario,strategy,nodes,n_per_epoch,investment,seed,channels,total,"
    "success,fail_capacity,fail_mesh,success_rate,degree_variance,mean_closeness"
)


@dataclass(frozen=True)
class ResultRow:
    """One results-CSV row; field order matches the header exactly."""

    scenario: str
    strategy: str
    nodes: int
    n_per_epoch: int
    investment: int
    seed: int
    channels: int
    total: int
    success: int
    fail_capacity: int
    fail_mesh: int
    success_rate: float
    degree_variance: float
    mean_closeness: float

    def csv_line(self) -> str:
        return (
            f"{self.scenario},{self.strategy},{self.nodes},{self.n_per_epoch},"
            f"{self.investment},{self.seed},{self.channels},{self.total},"
            f"{self.success},{self.fail_capacity},{self.fail_mesh},"
            f"{self.success_rate:.6f},{self.degree_variance:.6f},{self.mean_closeness:.6f}"
        )


def results_csv_text(rows: Iterable[ResultRow]) -> str:
    return "\n".join([RESULTS_CSV_HEADER, *(r.csv_line() for r in rows)]) + "\n"


def parse_results_csv(text: str) -> list[ResultRow]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != RESULTS_CSV_HEADER:
        raise ValueError("missing or wrong results CSV header")
    rows = []
    for ln in lines[1:]:
        f = ln.split(",")
        if len(f) != 14:
            raise ValueError(f"expected 14 fields, got {len(f)}: {ln!r}")
        rows.append(
            ResultRow(
                scenario=f[0],
                strategy=f[1],
                nodes=int(f[2]),
                n_per_epoch=int(f[3]),
                investment=int(f[4]),
                seed=int(f[5]),
                channels=int(f[6]),
                total=int(f[7]),
                success=int(f[8]),
                fail_capacity=int(f[9]),
                fail_mesh=int(f[10]),
                success_rate=float(f[11]),
                degree_variance=float(f[12]),
                mean_closeness=float(f[13]),
            )
        )
    return rows


@dataclass(frozen=True)
class SweepGrid:
    """Cartesian sweep dimensions; node count comes from each scenario."""

    strategies: tuple[str, ...] = STRATEGIES
    payments_per_epoch: tuple[int, ...] = (50,)
    investments: tuple[int, ...] = (100_000,)
    coverage_d: float = DEFAULT_COVERAGE_D
    threshold_k: int = DEFAULT_THRESHOLD_K
    epoch_interval: float = DEFAULT_EPOCH_INTERVAL
    seed_base: int = 0
    amounts: tuple[int, ...] = AMOUNTS
    restrict_to_mesh_component: bool = True

    def __post_init__(self):
        if not (self.strategies and self.payments_per_epoch and self.investments):
            raise ValueError("sweep grid has an empty dimension")
        for s in self.strategies:
            if s not in STRATEGIES:
                raise ValueError(f"unknown strategy {s!r}")

    def configs_for(self, scenario_id: str, nodes: int) -> list[ExperimentConfig]:
        """Cell configs for one scenario, in deterministic sweep order."""
        seed = derive_seed(self.seed_base, scenario_id)
        return [
            ExperimentConfig(
                strategy=strategy,
                nodes=nodes,
                payments_per_epoch=n,
                total_investment=inv,
                coverage_d=self.coverage_d,
                threshold_k=self.threshold_k,
                epoch_interval=self.epoch_interval,
                seed=seed,
                amounts=self.amounts,
                restrict_to_mesh_component=self.restrict_to_mesh_component,
            )
            for strategy in self.strategies
            for n in self.payments_per_epoch
            for inv in self.investments
        ]


@dataclass(frozen=True)
class RunError:
    """One planned run that could not produce a result row."""

    scenario: str
    strategy: str
    n_per_epoch: int
    investment: int
    message: str


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[ResultRow, ...]
    errors: tuple[RunError, ...]

    @property
    def ok(self) -> bool:
        return not self.errors


def _sweep_one_scenario(
    grid: SweepGrid, scenario_id: str, scenario: Scenario
) -> tuple[list[ResultRow], list[RunError]]:
    rows: list[ResultRow] = []
    errors: list[RunError] = []
    configs = grid.configs_for(scenario_id, scenario.nodes)
    try:
        prep = prepare_scenario(
            scenario, scenario_id, grid.coverage_d, grid.threshold_k, grid.epoch_interval
        )
    except (ScenarioRejectedError, ValueError) as exc:
        for c in configs:
            errors.append(
                RunError(scenario_id, c.strategy, c.payments_per_epoch, c.total_investment, str(exc))
            )
        return rows, errors
    for c in configs:
        try:
            rows.append(run_prepared(c, prep).to_row())
        except (ScenarioRejectedError, ValueError) as exc:
            errors.append(
                RunError(scenario_id, c.strategy, c.payments_per_epoch, c.total_investment, str(exc))
            )
    return rows, errors


def sweep(
    grid: SweepGrid,
    scenarios: Sequence[tuple[str, Scenario]],
    jobs: int = 1,
) -> SweepResult:
    """Run the full grid over every scenario.

    Output row order is the deterministic nested order scenario >
    strategy > N > investment regardless of jobs; failed runs become
    RunError entries and never abort the sweep.
    """
    if not scenarios:
        raise ValueError("no scenarios given")
    ids = [sid for sid, _ in scenarios]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate scenario ids in sweep")
    rows: list[ResultRow] = []
    errors: list[RunError] = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(
                _sweep_one_scenario,
                [grid] * len(scenarios),
                ids,
                [sc for _, sc in scenarios],
            )
            for part_rows, part_errors in parts:
                rows.extend(part_rows)
                errors.extend(part_errors)
    else:
        for sid, sc in scenarios:
            part_rows, part_errors = _sweep_one_scenario(grid, sid, sc)
            rows.extend(part_rows)
            errors.extend(part_errors)
    return SweepResult(tuple(rows), tuple(errors))


def cell_means(rows: Iterable[ResultRow]) -> dict[tuple[str, int, int, int], float]:
    """Mean success rate per (strategy, nodes, N, investment) across
    scenarios."""
    cells: dict[tuple[str, int, int, int], list[float]] = {}
    for r in rows:
        cells.setdefault((r.strategy, r.nodes, r.n_per_epoch, r.investment), []).append(
            r.success_rate
        )
    return {k: fmean(v) for k, v in sorted(cells.items())}
