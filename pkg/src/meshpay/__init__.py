"""Deterministic simulator for offline payment-channel payments over
mobile wireless mesh networks.

Pipeline: waypoint scenario -> periodic position resampling -> pairwise
distances -> mobility-aware mesh -> channel topology (dominating-set
tree, uniform spanning tree, or all mesh edges) -> evenly funded
channels -> seeded payment workload -> outcome accounting.
"""

from .assign import (
    LnTopology,
    TopologyReport,
    assign,
    assign_baseline,
    assign_cds,
    assign_ust,
    topology_report,
)
from .experiment import (
    AMOUNTS,
    ExperimentConfig,
    ResultRow,
    RunResult,
    ScenarioRejectedError,
    SweepGrid,
    SweepResult,
    cell_means,
    derive_seed,
    generate_workload,
    parse_results_csv,
    prepare_scenario,
    results_csv_text,
    run,
    sweep,
)
from .graph import Graph, graph_hash, mcds, minimum_spanning_tree, uniform_spanning_tree
from .mesh import (
    MeshSnapshot,
    MobilityAwareMesh,
    mobility_aware_mesh,
    screen_connectivity,
    snapshot,
)
from .payment import (
    Channel,
    ChannelNetwork,
    OutcomeStatus,
    PaymentOutcome,
    PaymentRequest,
    execute,
    fund,
    run_epoch,
    trace_csv_text,
)
from .report import (
    channel_count_table,
    failure_table,
    success_series,
    summary_json_text,
)
from .scenario import (
    Scenario,
    Waypoint,
    distances,
    format_scenario,
    generate_synthetic,
    parse_scenario,
    position_at,
    resample,
)

__version__ = "0.1.0"

__all__ = [
    "AMOUNTS",
    "Channel",
    "ChannelNetwork",
    "ExperimentConfig",
    "Graph",
    "LnTopology",
    "MeshSnapshot",
    "MobilityAwareMesh",
    "OutcomeStatus",
    "PaymentOutcome",
    "PaymentRequest",
    "ResultRow",
    "RunResult",
    "Scenario",
    "ScenarioRejectedError",
    "SweepGrid",
    "SweepResult",
    "TopologyReport",
    "Waypoint",
    "assign",
    "assign_baseline",
    "assign_cds",
    "assign_ust",
    "cell_means",
    "channel_count_table",
    "derive_seed",
    "distances",
    "execute",
    "failure_table",
    "format_scenario",
    "fund",
    "generate_synthetic",
    "generate_workload",
    "graph_hash",
    "mcds",
    "minimum_spanning_tree",
    "mobility_aware_mesh",
    "parse_results_csv",
    "parse_scenario",
    "position_at",
    "prepare_scenario",
    "resample",
    "results_csv_text",
    "run",
    "run_epoch",
    "screen_connectivity",
    "snapshot",
    "success_series",
    "summary_json_text",
    "sweep",
    "topology_report",
    "trace_csv_text",
    "uniform_spanning_tree",
]
