"""Command-line frontend.

Subcommands wire the library pipeline end to end:

  ingest  - validate + normalize a waypoint scenario, emit distances
  synth   - generate random-waypoint scenarios
  mesh    - build the aggregated mesh and its connectivity report
  assign  - build a channel topology from a scenario
  run     - one full simulation run, one results row
  sweep   - grid of runs from a JSON config, results CSV + summary
  report  - summarize an existing results CSV

Flag precedence: command-line flags > --config JSON file > defaults.
Every artifact embeds (or ships next to) the effective configuration
that produced it, and all file writes are atomic.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import experiment, report
from .assign import STRATEGIES, assign as build_topology, topology_report, topology_text
from .graph import edge_list_text
from .mesh import mobility_aware_mesh, screen_connectivity
from .scenario import (
    distance_csv_text,
    distances,
    format_scenario,
    generate_synthetic,
    parse_scenario,
    resample,
)

DEFAULT_DURATION = 21600.0
DEFAULT_BBOX = "650x650"


def atomic_write(path: str, text: str) -> None:
    """Write via temp file + rename so readers never see a torn file."""
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _config_comment(cfg: dict) -> str:
    return "# config: " + json.dumps(cfg, sort_keys=True)


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path) as f:
        loaded = json.load(f)
    if not isinstance(loaded, dict):
        raise ValueError(f"config file {path} must hold a JSON object")
    return loaded


def _merge(args: argparse.Namespace, file_cfg: dict, defaults: dict) -> dict:
    """defaults, overridden by config-file keys, overridden by explicit flags."""
    cfg = dict(defaults)
    for key in defaults:
        if key in file_cfg:
            cfg[key] = file_cfg[key]
    for key in defaults:
        flag_val = getattr(args, key, None)
        if flag_val is not None:
            cfg[key] = flag_val
    return cfg


def _parse_bbox(text: str) -> tuple[float, float]:
    parts = text.replace("x", " ").replace(",", " ").split()
    if len(parts) != 2:
        raise ValueError(f"bounding box must be WxH, got {text!r}")
    return float(parts[0]), float(parts[1])


def _read_scenario(path: str, duration: float):
    with open(path) as f:
        return parse_scenario(f.read(), duration)


PIPELINE_DEFAULTS = {
    "coverage_d": 90.0,
    "threshold_k": 5,
    "interval": 600.0,
    "duration": DEFAULT_DURATION,
}


def cmd_ingest(args) -> int:
    cfg = _merge(args, _load_config(args.config), PIPELINE_DEFAULTS)
    scenario = _read_scenario(args.scenario, cfg["duration"])
    frames = resample(scenario, cfg["interval"])
    table = distances(frames)
    out = args.out
    meta = {**cfg, "scenario": args.scenario, "nodes": scenario.nodes}
    atomic_write(
        os.path.join(out, "scenario.txt"),
        _config_comment(meta) + "\n" + format_scenario(scenario),
    )
    atomic_write(os.path.join(out, "distances.csv"), distance_csv_text(table))
    print(
        f"ingest: {scenario.nodes} nodes, {sum(len(t) for t in scenario.traces)} waypoints, "
        f"{len(frames)} epochs -> {out}"
    )
    return 0


def cmd_synth(args) -> int:
    defaults = {
        "nodes": 100,
        "count": 1,
        "duration": DEFAULT_DURATION,
        "bbox": DEFAULT_BBOX,
        "seed": 0,
    }
    cfg = _merge(args, _load_config(args.config), defaults)
    bbox = _parse_bbox(cfg["bbox"]) if isinstance(cfg["bbox"], str) else tuple(cfg["bbox"])
    out = args.out
    for i in range(cfg["count"]):
        seed = experiment.derive_seed(cfg["seed"], "synth", i)
        scenario = generate_synthetic(cfg["nodes"], cfg["duration"], bbox, seed=seed)
        meta = {**cfg, "bbox": list(bbox), "index": i, "trace_seed": seed}
        path = os.path.join(out, f"scenario_{i:03d}.txt")
        atomic_write(path, _config_comment(meta) + "\n" + format_scenario(scenario))
        print(f"synth: scenario_{i:03d}.txt nodes={cfg['nodes']} bbox={bbox}")
    return 0


def _build_mesh(args, cfg):
    scenario = _read_scenario(args.scenario, cfg["duration"])
    frames = resample(scenario, cfg["interval"])
    table = distances(frames)
    mesh = mobility_aware_mesh(table, cfg["coverage_d"], cfg["threshold_k"])
    return scenario, table, mesh


def cmd_mesh(args) -> int:
    cfg = _merge(args, _load_config(args.config), PIPELINE_DEFAULTS)
    scenario, _, mesh = _build_mesh(args, cfg)
    screen = screen_connectivity(mesh)
    out = args.out
    meta = {**cfg, "scenario": args.scenario, "nodes": scenario.nodes}
    atomic_write(
        os.path.join(out, "mesh.txt"),
        _config_comment(meta) + "\n" + edge_list_text(mesh.graph),
    )
    atomic_write(
        os.path.join(out, "screen.json"),
        json.dumps(
            {
                "config": meta,
                "connected": screen.connected,
                "component_sizes": list(screen.component_sizes),
                "isolated": list(screen.isolated),
            },
            sort_keys=True,
            indent=2,
        )
        + "\n",
    )
    print(
        f"mesh: {scenario.nodes} nodes, {mesh.graph.edge_count} edges, "
        f"connected={screen.connected} -> {out}"
    )
    return 0


def cmd_assign(args) -> int:
    defaults = {**PIPELINE_DEFAULTS, "strategy": "cds", "seed": 0}
    cfg = _merge(args, _load_config(args.config), defaults)
    scenario, _, mesh = _build_mesh(args, cfg)
    seed = experiment.derive_seed(cfg["seed"], "ust") if cfg["strategy"] == "ust" else None
    topo = build_topology(mesh, cfg["strategy"], seed)
    rep = topology_report(topo)
    out = args.out
    meta = {**cfg, "scenario": args.scenario, "nodes": scenario.nodes}
    atomic_write(
        os.path.join(out, "topology.txt"),
        _config_comment(meta) + "\n" + topology_text(topo),
    )
    atomic_write(
        os.path.join(out, "topology_report.json"),
        json.dumps(
            {
                "config": meta,
                "edge_count": rep.edge_count,
                "degree_histogram": [list(p) for p in rep.degree_histogram],
                "degree_variance": rep.degree_variance,
                "mean_closeness": rep.mean_closeness,
                "diameter": rep.diameter,
            },
            sort_keys=True,
            indent=2,
        )
        + "\n",
    )
    print(f"assign: strategy={cfg['strategy']} channels={rep.edge_count} -> {out}")
    return 0


def cmd_run(args) -> int:
    defaults = {
        **PIPELINE_DEFAULTS,
        "strategy": "cds",
        "investment": 100_000,
        "payments_per_epoch": 50,
        "nodes": None,
        "seed": 0,
    }
    cfg = _merge(args, _load_config(args.config), defaults)
    scenario = _read_scenario(args.scenario, cfg["duration"])
    nodes = cfg["nodes"] if cfg["nodes"] is not None else scenario.nodes
    config = experiment.ExperimentConfig(
        strategy=cfg["strategy"],
        nodes=nodes,
        payments_per_epoch=cfg["payments_per_epoch"],
        total_investment=cfg["investment"],
        coverage_d=cfg["coverage_d"],
        threshold_k=cfg["threshold_k"],
        epoch_interval=cfg["interval"],
        seed=cfg["seed"],
    )
    sid = os.path.splitext(os.path.basename(args.scenario))[0]
    try:
        result = experiment.run(config, scenario, sid)
    except experiment.ScenarioRejectedError as exc:
        print(f"run: rejected: {exc}", file=sys.stderr)
        return 1
    out = args.out
    meta = {**cfg, "nodes": nodes, "scenario": args.scenario}
    atomic_write(
        os.path.join(out, "results.csv"), experiment.results_csv_text([result.to_row()])
    )
    atomic_write(
        os.path.join(out, "results.config.json"),
        json.dumps({"config": meta}, sort_keys=True, indent=2) + "\n",
    )
    print(
        f"run: {sid} strategy={config.strategy} channels={result.channels} "
        f"success={result.success}/{result.total} rate={result.success_rate:.4f}"
    )
    return 0


def _sweep_scenarios(cfg: dict, config_dir: str) -> list[tuple[str, object]]:
    """Scenario set for a sweep: explicit files and/or a synthetic block."""
    pairs = []
    for entry in cfg.get("scenarios", []):
        path = entry["path"]
        if not os.path.isabs(path):
            path = os.path.join(config_dir, path)
        duration = entry.get("duration", cfg.get("duration", DEFAULT_DURATION))
        sid = entry.get("id") or os.path.splitext(os.path.basename(path))[0]
        pairs.append((sid, _read_scenario(path, duration)))
    synth = cfg.get("synthetic")
    if synth:
        nodes = synth["nodes"]
        count = synth["count"]
        duration = synth.get("duration", cfg.get("duration", DEFAULT_DURATION))
        bbox = synth.get("bbox", _parse_bbox(DEFAULT_BBOX))
        if isinstance(bbox, str):
            bbox = _parse_bbox(bbox)
        base = synth.get("seed", 0)
        for i in range(count):
            seed = experiment.derive_seed(base, "synth", i)
            pairs.append(
                (f"synthetic_{i:03d}", generate_synthetic(nodes, duration, tuple(bbox), seed=seed))
            )
    if not pairs:
        raise ValueError("sweep config names no scenarios (need `scenarios` or `synthetic`)")
    return pairs


def cmd_sweep(args) -> int:
    file_cfg = _load_config(args.config)
    defaults = {
        "coverage_d": 90.0,
        "threshold_k": 5,
        "interval": 600.0,
        "duration": DEFAULT_DURATION,
        "strategies": list(STRATEGIES),
        "payments_per_epoch": [50],
        "investments": [100_000],
        "amounts": list(experiment.AMOUNTS),
        "restrict_to_mesh_component": True,
        "seed": 0,
        "jobs": None,
    }
    cfg = _merge(args, file_cfg, defaults)
    # keep scenario blocks out of _merge: they have no flag equivalents
    cfg["scenarios"] = file_cfg.get("scenarios", [])
    cfg["synthetic"] = file_cfg.get("synthetic")
    grid = experiment.SweepGrid(
        strategies=tuple(cfg["strategies"]),
        payments_per_epoch=tuple(cfg["payments_per_epoch"]),
        investments=tuple(cfg["investments"]),
        coverage_d=cfg["coverage_d"],
        threshold_k=cfg["threshold_k"],
        epoch_interval=cfg["interval"],
        seed_base=cfg["seed"],
        amounts=tuple(cfg["amounts"]),
        restrict_to_mesh_component=cfg["restrict_to_mesh_component"],
    )
    config_dir = os.path.dirname(os.path.abspath(args.config)) if args.config else "."
    scenarios = _sweep_scenarios(cfg, config_dir)
    jobs = cfg["jobs"] or os.cpu_count() or 1
    result = experiment.sweep(grid, scenarios, jobs=jobs)
    out = args.out
    atomic_write(os.path.join(out, "results.csv"), experiment.results_csv_text(result.rows))
    atomic_write(
        os.path.join(out, "results.config.json"),
        json.dumps({"config": {k: v for k, v in cfg.items() if k != "jobs"}},
                   sort_keys=True, indent=2) + "\n",
    )
    atomic_write(os.path.join(out, "summary.json"), report.summary_json_text(result.rows))
    for row in result.rows:
        print(
            f"run: {row.scenario} strategy={row.strategy} n={row.n_per_epoch} "
            f"investment={row.investment} rate={row.success_rate:.4f}"
        )
    if result.errors:
        atomic_write(
            os.path.join(out, "errors.json"),
            json.dumps(
                [
                    {
                        "scenario": e.scenario,
                        "strategy": e.strategy,
                        "n_per_epoch": e.n_per_epoch,
                        "investment": e.investment,
                        "message": e.message,
                    }
                    for e in result.errors
                ],
                indent=2,
            )
            + "\n",
        )
        for e in result.errors:
            print(f"error: {e.scenario} {e.strategy}: {e.message}", file=sys.stderr)
    print(
        f"sweep: {len(result.rows)} rows, {len(result.errors)} errors, "
        f"{len(scenarios)} scenarios -> {out}"
    )
    return 1 if result.errors else 0


def cmd_report(args) -> int:
    with open(args.results) as f:
        rows = experiment.parse_results_csv(f.read())
    out = args.out
    atomic_write(os.path.join(out, "summary.json"), report.summary_json_text(rows))
    written = [os.path.join(out, "summary.json")]
    if args.plots:
        os.makedirs(out, exist_ok=True)
        written += report.plot_success_vs_n(rows, out)
    print(f"report: {len(rows)} rows -> {', '.join(written)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="meshpay",
        description="Simulate offline payment-channel payments over mobile mesh networks.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, *, scenario=False):
        if scenario:
            sp.add_argument("--scenario", required=True, help="waypoint trace file")
        sp.add_argument("--config", help="JSON config file (flags override it)")
        sp.add_argument("--out", default="out", help="output directory")

    def add_pipeline(sp):
        sp.add_argument("--coverage-d", dest="coverage_d", type=float, help="radio range, meters")
        sp.add_argument("--threshold-k", dest="threshold_k", type=int,
                        help="epochs within range required for a mesh edge")
        sp.add_argument("--interval", type=float, help="epoch length, seconds")
        sp.add_argument("--duration", type=float, help="scenario duration, seconds")

    sp = sub.add_parser("ingest", help="validate a scenario and emit distances")
    add_common(sp, scenario=True)
    add_pipeline(sp)
    sp.set_defaults(fn=cmd_ingest)

    sp = sub.add_parser("synth", help="generate random-waypoint scenarios")
    add_common(sp)
    sp.add_argument("--nodes", type=int, help="node count")
    sp.add_argument("--count", type=int, help="how many scenarios")
    sp.add_argument("--duration", type=float, help="scenario duration, seconds")
    sp.add_argument("--bbox", help="arena size WxH in meters")
    sp.add_argument("--seed", type=int, help="base seed")
    sp.set_defaults(fn=cmd_synth)

    sp = sub.add_parser("mesh", help="build the aggregated mesh")
    add_common(sp, scenario=True)
    add_pipeline(sp)
    sp.set_defaults(fn=cmd_mesh)

    sp = sub.add_parser("assign", help="build a channel topology")
    add_common(sp, scenario=True)
    add_pipeline(sp)
    sp.add_argument("--strategy", choices=STRATEGIES)
    sp.add_argument("--seed", type=int, help="base seed (ust tree sampling)")
    sp.set_defaults(fn=cmd_assign)

    sp = sub.add_parser("run", help="one full simulation run")
    add_common(sp, scenario=True)
    add_pipeline(sp)
    sp.add_argument("--strategy", choices=STRATEGIES)
    sp.add_argument("--investment", type=int, help="total satoshi across all channels")
    sp.add_argument("--payments-per-epoch", dest="payments_per_epoch", type=int)
    sp.add_argument("--nodes", type=int, help="expected node count (validated)")
    sp.add_argument("--seed", type=int)
    sp.set_defaults(fn=cmd_run)

    sp = sub.add_parser("sweep", help="grid of runs from a JSON config")
    add_common(sp)
    sp.add_argument("--seed", type=int, help="sweep seed base")
    sp.add_argument("--jobs", type=int, help="parallel workers (default: all cores)")
    sp.set_defaults(fn=cmd_sweep)

    sp = sub.add_parser("report", help="summarize a results CSV")
    sp.add_argument("--results", required=True, help="results.csv from run/sweep")
    sp.add_argument("--out", default="out")
    sp.add_argument("--plots", action="store_true", help="also write SVG charts")
    sp.set_defaults(fn=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
