"""Aggregation of sweep rows into summary tables: average channel
counts and failure-percentage breakdowns per strategy and node count,
plus success-rate-vs-load series for plotting.
"""

from __future__ import annotations

import json
from statistics import fmean
from typing import Iterable

from .experiment import ResultRow


def channel_count_table(rows: Iterable[ResultRow]) -> dict[tuple[str, int], float]:
    """Mean channel count per (strategy, nodes)."""
    groups: dict[tuple[str, int], list[int]] = {}
    for r in rows:
        groups.setdefault((r.strategy, r.nodes), []).append(r.channels)
    return {k: fmean(v) for k, v in sorted(groups.items())}


def failure_table(rows: Iterable[ResultRow]) -> dict[tuple[str, int], dict[str, float]]:
    """Outcome percentages per (strategy, nodes), pooled over all rows.

    Percentages are computed from pooled payment counts, not averaged
    per-row rates, so heavily loaded rows weigh proportionally more.
    """
    sums: dict[tuple[str, int], list[int]] = {}
    for r in rows:
        acc = sums.setdefault((r.strategy, r.nodes), [0, 0, 0, 0])
        acc[0] += r.total
        acc[1] += r.success
        acc[2] += r.fail_capacity
        acc[3] += r.fail_mesh
    out = {}
    for key, (total, success, fail_cap, fail_mesh) in sorted(sums.items()):
        out[key] = {
            "total": total,
            "success_pct": 100.0 * success / total,
            "fail_capacity_pct": 100.0 * fail_cap / total,
            "fail_mesh_pct": 100.0 * fail_mesh / total,
        }
    return out


def success_series(
    rows: Iterable[ResultRow],
) -> dict[tuple[str, int, int], list[tuple[int, float]]]:
    """Mean success rate as a function of payments per epoch.

    Keyed by (strategy, nodes, investment); each series is sorted by N
    and averages across scenarios.
    """
    cells: dict[tuple[str, int, int, int], list[float]] = {}
    for r in rows:
        cells.setdefault((r.strategy, r.nodes, r.investment, r.n_per_epoch), []).append(
            r.success_rate
        )
    series: dict[tuple[str, int, int], list[tuple[int, float]]] = {}
    for (strategy, nodes, inv, n), rates in sorted(cells.items()):
        series.setdefault((strategy, nodes, inv), []).append((n, fmean(rates)))
    return series


def summary_json_text(rows: Iterable[ResultRow]) -> str:
    """Deterministic JSON bundle of all three summary tables."""
    rows = list(rows)
    payload = {
        "channel_counts": [
            {"strategy": s, "nodes": m, "mean_channels": c}
            for (s, m), c in channel_count_table(rows).items()
        ],
        "failures": [
            {"strategy": s, "nodes": m, **stats}
            for (s, m), stats in failure_table(rows).items()
        ],
        "success_vs_n": [
            {
                "strategy": s,
                "nodes": m,
                "investment": inv,
                "series": [[n, rate] for n, rate in pts],
            }
            for (s, m, inv), pts in success_series(rows).items()
        ],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def plot_success_vs_n(rows: Iterable[ResultRow], out_path: str) -> list[str]:
    """One SVG per (nodes, investment): success rate vs N, line per
    strategy. Returns the written paths. Needs matplotlib."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    series = success_series(rows)
    panels: dict[tuple[int, int], dict[str, list[tuple[int, float]]]] = {}
    for (strategy, nodes, inv), pts in series.items():
        panels.setdefault((nodes, inv), {})[strategy] = pts
    written = []
    for (nodes, inv), lines in sorted(panels.items()):
        fig, ax = plt.subplots(figsize=(6, 4))
        for strategy, pts in sorted(lines.items()):
            ax.plot([n for n, _ in pts], [r for _, r in pts], marker="o", label=strategy)
        ax.set_xlabel("payments per epoch")
        ax.set_ylabel("success rate")
        ax.set_ylim(0, 1.05)
        ax.set_title(f"{nodes} nodes, {inv} sat total investment")
        ax.legend()
        ax.grid(True, alpha=0.3)
        path = f"{out_path.rstrip('/')}/success_m{nodes}_inv{inv}.svg"
        fig.savefig(path, format="svg", bbox_inches="tight")
        plt.close(fig)
        written.append(path)
    return written
