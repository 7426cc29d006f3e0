"""Channel assignment: picking which mesh edges host payment channels.

Three strategies over the same aggregated mesh:

* cds      - spanning tree anchored on a greedy connected dominating
             set; dominators form an MST backbone, every other node
             hangs off its lowest-id dominator neighbor.
* ust      - spanning tree drawn uniformly at random (Wilson walk).
* baseline - every mesh edge gets a channel.

Both tree strategies keep channel count at |V|-1, trading path
diversity for much better per-channel funding at a fixed budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import pvariance

from .graph import (
    Graph,
    diameter,
    graph_hash,
    mcds,
    mean_closeness,
    minimum_spanning_tree,
    uniform_spanning_tree,
)
from .mesh import MobilityAwareMesh

STRATEGIES = ("cds", "ust", "baseline")


@dataclass(frozen=True)
class LnTopology:
    """Channel graph produced by one strategy over one mesh."""

    graph: Graph
    strategy: str
    mesh_hash: str
    seed: int | None = None


def assign_cds(mesh: MobilityAwareMesh) -> LnTopology:
    """Dominating-set-backbone spanning tree.

    The greedy dominating set gives a connected backbone; its induced
    subgraph is thinned to an MST (unit weights, so lowest-id edges
    win), then each dominatee attaches to its lowest-id dominator
    neighbor. The result spans all vertices with exactly |V|-1 channels.
    """
    g = mesh.graph
    ds = mcds(g)
    tree = minimum_spanning_tree(g.induced(ds.dominators))
    for v in g.vertices():
        tree.add_vertex(v)
    for v in ds.dominatees():
        for n in g.neighbors(v):
            if n in ds.dominators:
                tree.add_edge(v, n)
                break
    return LnTopology(tree, "cds", graph_hash(g))


def assign_ust(mesh: MobilityAwareMesh, seed: int) -> LnTopology:
    """Uniformly sampled spanning tree of the mesh."""
    tree = uniform_spanning_tree(mesh.graph, seed)
    return LnTopology(tree, "ust", graph_hash(mesh.graph), seed=seed)


def assign_baseline(mesh: MobilityAwareMesh) -> LnTopology:
    """One channel per mesh edge, no thinning."""
    return LnTopology(mesh.graph.copy(), "baseline", graph_hash(mesh.graph))


def assign(mesh: MobilityAwareMesh, strategy: str, seed: int | None = None) -> LnTopology:
    if strategy == "cds":
        return assign_cds(mesh)
    if strategy == "ust":
        if seed is None:
            raise ValueError("ust assignment needs a seed")
        return assign_ust(mesh, seed)
    if strategy == "baseline":
        return assign_baseline(mesh)
    raise ValueError(f"unknown strategy {strategy!r}, expected one of {STRATEGIES}")


@dataclass(frozen=True)
class TopologyReport:
    """Structural summary of a channel graph."""

    edge_count: int
    degree_histogram: tuple[tuple[int, int], ...]
    degree_variance: float
    mean_closeness: float
    diameter: int


def topology_report(topo: LnTopology) -> TopologyReport:
    g = topo.graph
    degs = [g.degree(v) for v in g.vertices()]
    hist: dict[int, int] = {}
    for d in degs:
        hist[d] = hist.get(d, 0) + 1
    connected = g.is_connected() and g.vertex_count > 1
    return TopologyReport(
        edge_count=g.edge_count,
        degree_histogram=tuple(sorted(hist.items())),
        degree_variance=pvariance(degs) if degs else 0.0,
        mean_closeness=mean_closeness(g) if connected else 0.0,
        diameter=diameter(g) if connected else 0,
    )


def topology_text(topo: LnTopology) -> str:
    """Edge-list export with a provenance header."""
    head = [f"# strategy: {topo.strategy}", f"# mesh: {topo.mesh_hash}"]
    if topo.seed is not None:
        head.append(f"# seed: {topo.seed}")
    body = [f"{u} {v}" for u, v in topo.graph.edges()]
    body.extend(str(v) for v in topo.graph.vertices() if topo.graph.degree(v) == 0)
    return "\n".join(head + body) + "\n"
