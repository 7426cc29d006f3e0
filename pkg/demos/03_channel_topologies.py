"""Three ways to place payment channels on one mesh.

cds      - spanning tree built around a small connected dominating
           set: few central relays carry most routes
ust      - spanning tree drawn uniformly at random from all spanning
           trees (Wilson's loop-erased random walk)
baseline - a channel on every mesh link

Both tree strategies open exactly |V|-1 channels, so a fixed total
investment buys thicker channels than the baseline's one-per-link.
"""

from meshpay import (
    assign,
    distances,
    generate_synthetic,
    mcds,
    mobility_aware_mesh,
    resample,
    topology_report,
)

scn = generate_synthetic(nodes=60, duration=7200.0, bbox=(340.0, 340.0), seed=12)
mesh = mobility_aware_mesh(distances(resample(scn, 600.0)), 90.0, 5)
print(f"mesh: {len(mesh.graph.vertices())} nodes, {mesh.graph.edge_count} edges")

ds = mcds(mesh.graph)
print(f"greedy connected dominating set: {len(ds.dominators)} relays")

for strategy in ("cds", "ust", "baseline"):
    topo = assign(mesh, strategy, seed=7 if strategy == "ust" else None)
    rep = topology_report(topo)
    print(f"\n{strategy}:")
    print(f"  channels        {rep.edge_count}")
    print(f"  degree variance {rep.degree_variance:.2f}")
    print(f"  mean closeness  {rep.mean_closeness:.3f}")
    print(f"  diameter        {rep.diameter}")

# the cds tree trades hub load for short routes: high degree variance,
# high closeness; the ust tree is flatter but stringier
