"""From mobility to a mesh graph worth opening channels on.

A per-epoch snapshot connects every node pair within radio range at
that instant. Snapshots churn as nodes move, so the aggregated mesh
keeps only pairs that were within range in at least k of the sampled
epochs: those links existed long enough to be worth a payment channel.
Scenarios whose aggregated mesh is disconnected are screened out.
"""

from meshpay import (
    distances,
    generate_synthetic,
    mobility_aware_mesh,
    resample,
    screen_connectivity,
    snapshot,
)

scn = generate_synthetic(nodes=40, duration=7200.0, bbox=(280.0, 280.0), seed=9)
table = distances(resample(scn, interval=600.0))
print(f"{scn.nodes} nodes, {table.matrix.shape[0]} epochs")

# instantaneous connectivity varies epoch to epoch
sizes = [snapshot(table, e, coverage_d=90.0).graph.edge_count
         for e in range(table.matrix.shape[0])]
print(f"per-epoch snapshot edges: min {min(sizes)}, max {max(sizes)}")

# the aggregate keeps persistent pairs only; higher k = stricter
for k in (1, 5, 9):
    mesh = mobility_aware_mesh(table, coverage_d=90.0, threshold_k=k)
    print(f"  k={k}: {mesh.graph.edge_count} mesh edges")

mesh = mobility_aware_mesh(table, coverage_d=90.0, threshold_k=5)
report = screen_connectivity(mesh)
print(f"screen: connected={report.connected}, "
      f"components {list(report.component_sizes)}, "
      f"isolated {list(report.isolated) or 'none'}")

# coverage radius matters more than anything else
for d in (60.0, 90.0, 150.0):
    m = mobility_aware_mesh(table, coverage_d=d, threshold_k=5)
    r = screen_connectivity(m)
    print(f"  d={d:>5.0f} m: {m.graph.edge_count:4d} edges, connected={r.connected}")
