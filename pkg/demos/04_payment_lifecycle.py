"""Channels, balances, and what makes payments fail.

Funding splits a total investment equally across channels and each
channel's capacity equally between its endpoints. A payment shifts
balance hop by hop along the cheapest feasible route; every hop needs
spendable balance >= amount, and the whole path must sit inside the
sender's current mesh component. Failures come in exactly two kinds:
no mesh route at all, or no sufficiently liquid channel path.
"""

from meshpay import (
    ChannelNetwork,
    Graph,
    LnTopology,
    MeshSnapshot,
    PaymentRequest,
    execute,
    fund,
    graph_hash,
    run_epoch,
    trace_csv_text,
)

# a 5-node path topology: 0-1-2-3-4
g = Graph([(0, 1), (1, 2), (2, 3), (3, 4)])
topo = LnTopology(g, "baseline", graph_hash(g))
net = fund(topo, total_investment=8000)
print(f"funded {len(list(net.channels()))} channels, "
      f"capacity {net.capacity} each, remainder {net.remainder}")
print(f"  spendable 0->1: {net.spendable(0, 1)}")

snap = MeshSnapshot(0, g.copy())  # mesh mirrors the channel graph here

# repeated same-direction payments deplete a channel...
for i in range(3):
    out = execute(net, snap, PaymentRequest(0, 0, 4, 400))
    print(f"payment {i}: {out.status.value:17s} path={out.path} "
          f"spendable 0->1 now {net.spendable(0, 1)}")

# ...and a payment back refills it
out = execute(net, snap, PaymentRequest(0, 4, 0, 400))
print(f"reverse:   {out.status.value:17s} spendable 0->1 back to {net.spendable(0, 1)}")

# the other failure class: the mesh underneath fell apart
island = Graph([(0, 1), (3, 4)])
island.add_vertex(2)
out = execute(net, MeshSnapshot(0, island), PaymentRequest(0, 0, 4, 10))
print(f"split mesh: {out.status.value}")

# an epoch is just a request list executed in order against one snapshot
reqs = [PaymentRequest(1, a, b, 100) for a, b in ((0, 2), (2, 0), (4, 1))]
outcomes = run_epoch(net, MeshSnapshot(1, g.copy()), reqs)
print("\nper-payment trace:")
print(trace_csv_text(zip(reqs, outcomes)))
