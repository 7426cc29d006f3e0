"""Channel funding and payment execution.

A ChannelNetwork holds one bidirectional channel per topology edge.
Each channel has a fixed integer capacity split into two directional
balances that always sum back to the capacity; payments shift balance
along every hop of a route or fail atomically.

Routing is deliberately liquidity-aware and mesh-aware: a payment only
succeeds if a path exists whose every hop (a) currently spends at least
the amount in the traversal direction and (b) lies inside the sender's
mesh component in the current snapshot, since offline hops must relay
payment messages over live radio links.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .assign import LnTopology
from .mesh import MeshSnapshot


class OutcomeStatus(Enum):
    SUCCESS = "success"
    FAIL_NO_CAPACITY = "fail_no_capacity"
    FAIL_NO_MESH_PATH = "fail_no_mesh_path"


@dataclass(frozen=True)
class Channel:
    """Read-only view of one channel's state; u < v always."""

    u: int
    v: int
    capacity: int
    balance_uv: int
    balance_vu: int


@dataclass(frozen=True)
class PaymentRequest:
    epoch_index: int
    sender: int
    receiver: int
    amount: int

    def __post_init__(self):
        if self.sender == self.receiver:
            raise ValueError(f"sender and receiver are both {self.sender}")
        if self.amount < 1:
            raise ValueError(f"amount must be a positive satoshi count, got {self.amount}")


@dataclass(frozen=True)
class PaymentOutcome:
    status: OutcomeStatus
    path: tuple[int, ...] | None = None

    @property
    def ok(self) -> bool:
        return self.status is OutcomeStatus.SUCCESS


class ChannelNetwork:
    """Mutable balance state over a fixed channel topology.

    Single-writer: one simulation run owns one instance. Balances live
    in a nested dict bal[x][y] = satoshi spendable from x toward y over
    the channel (x, y); bal[x][y] + bal[y][x] is that channel's
    capacity, an invariant every mutation preserves.
    """

    __slots__ = ("topology", "total_investment", "capacity", "remainder", "_bal", "_adj")

    def __init__(
        self,
        topology: LnTopology,
        total_investment: int,
        capacity: int,
        remainder: int,
        balances: dict[int, dict[int, int]],
    ):
        self.topology = topology
        self.total_investment = total_investment
        self.capacity = capacity
        self.remainder = remainder
        self._bal = balances
        self._adj = {v: sorted(peers) for v, peers in balances.items()}

    def vertices(self) -> list[int]:
        return self.topology.graph.vertices()

    def has_vertex(self, v: int) -> bool:
        return self.topology.graph.has_vertex(v)

    @property
    def channel_count(self) -> int:
        return self.topology.graph.edge_count

    def spendable(self, x: int, y: int) -> int:
        """Satoshi x can currently push toward y over their channel."""
        return self._bal[x][y]

    def channel(self, u: int, v: int) -> Channel:
        if u > v:
            u, v = v, u
        return Channel(u, v, self._bal[u][v] + self._bal[v][u], self._bal[u][v], self._bal[v][u])

    def channels(self) -> list[Channel]:
        return [self.channel(u, v) for u, v in self.topology.graph.edges()]

    def state_hash(self) -> str:
        h = hashlib.sha256()
        for u, v in self.topology.graph.edges():
            h.update(f"{u},{v},{self._bal[u][v]},{self._bal[v][u]};".encode())
        return h.hexdigest()

    def __repr__(self):
        return (
            f"ChannelNetwork(channels={self.channel_count}, capacity={self.capacity}, "
            f"investment={self.total_investment})"
        )


def fund(topology: LnTopology, total_investment: int) -> ChannelNetwork:
    """Spread total_investment evenly over the topology's channels.

    Every channel gets capacity floor(total / E); the division remainder
    stays unallocated and is reported on the network. Each capacity is
    split half-and-half between the two directions, the lower-id
    endpoint holding the extra satoshi when the capacity is odd.
    """
    edges = topology.graph.edges()
    if not edges:
        raise ValueError("cannot fund a topology with zero channels")
    if total_investment < len(edges):
        raise ValueError(
            f"investment {total_investment} cannot fund {len(edges)} channels "
            "with nonzero capacity"
        )
    capacity = total_investment // len(edges)
    half = capacity // 2
    balances: dict[int, dict[int, int]] = {v: {} for v in topology.graph.vertices()}
    for u, v in edges:
        balances[u][v] = capacity - half
        balances[v][u] = half
    return ChannelNetwork(
        topology,
        total_investment,
        capacity,
        total_investment - capacity * len(edges),
        balances,
    )


def execute(
    net: ChannelNetwork,
    snapshot: MeshSnapshot,
    req: PaymentRequest,
    restrict_intermediates: bool = True,
) -> PaymentOutcome:
    """Route one payment and shift balances, or fail with no state change.

    Failure taxonomy:
      * FAIL_NO_MESH_PATH - sender and receiver sit in different
        components of the mesh snapshot; no channel route could even
        carry the payment messages.
      * FAIL_NO_CAPACITY  - mesh-reachable, but no channel path with
        enough spendable balance on every hop.

    The route is the minimum-hop feasible path with the
    lexicographically smallest vertex sequence among ties. With
    restrict_intermediates (default) every hop must sit in the sender's
    mesh component; pass False to gate only the endpoints.
    """
    sender, receiver, amount = req.sender, req.receiver, req.amount
    if not net.has_vertex(sender):
        raise KeyError(f"unknown sender {sender}")
    if not net.has_vertex(receiver):
        raise KeyError(f"unknown receiver {receiver}")
    labels = snapshot.graph.component_labels()
    comp = labels[sender]
    if labels[receiver] != comp:
        return PaymentOutcome(OutcomeStatus.FAIL_NO_MESH_PATH)

    bal = net._bal
    adj = net._adj
    restrict = restrict_intermediates

    # Hop counts toward the receiver over feasible edges only. An edge
    # x->y is feasible when x can spend `amount` toward y (and x sits in
    # the sender's mesh component, in restricted mode). Searching from
    # the receiver lets the forward walk below follow decreasing counts.
    dist = {receiver: 0}
    queue = deque((receiver,))
    found = False
    while queue and not found:
        u = queue.popleft()
        nd = dist[u] + 1
        for x in adj[u]:
            if x in dist or bal[x][u] < amount:
                continue
            if restrict and labels[x] != comp:
                continue
            dist[x] = nd
            if x == sender:
                found = True
                break
            queue.append(x)
    if not found:
        return PaymentOutcome(OutcomeStatus.FAIL_NO_CAPACITY)

    path = [sender]
    cur = sender
    while cur != receiver:
        want = dist[cur] - 1
        bal_cur = bal[cur]
        for y in adj[cur]:
            if dist.get(y) == want and bal_cur[y] >= amount:
                path.append(y)
                cur = y
                break

    for x, y in zip(path, path[1:]):
        bal[x][y] -= amount
        bal[y][x] += amount
    return PaymentOutcome(OutcomeStatus.SUCCESS, tuple(path))


def run_epoch(
    net: ChannelNetwork,
    snapshot: MeshSnapshot,
    reqs: Sequence[PaymentRequest],
    restrict_intermediates: bool = True,
) -> list[PaymentOutcome]:
    """Execute an epoch's requests strictly in order.

    Balances carry over between payments and between epochs; depletion
    accumulates for the whole simulation.
    """
    for req in reqs:
        if req.epoch_index != snapshot.epoch_index:
            raise ValueError(
                f"request for epoch {req.epoch_index} run against snapshot "
                f"{snapshot.epoch_index}"
            )
    return [execute(net, snapshot, req, restrict_intermediates) for req in reqs]


TRACE_CSV_HEADER = "epoch,sender,receiver,amount,outcome,path"


def trace_csv_text(rows: Iterable[tuple[PaymentRequest, PaymentOutcome]]) -> str:
    """Audit log, one payment per row; path hops joined with `-`."""
    out = [TRACE_CSV_HEADER]
    for req, outcome in rows:
        path = "-".join(map(str, outcome.path)) if outcome.path else ""
        out.append(
            f"{req.epoch_index},{req.sender},{req.receiver},{req.amount},"
            f"{outcome.status.value},{path}"
        )
    return "\n".join(out) + "\n"
