"""Undirected simple graphs plus the classical algorithms the topology
strategies are built from: components, BFS shortest paths, Kruskal MST,
greedy connected dominating sets, Wilson spanning-tree sampling, and
closeness centrality.

All tie-breaks resolve by lowest vertex id so every operation is a pure
function of its inputs (plus the seed, for tree sampling).
"""

from __future__ import annotations

import hashlib
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator


class DisconnectedGraphError(ValueError):
    """Raised by operations that are only defined on connected graphs."""


class Graph:
    """Undirected simple graph over integer vertex ids.

    Self-loops are rejected and parallel edges collapse into one. Edges
    carry an optional weight (default 1); only the MST looks at weights.
    Treat instances as frozen once built and shared: internal caches
    (sorted adjacency, components) assume no further mutation.
    """

    __slots__ = ("_adj", "_weights", "_sorted_adj", "_components", "_labels")

    def __init__(self, edges: Iterable[tuple[int, int]] = (), vertices: Iterable[int] = ()):
        self._adj: dict[int, set[int]] = {}
        self._weights: dict[tuple[int, int], float] = {}
        self._sorted_adj: dict[int, list[int]] | None = None
        self._components: list[list[int]] | None = None
        self._labels: dict[int, int] | None = None
        for v in vertices:
            self.add_vertex(v)
        for u, v in edges:
            self.add_edge(u, v)

    def _invalidate(self) -> None:
        self._sorted_adj = None
        self._components = None
        self._labels = None

    def add_vertex(self, v: int) -> None:
        if v not in self._adj:
            self._adj[v] = set()
            self._invalidate()

    def add_edge(self, u: int, v: int, weight: float | None = None) -> None:
        if u == v:
            raise ValueError(f"self-loop on vertex {u}")
        self.add_vertex(u)
        self.add_vertex(v)
        self._adj[u].add(v)
        self._adj[v].add(u)
        if weight is not None and weight != 1:
            self._weights[(u, v) if u < v else (v, u)] = weight
        self._invalidate()

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def weight(self, u: int, v: int) -> float:
        if not self.has_edge(u, v):
            raise KeyError(f"no edge ({u}, {v})")
        return self._weights.get((u, v) if u < v else (v, u), 1.0)

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def neighbors(self, v: int) -> list[int]:
        """Neighbors of v in ascending id order."""
        return self.sorted_adjacency()[v]

    def sorted_adjacency(self) -> dict[int, list[int]]:
        if self._sorted_adj is None:
            self._sorted_adj = {v: sorted(ns) for v, ns in self._adj.items()}
        return self._sorted_adj

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return sum(len(ns) for ns in self._adj.values()) // 2

    def vertices(self) -> list[int]:
        return sorted(self._adj)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) with u < v, in ascending order."""
        return sorted((u, v) for u, ns in self._adj.items() for v in ns if u < v)

    def copy(self) -> "Graph":
        g = Graph()
        g._adj = {v: set(ns) for v, ns in self._adj.items()}
        g._weights = dict(self._weights)
        return g

    def induced(self, keep: Iterable[int]) -> "Graph":
        """Subgraph induced on the given vertex set."""
        keep_set = set(keep)
        g = Graph()
        for v in keep_set:
            if v not in self._adj:
                raise KeyError(f"unknown vertex {v}")
            g.add_vertex(v)
        for u, v in self.edges():
            if u in keep_set and v in keep_set:
                g.add_edge(u, v, self._weights.get((u, v)))
        return g

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest member.

        Cached; safe because instances are frozen once shared.
        """
        if self._components is None:
            self._components = _components(self)
        return self._components

    def component_labels(self) -> dict[int, int]:
        if self._labels is None:
            self._labels = {v: i for i, comp in enumerate(self.components()) for v in comp}
        return self._labels

    def is_connected(self) -> bool:
        return self.vertex_count <= 1 or len(self.components()) == 1

    def edge_set_equals(self, other: "Graph") -> bool:
        return self.vertices() == other.vertices() and self.edges() == other.edges()

    def __repr__(self) -> str:
        return f"Graph(|V|={self.vertex_count}, |E|={self.edge_count})"


def _components(g: Graph) -> list[list[int]]:
    seen: set[int] = set()
    out: list[list[int]] = []
    adj = g._adj
    for start in g.vertices():
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        out.append(comp)
    return out


def connected_components(g: Graph) -> list[list[int]]:
    """Partition the vertices into connected components."""
    return g.components()


def bfs_distances(g: Graph, src: int, stop_at: int | None = None) -> dict[int, int]:
    """Hop distances from src to every reachable vertex.

    When stop_at is given the search halts as soon as that vertex gets a
    distance; all vertices at strictly smaller distance are already final.
    """
    if src not in g._adj:
        raise KeyError(f"unknown vertex {src}")
    adj = g._adj
    dist = {src: 0}
    if stop_at == src:
        return dist
    queue = deque([src])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for w in adj[u]:
            if w not in dist:
                dist[w] = du + 1
                if w == stop_at:
                    return dist
                queue.append(w)
    return dist


def shortest_path(g: Graph, src: int, dst: int) -> list[int] | None:
    """Minimum-hop path from src to dst, or None if disconnected.

    Among equal-length paths the lexicographically smallest vertex
    sequence is returned: distances are taken from dst, then the walk
    from src greedily picks the lowest-id neighbor one hop closer.
    """
    if src not in g._adj:
        raise KeyError(f"unknown vertex {src}")
    if dst not in g._adj:
        raise KeyError(f"unknown vertex {dst}")
    if src == dst:
        return [src]
    dist = bfs_distances(g, dst, stop_at=src)
    if src not in dist:
        return None
    path = [src]
    cur = src
    adjacency = g.sorted_adjacency()
    while cur != dst:
        want = dist[cur] - 1
        for y in adjacency[cur]:
            if dist.get(y) == want:
                path.append(y)
                cur = y
                break
    return path


class _UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def minimum_spanning_tree(g: Graph) -> Graph:
    """Kruskal's MST; edges considered in (weight, u, v) ascending order.

    With unit weights this reduces to ascending (min endpoint, max
    endpoint) order, which fixes the output deterministically.
    """
    if not g.is_connected():
        raise DisconnectedGraphError("minimum_spanning_tree requires a connected graph")
    tree = Graph(vertices=g.vertices())
    if g.vertex_count <= 1:
        return tree
    uf = _UnionFind(g.vertices())
    edges = sorted(g.edges(), key=lambda e: (g.weight(*e), e))
    needed = g.vertex_count - 1
    taken = 0
    for u, v in edges:
        if uf.union(u, v):
            tree.add_edge(u, v, g._weights.get((u, v)))
            taken += 1
            if taken == needed:
                break
    return tree


@dataclass(frozen=True)
class DominatingSet:
    """A connected dominating set together with the graph it dominates."""

    dominators: frozenset[int]
    host: Graph

    def dominatees(self) -> list[int]:
        return [v for v in self.host.vertices() if v not in self.dominators]


def is_dominating_set(g: Graph, subset: Iterable[int]) -> bool:
    sub = set(subset)
    return all(v in sub or any(n in sub for n in g._adj[v]) for v in g.vertices())


def induces_connected_subgraph(g: Graph, subset: Iterable[int]) -> bool:
    sub = set(subset)
    if not sub:
        return False
    start = next(iter(sub))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g._adj[u]:
            if w in sub and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen == sub


def mcds(g: Graph) -> DominatingSet:
    """Greedy connected dominating set.

    Grows from the highest-degree vertex, repeatedly absorbing the
    frontier vertex that covers the most still-uncovered vertices
    (lowest id on ties). Valid and deterministic; minimal only
    approximately.
    """
    if g.vertex_count == 0:
        raise ValueError("mcds requires at least one vertex")
    if not g.is_connected():
        raise DisconnectedGraphError("mcds requires a connected graph")
    if g.vertex_count == 1:
        return DominatingSet(frozenset(g.vertices()), g)

    adj = g._adj
    # uncovered[v]: how many white (uncovered) neighbors v still has
    white = set(g.vertices())
    uncovered = {v: len(adj[v]) for v in g.vertices()}

    def absorb(v: int) -> None:
        # v joins the dominator set; its white neighbors become covered
        if v in white:
            white.discard(v)
            for n in adj[v]:
                uncovered[n] -= 1
        for n in list(adj[v]):
            if n in white:
                white.discard(n)
                gray.add(n)
                for m in adj[n]:
                    uncovered[m] -= 1

    start = min(g.vertices(), key=lambda v: (-len(adj[v]), v))
    black = {start}
    gray: set[int] = set()
    absorb(start)

    while white:
        best = min(gray, key=lambda v: (-uncovered[v], v))
        gray.discard(best)
        black.add(best)
        absorb(best)

    return DominatingSet(frozenset(black), g)


def uniform_spanning_tree(g: Graph, rng: random.Random | int) -> Graph:
    """Wilson's loop-erased random walk sampler.

    Every spanning tree of g is returned with equal probability. The
    walk is rooted at the lowest-id vertex and draws uniformly over
    id-sorted neighbor lists, so a fixed seed reproduces a fixed tree.
    """
    if not g.is_connected():
        raise DisconnectedGraphError("uniform_spanning_tree requires a connected graph")
    if isinstance(rng, int):
        rng = random.Random(rng)
    verts = g.vertices()
    tree = Graph(vertices=verts)
    if len(verts) <= 1:
        return tree
    adjacency = g.sorted_adjacency()
    in_tree = {verts[0]}
    nxt: dict[int, int] = {}
    randrange = rng.randrange
    for v in verts[1:]:
        if v in in_tree:
            continue
        u = v
        while u not in in_tree:
            nbrs = adjacency[u]
            nxt[u] = nbrs[randrange(len(nbrs))]
            u = nxt[u]
        u = v
        while u not in in_tree:
            in_tree.add(u)
            tree.add_edge(u, nxt[u])
            u = nxt[u]
    return tree


def closeness_centrality(g: Graph, v: int) -> float:
    """(N - 1) / (sum of hop distances from v to every other vertex)."""
    if v not in g._adj:
        raise KeyError(f"unknown vertex {v}")
    if g.vertex_count < 2:
        raise ValueError("closeness centrality needs at least two vertices")
    if not g.is_connected():
        raise DisconnectedGraphError("closeness centrality is undefined on disconnected graphs")
    dist = bfs_distances(g, v)
    return (g.vertex_count - 1) / sum(dist.values())


def mean_closeness(g: Graph) -> float:
    """Average closeness centrality over all vertices."""
    return sum(closeness_centrality(g, v) for v in g.vertices()) / g.vertex_count


def diameter(g: Graph) -> int:
    if not g.is_connected():
        raise DisconnectedGraphError("diameter is undefined on disconnected graphs")
    if g.vertex_count <= 1:
        return 0
    return max(max(bfs_distances(g, v).values()) for v in g.vertices())


def edge_list_text(g: Graph) -> str:
    """Debug export: one `u v` line per edge, lone `u` lines for isolated vertices."""
    lines = [f"{u} {v}" for u, v in g.edges()]
    lines.extend(str(v) for v in g.vertices() if g.degree(v) == 0)
    return "\n".join(lines) + ("\n" if lines else "")


def parse_edge_list(text: str) -> Graph:
    g = Graph()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if len(parts) == 1:
                g.add_vertex(int(parts[0]))
            elif len(parts) == 2:
                g.add_edge(int(parts[0]), int(parts[1]))
            else:
                raise ValueError("expected 1 or 2 fields")
        except ValueError as exc:
            raise ValueError(f"bad edge-list line {lineno}: {raw!r} ({exc})") from None
    return g


def graph_hash(g: Graph) -> str:
    """Stable short hash of the vertex and edge sets."""
    h = hashlib.sha256()
    h.update(",".join(map(str, g.vertices())).encode())
    h.update(b"|")
    h.update(";".join(f"{u}-{v}" for u, v in g.edges()).encode())
    return h.hexdigest()[:16]


def iter_edges(path: list[int]) -> Iterator[tuple[int, int]]:
    """Consecutive pairs along a vertex path."""
    return zip(path, path[1:])
