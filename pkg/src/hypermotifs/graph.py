"""Directed-graph data model and edge-list ingestion.

Node identifiers are opaque strings; dense integer indices are an internal
detail. Graphs are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "GraphError",
    "EdgeListError",
    "DirectedGraph",
    "IngestReport",
    "load_edge_list",
    "load_edge_list_with_report",
    "save_edge_list",
    "degree_sequences",
]


class GraphError(ValueError):
    pass


class EdgeListError(GraphError):
    pass


class DirectedGraph:
    """Immutable directed graph with optional self-loops and set edge semantics."""

    __slots__ = ("node_ids", "_index", "_edges", "_out", "_in", "allows_self_loops")

    def __init__(self, node_ids, edges, allows_self_loops=True):
        ids = tuple(node_ids)
        if len(set(ids)) != len(ids):
            raise GraphError("duplicate node ids")
        index = {v: i for i, v in enumerate(ids)}
        n = len(ids)
        out = [set() for _ in range(n)]
        inc = [set() for _ in range(n)]
        edge_idx = set()
        for u, v in edges:
            try:
                ui, vi = index[u], index[v]
            except KeyError as exc:
                raise GraphError(f"edge endpoint {exc.args[0]!r} is not a registered node")
            if ui == vi and not allows_self_loops:
                raise GraphError(f"self-loop on {u!r} but self-loops are disallowed")
            if (ui, vi) not in edge_idx:
                edge_idx.add((ui, vi))
                out[ui].add(vi)
                inc[vi].add(ui)
        self.node_ids = ids
        self._index = index
        self._edges = frozenset(edge_idx)
        self._out = tuple(frozenset(s) for s in out)
        self._in = tuple(frozenset(s) for s in inc)
        self.allows_self_loops = allows_self_loops

    # -- basic queries ---------------------------------------------------

    @property
    def n_nodes(self):
        return len(self.node_ids)

    @property
    def n_edges(self):
        return len(self._edges)

    def index_of(self, node_id):
        return self._index[node_id]

    def has_edge(self, u, v):
        return (self._index[u], self._index[v]) in self._edges

    def has_edge_idx(self, ui, vi):
        return (ui, vi) in self._edges

    def edges(self):
        """Edges as (source_id, target_id) pairs in deterministic order."""
        ids = self.node_ids
        return [(ids[u], ids[v]) for u, v in sorted(self._edges)]

    def edge_index_pairs(self):
        return sorted(self._edges)

    def out_neighbors_idx(self, i):
        return self._out[i]

    def in_neighbors_idx(self, i):
        return self._in[i]

    def union_neighbors_idx(self, i):
        return self._out[i] | self._in[i]

    def self_loop_nodes(self):
        """Ids of nodes carrying a self-loop, in node order."""
        return [v for i, v in enumerate(self.node_ids) if (i, i) in self._edges]

    @property
    def n_self_loops(self):
        return sum(1 for u, v in self._edges if u == v)

    # -- derived structures ------------------------------------------------

    def induced_subgraph(self, node_subset):
        keep = [v for v in self.node_ids if v in set(node_subset)]
        keep_idx = {self._index[v] for v in keep}
        ids = self.node_ids
        edges = [
            (ids[u], ids[v]) for u, v in self._edges if u in keep_idx and v in keep_idx
        ]
        return DirectedGraph(keep, edges, allows_self_loops=self.allows_self_loops)

    def relabeled(self, mapping):
        """New graph with node ids replaced via `mapping` (a dict id -> id)."""
        return DirectedGraph(
            [mapping[v] for v in self.node_ids],
            [(mapping[u], mapping[v]) for u, v in self.edges()],
            allows_self_loops=self.allows_self_loops,
        )

    def to_edge_arrays(self):
        """(src, dst) int64 index arrays, self-loops included, sorted."""
        pairs = sorted(self._edges)
        src = np.array([p[0] for p in pairs], dtype=np.int64)
        dst = np.array([p[1] for p in pairs], dtype=np.int64)
        return src, dst

    def to_dense_adjacency(self):
        a = np.zeros((self.n_nodes, self.n_nodes), dtype=np.uint8)
        for u, v in self._edges:
            a[u, v] = 1
        return a

    def __eq__(self, other):
        # same mathematical graph: node set and edge set by id (node order is
        # an internal detail)
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return set(self.node_ids) == set(other.node_ids) and set(self.edges()) == set(
            other.edges()
        )

    def __hash__(self):
        return hash((frozenset(self.node_ids), frozenset(self.edges())))

    def __repr__(self):
        return f"DirectedGraph(N={self.n_nodes}, E={self.n_edges})"


@dataclass(frozen=True)
class IngestReport:
    n_lines: int
    duplicate_edges: int
    self_loops: int


def load_edge_list_with_report(path, comment_prefix="#"):
    """Parse an edge-list file; returns (graph, IngestReport).

    Format: one edge per line, "source<whitespace>target"; extra tokens are
    ignored; lines starting with the comment prefix are skipped. Duplicate
    edges are collapsed and counted, not rejected.
    """
    nodes = []
    seen = set()
    edges = []
    edge_set = set()
    duplicates = 0
    self_loops = 0
    n_lines = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith(comment_prefix):
                continue
            n_lines += 1
            tokens = line.split()
            if len(tokens) < 2:
                raise EdgeListError(f"{path}:{lineno}: malformed line (need >= 2 tokens): {line!r}")
            u, v = tokens[0], tokens[1]
            for w in (u, v):
                if w not in seen:
                    seen.add(w)
                    nodes.append(w)
            if (u, v) in edge_set:
                duplicates += 1
            else:
                edge_set.add((u, v))
                edges.append((u, v))
                if u == v:
                    self_loops += 1
    if not edges:
        raise EdgeListError(f"{path}: empty edge list")
    graph = DirectedGraph(nodes, edges)
    return graph, IngestReport(n_lines=n_lines, duplicate_edges=duplicates, self_loops=self_loops)


def load_edge_list(path, comment_prefix="#"):
    """Parse an edge-list file into a DirectedGraph."""
    graph, _ = load_edge_list_with_report(path, comment_prefix=comment_prefix)
    return graph


def save_edge_list(graph, path, header=None):
    """Write the graph in the same one-edge-per-line format, sorted for determinism."""
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for u, v in sorted(graph.edges()):
            fh.write(f"{u}\t{v}\n")


def degree_sequences(graph):
    """(in-degree mapping, out-degree mapping) keyed by node id; sums both equal E."""
    in_deg = {v: len(graph.in_neighbors_idx(i)) for i, v in enumerate(graph.node_ids)}
    out_deg = {v: len(graph.out_neighbors_idx(i)) for i, v in enumerate(graph.node_ids)}
    return in_deg, out_deg
