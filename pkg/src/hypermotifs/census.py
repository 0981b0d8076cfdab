"""Induced subgraph census up to 3 nodes, motif significance and role assignment.

The census counts induced *connected* 3-node subgraphs per isomorphism class
plus the 1-node self-loop motif. Enumeration visits only triples spanning at
least one edge (neighborhood merge); a brute-force oracle over all node
triples lives in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .graph import DirectedGraph
from .motifs import (
    ALL_TRIAD_CLASSES,
    CONNECTED_TRIAD_CLASSES,
    SELF_LOOP_CLASS,
    TRIAD_CLASS_INDEX,
    TRIAD_CONNECTED,
    TRIAD_PERM_INDEX,
    TRIAD_PERMS,
    MotifClass,
    motif_class_from_edges,
    role_orbits,
)

__all__ = [
    "MUTUAL_DYAD_CLASS",
    "triad_census",
    "census_counts16",
    "mutual_dyad_count",
    "subgraph_census_upto3",
    "motif_zscores",
    "find_motifs",
    "RoleAssignment",
    "role_assignment",
]

MUTUAL_DYAD_CLASS = motif_class_from_edges(2, [(0, 1), (1, 0)])

_CLASS_BY_INDEX = ALL_TRIAD_CLASSES  # index i <-> ALL_TRIAD_CLASSES[i]


def _sorted_union_neighbors(graph):
    n = graph.n_nodes
    return [sorted(graph.union_neighbors_idx(i) - {i}) for i in range(n)]


def _iter_connected_triples(graph):
    """Yield (a, b, c, code6) for every induced connected triple, each once.

    a < b < c is not guaranteed; the triple is emitted as (center-first order
    sorted ascending). code6 encodes the off-diagonal adjacency of the sorted
    triple.
    """
    out = graph._out
    nbrs = _sorted_union_neighbors(graph)
    for c in range(graph.n_nodes):
        nb = nbrs[c]
        ln = len(nb)
        out_c = out[c]
        for x in range(ln):
            u = nb[x]
            for y in range(x + 1, ln):
                w = nb[y]
                # u < w; triple is support-connected through center c
                if (w in out[u] or u in out[w]) and c > u:
                    continue  # support triangle: count once, from smallest center
                t0, t1, t2 = sorted((c, u, w))
                code6 = (
                    (t1 in out[t0])
                    | (t2 in out[t0]) << 1
                    | (t0 in out[t1]) << 2
                    | (t2 in out[t1]) << 3
                    | (t0 in out[t2]) << 4
                    | (t1 in out[t2]) << 5
                )
                yield t0, t1, t2, code6


def triad_census(graph):
    """Counts of induced connected 3-node subgraphs per class, plus self-loops.

    Returns a mapping MotifClass -> count covering all 13 connected triad
    classes (zeros included) and the size-1 self-loop class.
    """
    counts = {cls: 0 for cls in CONNECTED_TRIAD_CLASSES}
    class_of = _CLASS_BY_INDEX
    for _, _, _, code6 in _iter_connected_triples(graph):
        counts[class_of[TRIAD_CLASS_INDEX[code6]]] += 1
    counts[SELF_LOOP_CLASS] = graph.n_self_loops
    return counts


def census_counts16(graph):
    """Connected triad counts as a 16-slot list aligned with ALL_TRIAD_CLASSES."""
    counts = [0] * len(ALL_TRIAD_CLASSES)
    for _, _, _, code6 in _iter_connected_triples(graph):
        counts[TRIAD_CLASS_INDEX[code6]] += 1
    return counts


def mutual_dyad_count(graph):
    """Number of node pairs connected in both directions (self-loops excluded)."""
    m = 0
    for u, v in graph.edge_index_pairs():
        if u < v and graph.has_edge_idx(v, u):
            m += 1
    return m


def subgraph_census_upto3(graph):
    """Full census of connected subgraphs up to 3 nodes.

    Extends triad_census with the 2-node mutual-dyad count; this is the target
    the census-preserving null models anneal to.
    """
    counts = triad_census(graph)
    counts[MUTUAL_DYAD_CLASS] = mutual_dyad_count(graph)
    return counts


def motif_zscores(graph, ensemble):
    """Per-class census statistics against an ensemble.

    Returns {MotifClass: (count, mean, std, z)} with z = inf/-inf for
    zero-variance classes whose real count deviates, and z = 0 when it
    matches.
    """
    if not ensemble:
        raise ValueError("ensemble must be nonempty")
    for g in ensemble:
        if g.n_nodes != graph.n_nodes or g.n_edges != graph.n_edges:
            raise ValueError("ensemble members must preserve N and E")
    real = triad_census(graph)
    member_counts = [triad_census(g) for g in ensemble]
    out = {}
    for cls, count in real.items():
        values = [mc[cls] for mc in member_counts]
        mean = sum(values) / len(values)
        if len(values) > 1:
            var = sum((v - mean) ** 2 for v in values) / (len(values) - 1)
        else:
            var = 0.0
        std = math.sqrt(var)
        if std == 0.0:
            z = 0.0 if count == mean else math.copysign(math.inf, count - mean)
        else:
            z = (count - mean) / std
        out[cls] = (count, mean, std, z)
    return out


def find_motifs(graph, ensemble, z_threshold=2.0):
    """Classes over-represented versus the ensemble by more than z_threshold.

    Z uses the sample standard deviation of ensemble counts. Zero-variance
    classes matching the real count are excluded; zero-variance classes with a
    larger real count are returned with z = inf.
    """
    results = [
        (cls, z)
        for cls, (_, _, _, z) in motif_zscores(graph, ensemble).items()
        if z > z_threshold
    ]
    results.sort(key=lambda t: (-t[1], t[0]))
    return results


@dataclass
class RoleAssignment:
    """Node membership and occurrence counts per motif role orbit."""

    role_sets: dict = field(default_factory=dict)  # RoleOrbit -> set of node ids
    occurrence_counts: dict = field(default_factory=dict)  # (RoleOrbit, node id) -> count

    @property
    def participating_nodes(self):
        """N_m: all nodes that appear in at least one motif role."""
        nodes = set()
        for s in self.role_sets.values():
            nodes |= s
        return nodes

    def counts_for_orbit(self, orbit):
        return {
            node: c for (o, node), c in self.occurrence_counts.items() if o == orbit
        }


def _orbit_position_table(selected_classes):
    """For each 6-bit triad code whose class is selected, the RoleOrbit of each
    of the three sorted-triple positions."""
    orbit_of_canon_pos = {}
    for cls in selected_classes:
        if cls.size != 3:
            continue
        for orbit in role_orbits(cls):
            for pos in orbit.member_positions:
                orbit_of_canon_pos[(cls, pos)] = orbit
    table = [None] * 64
    for code6 in range(64):
        cls = _CLASS_BY_INDEX[TRIAD_CLASS_INDEX[code6]]
        if cls not in selected_classes or cls.size != 3:
            continue
        perm = TRIAD_PERMS[TRIAD_PERM_INDEX[code6]]
        table[code6] = tuple(orbit_of_canon_pos[(cls, perm[p])] for p in range(3))
    return table


def role_assignment(graph, classes):
    """Assign every node of every induced occurrence of the given classes to
    the role orbit of its position; occurrence counts increment per appearance.
    """
    classes = set(classes)
    for cls in classes:
        if not isinstance(cls, MotifClass):
            raise TypeError(f"expected MotifClass, got {cls!r}")
        if cls.size == 3 and not cls.connected:
            raise ValueError(f"{cls!r} is not a connected triad class")
        if cls.size not in (1, 3):
            raise ValueError(f"role assignment supports sizes 1 and 3, got {cls.size}")
    assignment = RoleAssignment()
    for cls in classes:
        for orbit in role_orbits(cls):
            assignment.role_sets[orbit] = set()

    triad_classes = {cls for cls in classes if cls.size == 3}
    if triad_classes:
        table = _orbit_position_table(triad_classes)
        ids = graph.node_ids
        role_sets = assignment.role_sets
        counts = assignment.occurrence_counts
        for t0, t1, t2, code6 in _iter_connected_triples(graph):
            orbits = table[code6]
            if orbits is None:
                continue
            for node_idx, orbit in zip((t0, t1, t2), orbits):
                node = ids[node_idx]
                role_sets[orbit].add(node)
                counts[(orbit, node)] = counts.get((orbit, node), 0) + 1

    if SELF_LOOP_CLASS in classes:
        (sl_orbit,) = role_orbits(SELF_LOOP_CLASS)
        for node in graph.self_loop_nodes():
            assignment.role_sets[sl_orbit].add(node)
            assignment.occurrence_counts[(sl_orbit, node)] = 1
    return assignment
