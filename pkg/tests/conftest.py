"""Shared graph builders and independent brute-force oracles."""

import itertools
import random

import pytest

from hypermotifs.graph import DirectedGraph
from hypermotifs.motifs import (
    CONNECTED_TRIAD_CLASSES,
    SELF_LOOP_CLASS,
    motif_class_from_edges,
    permute_code,
    role_orbits,
)


def er_digraph(n, e, seed, self_loops=0, no_mutual=False):
    """Random simple digraph with exactly e edges (self-loops included in e)."""
    rng = random.Random(seed)
    nodes = [f"n{i}" for i in range(n)]
    pairs = set()
    loops = set(rng.sample(range(n), self_loops))
    while len(pairs) + len(loops) < e:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        if no_mutual and (v, u) in pairs:
            continue
        pairs.add((u, v))
    edges = [(nodes[u], nodes[v]) for u, v in pairs]
    edges += [(nodes[i], nodes[i]) for i in loops]
    return DirectedGraph(nodes, edges)


def planted_ffl_graph(n, e, n_ffl, seed, self_loops_on="intermediate", n_self_loops=None,
                      no_mutual=True):
    """n_ffl FFLs on disjoint node triples over a random background.

    self_loops_on: "intermediate" puts one self-loop on each FFL's middle
    node, "random" places the same number on random nodes, None adds none.
    """
    rng = random.Random(seed)
    nodes = [f"n{i}" for i in range(n)]
    pairs = set()

    def add(u, v):
        if u == v:
            return
        if no_mutual and (v, u) in pairs:
            return
        pairs.add((u, v))

    pool = list(range(n))
    rng.shuffle(pool)
    assert 3 * n_ffl <= n, "need enough nodes for disjoint planted triples"
    intermediates = []
    for t in range(n_ffl):
        a, b, c = pool[3 * t], pool[3 * t + 1], pool[3 * t + 2]
        add(a, b)
        add(a, c)
        add(b, c)
        intermediates.append(b)
    if self_loops_on == "intermediate":
        loops = intermediates
    elif self_loops_on == "random":
        k = n_self_loops if n_self_loops is not None else n_ffl
        loops = rng.sample(range(n), k)
    else:
        loops = []
    while len(pairs) + len(loops) < e:
        add(rng.randrange(n), rng.randrange(n))
    edges = [(nodes[u], nodes[v]) for u, v in pairs]
    edges += [(nodes[i], nodes[i]) for i in loops]
    return DirectedGraph(nodes, edges)


def _oracle_triad_table():
    """Map each 6-bit off-diagonal pattern to its class, built from scratch."""
    bits = ((0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1))
    table = {}
    for c6 in range(64):
        edges = [(i, j) for b, (i, j) in enumerate(bits) if c6 >> b & 1]
        table[c6] = motif_class_from_edges(3, edges)
    return table


_ORACLE_TABLE = _oracle_triad_table()


def brute_force_census(graph):
    """Census by exhaustive classification of every node triple."""
    counts = {cls: 0 for cls in CONNECTED_TRIAD_CLASSES}
    n = graph.n_nodes
    has = graph.has_edge_idx
    for a, b, c in itertools.combinations(range(n), 3):
        c6 = (
            has(a, b)
            | has(a, c) << 1
            | has(b, a) << 2
            | has(b, c) << 3
            | has(c, a) << 4
            | has(c, b) << 5
        )
        cls = _ORACLE_TABLE[c6]
        if cls.connected:
            counts[cls] += 1
    counts[SELF_LOOP_CLASS] = graph.n_self_loops
    return counts


def brute_force_roles(graph, classes):
    """Role sets and occurrence counts by exhaustive triple enumeration and
    direct pattern matching against each class's canonical form."""
    classes = set(classes)
    role_sets = {}
    counts = {}
    for cls in classes:
        for orbit in role_orbits(cls):
            role_sets[orbit] = set()
    orbit_of_pos = {
        (cls, pos): orbit
        for cls in classes
        for orbit in role_orbits(cls)
        for pos in orbit.member_positions
    }
    n = graph.n_nodes
    triad_classes = {cls for cls in classes if cls.size == 3}
    for a, b, c in itertools.combinations(range(n), 3):
        triple = (a, b, c)
        remap = {a: 0, b: 1, c: 2}
        pattern = frozenset(
            (remap[u], remap[v])
            for u, v in itertools.permutations(triple, 2)
            if graph.has_edge_idx(u, v)
        )
        code = sum(1 << (i * 3 + j) for i, j in pattern)
        for cls in triad_classes:
            for perm in itertools.permutations(range(3)):
                if permute_code(3, code, perm) == cls.code:
                    for p in range(3):
                        orbit = orbit_of_pos[(cls, perm[p])]
                        node = graph.node_ids[triple[p]]
                        role_sets[orbit].add(node)
                        counts[(orbit, node)] = counts.get((orbit, node), 0) + 1
                    break  # one embedding per occurrence; orbits absorb automorphisms
    if SELF_LOOP_CLASS in classes:
        (orbit,) = role_orbits(SELF_LOOP_CLASS)
        for node in graph.self_loop_nodes():
            role_sets[orbit].add(node)
            counts[(orbit, node)] = 1
    return role_sets, counts


@pytest.fixture
def toy_ffl_graph():
    return DirectedGraph(["x", "y", "z"], [("x", "y"), ("x", "z"), ("y", "z")])


@pytest.fixture
def three_cycle():
    return DirectedGraph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
