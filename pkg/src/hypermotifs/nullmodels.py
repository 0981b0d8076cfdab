"""Random ensembles preserving N, E, per-node degrees and the <=3-node census.

Each ensemble member is produced by degree-preserving double-edge swaps (the
mixing phase) followed by Metropolis annealing that drives the connected
subgraph census back to the real network's. Self-loop positions are frozen
throughout; the residual (census distance at exit) is first-class output so
downstream statistics stay honest when convergence is partial.

Member seeds derive as rng_seed + index; within a member the mixing phase uses
that seed and the annealing phase uses it xored with 0x9E3779B9.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._kernels import anneal_kernel, rewire_kernel
from .census import MUTUAL_DYAD_CLASS, census_counts16, mutual_dyad_count
from .graph import DirectedGraph
from .motifs import ALL_TRIAD_CLASSES, TRIAD_CLASS_INDEX

__all__ = [
    "AnnealConfig",
    "NullModelConfig",
    "AnnealResult",
    "rewire_degree_preserving",
    "rewire_with_free_self_loops",
    "anneal_to_census",
    "anneal_to_census_detailed",
    "generate_ensemble",
    "generate_ensemble_detailed",
    "generate_motif_null_ensemble",
]

_CLASS_OF_CODE6 = np.array(TRIAD_CLASS_INDEX, dtype=np.uint8)
_CONNECTED_MASK16 = np.array(
    [1 if cls.connected else 0 for cls in ALL_TRIAD_CLASSES], dtype=np.uint8
)
_SEED_MASK = 0xFFFFFFFF
_ANNEAL_SEED_SALT = 0x9E3779B9


@dataclass(frozen=True)
class AnnealConfig:
    initial_temperature: float = 2.0
    cooling_factor: float = 0.9999
    max_iterations: int = 1_000_000
    target_residual: int = 0
    # attempts without a best-energy improvement before the temperature is
    # reset to initial_temperature/4 (0 disables reheating)
    reheat_stall: int = 5_000

    def __post_init__(self):
        if not 0.0 < self.cooling_factor < 1.0:
            raise ValueError("cooling_factor must be in (0, 1)")
        if self.target_residual < 0:
            raise ValueError("target_residual must be >= 0")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be >= 0")


@dataclass(frozen=True)
class NullModelConfig:
    ensemble_size: int = 100
    swap_multiplier: int = 100
    anneal: AnnealConfig = field(default_factory=AnnealConfig)
    rng_seed: int = 0
    # extra independent rewire+anneal rounds per member when the annealing
    # residual stays above target (the best round wins)
    max_restarts: int = 4

    def __post_init__(self):
        if self.ensemble_size < 2:
            raise ValueError("ensemble_size must be >= 2")
        if self.swap_multiplier < 0:
            raise ValueError("swap_multiplier must be >= 0")
        if self.max_restarts < 0:
            raise ValueError("max_restarts must be >= 0")


@dataclass
class AnnealResult:
    graph: DirectedGraph
    residual: int
    best_residual: int
    accepted: int
    iterations: int
    trace: np.ndarray  # best-so-far energy, sampled at fixed intervals


def _kernel_arrays(graph, include_self_loop_edges):
    adj = graph.to_dense_adjacency()
    pairs = graph.edge_index_pairs()
    if not include_self_loop_edges:
        pairs = [(u, v) for u, v in pairs if u != v]
    src = np.array([p[0] for p in pairs], dtype=np.int64)
    dst = np.array([p[1] for p in pairs], dtype=np.int64)
    return adj, src, dst


def _graph_from_arrays(template, src, dst, frozen_self_loops):
    ids = template.node_ids
    edges = [(ids[u], ids[v]) for u, v in zip(src.tolist(), dst.tolist())]
    edges.extend((ids[i], ids[i]) for i in frozen_self_loops)
    return DirectedGraph(ids, edges, allows_self_loops=template.allows_self_loops)


def rewire_degree_preserving(graph, cfg, seed):
    """Mix the graph with degree-preserving double-edge swaps.

    Self-loops are exempt from swapping, so their positions (and count) are
    preserved exactly; swaps creating duplicates or new self-loops are
    rejected.
    """
    adj, src, dst = _kernel_arrays(graph, include_self_loop_edges=False)
    frozen = [u for u, v in graph.edge_index_pairs() if u == v]
    attempts = cfg.swap_multiplier * src.size
    rewire_kernel(adj, src, dst, attempts, False, (seed & _SEED_MASK))
    return _graph_from_arrays(graph, src, dst, frozen)


def rewire_with_free_self_loops(graph, cfg, seed):
    """Degree-preserving mixing in which self-loops swap like any other edge.

    This is the randomization used when *identifying* motifs: the self-loop
    motif can only be scored against an ensemble in which self-loop placement
    is random.
    """
    adj, src, dst = _kernel_arrays(graph, include_self_loop_edges=True)
    attempts = cfg.swap_multiplier * src.size
    rewire_kernel(adj, src, dst, attempts, graph.allows_self_loops, (seed & _SEED_MASK))
    return _graph_from_arrays(graph, src, dst, [])


def _csr_neighbors(graph):
    n = graph.n_nodes
    out_start = np.zeros(n + 1, dtype=np.int64)
    in_start = np.zeros(n + 1, dtype=np.int64)
    out_lists = [sorted(graph.out_neighbors_idx(i) - {i}) for i in range(n)]
    in_lists = [sorted(graph.in_neighbors_idx(i) - {i}) for i in range(n)]
    for i in range(n):
        out_start[i + 1] = out_start[i] + len(out_lists[i])
        in_start[i + 1] = in_start[i] + len(in_lists[i])
    out_data = np.array([w for lst in out_lists for w in lst], dtype=np.int64)
    in_data = np.array([w for lst in in_lists for w in lst], dtype=np.int64)
    return out_start, out_data, in_start, in_data


def _run_anneal(graph, target, cfg, seed, trace_every):
    adj, src, dst = _kernel_arrays(graph, include_self_loop_edges=False)
    frozen = [u for u, v in graph.edge_index_pairs() if u == v]
    out_start, out_data, in_start, in_data = _csr_neighbors(graph)
    counts = np.array(census_counts16(graph), dtype=np.int64)
    target16 = np.zeros(16, dtype=np.int64)
    for i, cls in enumerate(ALL_TRIAD_CLASSES):
        target16[i] = target.get(cls, 0)
    mutual_state = np.array([mutual_dyad_count(graph)], dtype=np.int64)
    if MUTUAL_DYAD_CLASS in target:
        mutual_target = int(target[MUTUAL_DYAD_CLASS])
        mutual_weight = 1
    else:
        mutual_target = 0
        mutual_weight = 0
    ann = cfg.anneal
    n_trace = max(2, ann.max_iterations // trace_every + 2) if trace_every else 2
    trace = np.full(n_trace, -1, dtype=np.int64)
    energy, best, accepted, iterations = anneal_kernel(
        adj,
        src,
        dst,
        out_start,
        out_data,
        in_start,
        in_data,
        counts,
        target16,
        _CONNECTED_MASK16,
        _CLASS_OF_CODE6,
        mutual_state,
        mutual_target,
        mutual_weight,
        ann.initial_temperature,
        ann.cooling_factor,
        ann.max_iterations,
        ann.target_residual,
        ann.reheat_stall,
        (seed & _SEED_MASK),
        trace_every,
        trace,
    )
    out = _graph_from_arrays(graph, src, dst, frozen)
    trace = trace[trace >= 0]
    return AnnealResult(
        graph=out,
        residual=int(energy),
        best_residual=int(best),
        accepted=int(accepted),
        iterations=int(iterations),
        trace=trace,
    )


def anneal_to_census(g_random, target, cfg, seed):
    """Anneal g_random toward the target census; returns (graph, residual).

    The energy is the summed absolute census distance over the 13 connected
    triad classes plus the mutual-dyad count when the target includes it
    (self-loop counts are frozen and contribute nothing). Residual 0 means
    every subgraph frequency up to 3 nodes matches the target exactly.
    """
    res = _run_anneal(g_random, target, cfg, seed, trace_every=0)
    return res.graph, res.residual


def anneal_to_census_detailed(g_random, target, cfg, seed, trace_every=1000):
    """As anneal_to_census but returning the full AnnealResult with a
    best-so-far energy trace (non-increasing by construction)."""
    return _run_anneal(g_random, target, cfg, seed, trace_every=trace_every)


def _make_member(graph, target, cfg, index):
    member_seed = cfg.rng_seed + index
    best = None
    for round_no in range(cfg.max_restarts + 1):
        salt = round_no * 0x51B593A5
        mixed = rewire_degree_preserving(graph, cfg, member_seed + salt)
        res = _run_anneal(
            mixed, target, cfg, (member_seed ^ _ANNEAL_SEED_SALT) + salt, trace_every=0
        )
        if best is None or res.residual < best.residual:
            best = res
        if best.residual <= cfg.anneal.target_residual:
            break
    return best


def generate_ensemble_detailed(graph, cfg, jobs=1):
    """ensemble_size annealed members; returns (graphs, residuals).

    Deterministic given cfg.rng_seed regardless of jobs: member i always uses
    seed rng_seed + i and results merge in index order.
    """
    from .census import subgraph_census_upto3

    target = subgraph_census_upto3(graph)
    indices = range(cfg.ensemble_size)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda i: _make_member(graph, target, cfg, i), indices))
    else:
        results = [_make_member(graph, target, cfg, i) for i in indices]
    graphs = [r.graph for r in results]
    residuals = [r.residual for r in results]
    return graphs, residuals


def generate_ensemble(graph, cfg, jobs=1):
    """ensemble_size graphs, each independently rewired then annealed."""
    graphs, _ = generate_ensemble_detailed(graph, cfg, jobs=jobs)
    return graphs


def generate_motif_null_ensemble(graph, n_members, cfg, seed, jobs=1):
    """Degree-preserving ensemble for motif identification.

    Unlike the census-preserving ensemble, self-loops are randomized here
    (a frozen self-loop distribution could never make the self-loop motif
    significant). Member i uses seed + i.
    """

    def make(i):
        return rewire_with_free_self_loops(graph, cfg, seed + i)

    indices = range(n_members)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(make, indices))
    return [make(i) for i in indices]
