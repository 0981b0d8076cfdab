"""Random-walk downsampling for large (word-adjacency-style) networks.

The sampler builds a node list s of length sz in three equal segments: each
step walks to a neighbor of the previous node with probability
walk_probability, otherwise jumps to a neighbor of the anchor node s0. After
the first and second segment, if too few unique nodes were collected
(< (sz/3)/2 and < sz/3 respectively), a fresh anchor is drawn. The sampled
graph is the induced subgraph on the unique node list; a good sample has a
similar degree distribution and the same significant motifs as the original.

Neighborhoods are the union of in- and out-neighbors (a self-loop makes a
node its own neighbor), so walks do not dead-end in DAG-like networks.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .graph import DirectedGraph, GraphError

logger = logging.getLogger(__name__)

__all__ = ["DownsampleConfig", "DownsampleReport", "downsample", "validate_downsample"]

_ANCHOR_RETRY_BUDGET = 50


@dataclass(frozen=True)
class DownsampleConfig:
    sz: int
    walk_probability: float = 0.85
    rng_seed: int = 0

    def __post_init__(self):
        if self.sz < 3:
            raise ValueError("sz must be >= 3")
        if not 0.0 < self.walk_probability < 1.0:
            raise ValueError("walk_probability must be in (0, 1)")


def _neighbor_lists(graph):
    # sorted for determinism; self-loop keeps the node in its own neighborhood
    out = []
    for i in range(graph.n_nodes):
        nb = set(graph.out_neighbors_idx(i)) | set(graph.in_neighbors_idx(i))
        out.append(sorted(nb))
    return out

def _draw_anchor(rng, neighbors, n, retries_left):
    while retries_left > 0:
        retries_left -= 1
        s0 = int(rng.integers(0, n))
        if neighbors[s0]:
            return s0, retries_left
    raise GraphError(
        f"could not find a start node with a nonempty neighborhood in "
        f"{_ANCHOR_RETRY_BUDGET} draws"
    )


def downsample(graph, cfg):
    """Sample an induced subgraph via an anchored random walk (deterministic per seed)."""
    rng = np.random.default_rng(cfg.rng_seed)
    n = graph.n_nodes
    neighbors = _neighbor_lists(graph)
    retries = _ANCHOR_RETRY_BUDGET
    s0, retries = _draw_anchor(rng, neighbors, n, retries)

    sz = cfg.sz
    m1, m2 = sz // 3, (2 * sz) // 3
    nb0 = neighbors[s0]
    s = [s0, nb0[int(rng.integers(0, len(nb0)))]]
    unique = set(s)

    while len(s) < sz:
        filled = len(s)
        if filled == m1 and len(unique) < m1 / 2:
            s0, retries = _draw_anchor(rng, neighbors, n, retries)
        elif filled == m2 and len(unique) < m1:
            s0, retries = _draw_anchor(rng, neighbors, n, retries)
        if rng.random() < cfg.walk_probability:
            pool = neighbors[s[-1]]
        else:
            pool = neighbors[s0]
        if not pool:
            pool = neighbors[s0]
        nxt = pool[int(rng.integers(0, len(pool)))]
        s.append(nxt)
        unique.add(nxt)

    if len(unique) < min(m1, n):
        logger.warning(
            "downsample collected only %d unique nodes (target list %d); "
            "the walk may be confined to a small component",
            len(unique),
            sz,
        )
    keep = {graph.node_ids[i] for i in unique}
    return graph.induced_subgraph(keep)


@dataclass
class DownsampleReport:
    ks_distance: float
    motif_classes_full: tuple
    motif_classes_sample: tuple
    same_significant_motifs: bool


def _total_degrees(graph):
    return np.array(
        [
            len(graph.out_neighbors_idx(i)) + len(graph.in_neighbors_idx(i))
            for i in range(graph.n_nodes)
        ],
        dtype=float,
    )


def ks_distance(sample_a, sample_b):
    """Two-sample Kolmogorov-Smirnov distance between empirical distributions."""
    a = np.sort(np.asarray(sample_a, dtype=float))
    b = np.sort(np.asarray(sample_b, dtype=float))
    grid = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, grid, side="right") / a.size
    cdf_b = np.searchsorted(b, grid, side="right") / b.size
    return float(np.max(np.abs(cdf_a - cdf_b)))


def validate_downsample(graph, sampled, ensemble_size=20, z_threshold=2.0, seed=0):
    """Compare degree distribution and significant motif classes of a sample.

    `sampled` must be an induced subgraph of `graph`. Motif significance on
    each side uses its own degree-preserving (self-loop-randomizing) ensemble.
    """
    from .census import find_motifs
    from .nullmodels import NullModelConfig, generate_motif_null_ensemble

    id_set = set(graph.node_ids)
    for v in sampled.node_ids:
        if v not in id_set:
            raise GraphError(f"sampled node {v!r} is not in the original graph")
    expected = graph.induced_subgraph(set(sampled.node_ids))
    if set(expected.edges()) != set(sampled.edges()):
        raise GraphError("sampled graph is not an induced subgraph of the original")

    ks = ks_distance(_total_degrees(graph), _total_degrees(sampled))

    cfg = NullModelConfig(ensemble_size=max(2, ensemble_size), rng_seed=seed)
    ens_full = generate_motif_null_ensemble(graph, cfg.ensemble_size, cfg, seed)
    ens_samp = generate_motif_null_ensemble(sampled, cfg.ensemble_size, cfg, seed + 1)
    motifs_full = tuple(cls for cls, _ in find_motifs(graph, ens_full, z_threshold))
    motifs_samp = tuple(cls for cls, _ in find_motifs(sampled, ens_samp, z_threshold))
    return DownsampleReport(
        ks_distance=ks,
        motif_classes_full=motifs_full,
        motif_classes_sample=motifs_samp,
        same_significant_motifs=set(motifs_full) == set(motifs_samp),
    )
