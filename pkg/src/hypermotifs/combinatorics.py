"""Counting and enumeration of motif combinations and interactions.

A *combination* joins two motifs by identifying N_v nodes (1 <= N_v <
min(n_A, n_B), with the 1-node self-loop motif allowed to attach its single
node); the merged core keeps both motifs as induced subgraphs on their
positions. An *interaction* links two node-disjoint motifs with directed
edges between them; the number of labeled interaction topologies is
2^(2 n_A n_B) for directed networks (including the empty linkage). Extensions
of a core add any subset of edges between node pairs that do not co-reside in
a single motif.

Merged topologies are deduplicated by canonical labeling of the
origin-colored digraph (colors: shared / A-only / B-only); when both motifs
belong to the same class the A/B coloring is forgotten (swap-symmetric).
Labeled counts deliberately follow the 2^k formulas, which do not
de-duplicate isomorphs; separate unique counts are offered for small sizes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .motifs import MotifClass

__all__ = [
    "CombinationTopology",
    "InteractionCount",
    "max_shared_nodes",
    "count_interaction_topologies",
    "count_unique_interaction_topologies",
    "enumerate_core_combinations",
    "enumerate_extensions",
    "eligible_extension_pairs",
    "unique_extension_count",
    "ExtensionBucket",
    "count_extension_frequencies",
    "combination_to_json",
]

_COLOR_SHARED, _COLOR_A, _COLOR_B = 0, 1, 2


def max_shared_nodes(n_a, n_b):
    """N_V,max = min(n_A, n_B) - 1; 0 means no combination is possible."""
    if n_a < 1 or n_b < 1:
        raise ValueError("motif sizes must be >= 1")
    return min(n_a, n_b) - 1


def _effective_nv_max(n_a, n_b):
    # the 1-node self-loop motif attaches via its single node even though the
    # strict formula yields 0
    if min(n_a, n_b) == 1:
        return 1 if max(n_a, n_b) > 1 else 0
    return max_shared_nodes(n_a, n_b)


@dataclass(frozen=True)
class InteractionCount:
    labeled_total: int  # includes the empty linkage
    labeled_nonempty: int
    max_linking_edges: int


def count_interaction_topologies(n_a, n_b, directed=True):
    """Labeled interaction topology counts: 2^(2 n_a n_b) directed, 2^(n_a n_b) undirected."""
    if n_a < 1 or n_b < 1:
        raise ValueError("motif sizes must be >= 1")
    slots = 2 * n_a * n_b if directed else n_a * n_b
    total = 1 << slots
    return InteractionCount(
        labeled_total=total,
        labeled_nonempty=total - 1,
        max_linking_edges=slots,
    )


@dataclass(frozen=True)
class CombinationTopology:
    """A deduplicated core topology of two motifs sharing N_v nodes.

    Nodes 0..n_a-1 are motif A's canonical positions; B's unshared positions
    follow. `sharing` maps A positions to B positions; `edges` is the merged
    edge set (self-loops included); `edge_origins` tags each edge 'a', 'b' or
    'both'.
    """

    motif_a: MotifClass
    motif_b: MotifClass
    sharing: tuple  # ((pos_a, pos_b), ...) sorted
    n_nodes: int
    edges: frozenset
    origins: tuple  # per-node: 'shared' | 'a' | 'b'
    edge_origins: tuple  # ((u, v, origin), ...) sorted

    @property
    def n_v(self):
        return len(self.sharing)

    def nodes_of(self, origin):
        return tuple(i for i, o in enumerate(self.origins) if o == origin)


def _colored_canonical_key(n, edges, colors):
    """Minimal (color-sequence, adjacency-code) over all node relabelings."""
    best = None
    for perm in itertools.permutations(range(n)):
        code = 0
        for i, j in edges:
            code |= 1 << (perm[i] * n + perm[j])
        key = (tuple(colors[i] for i in sorted(range(n), key=lambda x: perm[x])), code)
        if best is None or key < best:
            best = key
    return best


def _core_key(n, edges, origins, swap_symmetric):
    colors = [
        _COLOR_SHARED if o == "shared" else (_COLOR_A if o == "a" else _COLOR_B)
        for o in origins
    ]
    key = _colored_canonical_key(n, edges, colors)
    if swap_symmetric:
        swapped = [
            _COLOR_SHARED if c == _COLOR_SHARED else (_COLOR_B if c == _COLOR_A else _COLOR_A)
            for c in colors
        ]
        key = min(key, _colored_canonical_key(n, edges, swapped))
    return key


def enumerate_core_combinations(motif_a, motif_b):
    """All non-isomorphic core topologies over every valid node sharing.

    Sharings must be partial isomorphisms: within the shared node set the two
    motifs' off-diagonal patterns must agree, so each motif stays an induced
    subgraph of the merged core (self-loops are tracked separately and union
    freely, matching the census semantics).
    """
    n_a, n_b = motif_a.size, motif_b.size
    nv_max = _effective_nv_max(n_a, n_b)
    if nv_max < 1:
        return []
    a_edges = set(motif_a.edges)
    b_edges = set(motif_b.edges)
    same_class = motif_a == motif_b
    found = {}
    for nv in range(1, nv_max + 1):
        for s_pos in itertools.combinations(range(n_a), nv):
            for t_pos in itertools.permutations(range(n_b), nv):
                phi = dict(zip(s_pos, t_pos))
                if not _sharing_consistent(a_edges, b_edges, phi):
                    continue
                core = _build_core(motif_a, motif_b, phi)
                key = _core_key(core.n_nodes, core.edges, core.origins, same_class)
                if key not in found:
                    found[key] = core
    return [found[k] for k in sorted(found)]


def _sharing_consistent(a_edges, b_edges, phi):
    for u in phi:
        for v in phi:
            if u == v:
                continue
            if ((u, v) in a_edges) != ((phi[u], phi[v]) in b_edges):
                return False
    return True


def _build_core(motif_a, motif_b, phi):
    n_a, n_b = motif_a.size, motif_b.size
    shared_b = set(phi.values())
    b_map = {}
    nxt = n_a
    for pb in range(n_b):
        if pb in shared_b:
            pa = next(a for a, b in phi.items() if b == pb)
            b_map[pb] = pa
        else:
            b_map[pb] = nxt
            nxt += 1
    n = nxt
    origins = []
    for i in range(n):
        if i < n_a:
            origins.append("shared" if i in phi else "a")
        else:
            origins.append("b")
    edge_origin = {}
    for u, v in motif_a.edges:
        edge_origin[(u, v)] = "a"
    for u, v in motif_b.edges:
        e = (b_map[u], b_map[v])
        edge_origin[e] = "both" if e in edge_origin else "b"
    return CombinationTopology(
        motif_a=motif_a,
        motif_b=motif_b,
        sharing=tuple(sorted(phi.items())),
        n_nodes=n,
        edges=frozenset(edge_origin),
        origins=tuple(origins),
        edge_origins=tuple(sorted((u, v, o) for (u, v), o in edge_origin.items())),
    )


def eligible_extension_pairs(core):
    """Ordered node pairs that may receive an extra edge: A-only x B-only."""
    a_only = core.nodes_of("a")
    b_only = core.nodes_of("b")
    pairs = [(u, v) for u in a_only for v in b_only]
    pairs += [(v, u) for u in a_only for v in b_only]
    return sorted(pairs)


def enumerate_extensions(core):
    """Every digraph obtained by adding a subset of eligible edges to the core.

    Returns labeled edge sets (the core itself first); their count is
    2^(eligible ordered pairs) and they are pairwise distinct as labeled
    graphs.
    """
    pairs = eligible_extension_pairs(core)
    out = []
    for r in range(len(pairs) + 1):
        for added in itertools.combinations(pairs, r):
            out.append(frozenset(core.edges | set(added)))
    return out


def unique_extension_count(core):
    """Number of extension topologies distinct up to origin-colored isomorphism."""
    same_class = core.motif_a == core.motif_b
    keys = {
        _core_key(core.n_nodes, edges, core.origins, same_class)
        for edges in enumerate_extensions(core)
    }
    return len(keys)


def count_unique_interaction_topologies(n_a, n_b, directed=True, max_slots=10):
    """Interaction topologies distinct up to relabeling inside each side.

    Exhaustive over all linkings, so it is limited to 2 n_a n_b <= max_slots;
    the labeled formula remains available for any size.
    """
    slots = 2 * n_a * n_b if directed else n_a * n_b
    if slots > max_slots:
        raise ValueError(
            f"unique interaction enumeration limited to {max_slots} edge slots, got {slots}"
        )
    pairs = [(u, n_a + v) for u in range(n_a) for v in range(n_b)]
    if directed:
        pairs += [(n_a + v, u) for u in range(n_a) for v in range(n_b)]
    n = n_a + n_b
    colors = [_COLOR_A] * n_a + [_COLOR_B] * n_b
    keys = set()
    for r in range(len(pairs) + 1):
        for chosen in itertools.combinations(pairs, r):
            keys.add(_colored_canonical_key(n, list(chosen), colors))
    return len(keys)


# --- occurrence counting in a real graph --------------------------------------

def _occurrences_of_class(graph, cls):
    """Induced occurrences of cls as node-index tuples keyed by canonical position."""
    from .census import _iter_connected_triples
    from .motifs import (
        ALL_TRIAD_CLASSES,
        TRIAD_CLASS_INDEX,
        TRIAD_PERM_INDEX,
        TRIAD_PERMS,
        motif_class_from_edges,
    )

    occs = []
    if cls.size == 1:
        for i in range(graph.n_nodes):
            if graph.has_edge_idx(i, i):
                occs.append((i,))
        return occs
    if cls.size == 2:
        for u in range(graph.n_nodes):
            for v in graph.union_neighbors_idx(u) - {u}:
                if v < u:
                    continue
                pattern = []
                if graph.has_edge_idx(u, v):
                    pattern.append((0, 1))
                if graph.has_edge_idx(v, u):
                    pattern.append((1, 0))
                if motif_class_from_edges(2, pattern) == cls:
                    occs.append((u, v))
        return occs
    if cls.size == 3:
        idx_of = {c: i for i, c in enumerate(ALL_TRIAD_CLASSES)}
        want = idx_of[cls]
        for t0, t1, t2, code6 in _iter_connected_triples(graph):
            if TRIAD_CLASS_INDEX[code6] != want:
                continue
            perm = TRIAD_PERMS[TRIAD_PERM_INDEX[code6]]
            nodes_by_canon = [0, 0, 0]
            for p, node in enumerate((t0, t1, t2)):
                nodes_by_canon[perm[p]] = node
            occs.append(tuple(nodes_by_canon))
        return occs
    raise ValueError(f"occurrence counting supports sizes 1-3, got {cls.size}")


def _automorphisms(cls):
    from .motifs import permute_code

    n, code = cls.size, cls.code
    return [
        perm
        for perm in itertools.permutations(range(n))
        if permute_code(n, code, perm) == code
    ]


@dataclass
class ExtensionBucket:
    representative_edges: frozenset  # over the core's node indexing
    n_added_edges: int
    is_core: bool
    count: int


def count_extension_frequencies(graph, core):
    """Histogram of a core combination's occurrences over its extensions.

    Every pair of induced motif occurrences overlapping exactly per the core's
    sharing map is one occurrence; it lands in the bucket of the extension
    isomorphic to the induced subgraph on the merged node set (extra edges can
    only join A-only with B-only nodes, so buckets partition occurrences).
    Self-loops other than those owned by the motifs are ignored, matching the
    census treatment of autoregulation as a separate motif.
    """
    if core.n_nodes > 6:
        raise ValueError("extension counting is limited to cores of at most 6 nodes")
    cls_a, cls_b = core.motif_a, core.motif_b
    same_class = cls_a == cls_b
    occ_a = _occurrences_of_class(graph, cls_a)
    occ_b = occ_a if same_class else _occurrences_of_class(graph, cls_b)
    aut_a = _automorphisms(cls_a)
    aut_b = _automorphisms(cls_b)

    by_node = {}
    for oi, occ in enumerate(occ_b):
        for node in occ:
            by_node.setdefault(node, []).append(oi)

    sharing = dict(core.sharing)
    nv = len(sharing)
    seen = set()
    matched = []  # (occ_a nodes-by-canon, occ_b nodes-by-canon) realizing the sharing
    for occ1 in occ_a:
        set1 = frozenset(occ1)
        candidates = set()
        for node in occ1:
            candidates.update(by_node.get(node, ()))
        for oi in candidates:
            occ2 = occ_b[oi]
            set2 = frozenset(occ2)
            if set1 == set2:
                continue
            if len(set1 & set2) != nv:
                continue
            pair_key = frozenset((set1, set2)) if same_class else (set1, set2)
            if pair_key in seen:
                continue
            emb = _find_embedding(occ1, occ2, aut_a, aut_b, sharing)
            if emb is None:
                continue
            seen.add(pair_key)
            matched.append(emb)

    # map extension edge-sets to iso-class buckets
    buckets = {}
    order = {}
    for rank, edges in enumerate(enumerate_extensions(core)):
        key = _core_key(core.n_nodes, edges, core.origins, same_class)
        if key not in buckets:
            buckets[key] = ExtensionBucket(
                representative_edges=edges,
                n_added_edges=len(edges - core.edges),
                is_core=(edges == frozenset(core.edges)),
                count=0,
            )
            order[key] = rank

    motif_loops = {(u, u) for u, v in core.edges if u == v}
    for nodes_a, nodes_b in matched:
        node_of = _merged_nodes(core, nodes_a, nodes_b)
        edges = set()
        for i in range(core.n_nodes):
            for j in range(core.n_nodes):
                if i == j and (i, i) not in motif_loops:
                    continue
                if graph.has_edge_idx(node_of[i], node_of[j]):
                    edges.add((i, j))
        key = _core_key(core.n_nodes, frozenset(edges), core.origins, same_class)
        if key not in buckets:
            raise AssertionError("occurrence does not match any extension bucket")
        buckets[key].count += 1

    return [buckets[k] for k in sorted(buckets, key=lambda k: order[k])]


def _find_embedding(occ1, occ2, aut_a, aut_b, sharing):
    """Node tuples (by canonical position, automorphism-adjusted) realizing the
    sharing map, or None."""
    for pa in aut_a:
        a_nodes = tuple(occ1[pa[p]] for p in range(len(occ1)))
        for pb in aut_b:
            b_nodes = tuple(occ2[pb[p]] for p in range(len(occ2)))
            ok = True
            for i, j in sharing.items():
                if a_nodes[i] != b_nodes[j]:
                    ok = False
                    break
            if ok:
                shared_nodes = {a_nodes[i] for i in sharing}
                if set(a_nodes) & set(b_nodes) == shared_nodes:
                    return a_nodes, b_nodes
    return None


def _merged_nodes(core, nodes_a, nodes_b):
    """Graph node index for each core node index."""
    n_a = core.motif_a.size
    node_of = [0] * core.n_nodes
    for pos in range(n_a):
        node_of[pos] = nodes_a[pos]
    b_map = {}
    nxt = n_a
    shared_b = {j for _, j in core.sharing}
    for pb in range(core.motif_b.size):
        if pb not in shared_b:
            b_map[pb] = nxt
            nxt += 1
    for pb, idx in b_map.items():
        node_of[idx] = nodes_b[pb]
    return node_of


def combination_to_json(core):
    """JSON-friendly description with position provenance per node and edge."""
    n_a = core.motif_a.size
    shared_b = dict((a, b) for a, b in core.sharing)
    node_provenance = []
    b_positions = {}
    nxt = n_a
    for pb in range(core.motif_b.size):
        if pb in {j for _, j in core.sharing}:
            continue
        b_positions[nxt] = pb
        nxt += 1
    for i, origin in enumerate(core.origins):
        entry = {"node": i, "origin": origin}
        if origin in ("a", "shared"):
            entry["position_a"] = i
        if origin == "shared":
            entry["position_b"] = shared_b[i]
        if origin == "b":
            entry["position_b"] = b_positions[i]
        node_provenance.append(entry)
    return {
        "motif_a": {"size": core.motif_a.size, "code": core.motif_a.code},
        "motif_b": {"size": core.motif_b.size, "code": core.motif_b.code},
        "n_shared": core.n_v,
        "sharing": [{"a": a, "b": b} for a, b in core.sharing],
        "n_nodes": core.n_nodes,
        "nodes": node_provenance,
        "edges": [
            {"source": u, "target": v, "origin": o} for u, v, o in core.edge_origins
        ],
    }
