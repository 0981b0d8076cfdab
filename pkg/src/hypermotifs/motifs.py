"""Canonical forms, isomorphism classes and role orbits for small directed patterns.

A pattern on n positions is a set of ordered pairs (i, j) with 0 <= i, j < n;
(i, i) is a self-loop. Patterns are encoded as integers with bit i*n + j set
for each edge (row-major adjacency bits). The canonical code of a pattern is
the minimum code over all n! relabelings, so it is a unique key per
isomorphism class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "MotifClass",
    "RoleOrbit",
    "pattern_code",
    "code_edges",
    "permute_code",
    "canonical_code",
    "canonicalize",
    "is_connected_pattern",
    "canonical_class",
    "motif_class_from_edges",
    "role_orbits",
    "named_motif",
    "NAMED_MOTIFS",
    "TRIAD_BITS",
    "triad_code6",
    "TRIAD_CANON9",
    "TRIAD_CONNECTED",
    "TRIAD_CLASS_INDEX",
    "TRIAD_PERM_INDEX",
    "TRIAD_PERMS",
    "ALL_TRIAD_CLASSES",
    "CONNECTED_TRIAD_CLASSES",
    "SELF_LOOP_CLASS",
]


def pattern_code(n, edges):
    """Integer encoding of an edge set over n positions."""
    code = 0
    for i, j in edges:
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge ({i},{j}) out of range for size {n}")
        code |= 1 << (i * n + j)
    return code


def code_edges(n, code):
    """Decode an integer pattern code back to a sorted list of edges."""
    return [(i, j) for i in range(n) for j in range(n) if code >> (i * n + j) & 1]


def permute_code(n, code, perm):
    """Relabel positions: position p of the input becomes perm[p]."""
    out = 0
    for i in range(n):
        for j in range(n):
            if code >> (i * n + j) & 1:
                out |= 1 << (perm[i] * n + perm[j])
    return out


def canonical_code(n, code):
    """Minimum code over all relabelings (unique per isomorphism class)."""
    return min(permute_code(n, code, p) for p in itertools.permutations(range(n)))


def canonicalize(n, code):
    """Return (canonical code, a permutation mapping input positions to canonical ones)."""
    best = None
    best_perm = None
    for p in itertools.permutations(range(n)):
        c = permute_code(n, code, p)
        if best is None or c < best:
            best, best_perm = c, p
    return best, best_perm


def is_connected_pattern(n, code):
    """Weak connectivity of the pattern's undirected support."""
    if n == 1:
        return True
    adj = [set() for _ in range(n)]
    for i, j in code_edges(n, code):
        if i != j:
            adj[i].add(j)
            adj[j].add(i)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


@dataclass(frozen=True, order=True)
class MotifClass:
    """Isomorphism class of a small directed pattern.

    size: number of positions (1 for the self-loop motif, 3 for triads).
    code: canonical integer code (row-major adjacency bits, diagonal = self-loops).
    connected: weak connectivity of the canonical pattern.
    """

    size: int
    code: int
    connected: bool

    @property
    def edges(self):
        return code_edges(self.size, self.code)

    @property
    def n_edges(self):
        return len(self.edges)

    def __repr__(self):
        return f"MotifClass(size={self.size}, code={self.code})"


def motif_class_from_edges(n, edges):
    """Build the MotifClass of an arbitrary small pattern given as edge pairs."""
    code = canonical_code(n, pattern_code(n, edges))
    return MotifClass(size=n, code=code, connected=is_connected_pattern(n, code))


def canonical_class(adjacency):
    """Isomorphism class of a 3-node off-diagonal adjacency pattern.

    `adjacency` is a 3x3 nested sequence of booleans; diagonal entries are
    ignored (self-loops are a separate size-1 motif).
    """
    edges = [
        (i, j)
        for i in range(3)
        for j in range(3)
        if i != j and adjacency[i][j]
    ]
    return motif_class_from_edges(3, edges)


@dataclass(frozen=True, order=True)
class RoleOrbit:
    """One automorphism orbit of positions within a motif's canonical form."""

    motif_class: MotifClass
    orbit_index: int
    member_positions: frozenset

    def __repr__(self):
        pos = sorted(self.member_positions)
        return (
            f"RoleOrbit(size={self.motif_class.size}, class={self.motif_class.code}, "
            f"orbit={self.orbit_index}, positions={pos})"
        )


@lru_cache(maxsize=None)
def role_orbits(motif_class):
    """Automorphism orbits of the motif's positions, ordered by smallest member.

    Positions in one orbit are mapped onto each other by some automorphism of
    the canonical pattern, i.e. they play interchangeable roles.
    """
    n, code = motif_class.size, motif_class.code
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in itertools.permutations(range(n)):
        if permute_code(n, code, perm) == code:
            for p in range(n):
                a, b = find(p), find(perm[p])
                if a != b:
                    parent[a] = b
    groups = {}
    for p in range(n):
        groups.setdefault(find(p), set()).add(p)
    ordered = sorted(groups.values(), key=min)
    return tuple(
        RoleOrbit(motif_class=motif_class, orbit_index=i, member_positions=frozenset(g))
        for i, g in enumerate(ordered)
    )


# --- named motifs used by the CLI, combinatorics and tests -------------------

def _named(n, edges):
    return motif_class_from_edges(n, edges)


SELF_LOOP_CLASS = _named(1, [(0, 0)])

NAMED_MOTIFS = {
    # 1-node
    "sl": SELF_LOOP_CLASS,
    "self-loop": SELF_LOOP_CLASS,
    # 2-node
    "dyad": _named(2, [(0, 1), (1, 0)]),
    "mutual": _named(2, [(0, 1), (1, 0)]),
    "feedback": _named(2, [(0, 1), (1, 0)]),
    # 3-node
    "ffl": _named(3, [(0, 1), (0, 2), (1, 2)]),
    "cycle3": _named(3, [(0, 1), (1, 2), (2, 0)]),
    "loop3": _named(3, [(0, 1), (1, 2), (2, 0)]),
    "chain3": _named(3, [(0, 1), (1, 2)]),
    "cascade": _named(3, [(0, 1), (1, 2)]),
    "fan-out": _named(3, [(0, 1), (0, 2)]),
    "v-out": _named(3, [(0, 1), (0, 2)]),
    "fan-in": _named(3, [(0, 2), (1, 2)]),
    "v-in": _named(3, [(0, 2), (1, 2)]),
}


def named_motif(name):
    """Look up a motif class by name, 'code:<size>:<int>' or edge list '0>1,1>2'."""
    key = name.strip().lower()
    if key in NAMED_MOTIFS:
        return NAMED_MOTIFS[key]
    if key.startswith("code:"):
        try:
            _, size_s, code_s = key.split(":")
            n, code = int(size_s), int(code_s)
        except ValueError:
            raise ValueError(f"bad motif code spec {name!r}; expected code:<size>:<int>")
        canon = canonical_code(n, code)
        return MotifClass(size=n, code=canon, connected=is_connected_pattern(n, canon))
    if ">" in key:
        edges = []
        for part in key.split(","):
            try:
                a, b = part.split(">")
                edges.append((int(a), int(b)))
            except ValueError:
                raise ValueError(f"bad edge spec {part!r} in motif {name!r}")
        n = max(max(i, j) for i, j in edges) + 1
        return motif_class_from_edges(n, edges)
    raise ValueError(
        f"unknown motif {name!r}; known names: {sorted(set(NAMED_MOTIFS))}"
    )


# --- precomputed triad tables -------------------------------------------------
#
# Compact 6-bit triad codes index the off-diagonal entries of a 3x3 adjacency
# in the fixed order (0,1),(0,2),(1,0),(1,2),(2,0),(2,1). The tables below map
# each of the 64 patterns to its canonical 9-bit class code, connectivity,
# class index and a canonicalizing permutation; they drive the census and the
# role assignment.

TRIAD_BITS = ((0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1))
TRIAD_PERMS = tuple(itertools.permutations(range(3)))


def triad_code6(has_edge):
    """6-bit code from a callable has_edge(i, j) over positions 0..2."""
    c = 0
    for b, (i, j) in enumerate(TRIAD_BITS):
        if has_edge(i, j):
            c |= 1 << b
    return c


def _code6_to_code9(c6):
    code9 = 0
    for b, (i, j) in enumerate(TRIAD_BITS):
        if c6 >> b & 1:
            code9 |= 1 << (i * 3 + j)
    return code9


def _build_triad_tables():
    canon9 = [0] * 64
    connected = [False] * 64
    perm_index = [0] * 64
    for c6 in range(64):
        code9 = _code6_to_code9(c6)
        best, best_pi = None, 0
        for pi, perm in enumerate(TRIAD_PERMS):
            cand = permute_code(3, code9, perm)
            if best is None or cand < best:
                best, best_pi = cand, pi
        canon9[c6] = best
        perm_index[c6] = best_pi
        connected[c6] = is_connected_pattern(3, code9)
    class_codes = sorted(set(canon9))
    idx_of = {c: i for i, c in enumerate(class_codes)}
    class_index = [idx_of[canon9[c6]] for c6 in range(64)]
    return tuple(canon9), tuple(connected), tuple(class_index), tuple(perm_index), class_codes


(
    TRIAD_CANON9,
    TRIAD_CONNECTED,
    TRIAD_CLASS_INDEX,
    TRIAD_PERM_INDEX,
    _TRIAD_CLASS_CODES,
) = _build_triad_tables()

ALL_TRIAD_CLASSES = tuple(
    MotifClass(size=3, code=c, connected=is_connected_pattern(3, c))
    for c in _TRIAD_CLASS_CODES
)
CONNECTED_TRIAD_CLASSES = tuple(m for m in ALL_TRIAD_CLASSES if m.connected)
