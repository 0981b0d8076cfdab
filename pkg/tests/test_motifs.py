import itertools

import pytest

from hypermotifs.motifs import (
    ALL_TRIAD_CLASSES,
    CONNECTED_TRIAD_CLASSES,
    NAMED_MOTIFS,
    SELF_LOOP_CLASS,
    canonical_class,
    canonical_code,
    motif_class_from_edges,
    named_motif,
    pattern_code,
    permute_code,
    role_orbits,
)


def adj_from_code6(c6):
    bits = ((0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1))
    adj = [[False] * 3 for _ in range(3)]
    for b, (i, j) in enumerate(bits):
        if c6 >> b & 1:
            adj[i][j] = True
    return adj


def test_exactly_16_classes_13_connected():
    classes = {canonical_class(adj_from_code6(c6)) for c6 in range(64)}
    assert len(classes) == 16
    assert sum(1 for c in classes if c.connected) == 13
    assert classes == set(ALL_TRIAD_CLASSES)


def test_canonical_invariant_under_all_relabelings():
    for c6 in range(64):
        adj = adj_from_code6(c6)
        cls = canonical_class(adj)
        for perm in itertools.permutations(range(3)):
            padj = [[False] * 3 for _ in range(3)]
            for i in range(3):
                for j in range(3):
                    if i != j and adj[i][j]:
                        padj[perm[i]][perm[j]] = True
            assert canonical_class(padj) == cls


def test_ffl_relabelings_one_class():
    base = [[False, True, True], [False, False, True], [False, False, False]]
    cls = canonical_class(base)
    assert cls == NAMED_MOTIFS["ffl"]
    assert cls.connected


def test_empty_triad_disconnected():
    cls = canonical_class([[False] * 3 for _ in range(3)])
    assert not cls.connected
    assert cls.code == 0


def test_canonical_code_is_minimum():
    for c6 in range(64):
        edges = [
            (i, j)
            for b, (i, j) in enumerate(((0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)))
            if c6 >> b & 1
        ]
        code = pattern_code(3, edges)
        canon = canonical_code(3, code)
        assert canon == min(
            permute_code(3, code, p) for p in itertools.permutations(range(3))
        )


def test_ffl_orbits_are_input_intermediate_output():
    orbits = role_orbits(NAMED_MOTIFS["ffl"])
    assert [sorted(o.member_positions) for o in orbits] == [[0], [1], [2]]


def test_self_loop_single_orbit():
    orbits = role_orbits(SELF_LOOP_CLASS)
    assert len(orbits) == 1
    assert orbits[0].member_positions == frozenset({0})


def test_cycle_orbit_fully_symmetric():
    orbits = role_orbits(NAMED_MOTIFS["cycle3"])
    assert len(orbits) == 1
    assert orbits[0].member_positions == frozenset({0, 1, 2})


def test_mutual_dyad_with_spoke_symmetric_positions_share_orbit():
    # x <-> y plus z -> x and z -> y: swapping x and y is an automorphism
    cls = motif_class_from_edges(3, [(0, 1), (1, 0), (2, 0), (2, 1)])
    orbits = role_orbits(cls)
    sizes = sorted(len(o.member_positions) for o in orbits)
    assert sizes == [1, 2]


def test_fan_out_symmetric_targets():
    orbits = role_orbits(NAMED_MOTIFS["fan-out"])
    sizes = sorted(len(o.member_positions) for o in orbits)
    assert sizes == [1, 2]


def test_orbits_partition_positions():
    for cls in CONNECTED_TRIAD_CLASSES:
        orbits = role_orbits(cls)
        together = sorted(p for o in orbits for p in o.member_positions)
        assert together == [0, 1, 2]


def test_named_motif_lookup():
    assert named_motif("FFL") == NAMED_MOTIFS["ffl"]
    assert named_motif("0>1,0>2,1>2") == NAMED_MOTIFS["ffl"]
    assert named_motif(f"code:3:{NAMED_MOTIFS['ffl'].code}") == NAMED_MOTIFS["ffl"]
    with pytest.raises(ValueError, match="unknown motif"):
        named_motif("definitely-not-a-motif")
