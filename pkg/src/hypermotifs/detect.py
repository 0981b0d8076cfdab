"""Enriched motif-combination detection.

Pipeline: identify significant motif classes against a degree-preserving
ensemble, assign nodes to motif role orbits, measure role-overlap Jaccard
indices (plus per-role repetition ratios), score them against a
census-preserving ensemble with Z-scores and one-sided normal p-values, and
correct the whole family with Benjamini-Hochberg. A pair is called
over-represented when q < alpha and Z > 0, under-represented when q < alpha
and Z < 0.

Two different ensembles are involved: motif *identification* randomizes
self-loops along with everything else (a frozen self-loop layout could never
make the self-loop motif significant), while the combination statistics use
the census-preserving ensemble in which self-loop positions stay fixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .census import find_motifs, role_assignment
from .motifs import role_orbits
from .nullmodels import NullModelConfig, generate_ensemble_detailed, generate_motif_null_ensemble

__all__ = [
    "jaccard",
    "self_role_repetition",
    "enrichment",
    "bh_correct",
    "CombinationStat",
    "DetectionReport",
    "combination_stats",
    "detect",
    "detect_detailed",
]

_MOTIF_ENSEMBLE_SEED_OFFSET = 1_000_003


def jaccard(a, b):
    """|a n b| / |a u b|; two empty sets give 0."""
    if not a and not b:
        return 0.0
    a, b = set(a), set(b)
    return len(a & b) / len(a | b)


def self_role_repetition(role_counts):
    """Share of a role's nodes that occupy the role more than once.

    role_counts maps node -> occurrence count (each >= 1); an empty mapping
    gives 0.
    """
    if not role_counts:
        return 0.0
    repeated = sum(1 for c in role_counts.values() if c >= 2)
    return repeated / len(role_counts)


def _normal_tail(z):
    # one-sided tail in the direction of z: 1 - Phi(z) for z >= 0, Phi(z) below
    return 0.5 * math.erfc(abs(z) / math.sqrt(2.0))


def _mean_std(values):
    # identical values must give exactly zero spread; naive summation would
    # leave ulp-sized variance and turn copies-of-g ensembles into fake signal
    first = values[0]
    if all(v == first for v in values):
        return first, 0.0
    n = len(values)
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var)


def enrichment(j_real, ensemble_js):
    """Z-score of j_real against the ensemble values and its one-sided p-value.

    Z = (j_real - mean) / std with the sample (n-1) standard deviation. A
    zero-variance ensemble gives z = 0 (if j_real equals the mean) or +-inf
    with p = 0 otherwise; callers should treat those as degenerate.
    """
    if len(ensemble_js) < 2:
        raise ValueError("need at least 2 ensemble values")
    mean, std = _mean_std(ensemble_js)
    if std == 0.0:
        if j_real == mean:
            return 0.0, 0.5
        return (math.inf if j_real > mean else -math.inf), 0.0
    z = (j_real - mean) / std
    return z, _normal_tail(z)


def bh_correct(p_values):
    """Benjamini-Hochberg step-up q-values, in the input order.

    q_(i) = min_{j >= i} p_(j) * m / j over the ascending-sorted p's, clamped
    to 1.
    """
    m = len(p_values)
    if m == 0:
        return []
    for p in p_values:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p-value {p} outside [0, 1]")
    order = sorted(range(m), key=lambda i: p_values[i])
    q_sorted = [0.0] * m
    running = 1.0
    for rank in range(m, 0, -1):
        idx = order[rank - 1]
        running = min(running, p_values[idx] * m / rank)
        q_sorted[rank - 1] = running
    q = [0.0] * m
    for rank, idx in enumerate(order):
        q[idx] = q_sorted[rank]
    return q


@dataclass
class CombinationStat:
    """Enrichment statistics for one role pair (or one self-repetition index)."""

    role_a: object  # RoleOrbit
    role_b: object  # RoleOrbit; equals role_a for self-repetition stats
    kind: str  # "pair" | "self_repetition"
    j_real: float
    ensemble_mean: float
    ensemble_std: float
    z: float
    p: float | None
    q: float | None
    direction: str  # "over" | "under" | "none"
    degenerate: bool = False
    untested: bool = False


@dataclass
class DetectionReport:
    significant_motifs: list  # (MotifClass, z) pairs
    stats: list  # CombinationStat, sorted by q
    ensemble_residuals: list
    alpha: float
    n_nodes: int
    n_edges: int
    roles: dict = field(default_factory=dict)  # RoleOrbit -> real node set
    ensemble_members: list = field(default_factory=list)  # kept only on request


def _orbit_sort_key(orbit):
    return (orbit.motif_class.size, orbit.motif_class.code, orbit.orbit_index)


def detect_detailed(
    graph,
    null_cfg=None,
    alpha=0.05,
    z_threshold=2.0,
    motif_ensemble_size=None,
    jobs=1,
    keep_members=False,
):
    """Full combination-detection pipeline; returns a DetectionReport."""
    if null_cfg is None:
        null_cfg = NullModelConfig()
    motif_n = motif_ensemble_size or null_cfg.ensemble_size
    motif_ens = generate_motif_null_ensemble(
        graph, motif_n, null_cfg, null_cfg.rng_seed + _MOTIF_ENSEMBLE_SEED_OFFSET, jobs=jobs
    )
    significant = find_motifs(graph, motif_ens, z_threshold=z_threshold)
    if not significant:
        return DetectionReport(
            significant_motifs=[],
            stats=[],
            ensemble_residuals=[],
            alpha=alpha,
            n_nodes=graph.n_nodes,
            n_edges=graph.n_edges,
        )

    classes = [cls for cls, _ in significant]
    members, residuals = generate_ensemble_detailed(graph, null_cfg, jobs=jobs)
    stats, roles = combination_stats(graph, classes, members, alpha=alpha)
    return DetectionReport(
        significant_motifs=significant,
        stats=stats,
        ensemble_residuals=residuals,
        alpha=alpha,
        n_nodes=graph.n_nodes,
        n_edges=graph.n_edges,
        roles=roles,
        ensemble_members=members if keep_members else [],
    )


def combination_stats(graph, classes, members, alpha=0.05):
    """Steps 2-8 against an explicit ensemble: role assignment on the graph and
    every member, all pairwise Jaccards plus per-role repetition indices,
    enrichment, one joint BH family and direction calls at alpha.

    Returns (stats sorted by q, {RoleOrbit: real node set}).
    """
    orbits = []
    for cls in sorted(set(classes)):
        orbits.extend(role_orbits(cls))
    orbits.sort(key=_orbit_sort_key)

    real = role_assignment(graph, classes)
    member_assignments = [role_assignment(m, classes) for m in members]

    stats = []
    k = len(orbits)
    for i in range(k):
        for jdx in range(i + 1, k):
            oa, ob = orbits[i], orbits[jdx]
            j_real = jaccard(real.role_sets[oa], real.role_sets[ob])
            ens = [jaccard(ma.role_sets[oa], ma.role_sets[ob]) for ma in member_assignments]
            untested = not real.role_sets[oa] and not real.role_sets[ob]
            stats.append(_make_stat(oa, ob, "pair", j_real, ens, untested))
    for orbit in orbits:
        counts_real = real.counts_for_orbit(orbit)
        j_real = self_role_repetition(counts_real)
        ens = [self_role_repetition(ma.counts_for_orbit(orbit)) for ma in member_assignments]
        untested = not real.role_sets[orbit]
        stats.append(_make_stat(orbit, orbit, "self_repetition", j_real, ens, untested))

    tested = [s for s in stats if not s.untested]
    qs = bh_correct([s.p for s in tested])
    for s, q in zip(tested, qs):
        s.q = q
        if q < alpha and s.z > 0:
            s.direction = "over"
        elif q < alpha and s.z < 0:
            s.direction = "under"

    stats.sort(
        key=lambda s: (
            s.untested,
            s.q if s.q is not None else 2.0,
            _orbit_sort_key(s.role_a),
            _orbit_sort_key(s.role_b),
        )
    )
    return stats, {o: set(real.role_sets[o]) for o in orbits}


def _make_stat(oa, ob, kind, j_real, ensemble_js, untested):
    if untested:
        return CombinationStat(
            role_a=oa,
            role_b=ob,
            kind=kind,
            j_real=j_real,
            ensemble_mean=0.0,
            ensemble_std=0.0,
            z=0.0,
            p=None,
            q=None,
            direction="none",
            degenerate=True,
            untested=True,
        )
    mean, std = _mean_std(ensemble_js)
    z, p = enrichment(j_real, ensemble_js)
    return CombinationStat(
        role_a=oa,
        role_b=ob,
        kind=kind,
        j_real=j_real,
        ensemble_mean=mean,
        ensemble_std=std,
        z=z,
        p=p,
        q=None,
        direction="none",
        degenerate=(std == 0.0),
    )


def detect(graph, null_cfg=None, alpha=0.05, **kwargs):
    """All combination statistics sorted by q, with direction calls at alpha.

    "No motifs found" yields an empty list, not an error.
    """
    return detect_detailed(graph, null_cfg, alpha=alpha, **kwargs).stats


# --- export helpers -----------------------------------------------------------

def _json_float(x):
    if x is None:
        return None
    if math.isnan(x):
        return None
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def orbit_to_json(orbit):
    return {
        "class_code": orbit.motif_class.code,
        "class_size": orbit.motif_class.size,
        "orbit": orbit.orbit_index,
    }


def stat_to_json(stat):
    return {
        "role_a": orbit_to_json(stat.role_a),
        "role_b": orbit_to_json(stat.role_b),
        "kind": stat.kind,
        "j_real": _json_float(stat.j_real),
        "mean": _json_float(stat.ensemble_mean),
        "std": _json_float(stat.ensemble_std),
        "z": _json_float(stat.z),
        "p": _json_float(stat.p),
        "q": _json_float(stat.q),
        "direction": stat.direction,
        "degenerate": stat.degenerate,
        "untested": stat.untested,
    }


CSV_COLUMNS = [
    "role_a_class",
    "role_a_orbit",
    "role_b_class",
    "role_b_orbit",
    "kind",
    "j_real",
    "mean",
    "std",
    "z",
    "p",
    "q",
    "direction",
]


def stat_to_csv_row(stat):
    def fmt(x):
        if x is None:
            return ""
        return repr(x) if isinstance(x, float) else str(x)

    return [
        str(stat.role_a.motif_class.code),
        str(stat.role_a.orbit_index),
        str(stat.role_b.motif_class.code),
        str(stat.role_b.orbit_index),
        stat.kind,
        fmt(stat.j_real),
        fmt(stat.ensemble_mean),
        fmt(stat.ensemble_std),
        fmt(stat.z),
        fmt(stat.p),
        fmt(stat.q),
        stat.direction,
    ]
