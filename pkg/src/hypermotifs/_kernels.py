"""Compiled inner loops for graph randomization and census annealing.

Graphs enter as a dense uint8 adjacency matrix plus parallel src/dst edge
arrays (and, for annealing, CSR out/in neighbor lists whose per-node slot
counts are swap-invariant). Triad classification uses 6-bit off-diagonal
codes in the fixed order (0,1),(0,2),(1,0),(1,2),(2,0),(2,1); class_of_code6
maps them to the 16 triad class slots. Only connected classes contribute to
the annealing energy; the 2-node mutual-dyad count is tracked separately so
that a zero residual pins every subgraph frequency up to 3 nodes.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def rewire_kernel(adj, src, dst, n_attempts, allow_new_self_loops, seed):
    """Degree-preserving double-edge swaps in place; returns accepted count."""
    np.random.seed(seed)
    E = src.size
    if E < 2:
        return 0
    swaps = 0
    for _ in range(n_attempts):
        e1 = np.random.randint(0, E)
        e2 = np.random.randint(0, E)
        if e1 == e2:
            continue
        a, b = src[e1], dst[e1]
        c, d = src[e2], dst[e2]
        if a == c or b == d:
            continue
        if not allow_new_self_loops and (a == d or c == b):
            continue
        if adj[a, d] or adj[c, b]:
            continue
        adj[a, b] = 0
        adj[c, d] = 0
        adj[a, d] = 1
        adj[c, b] = 1
        dst[e1] = d
        dst[e2] = b
        swaps += 1
    return swaps


@njit(cache=True, inline="always")
def _cell_after(adj, x, y, a, b, c, d):
    # adjacency cell (x, y) after the swap (a->b, c->d) => (a->d, c->b)
    if x == a:
        if y == b:
            return 0
        if y == d:
            return 1
    if x == c:
        if y == d:
            return 0
        if y == b:
            return 1
    return adj[x, y]


@njit(cache=True, inline="always")
def _code6(adj, x, y, z):
    code = 0
    if adj[x, y]:
        code |= 1
    if adj[x, z]:
        code |= 2
    if adj[y, x]:
        code |= 4
    if adj[y, z]:
        code |= 8
    if adj[z, x]:
        code |= 16
    if adj[z, y]:
        code |= 32
    return code


@njit(cache=True, inline="always")
def _code6_after(adj, x, y, z, a, b, c, d):
    code = 0
    if _cell_after(adj, x, y, a, b, c, d):
        code |= 1
    if _cell_after(adj, x, z, a, b, c, d):
        code |= 2
    if _cell_after(adj, y, x, a, b, c, d):
        code |= 4
    if _cell_after(adj, y, z, a, b, c, d):
        code |= 8
    if _cell_after(adj, z, x, a, b, c, d):
        code |= 16
    if _cell_after(adj, z, y, a, b, c, d):
        code |= 32
    return code


@njit(cache=True, inline="always")
def _tri_delta(adj, x, y, z, a, b, c, d, class_of_code6, delta):
    cb = class_of_code6[_code6(adj, x, y, z)]
    ca = class_of_code6[_code6_after(adj, x, y, z, a, b, c, d)]
    if cb != ca:
        delta[cb] -= 1
        delta[ca] += 1


@njit(cache=True, inline="always")
def _replace(data, start, end, old, new):
    for i in range(start, end):
        if data[i] == old:
            data[i] = new
            return


@njit(cache=True, nogil=True)
def anneal_kernel(
    adj,
    src,
    dst,
    out_start,
    out_data,
    in_start,
    in_data,
    counts,
    target,
    connected_mask,
    class_of_code6,
    mutual_state,
    mutual_target,
    mutual_weight,
    t0,
    cooling,
    max_iter,
    target_residual,
    reheat_stall,
    seed,
    trace_every,
    trace_out,
):
    """Metropolis annealing of double-edge swaps toward the target census.

    counts/target are 16-slot connected-triad-class arrays; mutual_state is a
    1-element array holding the current mutual-dyad count (weighted into the
    energy only when mutual_weight is nonzero). Self-loop edges must not be
    present in src/dst (they stay frozen).

    Cooling follows T *= cooling per attempt. When the best energy has not
    improved for reheat_stall attempts, the best state is restored and kicked
    with a handful of unconditional swaps before resuming near-greedy descent
    (basin hopping; kick size cycles 2,4,6,8). Plateau moves are always
    accepted. Returns (final_energy, best_energy, accepted, iterations).
    """
    np.random.seed(seed)
    N = adj.shape[0]
    E = src.size
    energy = np.int64(0)
    for k in range(16):
        if connected_mask[k]:
            energy += abs(counts[k] - target[k])
    energy += mutual_weight * abs(mutual_state[0] - mutual_target)
    best = energy
    adj_best = adj.copy()
    dst_best = dst.copy()
    out_best = out_data.copy()
    in_best = in_data.copy()
    counts_best = counts.copy()
    mutual_best = mutual_state[0]
    T = t0
    delta = np.zeros(16, np.int64)
    stamp = np.full(N, -1, np.int64)
    accepted = 0
    it = 0
    trace_idx = 0
    last_improve = 0
    kick_remaining = 0
    n_stalls = 0
    while it < max_iter and energy > target_residual:
        if trace_every > 0 and it % trace_every == 0 and trace_idx < trace_out.size:
            trace_out[trace_idx] = best
            trace_idx += 1
        it += 1
        T *= cooling
        if reheat_stall > 0 and it - last_improve >= reheat_stall:
            adj[:, :] = adj_best
            dst[:] = dst_best
            out_data[:] = out_best
            in_data[:] = in_best
            counts[:] = counts_best
            mutual_state[0] = mutual_best
            energy = best
            kick_remaining = 2 + 2 * (n_stalls % 4)
            n_stalls += 1
            T = t0 * 0.02
            last_improve = it
        if E < 2:
            break
        e1 = np.random.randint(0, E)
        e2 = np.random.randint(0, E)
        if e1 == e2:
            continue
        a, b = src[e1], dst[e1]
        c, d = src[e2], dst[e2]
        if a == c or b == d:
            continue
        if a == d or c == b:
            continue
        if adj[a, d] or adj[c, b]:
            continue
        for k in range(16):
            delta[k] = 0
        # triples inside {a, b, c, d} (all four distinct here)
        _tri_delta(adj, a, b, c, a, b, c, d, class_of_code6, delta)
        _tri_delta(adj, a, b, d, a, b, c, d, class_of_code6, delta)
        _tri_delta(adj, a, c, d, a, b, c, d, class_of_code6, delta)
        _tri_delta(adj, b, c, d, a, b, c, d, class_of_code6, delta)
        # triples holding exactly one changed pair and an outside node w;
        # w's own adjacency is untouched by the swap, so a triple matters only
        # if w already neighbors p or q
        for pair_idx in range(4):
            if pair_idx == 0:
                p, q = a, b
            elif pair_idx == 1:
                p, q = c, d
            elif pair_idx == 2:
                p, q = a, d
            else:
                p, q = c, b
            mark = np.int64(4) * it + pair_idx
            for li in range(4):
                if li == 0:
                    lo, hi = out_start[p], out_start[p + 1]
                    data = out_data
                elif li == 1:
                    lo, hi = in_start[p], in_start[p + 1]
                    data = in_data
                elif li == 2:
                    lo, hi = out_start[q], out_start[q + 1]
                    data = out_data
                else:
                    lo, hi = in_start[q], in_start[q + 1]
                    data = in_data
                for ii in range(lo, hi):
                    w = data[ii]
                    if w == a or w == b or w == c or w == d:
                        continue
                    if stamp[w] == mark:
                        continue
                    stamp[w] = mark
                    _tri_delta(adj, p, q, w, a, b, c, d, class_of_code6, delta)
        d_mut = (
            -np.int64(adj[b, a]) - np.int64(adj[d, c]) + np.int64(adj[d, a]) + np.int64(adj[b, c])
        )
        d_energy = np.int64(0)
        for k in range(16):
            if connected_mask[k] and delta[k] != 0:
                d_energy += abs(counts[k] + delta[k] - target[k]) - abs(counts[k] - target[k])
        m = mutual_state[0]
        d_energy += mutual_weight * (
            abs(m + d_mut - mutual_target) - abs(m - mutual_target)
        )
        if kick_remaining > 0:
            kick_remaining -= 1  # unconditional perturbation move
        elif d_energy > 0:
            if T <= 0.0 or np.random.random() >= np.exp(-d_energy / T):
                continue
        # accept
        adj[a, b] = 0
        adj[c, d] = 0
        adj[a, d] = 1
        adj[c, b] = 1
        dst[e1] = d
        dst[e2] = b
        _replace(out_data, out_start[a], out_start[a + 1], b, d)
        _replace(out_data, out_start[c], out_start[c + 1], d, b)
        _replace(in_data, in_start[b], in_start[b + 1], a, c)
        _replace(in_data, in_start[d], in_start[d + 1], c, a)
        for k in range(16):
            counts[k] += delta[k]
        mutual_state[0] = m + d_mut
        energy += d_energy
        accepted += 1
        if energy < best:
            best = energy
            adj_best[:, :] = adj
            dst_best[:] = dst
            out_best[:] = out_data
            in_best[:] = in_data
            counts_best[:] = counts
            mutual_best = mutual_state[0]
            last_improve = it
    if best < energy:
        # leave the best state in place so the returned graph matches the
        # reported residual
        adj[:, :] = adj_best
        dst[:] = dst_best
        out_data[:] = out_best
        in_data[:] = in_best
        counts[:] = counts_best
        mutual_state[0] = mutual_best
        energy = best
    if trace_every > 0 and trace_idx < trace_out.size:
        trace_out[trace_idx] = best
        trace_idx += 1
    return energy, best, accepted, it
