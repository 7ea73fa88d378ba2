"""Compiled kernels for growing and evaluating CART trees.

Trees are stored as flat parallel arrays (feature, threshold, left,
right, value, count); feature == -1 marks a leaf. Split search is exact
greedy: thresholds are midpoints between consecutive sorted unique
values, candidates are scanned in ascending (feature, threshold) order
and replaced only on strictly lower cost, which makes the documented
tie-break (lowest feature, then lowest threshold) automatic.
"""

import numpy as np
from numba import njit

LEAF = -1
CLASSIFICATION = 0
REGRESSION = 1

_MULT = np.uint64(0x2545F4914F6CDD1D)


@njit(cache=True)
def _rand_below(state, bound):
    # xorshift64* step; bound must be >= 1
    x = state
    x ^= x << np.uint64(13)
    x ^= x >> np.uint64(7)
    x ^= x << np.uint64(17)
    r = ((x * _MULT) >> np.uint64(33)) % np.uint64(bound)
    return x, np.int64(r)


@njit(cache=True)
def grow_tree(X, target, hess, mode, max_depth, min_samples_leaf, n_candidates, seed):
    """Grow one tree; returns (feature, threshold, left, right, value, count).

    mode 0: binary classification on target in {0,1}; gini split cost,
    leaf value = class-1 fraction. mode 1: regression on target; variance
    split cost, leaf value = sum(target)/sum(hess) (pass hess = ones for
    a plain mean). n_candidates < n_features turns on per-node feature
    subsampling driven by the seed.
    """
    n, d = X.shape
    max_nodes = 2 * n + 1
    feature = np.full(max_nodes, LEAF, np.int32)
    threshold = np.zeros(max_nodes, np.float64)
    left = np.full(max_nodes, LEAF, np.int32)
    right = np.full(max_nodes, LEAF, np.int32)
    value = np.zeros(max_nodes, np.float64)
    count = np.zeros(max_nodes, np.int32)

    idx = np.arange(n, dtype=np.int64)
    vbuf = np.empty(n, np.float64)
    wbuf = np.empty(n, np.float64)
    tmp_left = np.empty(n, np.int64)
    tmp_right = np.empty(n, np.int64)
    cand = np.empty(d, np.int64)

    # stack rows: node_id, start, end, depth
    stack = np.empty((2 * n + 4, 4), np.int64)
    stack[0, 0] = 0
    stack[0, 1] = 0
    stack[0, 2] = n
    stack[0, 3] = 0
    sp = 1
    n_nodes = 1
    rng = seed if seed != np.uint64(0) else np.uint64(0x9E3779B97F4A7C15)

    while sp > 0:
        sp -= 1
        node = stack[sp, 0]
        start = stack[sp, 1]
        end = stack[sp, 2]
        depth = stack[sp, 3]
        m = end - start

        s = 0.0
        h = 0.0
        tmin = np.inf
        tmax = -np.inf
        for t in range(start, end):
            ti = target[idx[t]]
            s += ti
            h += hess[idx[t]]
            if ti < tmin:
                tmin = ti
            if ti > tmax:
                tmax = ti
        if mode == CLASSIFICATION:
            value[node] = s / m
        else:
            value[node] = s / h if h > 1e-12 else 0.0
        count[node] = m

        if depth >= max_depth or m < 2 * min_samples_leaf or tmin == tmax:
            continue

        # candidate features, ascending for the tie-break
        if n_candidates >= d:
            k = d
            for j in range(d):
                cand[j] = j
        else:
            k = n_candidates
            for j in range(d):
                cand[j] = j
            for j in range(k):
                rng, r = _rand_below(rng, d - j)
                pick = j + r
                cand[j], cand[pick] = cand[pick], cand[j]
            # insertion sort of the chosen prefix
            for a in range(1, k):
                key = cand[a]
                b = a - 1
                while b >= 0 and cand[b] > key:
                    cand[b + 1] = cand[b]
                    b -= 1
                cand[b + 1] = key

        best_cost = np.inf
        best_f = -1
        best_thr = 0.0
        for ci in range(k):
            f = cand[ci]
            v = vbuf[:m]
            for t in range(m):
                v[t] = X[idx[start + t], f]
            order = np.argsort(v)
            if v[order[0]] == v[order[m - 1]]:
                continue
            sw = wbuf[:m]
            for t in range(m):
                sw[t] = target[idx[start + order[t]]]
            csum = 0.0
            for j in range(m - 1):
                csum += sw[j]
                n_l = j + 1
                n_r = m - n_l
                if n_r < min_samples_leaf:
                    break
                if n_l < min_samples_leaf:
                    continue
                vj = v[order[j]]
                vj1 = v[order[j + 1]]
                if vj == vj1:
                    continue
                if mode == CLASSIFICATION:
                    p_l = csum / n_l
                    p_r = (s - csum) / n_r
                    cost = n_l * (1.0 - p_l * p_l - (1.0 - p_l) * (1.0 - p_l)) + n_r * (
                        1.0 - p_r * p_r - (1.0 - p_r) * (1.0 - p_r)
                    )
                else:
                    s_l = csum
                    s_r = s - csum
                    cost = -(s_l * s_l / n_l + s_r * s_r / n_r)
                if cost < best_cost:
                    best_cost = cost
                    best_f = f
                    thr = 0.5 * (vj + vj1)
                    if not (vj < thr):
                        thr = vj1
                    best_thr = thr

        if best_f < 0:
            continue

        n_l = 0
        n_r = 0
        for t in range(start, end):
            row = idx[t]
            if X[row, best_f] < best_thr:
                tmp_left[n_l] = row
                n_l += 1
            else:
                tmp_right[n_r] = row
                n_r += 1
        for t in range(n_l):
            idx[start + t] = tmp_left[t]
        for t in range(n_r):
            idx[start + n_l + t] = tmp_right[t]

        lid = n_nodes
        rid = n_nodes + 1
        n_nodes += 2
        feature[node] = best_f
        threshold[node] = best_thr
        left[node] = lid
        right[node] = rid
        stack[sp, 0] = rid
        stack[sp, 1] = start + n_l
        stack[sp, 2] = end
        stack[sp, 3] = depth + 1
        sp += 1
        stack[sp, 0] = lid
        stack[sp, 1] = start
        stack[sp, 2] = start + n_l
        stack[sp, 3] = depth + 1
        sp += 1

    return (
        feature[:n_nodes].copy(),
        threshold[:n_nodes].copy(),
        left[:n_nodes].copy(),
        right[:n_nodes].copy(),
        value[:n_nodes].copy(),
        count[:n_nodes].copy(),
    )


@njit(cache=True)
def predict_tree(feature, threshold, left, right, value, X):
    out = np.empty(X.shape[0], np.float64)
    for i in range(X.shape[0]):
        node = 0
        while feature[node] != LEAF:
            if X[i, feature[node]] < threshold[node]:
                node = left[node]
            else:
                node = right[node]
        out[i] = value[node]
    return out
