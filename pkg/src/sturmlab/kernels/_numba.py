"""Compiled kernels.  Every function mirrors one in ``_numpy`` exactly."""

import numpy as np
from numba import njit


@njit(cache=True)
def z_function(codes):
    n = codes.shape[0]
    z = np.zeros(n, np.int64)
    if n == 0:
        return z
    z[0] = n
    left = 0
    right = 0
    for i in range(1, n):
        k = 0
        if i < right:
            k = min(right - i, z[i - left])
        while i + k < n and codes[k] == codes[i + k]:
            k += 1
        z[i] = k
        if i + k > right:
            left = i
            right = i + k
    return z


@njit(cache=True)
def window_extrema(indicator, max_len):
    n = indicator.shape[0]
    cs = np.zeros(n + 1, np.int64)
    for i in range(n):
        cs[i + 1] = cs[i] + indicator[i]
    lo = np.zeros(max_len + 1, np.int64)
    hi = np.zeros(max_len + 1, np.int64)
    arg_lo = np.zeros(max_len + 1, np.int64)
    arg_hi = np.zeros(max_len + 1, np.int64)
    for length in range(1, max_len + 1):
        # Branch-free extrema first so the loop vectorizes; the first
        # positions are found by a second scan that usually stops early.
        best_lo = cs[length]
        best_hi = cs[length]
        for i in range(1, n - length + 1):
            c = cs[i + length] - cs[i]
            best_lo = min(best_lo, c)
            best_hi = max(best_hi, c)
        lo[length] = best_lo
        hi[length] = best_hi
        found_lo = False
        found_hi = False
        for i in range(n - length + 1):
            c = cs[i + length] - cs[i]
            if not found_lo and c == best_lo:
                arg_lo[length] = i
                found_lo = True
            if not found_hi and c == best_hi:
                arg_hi[length] = i
                found_hi = True
            if found_lo and found_hi:
                break
    return lo, hi, arg_lo, arg_hi


@njit(cache=True)
def decode(codes, x, kind, final):
    n = codes.shape[0]
    out = np.empty(n, np.uint8)
    starts = np.empty(n + 1, np.int64)
    m = 0
    i = 0
    while i < n:
        c = codes[i]
        if kind == 0:
            if c != x:
                return out[:m], starts[:m], i, i
            if i + 1 < n:
                if codes[i + 1] != x:
                    out[m] = codes[i + 1]
                    starts[m] = i
                    m += 1
                    i += 2
                else:
                    out[m] = x
                    starts[m] = i
                    m += 1
                    i += 1
            elif final:
                out[m] = x
                starts[m] = i
                m += 1
                i += 1
            else:
                break
        else:
            if c == x:
                out[m] = x
                starts[m] = i
                m += 1
                i += 1
            elif i + 1 < n:
                if codes[i + 1] != x:
                    return out[:m], starts[:m], i, i + 1
                out[m] = c
                starts[m] = i
                m += 1
                i += 2
            elif final:
                return out[:m], starts[:m], i, n
            else:
                break
    return out[:m], starts[:m], i, -1


@njit(cache=True)
def _grow(a, size):
    b = np.empty(max(2 * a.shape[0], size), a.dtype)
    b[: a.shape[0]] = a
    return b


@njit(cache=True)
def search_forest(z, horizon, class_lengths, first_unknown, roots, budget, record):
    n_roots = roots.shape[0]
    r_nodes = np.zeros(n_roots, np.int64)
    r_dead = np.zeros(n_roots, np.int64)
    r_trunc = np.zeros(n_roots, np.int64)
    r_depth = np.zeros(n_roots, np.int64)
    r_cover = np.zeros(n_roots, np.int64)

    st_k = np.empty(256, np.int64)
    st_d = np.empty(256, np.int64)
    st_p = np.empty(256, np.int64)
    rec_parent = np.empty(1024 if record else 0, np.int64)
    rec_end = np.empty(1024 if record else 0, np.int64)
    rec_status = np.empty(1024 if record else 0, np.int8)

    n_nodes = 0
    exhausted = False
    for r in range(n_roots):
        top = 0
        st_k[0] = roots[r]
        st_d[0] = 1
        st_p[0] = -1
        top = 1
        while top > 0:
            if n_nodes >= budget:
                exhausted = True
                break
            top -= 1
            k = st_k[top]
            d = st_d[top]
            p = st_p[top]
            idx = n_nodes
            n_nodes += 1
            if record and idx >= rec_end.shape[0]:
                rec_parent = _grow(rec_parent, idx + 1)
                rec_end = _grow(rec_end, idx + 1)
                rec_status = _grow(rec_status, idx + 1)
            r_nodes[r] += 1
            if d > r_depth[r]:
                r_depth[r] = d
            if k > r_cover[r]:
                r_cover[r] = k
            lce = z[k]
            if k + lce >= horizon or lce >= first_unknown:
                status = 2
                r_trunc[r] += 1
                n_child = 0
            else:
                n_child = np.searchsorted(class_lengths, lce, side="right")
                status = 0 if n_child > 0 else 1
                if n_child == 0:
                    r_dead[r] += 1
            if record:
                rec_parent[idx] = p
                rec_end[idx] = k
                rec_status[idx] = status
            if top + n_child > st_k.shape[0]:
                st_k = _grow(st_k, top + n_child)
                st_d = _grow(st_d, top + n_child)
                st_p = _grow(st_p, top + n_child)
            for j in range(n_child - 1, -1, -1):
                st_k[top] = k + class_lengths[j]
                st_d[top] = d + 1
                st_p[top] = idx
                top += 1
        if exhausted:
            break
    if record:
        rec_parent = rec_parent[:n_nodes]
        rec_end = rec_end[:n_nodes]
        rec_status = rec_status[:n_nodes]
    return (r_nodes, r_dead, r_trunc, r_depth, r_cover, n_nodes, exhausted,
            rec_parent, rec_end, rec_status)
