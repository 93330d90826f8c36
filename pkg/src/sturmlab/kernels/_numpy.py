"""Reference kernels in plain numpy (and plain Python where the work is sequential)."""

from bisect import bisect_right

import numpy as np


MAX_ROUND_CELLS = 1 << 22


def _z_linear(codes):
    s = codes.tolist()
    n = len(s)
    z = [0] * n
    if n:
        z[0] = n
    left = right = 0
    for i in range(1, n):
        k = min(right - i, z[i - left]) if i < right else 0
        while i + k < n and s[k] == s[i + k]:
            k += 1
        z[i] = k
        if i + k > right:
            left, right = i, i + k
    return np.asarray(z, np.int64)


def z_function(codes):
    # All offsets still matching after `pos` letters are compared against the
    # next block together; blocks double, so each round costs O(n) for
    # aperiodic words.  Periodic input keeps many offsets alive for long
    # blocks, so past a size cap the classic linear scan takes over.
    n = codes.shape[0]
    z = np.zeros(n, np.int64)
    if n == 0:
        return z
    z[0] = n
    active = np.arange(1, n, dtype=np.int64)
    pos, block = 0, 1
    while active.size:
        avail = n - active - pos  # letters left after the shifted copy
        ended = avail <= 0
        if ended.any():
            z[active[ended]] = n - active[ended]
            active, avail = active[~ended], avail[~ended]
            if not active.size:
                break
        width = min(block, int(avail.max()))
        if active.size * width > MAX_ROUND_CELLS:
            return _z_linear(codes)
        j = np.arange(width, dtype=np.int64)
        idx = active[:, None] + pos + j[None, :]
        valid = j[None, :] < avail[:, None]
        shifted = codes[np.minimum(idx, n - 1)]
        ref = codes[pos : pos + width]
        bad = (shifted != ref[None, :]) | ~valid
        has_bad = bad.any(axis=1)
        first_bad = np.where(has_bad, bad.argmax(axis=1), width)
        done = has_bad
        z[active[done]] = pos + first_bad[done]
        active = active[~done]
        pos += width
        block *= 2
    return z


def window_extrema(indicator, max_len):
    cs = np.concatenate(([0], np.cumsum(indicator, dtype=np.int64)))
    lo = np.zeros(max_len + 1, np.int64)
    hi = np.zeros(max_len + 1, np.int64)
    arg_lo = np.zeros(max_len + 1, np.int64)
    arg_hi = np.zeros(max_len + 1, np.int64)
    for length in range(1, max_len + 1):
        counts = cs[length:] - cs[:-length]
        arg_lo[length] = counts.argmin()
        arg_hi[length] = counts.argmax()
        lo[length] = counts[arg_lo[length]]
        hi[length] = counts[arg_hi[length]]
    return lo, hi, arg_lo, arg_hi


def decode(codes, x, kind, final):
    n = codes.shape[0]
    is_x = codes == x
    empty = (np.empty(0, np.uint8), np.empty(0, np.int64))
    if n == 0:
        return empty[0], empty[1], 0, -1
    if kind == 0:
        # Every non-x letter must directly follow an x.
        prev_x = np.concatenate(([False], is_x[:-1]))
        bad = np.flatnonzero(~is_x & ~prev_x)
        stop = int(bad[0]) if bad.size else n
        starts = np.flatnonzero(is_x[:stop])
        nxt = np.minimum(starts + 1, n - 1)
        pairs = (starts + 1 < n) & ~is_x[nxt]
        out = np.where(pairs, codes[nxt], x).astype(np.uint8)
        if bad.size:
            return out, starts, stop, stop
        if not final and is_x[-1]:
            return out[:-1], starts[:-1], n - 1, -1
        return out, starts, n, -1
    # kind == 1: every non-x letter must directly precede an x.
    next_x = np.concatenate((is_x[1:], [False]))
    lonely = np.flatnonzero(~is_x & ~next_x)
    cut = n
    err = -1
    if lonely.size:
        i = int(lonely[0])
        if i + 1 < n or final:
            cut, err = i, i + 1
        else:
            cut = i  # incomplete tail
    # Tokens start at every non-x letter and at every x not closing a yx pair.
    after_y = np.concatenate(([False], ~is_x[:-1]))
    starts = np.flatnonzero((~is_x | ~after_y)[:cut])
    out = codes[starts].astype(np.uint8)
    return out, starts, cut, err


def search_forest(z, horizon, class_lengths, first_unknown, roots, budget, record):
    z = z.tolist()
    lengths = class_lengths.tolist()
    n_roots = len(roots)
    r_nodes = [0] * n_roots
    r_dead = [0] * n_roots
    r_trunc = [0] * n_roots
    r_depth = [0] * n_roots
    r_cover = [0] * n_roots
    rec_parent, rec_end, rec_status = [], [], []
    n_nodes = 0
    exhausted = False
    for r, root in enumerate(roots.tolist()):
        stack = [(root, 1, -1)]
        while stack:
            if n_nodes >= budget:
                exhausted = True
                break
            k, d, p = stack.pop()
            idx = n_nodes
            n_nodes += 1
            r_nodes[r] += 1
            r_depth[r] = max(r_depth[r], d)
            r_cover[r] = max(r_cover[r], k)
            lce = z[k]
            if k + lce >= horizon or lce >= first_unknown:
                status, n_child = 2, 0
                r_trunc[r] += 1
            else:
                n_child = bisect_right(lengths, lce)
                status = 0 if n_child else 1
                if not n_child:
                    r_dead[r] += 1
            if record:
                rec_parent.append(p)
                rec_end.append(k)
                rec_status.append(status)
            stack.extend((k + lengths[j], d + 1, idx) for j in range(n_child - 1, -1, -1))
        if exhausted:
            break
    as_i = lambda v: np.asarray(v, np.int64)
    return (as_i(r_nodes), as_i(r_dead), as_i(r_trunc), as_i(r_depth), as_i(r_cover),
            n_nodes, exhausted, as_i(rec_parent), as_i(rec_end),
            np.asarray(rec_status, np.int8))
