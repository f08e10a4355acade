# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_pyspeedups`` for the reference semantics."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def hc_enumerate(const cnp.int64_t[::1] indptr, const cnp.int32_t[::1] indices, int n, long long cap):
    cdef cnp.int32_t[::1] path = np.zeros(n, dtype=np.int32)
    cdef cnp.int64_t[::1] it = np.zeros(n + 1, dtype=np.int64)
    cdef cnp.int8_t[::1] used = np.zeros(n + 1, dtype=np.int8)
    cdef int depth, u, w
    cdef long long p, count = 0, capacity = 64
    cdef bint closes
    out = np.zeros((capacity, n), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] outv = out
    path[0] = 1
    used[1] = 1
    depth = 1
    it[1] = indptr[1]
    while depth >= 1:
        u = path[depth - 1]
        if depth == n:
            closes = False
            for p in range(indptr[u], indptr[u + 1]):
                if indices[p] == 1:
                    closes = True
                    break
            if closes and path[1] < path[n - 1]:
                if count >= cap:
                    return out[:count].copy(), True
                if count == capacity:
                    capacity *= 2
                    bigger = np.zeros((capacity, n), dtype=np.int32)
                    bigger[:count] = out[:count]
                    out = bigger
                    outv = out
                outv[count, :] = path
                count += 1
            used[u] = 0
            depth -= 1
            continue
        if it[depth] < indptr[u + 1]:
            w = indices[it[depth]]
            it[depth] += 1
            if not used[w]:
                path[depth] = w
                used[w] = 1
                depth += 1
                it[depth] = indptr[w]
        else:
            if depth == 1:
                break
            used[u] = 0
            depth -= 1
    return out[:count].copy(), False


def lollipop_walk(const cnp.int64_t[::1] partner, int n, bint start_v1v2, long long max_steps):
    path_arr = np.zeros(n, dtype=np.int32)
    cdef cnp.int32_t[::1] path = path_arr
    cdef cnp.int32_t[::1] pos = np.zeros(n + 1, dtype=np.int32)
    cdef int k, t, x, prev_x, y, removed_other, a, b, tmp
    cdef long long steps
    cdef int cand[3]
    if start_v1v2:
        path[0] = 1
        for k in range(1, n):
            path[k] = n - k + 1
    else:
        for k in range(n):
            path[k] = k + 1
    for k in range(n):
        pos[path[k]] = k
    steps = 1
    if steps > max_steps:
        return 0, path_arr, steps
    removed_other = 1
    while True:
        x = path[n - 1]
        prev_x = path[n - 2]
        cand[0] = x % n + 1
        cand[1] = (x - 2 + n) % n + 1
        cand[2] = <int>partner[x]
        y = 0
        for k in range(3):
            if cand[k] != prev_x and cand[k] != removed_other:
                y = cand[k]
                break
        steps += 1
        if steps > max_steps:
            return 0, path_arr, steps
        if y == 1:
            return 1, path_arr, steps
        k = pos[y]
        a = k + 1
        b = n - 1
        while a < b:
            tmp = path[a]
            path[a] = path[b]
            path[b] = tmp
            a += 1
            b -= 1
        for t in range(k + 1, n):
            pos[path[t]] = t
        removed_other = y


def approx_scan(long long n, const cnp.int64_t[::1] indptr, const cnp.int32_t[::1] indices,
                const cnp.int32_t[::1] block_of, const cnp.int64_t[::1] block_start,
                int r, long long short_max):
    sigma_arr = np.full(r, -1, dtype=np.int64)
    pairs_arr = np.zeros((r, 4), dtype=np.int64)
    cdef cnp.int64_t[::1] sigma = sigma_arr
    cdef cnp.int64_t[:, ::1] pairs = pairs_arr
    cdef cnp.int64_t[::1] stamp_f = np.zeros(r, dtype=np.int64)
    cdef cnp.int64_t[::1] stamp_gu = np.zeros(r, dtype=np.int64)
    cdef cnp.int64_t[::1] stamp_gw = np.zeros(r, dtype=np.int64)
    cdef cnp.int64_t[::1] f_u = np.zeros(r, dtype=np.int64)
    cdef cnp.int64_t[::1] f_w = np.zeros(r, dtype=np.int64)
    cdef cnp.int64_t[::1] gu_w = np.zeros(r, dtype=np.int64)
    cdef cnp.int64_t[::1] gw_u = np.zeros(r, dtype=np.int64)
    cdef long long minlen = n + 1, min_u = 0, min_v = 0
    cdef long long best_len = r + 1, best_i = -1
    cdef long long v, w, d, length, p, a, b, tag, dj, rl
    cdef long long pa, pb, pc, pd
    cdef int i, j, left, right
    cdef bint found
    for i in range(r):
        tag = i + 1
        left = (i - 1 + r) % r
        right = (i + 1) % r
        found = False
        for v in range(block_start[i], block_start[i + 1]):
            for p in range(indptr[v], indptr[v + 1]):
                w = indices[p]
                d = w - v if w > v else v - w
                length = d if d <= n - d else n - d
                if length < minlen:
                    minlen = length
                    min_u = v
                    min_v = w
                if length <= short_max:
                    return 0, sigma_arr, pairs_arr, -1, v, w
                j = block_of[w]
                if j == i or j == left or j == right:
                    continue
                if stamp_f[j] != tag:
                    stamp_f[j] = tag
                    f_u[j] = v
                    f_w[j] = w
                    continue
                a = f_u[j]
                b = f_w[j]
                if v != a and w != b:
                    pa, pb, pc, pd = a, b, v, w
                    found = True
                elif v == a:
                    if stamp_gw[j] == tag:
                        pa, pb, pc, pd = gw_u[j], b, v, w
                        found = True
                    elif stamp_gu[j] != tag:
                        stamp_gu[j] = tag
                        gu_w[j] = w
                else:
                    if stamp_gu[j] == tag:
                        pa, pb, pc, pd = a, gu_w[j], v, w
                        found = True
                    elif stamp_gw[j] != tag:
                        stamp_gw[j] = tag
                        gw_u[j] = v
                if found:
                    sigma[i] = j
                    pairs[i, 0] = pa
                    pairs[i, 1] = pb
                    pairs[i, 2] = pc
                    pairs[i, 3] = pd
                    dj = j - i if j > i else i - j
                    rl = dj if dj <= r - dj else r - dj
                    if rl < best_len:
                        best_len = rl
                        best_i = i
                    break
            if found:
                break
        if not found:
            return 2, sigma_arr, pairs_arr, i, min_u, min_v
    return 1, sigma_arr, pairs_arr, best_i, min_u, min_v
