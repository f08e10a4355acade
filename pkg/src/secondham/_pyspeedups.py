"""Pure-Python implementations of the hot kernels.

Each function has the same signature and return shape as its counterpart in
``_speedups.pyx``; ``kernels`` picks one of the two at import time.
"""
from __future__ import annotations

import numpy as np


def hc_enumerate(indptr, indices, n: int, cap: int):
    """Enumerate Hamiltonian cycles of the graph given in CSR form (rows 1..n).

    Cycles are anchored at vertex 1 and reflection is broken by requiring
    ``path[1] < path[n-1]``.  Returns ``(cycles, exceeded)`` where ``cycles`` is
    an ``(k, n)`` int32 array and ``exceeded`` is True when more than ``cap``
    cycles exist (``cycles`` then holds the first ``cap``).
    """
    adj = [None] + [list(indices[indptr[v]:indptr[v + 1]]) for v in range(1, n + 1)]
    adj1 = set(adj[1])
    found: list[list[int]] = []
    path = [1]
    used = [False] * (n + 1)
    used[1] = True
    iters = [iter(adj[1])]
    while iters:
        if len(path) == n:
            if path[-1] in adj1 and path[1] < path[-1]:
                if len(found) >= cap:
                    return _as_array(found, n), True
                found.append(path.copy())
            used[path.pop()] = False
            iters.pop()
            continue
        for w in iters[-1]:
            if not used[w]:
                used[w] = True
                path.append(w)
                iters.append(iter(adj[w]))
                break
        else:
            iters.pop()
            if len(path) > 1:
                used[path.pop()] = False
    return _as_array(found, n), False


def _as_array(rows, n):
    if not rows:
        return np.zeros((0, n), dtype=np.int32)
    return np.asarray(rows, dtype=np.int32)


def lollipop_walk(partner, n: int, start_v1v2: bool, max_steps: int):
    """Run the lollipop pivots without colouring.

    Returns ``(status, path, steps)``: status 1 means the path closed into a
    Hamiltonian cycle through vertex 1, status 0 means ``max_steps`` was hit.
    """
    if start_v1v2:
        path = [1] + list(range(n, 1, -1))
    else:
        path = list(range(1, n + 1))
    pos = [0] * (n + 1)
    for k, v in enumerate(path):
        pos[v] = k
    steps = 1
    if steps > max_steps:
        return 0, np.asarray(path, dtype=np.int32), steps
    removed_other = 1
    while True:
        x = path[n - 1]
        prev_x = path[n - 2]
        for y in (x % n + 1, (x - 2) % n + 1, partner[x]):
            if y != prev_x and y != removed_other:
                break
        steps += 1
        if steps > max_steps:
            return 0, np.asarray(path, dtype=np.int32), steps
        if y == 1:
            return 1, np.asarray(path, dtype=np.int32), steps
        k = pos[y]
        tail = path[k + 1:]
        tail.reverse()
        path[k + 1:] = tail
        for t in range(k + 1, n):
            pos[path[t]] = t
        removed_other = y


def approx_scan(n: int, indptr, indices, block_of, block_start, r: int, short_max: int):
    """Single pass over the chords block by block.

    Returns ``(status, sigma, pairs, best_i, u, v)``:

    * status 0: a chord ``u-v`` of length <= ``short_max`` was met;
    * status 1: every block was matched; ``sigma``/``pairs`` describe the
      matching and ``best_i`` minimises the cyclic block distance;
    * status 2: some block found no partner; ``u-v`` is the shortest chord seen.
    """
    sigma = np.full(r, -1, dtype=np.int64)
    pairs = np.zeros((r, 4), dtype=np.int64)
    stamp_f = [0] * r
    stamp_gu = [0] * r
    stamp_gw = [0] * r
    f_u = [0] * r
    f_w = [0] * r
    gu_w = [0] * r
    gw_u = [0] * r
    minlen = n + 1
    min_u = min_v = 0
    best_len = r + 1
    best_i = -1
    ip = indptr.tolist() if hasattr(indptr, "tolist") else list(indptr)
    ix = indices.tolist() if hasattr(indices, "tolist") else list(indices)
    bo = block_of.tolist() if hasattr(block_of, "tolist") else list(block_of)
    bs = block_start.tolist() if hasattr(block_start, "tolist") else list(block_start)
    for i in range(r):
        tag = i + 1
        left = (i - 1) % r
        right = (i + 1) % r
        pair = None
        for v in range(bs[i], bs[i + 1]):
            for p in range(ip[v], ip[v + 1]):
                w = ix[p]
                d = w - v if w > v else v - w
                length = d if d <= n - d else n - d
                if length < minlen:
                    minlen, min_u, min_v = length, v, w
                if length <= short_max:
                    return 0, sigma, pairs, -1, v, w
                j = bo[w]
                if j == i or j == left or j == right:
                    continue
                if stamp_f[j] != tag:
                    stamp_f[j] = tag
                    f_u[j], f_w[j] = v, w
                    continue
                a, b = f_u[j], f_w[j]
                if v != a and w != b:
                    pair = (a, b, v, w)
                elif v == a:
                    if stamp_gw[j] == tag:
                        pair = (gw_u[j], b, v, w)
                    elif stamp_gu[j] != tag:
                        stamp_gu[j] = tag
                        gu_w[j] = w
                else:
                    if stamp_gu[j] == tag:
                        pair = (a, gu_w[j], v, w)
                    elif stamp_gw[j] != tag:
                        stamp_gw[j] = tag
                        gw_u[j] = v
                if pair is not None:
                    sigma[i] = j
                    pairs[i] = pair
                    dj = j - i if j > i else i - j
                    rl = dj if dj <= r - dj else r - dj
                    if rl < best_len:
                        best_len, best_i = rl, i
                    break
            if pair is not None:
                break
        if pair is None:
            return 2, sigma, pairs, i, min_u, min_v
    return 1, sigma, pairs, best_i, min_u, min_v
