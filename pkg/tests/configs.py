"""Random chord configurations for the three cycle constructions."""
import random
from types import SimpleNamespace


def _is_c0(a, b, n):
    return abs(a - b) in (1, n - 1)


def _orient(rng, pair):
    return pair if rng.random() < 0.5 else pair[::-1]


def short_chord_config(rng: random.Random):
    n = rng.randint(6, 300)
    while True:
        a, b = rng.sample(range(1, n + 1), 2)
        if not _is_c0(a, b, n):
            return n, (a, b)


def crossing_config(rng: random.Random):
    n = rng.randint(8, 300)
    while True:
        p = sorted(rng.sample(range(1, n + 1), 4))
        e1, e2 = (p[0], p[2]), (p[1], p[3])
        if not any(_is_c0(a, b, n) for a, b in (e1, e2)):
            pair = [_orient(rng, e1), _orient(rng, e2)]
            rng.shuffle(pair)
            return n, pair[0], pair[1]


def double_parallel_config(rng: random.Random):
    n = rng.randint(12, 300)
    while True:
        q = sorted(rng.sample(range(1, n + 1), 8))
        k = rng.randint(0, 1)
        r = q[k:] + q[:k]
        e = [(r[0], r[5]), (r[1], r[4])]
        f = [(r[2], r[7]), (r[3], r[6])]
        if any(_is_c0(a, b, n) for a, b in e + f):
            continue
        e = [_orient(rng, c) for c in e]
        f = [_orient(rng, c) for c in f]
        rng.shuffle(e)
        rng.shuffle(f)
        if rng.random() < 0.5:
            e, f = f, e
        return n, e[0], e[1], f[0], f[1]


def stub(n, chords):
    """Just enough of an instance for the edge-by-edge cycle check."""
    return SimpleNamespace(n=n, chords=[tuple(c) for c in chords])
