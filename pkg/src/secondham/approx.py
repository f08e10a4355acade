"""Linear-time long second cycle in Hamiltonian graphs of minimum degree >= 3.

Three chord constructions produce cycles different from C0:

* a chord of length l with the longer C0 arc gives n - l + 1 vertices;
* two crossing chords at distance d give n - d + 2;
* two parallel pairs at distances d1, d2 whose chords all cross each other
  give n - d1 - d2 + 4.

``find_long_cycle`` either meets a short chord during one pass over the
chords, or splits C0 into about sqrt(n)/alpha blocks.  It then matches each
block to a far block through two independent chords, and picks the crossing
or double-parallel construction from the shortest matched pair.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from . import kernels
from .graph import Edge, GeneralInstance, InstanceError, SmithInstance, edge_key, to_general


class Relation(str, Enum):
    CROSSING = "crossing"
    PARALLEL = "parallel"


class SharedEndpointError(ValueError):
    pass


class ConfigurationError(ValueError):
    pass


class InfeasiblePartition(ValueError):
    pass


@dataclass(frozen=True)
class ChordGeom:
    u: int
    v: int
    length: int

    @classmethod
    def of(cls, n: int, chord) -> "ChordGeom":
        u, v = edge_key(*chord)
        return cls(u, v, chord_length(n, chord))


def _n_of(inst) -> int:
    return inst if isinstance(inst, int) else inst.n


def _check_chords(inst, chords) -> None:
    if isinstance(inst, int):
        return
    for a, b in chords:
        if not inst.has_edge(int(a), int(b)):
            raise ConfigurationError(f"{a}-{b} is not an edge of the instance")


def chord_length(n: int, chord) -> int:
    a, b = chord
    d = abs(int(a) - int(b))
    return min(d, n - d)


def _sorted_points(e1, e2):
    pts = [int(x) for x in (*e1, *e2)]
    if len(set(pts)) != 4:
        raise SharedEndpointError(f"chords {tuple(e1)} and {tuple(e2)} share an endpoint")
    return sorted(pts)


def _arcs(n: int, p) -> list[int]:
    """Forward C0 distances between consecutive points of the cyclically sorted list p."""
    m = len(p)
    return [(p[(t + 1) % m] - p[t]) % n for t in range(m)]


def chord_distance(n: int, e1, e2) -> tuple[int, Relation]:
    p = _sorted_points(e1, e2)
    a = _arcs(n, p)
    first = {p.index(int(e1[0])), p.index(int(e1[1]))}
    if first in ({0, 2}, {1, 3}):
        return min(a[0] + a[2], a[1] + a[3]), Relation.CROSSING
    # endpoints of each chord are consecutive; the distance uses the two
    # arcs that pass from one chord to the other
    if first in ({0, 1}, {2, 3}):
        return a[1] + a[3], Relation.PARALLEL
    return a[0] + a[2], Relation.PARALLEL


def arc(n: int, a: int, b: int) -> np.ndarray:
    """Vertices of C0 from a forward to b, both included."""
    if a <= b:
        return np.arange(a, b + 1, dtype=np.int64)
    return np.concatenate([np.arange(a, n + 1, dtype=np.int64), np.arange(1, b + 1, dtype=np.int64)])


def cycle_from_short_chord(inst, chord) -> np.ndarray:
    """Chord plus the longer of the two C0 arcs between its endpoints."""
    n = _n_of(inst)
    _check_chords(inst, [chord])
    a, b = sorted(int(x) for x in chord)
    if b - a >= n - (b - a):
        return arc(n, a, b)
    return arc(n, b, a)


def cycle_from_crossing_pair(inst, e1, e2) -> np.ndarray:
    n = _n_of(inst)
    d, rel = chord_distance(n, e1, e2)
    if rel is not Relation.CROSSING:
        raise ConfigurationError("chords do not cross")
    _check_chords(inst, [e1, e2])
    p = _sorted_points(e1, e2)
    a = _arcs(n, p)
    t = 0 if a[1] + a[3] <= a[0] + a[2] else 1
    return np.concatenate([arc(n, p[t], p[t + 1]), arc(n, p[t + 2], p[(t + 3) % 4])[::-1]])


def cycle_from_double_parallel(inst, e1, e2, f1, f2) -> np.ndarray:
    """Cycle through all four chords; needs e1||e2, f1||f2 and every e crossing every f."""
    n = _n_of(inst)
    if chord_distance(n, e1, e2)[1] is not Relation.PARALLEL:
        raise ConfigurationError("e-pair is not parallel")
    if chord_distance(n, f1, f2)[1] is not Relation.PARALLEL:
        raise ConfigurationError("f-pair is not parallel")
    for e in (e1, e2):
        for f in (f1, f2):
            if chord_distance(n, e, f)[1] is not Relation.CROSSING:
                raise ConfigurationError(f"{tuple(e)} and {tuple(f)} do not cross")
    _check_chords(inst, [e1, e2, f1, f2])
    q = sorted(int(x) for c in (e1, e2, f1, f2) for x in c)
    chords = {frozenset(int(x) for x in c) for c in (e1, e2, f1, f2)}
    for k in range(8):
        r = q[k:] + q[:k]
        if chords == {frozenset((r[0], r[5])), frozenset((r[1], r[4])),
                      frozenset((r[2], r[7])), frozenset((r[3], r[6]))}:
            return np.concatenate([arc(n, r[5], r[6]), arc(n, r[3], r[4]),
                                   arc(n, r[1], r[2]), arc(n, r[7], r[0])])
    raise ConfigurationError("chord endpoints are not in the interleaved parallel layout")


@dataclass(frozen=True)
class BlockPartition:
    n: int
    r: int
    q_floor: int
    alpha: Fraction
    starts: np.ndarray  # block i covers vertices starts[i] .. starts[i+1]-1

    @property
    def sizes(self) -> np.ndarray:
        return np.diff(self.starts)

    @property
    def block_of(self) -> np.ndarray:
        out = np.zeros(self.n + 1, dtype=np.int32)
        out[1:] = np.repeat(np.arange(self.r, dtype=np.int32), self.sizes)
        return out


def _floor_sqrt_ratio(n: int, num: int, den: int) -> int:
    """floor(sqrt(n) * num / den) in exact integer arithmetic."""
    return math.isqrt(n * num * num) // den


def partition_blocks(n: int, alpha) -> BlockPartition:
    alpha = Fraction(alpha)
    if 4 * alpha * alpha >= n:
        raise InfeasiblePartition("alpha >= sqrt(n)/2")
    q_floor = _floor_sqrt_ratio(n, alpha.numerator, alpha.denominator)
    r0 = _floor_sqrt_ratio(n, alpha.denominator, alpha.numerator)
    for r in (r0, r0 + 1):
        if r < 1:
            continue
        base, extra = divmod(n, r)
        sizes = np.full(r, base, dtype=np.int64)
        sizes[:extra] += 1
        if sizes.min() >= q_floor and sizes.max() - q_floor <= 2 * alpha * alpha:
            starts = np.ones(r + 1, dtype=np.int64)
            starts[1:] += np.cumsum(sizes)
            return BlockPartition(n, r, q_floor, alpha, starts)
    raise InfeasiblePartition(f"no block count in {{{r0}, {r0 + 1}}} fits the size bounds (n={n})")


def theorem_bound(n: int, alpha) -> float:
    alpha = float(alpha)
    return n - 4 * alpha * (math.sqrt(n) + 2 * alpha) + 8


def short_chord_limit(n: int, alpha) -> int:
    """Largest integer l with l <= 4*alpha*sqrt(n) + 8*alpha^2 - 7.

    A chord this short yields a cycle of at least the theorem's length.
    """
    alpha = Fraction(alpha)
    hi = int(4 * alpha * (math.isqrt(n) + 1) + 8 * alpha * alpha)
    lo = -1
    while lo < hi:  # largest l passing the exact test; the test is monotone in l
        mid = (lo + hi + 1) // 2
        if _short_ok(mid, n, alpha):
            lo = mid
        else:
            hi = mid - 1
    return lo


def _short_ok(l: int, n: int, alpha: Fraction) -> bool:
    lhs = l + 7 - 8 * alpha * alpha
    return lhs <= 0 or lhs * lhs <= 16 * alpha * alpha * n


@dataclass
class LongCycle:
    cycle: np.ndarray
    certificate: str  # short_chord | crossing_pair | double_parallel
    chords: tuple[Edge, ...]
    lemma_bound: int
    bound: float
    alpha: Fraction

    @property
    def length(self) -> int:
        return int(len(self.cycle))

    def to_dict(self, with_cycle: bool = True) -> dict:
        d = {"length": self.length, "bound": self.bound, "lemma_bound": self.lemma_bound,
             "certificate": self.certificate, "chords": [list(c) for c in self.chords],
             "alpha": str(self.alpha)}
        if with_cycle:
            d["cycle"] = self.cycle.tolist()
        return d


def _min_chord(g: GeneralInstance) -> Edge:
    arr = g.chord_array
    d = np.abs(arr[:, 0] - arr[:, 1])
    k = int(np.argmin(np.minimum(d, g.n - d)))
    return int(arr[k, 0]), int(arr[k, 1])


def find_long_cycle(inst: GeneralInstance | SmithInstance) -> LongCycle:
    g = to_general(inst)
    n = g.n
    if g.min_degree < 3:
        raise InstanceError("minimum degree must be at least 3")
    alpha = Fraction(g.max_degree - 2, g.min_degree - 2)
    bound = theorem_bound(n, alpha)

    def short(chord, alpha=alpha):
        ch = edge_key(*chord)
        return LongCycle(cycle_from_short_chord(n, ch), "short_chord", (ch,),
                         n - chord_length(n, ch) + 1, bound, alpha)

    if 4 * alpha * alpha >= n:
        return short(_min_chord(g))
    try:
        part = partition_blocks(n, alpha)
    except InfeasiblePartition:
        return short(_min_chord(g))
    status, sigma, pairs, best_i, u, v = kernels.approx_scan(
        n, g.indptr, g.indices, part.block_of, part.starts, part.r, short_chord_limit(n, alpha))
    if status != 1:
        return short((int(u), int(v)))
    r = part.r
    i = int(best_i)
    j = int(sigma[i])
    k = (i + 1) % r if (j - i) % r <= r - (j - i) % r else (j + 1) % r
    fi = [(int(pairs[i, 0]), int(pairs[i, 1])), (int(pairs[i, 2]), int(pairs[i, 3]))]
    fk = [(int(pairs[k, 0]), int(pairs[k, 1])), (int(pairs[k, 2]), int(pairs[k, 3]))]
    options = []
    di, rel_i = chord_distance(n, *fi)
    dk, rel_k = chord_distance(n, *fk)
    if rel_i is Relation.CROSSING:
        options.append((cycle_from_crossing_pair(n, *fi), "crossing_pair", fi, n - di + 2))
    if rel_k is Relation.CROSSING:
        options.append((cycle_from_crossing_pair(n, *fk), "crossing_pair", fk, n - dk + 2))
    if not options:
        options.append((cycle_from_double_parallel(n, *fi, *fk), "double_parallel", fi + fk,
                        n - di - dk + 4))
    cyc, cert, used, lemma = max(options, key=lambda o: len(o[0]))
    return LongCycle(cyc, cert, tuple(edge_key(*c) for c in used), lemma, bound, alpha)
