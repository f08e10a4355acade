"""Reproducible instance generation."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .graph import GeneralInstance, SmithInstance

NAMED_CHORDS = {
    "k4": (4, [(1, 3), (2, 4)]),
    "k33": (6, [(1, 4), (2, 5), (3, 6)]),
    "prism": (6, [(1, 4), (2, 6), (3, 5)]),
    # cube with C0 = 000,001,011,010,110,111,101,100
    "cube": (8, [(1, 4), (2, 7), (3, 6), (5, 8)]),
}

RETRY_BUDGET = 10_000


class GenerationError(RuntimeError):
    pass


class Kind(str, Enum):
    CUBIC = "cubic"
    REGULAR = "regular"
    MIN_DEGREE = "min_degree"
    NAMED = "named"


@dataclass(frozen=True)
class GenSpec:
    kind: Kind
    n: int = 0
    seed: int = 0
    delta: int = 3
    max_degree: int = 3
    name: str = ""

    def validate(self) -> None:
        if self.kind is Kind.NAMED:
            if self.name not in NAMED_CHORDS:
                raise ValueError(f"unknown named instance {self.name!r}; choose from {sorted(NAMED_CHORDS)}")
            return
        if self.n < 4:
            raise ValueError("n must be >= 4")
        if self.kind is Kind.CUBIC and self.n % 2:
            raise ValueError("cubic instances need even n")
        if self.kind in (Kind.REGULAR, Kind.MIN_DEGREE):
            if self.delta < 3:
                raise ValueError("delta must be >= 3")
            if self.n % 2:
                raise ValueError("regular instances are built from perfect matchings and need even n")
            if self.delta - 1 > self.n - 1 - 2:
                raise ValueError("delta too large for n")
        if self.kind is Kind.MIN_DEGREE and self.max_degree < self.delta:
            raise ValueError("max_degree must be >= delta")


def named(name: str) -> SmithInstance:
    n, chords = NAMED_CHORDS[name]
    return SmithInstance.from_chords(n, chords)


def _keys(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    return np.minimum(a, b) * (n + 1) + np.maximum(a, b)


def random_matching(n: int, rng: np.random.Generator, forbidden: np.ndarray | None = None) -> np.ndarray:
    """Perfect matching on 1..n avoiding C0 edges and the sorted keys in ``forbidden``.

    Rejection sampling over random permutation pairings.
    """
    for _ in range(RETRY_BUDGET):
        perm = rng.permutation(n) + 1
        a, b = perm[0::2], perm[1::2]
        d = np.abs(a - b)
        if np.any((d == 1) | (d == n - 1)):
            continue
        if forbidden is not None and len(forbidden):
            keys = _keys(a, b, n)
            idx = np.minimum(np.searchsorted(forbidden, keys), len(forbidden) - 1)
            if np.any(forbidden[idx] == keys):
                continue
        return np.stack([a, b], axis=1)
    raise GenerationError(f"no admissible matching found after {RETRY_BUDGET} attempts (n={n})")


def random_cubic(n: int, seed: int) -> SmithInstance:
    rng = np.random.default_rng(seed)
    m = random_matching(n, rng)
    return SmithInstance.from_chords(n, [(int(a), int(b)) for a, b in m])


def random_regular(n: int, delta: int, seed: int) -> GeneralInstance:
    rng = np.random.default_rng(seed)
    chosen: list[np.ndarray] = []
    forbidden = np.zeros(0, dtype=np.int64)
    for _ in range(delta - 2):
        m = random_matching(n, rng, forbidden)
        chosen.append(m)
        forbidden = np.sort(np.concatenate([forbidden, _keys(m[:, 0], m[:, 1], n)]))
    return GeneralInstance.from_chords(n, np.concatenate(chosen))


def random_min_degree(n: int, delta: int, max_degree: int, seed: int) -> GeneralInstance:
    """delta-regular base plus random extra chords between vertices still below max_degree."""
    base = random_regular(n, delta, seed)
    rng = np.random.default_rng([seed, 1])
    deg = np.full(n + 1, delta, dtype=np.int64)
    keys = set(_keys(base.chord_array[:, 0], base.chord_array[:, 1], n).tolist())
    extra = []
    target = int(rng.integers(0, n * (max_degree - delta) // 2 + 1))
    for _ in range(4 * target):
        if len(extra) >= target:
            break
        a, b = (int(x) for x in rng.integers(1, n + 1, size=2))
        if a == b or abs(a - b) in (1, n - 1) or deg[a] >= max_degree or deg[b] >= max_degree:
            continue
        k = min(a, b) * (n + 1) + max(a, b)
        if k in keys:
            continue
        keys.add(k)
        deg[a] += 1
        deg[b] += 1
        extra.append((a, b))
    chords = np.concatenate([base.chord_array, np.asarray(extra, dtype=np.int64).reshape(-1, 2)])
    return GeneralInstance.from_chords(n, chords)


def generate(spec: GenSpec) -> SmithInstance | GeneralInstance:
    spec.validate()
    if spec.kind is Kind.NAMED:
        return named(spec.name)
    if spec.kind is Kind.CUBIC:
        return random_cubic(spec.n, spec.seed)
    if spec.kind is Kind.REGULAR:
        return random_regular(spec.n, spec.delta, spec.seed)
    return random_min_degree(spec.n, spec.delta, spec.max_degree, spec.seed)


def random_cubic_corpus(count: int, sizes, seed: int = 0):
    """``count`` cubic instances with n drawn cyclically from ``sizes``."""
    sizes = list(sizes)
    return [random_cubic(sizes[k % len(sizes)], seed * 1_000_003 + k) for k in range(count)]


def quarter_reflection(n: int) -> SmithInstance:
    """Cubic instance whose chords are all long: quarter 1 is mirrored onto quarter 3, quarter 2 onto 4.

    Chords inside a mirrored pair are nested and chords from different pairs
    cross, which is the layout the block matching has to resolve.
    """
    if n % 8:
        raise ValueError("quarter_reflection needs n divisible by 8")
    m = n // 4
    chords = [(x, 3 * m + 1 - x) for x in range(1, m + 1)]
    chords += [(x, 5 * m + 1 - x) for x in range(m + 1, 2 * m + 1)]
    return SmithInstance.from_chords(n, chords)
