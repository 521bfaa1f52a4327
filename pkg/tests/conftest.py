import numpy as np
import pytest

from lastfirst.core.rng import make_rng
from lastfirst.space import DissimilaritySpace, euclidean_space

A, B, C, D = 0, 1, 2, 3


@pytest.fixture
def line4() -> DissimilaritySpace:
    """The points a = 1, b = 2, c = 4, d = 4 on the real line."""
    return euclidean_space([[1.0], [2.0], [4.0], [4.0]])


def random_space(seed: int) -> DissimilaritySpace:
    """
    Up to 40 planar points. Odd seeds use a small integer grid and copy some
    points, so ties and co-located points are frequent.
    """
    rng = make_rng(seed)
    n = int(rng.integers(2, 41))
    if seed % 2:
        points = rng.integers(0, 6, size=(n, 2)).astype(float)
        copies = rng.integers(0, n, size=max(1, n // 5))
        points = np.vstack([points, points[copies]])
    else:
        points = rng.uniform(size=(n, 2))
    return euclidean_space(points)


@pytest.fixture(scope="session")
def random_spaces() -> list[DissimilaritySpace]:
    return [random_space(seed) for seed in range(100)]


def brute_rank(space: DissimilaritySpace, x: int, y: int) -> int:
    """q(x, y): points strictly nearer to x than y is."""
    return int(sum(space.dissim[x, z] < space.dissim[x, y] for z in range(space.size)))


def brute_closure(space: DissimilaritySpace, ys: list[int]) -> set[int]:
    return {x for x in range(space.size) for y in ys if space.dissim[x, y] == 0 and space.dissim[y, x] == 0}


def brute_maxmin(space: DissimilaritySpace, seed: int = 0) -> list[int]:
    """Exhaustive maxmin from ``seed``, ties to the smallest index."""
    landmarks = [seed]
    while True:
        outside = [x for x in range(space.size) if x not in brute_closure(space, landmarks)]
        if not outside:
            return landmarks
        gaps = {x: min(space.dissim[ell, x] for ell in landmarks) for x in outside}
        best = max(gaps.values())
        landmarks.append(min(x for x, g in gaps.items() if g == best))


def brute_in_sequence(ranks: list[list[int]], x: int, landmarks: list[int]) -> tuple[int, ...]:
    """(|{l in L : q(l, x) <= k}|) for k = 0 .. N-1, from a table of ranks q."""
    counts = [0] * len(ranks)
    for ell in landmarks:
        counts[ranks[ell][x]] += 1
    running, sequence = 0, []
    for c in counts:
        running += c
        sequence.append(running)
    return tuple(sequence)


def brute_lastfirst(space: DissimilaritySpace, seed: int = 0) -> list[int]:
    """
    Exhaustive lastfirst from ``seed``: the next landmark has the revlex-largest
    in-neighborhood sequence from the landmarks, i.e. the fewest landmarks
    reaching it at the smallest rank bound that tells candidates apart.
    """
    ranks = [[brute_rank(space, x, y) for y in range(space.size)] for x in range(space.size)]
    landmarks = [seed]
    while True:
        outside = [x for x in range(space.size) if x not in brute_closure(space, landmarks)]
        if not outside:
            return landmarks
        sequences = {x: brute_in_sequence(ranks, x, landmarks) for x in outside}
        # revlex maximum: smallest at the first position where sequences differ
        best = min(sequences.values())
        landmarks.append(min(x for x, s in sequences.items() if s == best))
