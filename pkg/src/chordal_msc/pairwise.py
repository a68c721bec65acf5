"""Pairwise-independent Bernoulli sample space over a prime field.

Seed ``(a, b)`` in ``GF(p)^2`` draws ``Y_v = [(a*v + b) mod p < t_v]`` with
``t_v = floor(q_v * p)``. For distinct ``u, v < p`` the pair
``(a*u + b, a*v + b)`` is uniform over ``GF(p)^2``, so the indicators are
exactly pairwise independent with ``P[Y_v] = t_v / p``.
"""

from __future__ import annotations

import math
from typing import Iterator, Sequence

import numpy as np


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    r = math.isqrt(m)
    return all(m % d for d in range(3, r + 1, 2))


def next_prime(m: int) -> int:
    m = max(m, 2)
    while not is_prime(m):
        m += 1
    return m


class PairwiseSpace:
    def __init__(self, probs: Sequence[float], quantization: float = 1 / 128):
        if not 0 < quantization <= 1:
            raise ValueError("quantization must lie in (0, 1]")
        probs = np.asarray(probs, dtype=float)
        if probs.size and (probs.min() < 0 or probs.max() > 1):
            raise ValueError("probabilities must lie in [0, 1]")
        self.n = probs.size
        self.p = next_prime(max(self.n, math.ceil(1 / quantization - 1e-9)))
        # rounding down keeps every quantized probability <= the requested one
        self.thresholds = np.floor(probs * self.p).astype(np.int64)
        self.labels = np.arange(self.n, dtype=np.int64)

    @property
    def size(self) -> int:
        return self.p * self.p

    @property
    def probabilities(self) -> np.ndarray:
        return self.thresholds / self.p

    def seed_pair(self, seed: int) -> tuple[int, int]:
        return divmod(seed, self.p)

    def sample(self, seed: int) -> np.ndarray:
        a, b = self.seed_pair(seed)
        return ((a * self.labels + b) % self.p) < self.thresholds

    def batches(self, max_cells: int = 1 << 22) -> Iterator[tuple[int, np.ndarray]]:
        """Yield ``(first_seed, Y)`` with ``Y[s, v]`` for consecutive seeds, covering all ``p^2``."""
        p = self.p
        per_a = p * max(self.n, 1)
        step = max(1, max_cells // per_a)
        b = np.arange(p, dtype=np.int64)
        for a0 in range(0, p, step):
            a = np.arange(a0, min(p, a0 + step), dtype=np.int64)
            h = (a[:, None, None] * self.labels[None, None, :] + b[None, :, None]) % p
            yield a0 * p, (h < self.thresholds).reshape(a.size * p, self.n)
