"""Deterministic instance batches shared by the test modules."""

import numpy as np

from chordal_msc.gen import GenSpec, generate


def small_specs(count, max_n, seed, weights=("unit", "uniform")):
    """``count`` generator specs with 1 <= n <= max_n, cycling families and weight modes."""
    rng = np.random.default_rng(seed)
    fams = ["ktree", "interval", "subtree"]
    out = []
    for i in range(count):
        fam = fams[i % 3]
        n = int(rng.integers(1, max_n + 1))
        if fam == "ktree":
            param = int(rng.integers(1, 4))
        elif fam == "interval":
            param = float(rng.choice([0.8, 1.5, 3.0, 6.0]))
        else:
            param = int(rng.integers(2, 8))
        w = weights[(i // 3) % len(weights)]
        out.append(GenSpec(fam, n, param, w, 10, int(rng.integers(1 << 30))))
    return out


def small_graphs(count, max_n, seed, weights=("unit", "uniform")):
    return [(s, generate(s)) for s in small_specs(count, max_n, seed, weights)]
