"""Fully enumerated configuration LP, solved with HiGHS (an independent route for small n)."""

import math

import numpy as np
from scipy.optimize import linprog

from chordal_msc.oracle import k_coloring


def full_config_lp(g, rho=1.0, gamma=1.0):
    """Optimum of the configuration LP with every (k, C) column present; columns by brute force."""
    n = g.n
    if n == 0:
        return 0.0
    cols = []
    for k in range(1, n + 1):
        width = math.floor(gamma * k + 1e-9)
        for mask in range(1, 1 << n):
            S = [v for v in range(n) if mask >> v & 1]
            if k_coloring(g, width, S) is not None:
                cols.append((k, S))
    nx = n * n
    N = nx + len(cols)
    c = np.zeros(N)
    for v in range(n):
        c[v * n:(v + 1) * n] = g.weights[v] * np.arange(1, n + 1)
    A_eq = np.zeros((n, N))
    for v in range(n):
        A_eq[v, v * n:(v + 1) * n] = 1
    A_ub, b_ub = [], []
    for k in range(1, n + 1):
        row = np.zeros(N)
        for i, (kk, _) in enumerate(cols):
            if kk == k:
                row[nx + i] = 1
        A_ub.append(row)
        b_ub.append(1 / rho)
    for v in range(n):
        for k in range(1, n + 1):
            row = np.zeros(N)
            row[v * n:v * n + k] = 1
            for i, (kk, S) in enumerate(cols):
                if kk == k and v in S:
                    row[nx + i] = -1
            A_ub.append(row)
            b_ub.append(0)
    res = linprog(c, A_ub=np.array(A_ub), b_ub=b_ub, A_eq=A_eq, b_eq=np.ones(n),
                  bounds=(0, None), method="highs")
    assert res.status == 0, res.message
    return float(res.fun)
