"""Approximation-ratio arithmetic for the geometric rounding."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

E2 = math.e ** 2


def c_upper_limit(rho: float) -> float:
    """Supremum of admissible growth factors: min(e^2, 1/(1-rho))."""
    return E2 if rho >= 1 else min(E2, 1.0 / (1.0 - rho))


def _check_rho_gamma(rho, gamma):
    if not 0 < rho <= 1:
        raise ValueError(f"rho must lie in (0, 1], got {rho}")
    if gamma < 1:
        raise ValueError(f"gamma must be >= 1, got {gamma}")


def ratio_bound(rho: float, gamma: float, c: float) -> float:
    """rho*gamma*(c+1) / (2*(1-(1-rho)*c)*ln c), the expected-cost factor of the rounding."""
    _check_rho_gamma(rho, gamma)
    if not 1 < c < c_upper_limit(rho):
        raise ValueError(f"c must lie in (1, {c_upper_limit(rho):.6g}), got {c}")
    return rho * gamma * (c + 1) / (2 * (1 - (1 - rho) * c) * math.log(c))


@dataclass(frozen=True)
class OptimalC:
    c: float
    ratio: float


def optimal_c(rho: float = 1.0, gamma: float = 1.0) -> OptimalC:
    """Minimiser of :func:`ratio_bound` over c in (1, min(e^2, 1/(1-rho))).

    The log-derivative ``1/(c+1) + a/(1-a c) - 1/(c ln c)`` (``a = 1-rho``)
    goes from -inf at c -> 1 to a positive value at the upper end, and the
    root is bracketed there. At rho = 1 the root solves c ln c = c + 1.
    """
    _check_rho_gamma(rho, gamma)
    hi = c_upper_limit(rho)
    if hi <= 1:
        raise ValueError("no admissible growth factor c > 1")
    a = 1.0 - rho

    def dlog(c):
        return 1 / (c + 1) + a / (1 - a * c) - 1 / (c * math.log(c))

    lo_c = 1 + 1e-12
    hi_c = hi * (1 - 1e-15) if a > 0 else hi
    if dlog(hi_c) <= 0:  # only possible when the bracket is the e^2 cap
        c = hi_c
    else:
        c = brentq(dlog, lo_c, hi_c, xtol=1e-14, rtol=1e-15, maxiter=500)
    return OptimalC(c, ratio_bound(rho, gamma, c))


def mu_star() -> float:
    """The root of mu ln mu = mu + 1 (about 3.591)."""
    return brentq(lambda m: m * math.log(m) - m - 1, 2.0, 5.0, xtol=1e-15, rtol=1e-15)


def rho_for_target(eps: float, c: float | None = None) -> float:
    """Largest pricing loss eps' (rho = 1-eps') keeping the ratio within mu*/2 + eps.

    With ``c`` fixed the ratio is evaluated at that c, otherwise at the best c for rho.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    target = optimal_c(1.0, 1.0).ratio + eps

    def excess(e):
        rho = 1 - e
        if c is not None:
            if not c < c_upper_limit(rho):
                return math.inf
            return ratio_bound(rho, 1.0, c) - target
        return optimal_c(rho, 1.0).ratio - target

    hi = 0.5
    while excess(hi) <= 0:
        hi = (hi + 1) / 2
        if hi > 1 - 1e-6:
            return hi
    if c is not None:
        hi = min(hi, (1 - 1e-9) / c)
    return brentq(lambda e: min(excess(e), 1.0), 1e-12, hi, xtol=1e-12)


def expected_sigma(c: float, k: float) -> float:
    return (c - 1) / math.log(c) * k


def sample_sigma(c: float, k: float, samples: int, rng: np.random.Generator | int | None = 0) -> np.ndarray:
    """sigma(k) = h*c^j for the least j >= 0 with h*c^j >= k, h = c^U, U ~ U[0,1)."""
    rng = np.random.default_rng(rng)
    u = rng.random(samples)
    h = c ** u
    j = np.maximum(0, np.ceil(np.log(k / h) / math.log(c)))
    sigma = h * c ** j
    # guard the ceil against rounding on either side
    low = sigma < k
    sigma[low] *= c
    high = (j > 0) & (sigma / c >= k)
    sigma[high] /= c
    return sigma


@dataclass(frozen=True)
class SigmaCheck:
    c: float
    k: float
    samples: int
    empirical: float
    closed_form: float

    @property
    def ratio(self) -> float:
        return self.empirical / self.closed_form


def sigma_expectation_check(c: float, k: float, samples: int = 1_000_000,
                            rng: np.random.Generator | int | None = 0) -> SigmaCheck:
    if not 1 < c < E2:
        raise ValueError("c must lie in (1, e^2)")
    if k < 1:
        raise ValueError("k must be >= 1")
    emp = float(sample_sigma(c, k, samples, rng).mean())
    return SigmaCheck(c, k, samples, emp, expected_sigma(c, k))
