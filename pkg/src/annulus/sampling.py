"""Seeded low-discrepancy samples so every "random" check is reproducible."""

from __future__ import annotations

import math

import numpy as np
from scipy.stats import qmc

DEFAULT_SEED = 20240607


def unit_square(n: int, d: int = 2, seed: int = DEFAULT_SEED) -> np.ndarray:
    return qmc.Halton(d=d, scramble=True, seed=seed).random(n)


def annulus_points(n: int, r_in: float, r_out: float, seed: int = DEFAULT_SEED) -> np.ndarray:
    """n points in r_in < |z| < r_out, uniform in log r and angle."""
    u = unit_square(n, 2, seed)
    r = np.exp(math.log(r_in) + u[:, 0] * (math.log(r_out) - math.log(r_in)))
    return r * np.exp(2j * math.pi * u[:, 1])


def disk_points(n: int, r_max: float = 1.0, seed: int = DEFAULT_SEED) -> np.ndarray:
    """n points in |z| < r_max, uniform in area."""
    u = unit_square(n, 2, seed)
    return r_max * np.sqrt(u[:, 0]) * np.exp(2j * math.pi * u[:, 1])


def pairs_annulus(n: int, R: float, sep: float = 0.05, margin: float = 0.02, seed: int = DEFAULT_SEED):
    """n pairs (z, a) with |z - a| >= sep and boundary distance >= margin."""
    out_z, out_a = [], []
    k = 0
    while len(out_z) < n:
        pts = annulus_points(4 * n, 1.0 + margin, R - margin, seed + k)
        z, a = pts[0::2], pts[1::2]
        for zi, ai in zip(z, a):
            if abs(zi - ai) >= sep and len(out_z) < n:
                out_z.append(zi)
                out_a.append(ai)
        k += 1
    return np.array(out_z), np.array(out_a)
