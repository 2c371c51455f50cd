"""
Brute-force reference implementations.

Each oracle recomputes a production quantity along a separate code path
(plain loops, numerical integration) and shares nothing with it beyond
scalar arithmetic. They are slow on purpose and only used for cross-checks.
"""

import logging
from fractions import Fraction
from itertools import product
from typing import Any, List, Optional, Sequence

import numpy as np
import scipy.integrate as spi

from ..core.config import config
from ..core.exception import DimensionError

logger = logging.getLogger(__name__)


def cdf_by_enumeration(j, x: Sequence[Any]):
    """Sum of the mass of every cell whose atoms are all <= x."""
    if len(x) != len(j.axes):
        raise DimensionError(f"Point has {len(x)} coordinates, joint has d={len(j.axes)}")
    total = Fraction(0) if j.track == "rational" else 0.0
    for index in product(*(range(len(axis)) for axis in j.axes)):
        if all(j.axes[k][i] <= x[k] for k, i in enumerate(index)):
            total += j.mass[index]
    return total


def tau_by_pair_enumeration(j):
    """Concordant minus discordant probability over all ordered cell pairs."""
    if len(j.axes) != 2:
        raise DimensionError(f"Pair enumeration needs d=2, got d={len(j.axes)}")
    xs, ys = j.axes
    cells = [(xs[i], ys[k], j.mass[i, k]) for i in range(len(xs)) for k in range(len(ys))]
    tau = Fraction(0) if j.track == "rational" else 0.0
    for x1, y1, p1 in cells:
        for x2, y2, p2 in cells:
            orientation = (x1 - x2) * (y1 - y2)
            if orientation > 0:
                tau += p1 * p2
            elif orientation < 0:
                tau -= p1 * p2
    return tau


def _breakpoints(c) -> Optional[List[List[float]]]:
    skeleton = getattr(c, "skeleton", None)
    if skeleton is None or not skeleton.is_materialized:
        return None
    return [[float(p) for p in axis if 0 < p < 1] for axis in skeleton.grid]


def copula_integral_by_quadrature(c, rel_tol: Optional[float] = None) -> float:
    """
    Integral of c over [0,1]^d by nested adaptive quadrature.

    Skeleton grid values are passed to the integrator as breakpoints, so
    each piece it integrates is smooth.
    """
    rel_tol = config.tolerance.quadrature_rel_tol if rel_tol is None else rel_tol
    points = _breakpoints(c)
    opts = []
    for k in range(c.dims):
        level = {"epsrel": rel_tol, "epsabs": rel_tol * 1e-2, "limit": 200}
        if points and points[k]:
            level["points"] = points[k]
        opts.append(level)

    def integrand(*u):
        return float(c(u))

    value, error = spi.nquad(integrand, [[0.0, 1.0]] * c.dims, opts=opts)
    logger.debug("Quadrature integral %.12g (error estimate %.1e)", value, error)
    return value


def copula_integral_by_midpoint(c, n: int = 64):
    """Midpoint rule on the n^d lattice of cell centres (exact arithmetic)."""
    if n < 1:
        raise ValueError("Midpoint rule needs n >= 1")
    centres = [Fraction(2 * i + 1, 2 * n) for i in range(n)]
    total = sum(c(u) for u in product(centres, repeat=c.dims))
    return total / n ** c.dims


def ipf_by_alternating_scaling(mass: np.ndarray, sweeps: int) -> np.ndarray:
    """Fixed number of row/column scaling rounds on a 2D array (no stopping rule)."""
    m = np.array(mass, dtype=float)
    rows, cols = m.shape
    for _ in range(sweeps):
        m = m / m.sum(axis=1, keepdims=True) / rows
        m = m / m.sum(axis=0, keepdims=True) / cols
    return m


def pit_by_simulation(
    margin,
    probes: Sequence[float],
    n_draws: int = 1_000_000,
    seed: Optional[int] = None,
) -> np.ndarray:
    """
    Empirical CDF of F(X) at the probes, with X drawn from the margin.

    Draws go through numpy's vectorized inverse transform (np.interp for
    piecewise-linear CDFs, searchsorted for step CDFs), independent of
    Margin.quantile and Margin.cdf.
    """
    rng = np.random.default_rng(config.seed if seed is None else seed)
    u = rng.random(n_draws)
    if margin.kind == "discrete":
        levels = np.cumsum([float(m) for m in margin.masses])
        levels[-1] = 1.0
        images = levels[np.searchsorted(levels, u, side="left")]
    else:
        xs = np.array([float(x) for x, _ in margin.breakpoints])
        fs = np.array([float(f) for _, f in margin.breakpoints])
        draws = np.interp(u, fs, xs)
        images = np.interp(draws, xs, fs)
    images.sort()
    counts = np.searchsorted(images, np.asarray(probes, dtype=float), side="right")
    logger.debug("PIT simulation with %d draws", n_draws)
    return counts / n_draws
