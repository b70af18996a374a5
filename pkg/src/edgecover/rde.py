"""The edge-cover recursive distributional equation

    X =d min_j (xi_j - X_j)^+,    {xi_j} a rate-1 Poisson process,

its fixed point and limit constants, and Monte Carlo population dynamics.

The update sends a complementary CDF of the form ``c * exp(-y)`` (y >= 0)
to ``exp(-c) * exp(-y)``, so its iterates are tracked by the scalar map
``c -> exp(-c)``, whose fixed point is ``W(1)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from edgecover.rng import make_rng


def lambert_w(x: float, tol: float = 1e-16, max_iter: int = 50) -> float:
    """Principal branch of Lambert W on ``[0, inf)``.

    Halley iteration started from ``log(1 + x)``, which lies within a factor
    of two of the root on the whole half-line.
    """
    x = float(x)
    if math.isnan(x) or x < 0:
        raise ValueError(f"lambert_w is defined here for x >= 0 only, got {x}")
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf
    w = math.log1p(x)
    for _ in range(max_iter):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= step
        if abs(step) <= tol * (1.0 + abs(w)):
            break
    return w


W1 = lambert_w(1.0)


def t_iterate(c0: float, k: int) -> list[float]:
    """``[c_1, ..., c_k]`` with ``c_{j+1} = exp(-c_j)``."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    out = []
    c = float(c0)
    for _ in range(k):
        c = math.exp(-c)
        out.append(c)
    return out


def fstar_tail(y):
    """Complementary CDF of the fixed-point law: ``W(1) e^{-y}`` for y >= 0, else 1."""
    y = np.asarray(y, dtype=float)
    out = np.where(y < 0, 1.0, W1 * np.exp(-np.maximum(y, 0.0)))
    return float(out) if out.ndim == 0 else out


def exp_tail(c: float, y):
    """Complementary CDF ``c e^{-y}`` (y >= 0) reached after one or more updates."""
    y = np.asarray(y, dtype=float)
    return np.where(y < 0, 1.0, c * np.exp(-np.maximum(y, 0.0)))


def fstar_sample(rng: np.random.Generator, size=None):
    """Draw from the fixed-point law: 0 w.p. ``1 - W(1)``, else Exp(1)."""
    return tail_law_sample(rng, W1, size)


def tail_law_sample(rng: np.random.Generator, c: float, size=None):
    """Draw from the law with tail ``c e^{-y}``: 0 w.p. ``1 - c``, else Exp(1)."""
    if size is None:
        return float(rng.standard_exponential()) if rng.random() < c else 0.0
    hit = rng.random(size) < c
    out = np.zeros(hit.shape)
    out[hit] = rng.standard_exponential(int(hit.sum()))
    return out


# -- limit constants -----------------------------------------------------------


@dataclass(frozen=True)
class Constants:
    w1: float
    kn_limit: float
    knn_limit: float
    root_cost: float
    deg1: float
    min_edge_prob: float
    sources: dict = field(default_factory=dict, compare=False)

    def deg_k(self, k: int) -> float:
        """Limit probability that the root keeps exactly ``k`` cover edges."""
        if k < 1:
            raise ValueError("degree is at least 1")
        if k == 1:
            return self.deg1
        return math.exp(-self.w1) * self.w1**k / math.factorial(k)

    def deg_law(self, kmax: int) -> list[float]:
        return [self.deg_k(k) for k in range(1, kmax + 1)]

    def to_dict(self, deg_max: int = 5) -> dict:
        d = {
            "w1": self.w1,
            "kn_limit": self.kn_limit,
            "knn_limit": self.knn_limit,
            "root_cost": self.root_cost,
            "deg1": self.deg1,
            "deg_k": {str(k): self.deg_k(k) for k in range(2, deg_max + 1)},
            "min_edge_prob": self.min_edge_prob,
            "source": dict(self.sources),
        }
        return d

    def to_json(self, deg_max: int = 5) -> str:
        return json.dumps(self.to_dict(deg_max), indent=2, sort_keys=True)


def limit_constants() -> Constants:
    w = lambert_w(1.0)
    return Constants(
        w1=w,
        kn_limit=w + w * w / 2.0,
        knn_limit=2.0 * w + w * w,
        root_cost=2.0 * w + w * w,
        deg1=math.exp(-w) * (1.0 + w),
        min_edge_prob=w / 2.0 + 1.0 / w - w * w - 1.0,
        sources={
            "w1": "Lambert W(1), unique solution of c = exp(-c)",
            "kn_limit": "limit of E[min cover cost] on K_n, mean-n weights: W + W^2/2",
            "knn_limit": "limit of E[min cover cost] on K_{n,n}, mean-n weights: 2W + W^2",
            "root_cost": "expected cover weight at the PWIT root: 2W + W^2",
            "deg1": "root cover degree law, k = 1: e^{-W}(1 + W)",
            "deg_k": "root cover degree law, k >= 2: e^{-W} W^k / k!",
            "min_edge_prob": "least-cost root edge in the cover: W/2 + 1/W - W^2 - 1",
        },
    )


# -- population dynamics -------------------------------------------------------


def _arrivals(rng: np.random.Generator, size: int, L: float):
    """Rate-1 Poisson arrivals on ``[0, L]`` for ``size`` independent draws.

    Returns ``(offsets, xi, extended)``. A draw with no arrival in ``[0, L]``
    instead gets its first arrival ``L + Exp(1)``; ``extended`` counts them.
    Arrivals within a draw are not sorted.
    """
    counts = rng.poisson(L, size)
    empty = counts == 0
    n_ext = int(empty.sum())
    counts[empty] = 1
    offsets = np.zeros(size, dtype=np.int64)
    np.cumsum(counts[:-1], out=offsets[1:])
    xi = rng.random(int(counts.sum())) * L
    if n_ext:
        xi[offsets[empty]] = L + rng.standard_exponential(n_ext)
    return offsets, xi, n_ext


def rde_population_step(pool: np.ndarray, L: float, rng: np.random.Generator) -> np.ndarray:
    """Apply ``X <- min_j (xi_j - X_j)^+`` samplewise, drawing ``X_j`` from ``pool``."""
    pool = np.asarray(pool, dtype=float)
    if pool.size == 0:
        raise ValueError("pool must be nonempty")
    offsets, xi, _ = _arrivals(rng, pool.size, L)
    pick = rng.integers(0, pool.size, xi.size)
    vals = np.maximum(xi - pool[pick], 0.0)
    return np.minimum.reduceat(vals, offsets)


@dataclass
class PopulationTrace:
    coefficient: np.ndarray  # fraction of the pool above 0, per step
    stderr: np.ndarray
    pools: list = field(default_factory=list, repr=False)


def population_dynamics(pool_size: int, steps: int, L: float = 30.0, seed: int = 0,
                        init: str = "zero", keep_pools: bool = False) -> PopulationTrace:
    """Run ``steps`` population updates from an all-zero or fixed-point pool.

    After each step the tail coefficient ``c`` of ``c e^{-y}`` is estimated by
    the fraction of strictly positive samples.
    """
    rng = make_rng(seed, "rde/population", 0)
    if init == "zero":
        pool = np.zeros(pool_size)
    elif init == "fstar":
        pool = fstar_sample(rng, pool_size)
    else:
        raise ValueError(f"unknown init {init!r}")
    coef, err, pools = [], [], []
    for _ in range(steps):
        pool = rde_population_step(pool, L, rng)
        p = float((pool > 0).mean())
        coef.append(p)
        err.append(math.sqrt(p * (1 - p) / pool_size))
        if keep_pools:
            pools.append(pool)
    return PopulationTrace(np.array(coef), np.array(err), pools)


@dataclass
class BivariateTrace:
    mean_abs_diff: np.ndarray  # index 0 is the initial independent pool
    stderr: np.ndarray

    def to_csv(self) -> str:
        lines = ["iter,mean_abs_diff,stderr"]
        for i, (m, s) in enumerate(zip(self.mean_abs_diff, self.stderr)):
            lines.append(f"{i},{m:.17g},{s:.17g}")
        return "\n".join(lines) + "\n"


def bivariate_dynamics(pool_size: int, iters: int, L: float = 30.0, seed: int = 0) -> BivariateTrace:
    """Two-coordinate population dynamics under shared innovations.

    Starts from independent fixed-point coordinates. Each step draws one set
    of arrivals and pair indices per new sample and applies the update to
    both coordinates, so ``X`` and ``Y`` differ only through their inputs.
    ``E|X - Y| -> 0`` indicates the root value is determined by the tree.
    """
    rng = make_rng(seed, "rde/bivariate", 0)
    x = fstar_sample(rng, pool_size)
    y = fstar_sample(rng, pool_size)
    means, errs = [], []

    def record():
        d = np.abs(x - y)
        means.append(float(d.mean()))
        errs.append(float(d.std(ddof=1) / math.sqrt(pool_size)))

    record()
    for _ in range(iters):
        offsets, xi, _ = _arrivals(rng, pool_size, L)
        pick = rng.integers(0, pool_size, xi.size)
        x = np.minimum.reduceat(np.maximum(xi - x[pick], 0.0), offsets)
        y = np.minimum.reduceat(np.maximum(xi - y[pick], 0.0), offsets)
        record()
    return BivariateTrace(np.array(means), np.array(errs))
