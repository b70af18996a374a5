"""Random weighted instances and edge-cover bookkeeping.

Weights are stored densely as an ``N x N`` float matrix where ``N`` is the
total vertex count. Non-edges (the diagonal, and same-side pairs of a
bipartite graph) hold ``+inf`` so that min-sum arithmetic ignores them
without special cases. In a bipartite graph vertices ``0..n-1`` form the
left side and ``n..2n-1`` the right side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np

from edgecover.rng import make_rng, open_uniform

COMPLETE = "complete"
BIPARTITE = "bipartite"


class InvalidInstanceError(ValueError):
    pass


class MalformedCoverError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """A complete (``K_n``) or complete bipartite (``K_{n,n}``) instance.

    ``n`` is the total vertex count for ``complete`` and the per-side count
    for ``bipartite``. ``mean`` is the exponential mean used at generation
    (``1`` for the unit convention, ``n`` for the rescaled one).
    """

    kind: str
    n: int
    weights: np.ndarray
    mean: float = 1.0
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in (COMPLETE, BIPARTITE):
            raise InvalidInstanceError(f"unknown graph kind {self.kind!r}")
        w = self.weights
        N = self.n_vertices
        if w.shape != (N, N):
            raise InvalidInstanceError(f"weight matrix shape {w.shape}, expected {(N, N)}")
        w.setflags(write=False)

    @property
    def n_vertices(self) -> int:
        return self.n if self.kind == COMPLETE else 2 * self.n

    def adjacent(self, u: int, v: int) -> bool:
        if u == v:
            return False
        if self.kind == BIPARTITE:
            return (u < self.n) != (v < self.n)
        return True

    def weight(self, u: int, v: int) -> float:
        N = self.n_vertices
        if not (0 <= u < N and 0 <= v < N):
            raise IndexError(f"vertex out of range for {N}-vertex graph: ({u}, {v})")
        if not self.adjacent(u, v):
            raise InvalidInstanceError(f"({u}, {v}) is not an edge of this {self.kind} graph")
        return float(self.weights[u, v])

    def edges(self) -> list[tuple[int, int]]:
        """All undirected edges ``(u, v)`` with ``u < v``, in row-major order."""
        N = self.n_vertices
        if self.kind == COMPLETE:
            return [(u, v) for u in range(N) for v in range(u + 1, N)]
        return [(u, v) for u in range(self.n) for v in range(self.n, N)]

    def admissible(self) -> np.ndarray:
        """Boolean ``N x N`` mask of vertex pairs that are edges."""
        N = self.n_vertices
        if self.kind == COMPLETE:
            return ~np.eye(N, dtype=bool)
        side = np.arange(N) < self.n
        return side[:, None] != side[None, :]


@dataclass(frozen=True)
class EdgeCover:
    edges: frozenset = field(default_factory=frozenset)
    cost: float = 0.0

    @classmethod
    def from_edges(cls, g: WeightedGraph, edges: Iterable[tuple[int, int]]) -> "EdgeCover":
        es = frozenset((min(u, v), max(u, v)) for u, v in edges)
        return cls(es, cover_cost(g, es))

    def __len__(self) -> int:
        return len(self.edges)


class CoverCheck(NamedTuple):
    valid: bool
    uncovered: list
    cost: float


def cover_cost(g: WeightedGraph, edges: Iterable[tuple[int, int]]) -> float:
    # fsum is correctly rounded, so equal edge sets give bit-identical costs
    return math.fsum(g.weight(u, v) for u, v in sorted(edges))


def _exp_weights(rng: np.random.Generator, count: int, mean: float) -> np.ndarray:
    u = open_uniform(rng, count)
    return mean * -np.log1p(-u)


def _check_mean(mean: float) -> None:
    if not (mean > 0 and math.isfinite(mean)):
        raise InvalidInstanceError(f"mean must be positive and finite, got {mean}")


def sample_complete(n: int, mean: float = 1.0, seed: int = 0) -> WeightedGraph:
    """``K_n`` with i.i.d. Exp(mean) edge weights.

    Edge ``e`` (row-major index over ``u < v``) takes draw ``e`` of the
    instance's Philox stream, transformed by ``-mean * log(1 - u)``. The
    draws do not depend on ``mean``, so two instances that differ only in
    ``mean`` have weights in the exact ratio of their means.
    """
    if n < 2:
        raise InvalidInstanceError(f"complete graph needs n >= 2, got {n}")
    _check_mean(mean)
    rng = make_rng(seed, "instance/complete", n)
    iu = np.triu_indices(n, k=1)
    w = np.full((n, n), np.inf)
    vals = _exp_weights(rng, len(iu[0]), mean)
    w[iu] = vals
    w[iu[1], iu[0]] = vals
    return WeightedGraph(COMPLETE, n, w, float(mean), seed)


def sample_bipartite(n: int, mean: float = 1.0, seed: int = 0) -> WeightedGraph:
    """``K_{n,n}`` with i.i.d. Exp(mean) weights on the ``n**2`` cross edges."""
    if n < 1:
        raise InvalidInstanceError(f"bipartite graph needs n >= 1, got {n}")
    _check_mean(mean)
    rng = make_rng(seed, "instance/bipartite", n)
    cross = _exp_weights(rng, n * n, mean).reshape(n, n)
    w = np.full((2 * n, 2 * n), np.inf)
    w[:n, n:] = cross
    w[n:, :n] = cross.T
    return WeightedGraph(BIPARTITE, n, w, float(mean), seed)


def sample(kind: str, n: int, mean: float = 1.0, seed: int = 0) -> WeightedGraph:
    if kind == COMPLETE:
        return sample_complete(n, mean, seed)
    if kind == BIPARTITE:
        return sample_bipartite(n, mean, seed)
    raise InvalidInstanceError(f"unknown graph kind {kind!r}")


def from_edge_weights(kind: str, n: int, triples, mean: float = 1.0, seed=None) -> WeightedGraph:
    """Build a graph from explicit ``(u, v, weight)`` triples.

    Every admissible pair must be listed exactly once.
    """
    N = n if kind == COMPLETE else 2 * n
    w = np.full((N, N), np.inf)
    probe = WeightedGraph(kind, n, np.full((N, N), np.inf), mean, seed)
    for u, v, x in triples:
        u, v, x = int(u), int(v), float(x)
        if not (0 <= u < N and 0 <= v < N) or not probe.adjacent(u, v):
            raise InvalidInstanceError(f"({u}, {v}) is not an edge of {kind} n={n}")
        if not (x > 0 and math.isfinite(x)):
            raise InvalidInstanceError(f"weight of ({u}, {v}) must be positive, got {x}")
        if np.isfinite(w[u, v]):
            raise InvalidInstanceError(f"duplicate edge ({u}, {v})")
        w[u, v] = w[v, u] = x
    missing = np.isinf(w) & probe.admissible()
    if missing.any():
        u, v = np.argwhere(missing)[0]
        raise InvalidInstanceError(f"missing weight for edge ({u}, {v})")
    return WeightedGraph(kind, n, w, mean, seed)


def rescale(g: WeightedGraph, factor: float) -> WeightedGraph:
    if not (factor > 0 and math.isfinite(factor)):
        raise ValueError(f"rescale factor must be positive, got {factor}")
    return WeightedGraph(g.kind, g.n, g.weights * factor, g.mean * factor, g.seed)


def validate_cover(g: WeightedGraph, c: EdgeCover | Iterable[tuple[int, int]]) -> CoverCheck:
    edges = c.edges if isinstance(c, EdgeCover) else c
    N = g.n_vertices
    covered = np.zeros(N, dtype=bool)
    for u, v in edges:
        if not (0 <= u < N and 0 <= v < N):
            raise MalformedCoverError(f"edge ({u}, {v}) references a vertex outside 0..{N - 1}")
        if not g.adjacent(u, v):
            raise MalformedCoverError(f"({u}, {v}) is not an edge of the host graph")
        covered[u] = covered[v] = True
    uncovered = np.flatnonzero(~covered).tolist()
    return CoverCheck(not uncovered, uncovered, cover_cost(g, edges))


# -- plain-text instance format -------------------------------------------------


def dumps(g: WeightedGraph) -> str:
    seed = "-" if g.seed is None else str(g.seed)
    lines = [f"{g.kind} {g.n} {g.mean!r} {seed}"]
    lines.extend(f"{u} {v} {g.weights[u, v]:.17g}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def loads(text: str) -> WeightedGraph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 4:
        raise InvalidInstanceError("expected header line 'kind n mean seed'")
    kind, n, mean, seed = rows[0]
    triples = []
    for i, r in enumerate(rows[1:], start=2):
        if len(r) != 3:
            raise InvalidInstanceError(f"line {i}: expected 'u v weight', got {' '.join(r)!r}")
        triples.append((int(r[0]), int(r[1]), float(r[2])))
    return from_edge_weights(kind, int(n), triples, float(mean), None if seed == "-" else int(seed))


def dump(g: WeightedGraph, path) -> None:
    Path(path).write_text(dumps(g))


def load(path) -> WeightedGraph:
    return loads(Path(path).read_text())
