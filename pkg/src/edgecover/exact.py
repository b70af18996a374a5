"""Exact minimum-cost edge cover for small instances.

Three independent methods, used to certify BP and each other:

* :func:`exact_cover_dp` -- DP over the set of covered vertices.
* :func:`exact_cover_decompose` -- cheapest-incident-edge baseline plus a
  minimum-weight matching on reduced weights, solved by DP over subsets.
* :func:`enumerate_cover` -- brute force over all edge subsets.

Both subset DPs process states grouped by their lowest missing vertex
``v``: every transition out of such a state adds ``v``, so it lands in a
group with a larger lowest missing vertex and the groups can be swept in
order with whole-array numpy operations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from edgecover.graphs import EdgeCover, WeightedGraph

MAX_DP_VERTICES = 20
MAX_ENUM_VERTICES = 6


class SizeLimitError(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    cover: EdgeCover
    cost: float
    method: str


def _guard(g: WeightedGraph, limit: int, method: str) -> None:
    if g.n_vertices > limit:
        raise SizeLimitError(f"{method} supports at most {limit} vertices, got {g.n_vertices}")


def _group_states(N: int, v: int) -> np.ndarray:
    """All subsets of ``range(N)`` containing ``0..v-1`` but not ``v``."""
    hi = np.arange(1 << (N - v - 1), dtype=np.int64)
    return (hi << (v + 1)) | ((1 << v) - 1)


def _split_on_bit(arr: np.ndarray, v: int, u: int) -> np.ndarray:
    """View a group-ordered array with a middle axis for membership of ``u > v``."""
    b = u - v - 1
    return arr.reshape(-1, 2, 1 << b)


def _result(g: WeightedGraph, edges, method: str) -> OracleResult:
    cover = EdgeCover.from_edges(g, edges)
    return OracleResult(cover, cover.cost, method)


def exact_cover_dp(g: WeightedGraph) -> OracleResult:
    """Optimal cover by DP over covered-vertex subsets.

    From a state ``S`` with lowest uncovered vertex ``v`` the DP adds one edge
    ``{v, u}`` for any neighbour ``u`` (covered already or not).
    """
    _guard(g, MAX_DP_VERTICES, "subset_dp")
    N = g.n_vertices
    w = g.weights
    full = (1 << N) - 1
    dp = np.full(1 << N, np.inf)
    dp[0] = 0.0
    for v in range(N):
        S = _group_states(N, v)
        base = dp[S]
        bv = 1 << v
        lower = w[v, :v]
        if v > 0 and np.isfinite(lower).any():
            T = S | bv
            dp[T] = np.minimum(dp[T], base + lower.min())
        for u in range(v + 1, N):
            if not np.isfinite(w[v, u]):
                continue
            pair = _split_on_bit(base, v, u).min(axis=1)
            T = _split_on_bit(S, v, u)[:, 1, :] | bv
            dp[T] = np.minimum(dp[T], pair + w[v, u])
    if not np.isfinite(dp[full]):
        raise ValueError("graph has an isolated vertex; no edge cover exists")
    return _result(g, _backtrack_dp(w, dp, full), "subset_dp")


def _backtrack_dp(w: np.ndarray, dp: np.ndarray, full: int) -> list[tuple[int, int]]:
    N = w.shape[0]
    edges = []
    T = full
    while T:
        found = None
        v = 0
        # v must be preceded only by members of T
        while found is None and v < N and (T >> v) & 1:
            for u in range(N):
                if u == v or not (T >> u) & 1 or not np.isfinite(w[v, u]):
                    continue
                preds = [T & ~(1 << v)]
                if u > v:
                    preds.append(T & ~(1 << v) & ~(1 << u))
                for S in preds:
                    if dp[S] + w[v, u] == dp[T]:
                        found = (S, v, u)
                        break
                if found:
                    break
            v += 1
        if found is None:
            raise RuntimeError("DP backtrack failed")  # pragma: no cover
        S, v, u = found
        edges.append((v, u))
        T = S
    return edges


def _cheapest_neighbour(w: np.ndarray) -> np.ndarray:
    return w.argmin(axis=1)


def exact_cover_decompose(g: WeightedGraph) -> OracleResult:
    """Optimal cover as cheapest attachments corrected by a matching.

    With ``mu(v)`` the cheapest incident weight, the optimum equals
    ``sum(mu) + min_M sum_{uv in M} (xi(u,v) - mu(u) - mu(v))`` over matchings
    ``M`` of edges with negative reduced weight. The cover is ``M`` plus the
    cheapest edge of every unmatched vertex.
    """
    _guard(g, MAX_DP_VERTICES, "decompose_matching")
    N = g.n_vertices
    w = g.weights
    mu = w.min(axis=1)
    if not np.isfinite(mu).all():
        raise ValueError("graph has an isolated vertex; no edge cover exists")
    red = w - mu[:, None] - mu[None, :]
    full = (1 << N) - 1
    dp = np.full(1 << N, np.inf)
    dp[0] = 0.0
    for v in range(N):
        S = _group_states(N, v)
        base = dp[S]
        bv = 1 << v
        # v stays unmatched
        T = S | bv
        dp[T] = np.minimum(dp[T], base)
        for u in range(v + 1, N):
            r = red[v, u]
            if not r < 0:
                continue
            free = _split_on_bit(base, v, u)[:, 0, :]
            T = _split_on_bit(S, v, u)[:, 0, :] | bv | (1 << u)
            dp[T] = np.minimum(dp[T], free + r)

    matched = _backtrack_matching(red, dp, full)
    edges = set(matched)
    hit = {x for e in matched for x in e}
    near = _cheapest_neighbour(w)
    for v in range(N):
        if v not in hit:
            u = int(near[v])
            edges.add((min(u, v), max(u, v)))
    return _result(g, edges, "decompose_matching")


def _backtrack_matching(red: np.ndarray, dp: np.ndarray, full: int) -> list[tuple[int, int]]:
    N = red.shape[0]
    matched = []
    T = full
    while T:
        found = None
        for v in range(N):
            if not (T >> v) & 1:
                break
            S = T & ~(1 << v)
            if dp[S] == dp[T] and _lowest_missing(S) == v:
                found = (S, None)
                break
            for u in range(v + 1, N):
                if not (T >> u) & 1 or not red[v, u] < 0:
                    continue
                S = T & ~(1 << v) & ~(1 << u)
                if _lowest_missing(S) == v and dp[S] + red[v, u] == dp[T]:
                    found = (S, (v, u))
                    break
            if found:
                break
        if found is None:
            raise RuntimeError("matching backtrack failed")  # pragma: no cover
        T, e = found
        if e:
            matched.append(e)
    return matched


def _lowest_missing(S: int) -> int:
    return ((~S) & (S + 1)).bit_length() - 1


def enumerate_cover(g: WeightedGraph) -> OracleResult:
    """Exhaustive scan over every subset of the edge set."""
    _guard(g, MAX_ENUM_VERTICES, "enumerate")
    N = g.n_vertices
    edges = g.edges()
    m = len(edges)
    inc = np.zeros((m, N), dtype=np.int64)
    for i, (u, v) in enumerate(edges):
        inc[i, u] = inc[i, v] = 1
    ew = np.array([g.weights[u, v] for u, v in edges])
    subsets = ((np.arange(1 << m)[:, None] >> np.arange(m)) & 1).astype(np.int64)
    valid = (subsets @ inc > 0).all(axis=1)
    costs = np.where(valid, subsets @ ew, np.inf)
    best = int(costs.argmin())
    if not np.isfinite(costs[best]):
        raise ValueError("graph has an isolated vertex; no edge cover exists")
    chosen = [edges[i] for i in range(m) if subsets[best, i]]
    return _result(g, chosen, "enumerate")

