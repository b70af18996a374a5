"""Min-sum belief propagation for minimum-cost edge cover.

Messages live in a dense matrix ``x`` with ``x[a, b] = X(a, b)``: the
message that vertex ``b`` sends to its neighbour ``a``. The update is

    X^{k+1}(w, v) = min_{u ~ v, u != w} (xi(v, u) - X^k(v, u))^+

and vertex ``v`` keeps every neighbour ``u`` with ``xi(v, u) < X(v, u)``,
or, if there is none, the single neighbour minimising
``(xi(v, u) - X(v, u))^+`` (lowest index on ties).

A sweep is synchronous and costs O(N^2): for each ``v`` the two smallest
entries of row ``v`` of ``(xi - X)^+`` answer all of its outgoing messages.
A vertex with a single neighbour sends ``+inf`` (empty minimum).

Loopy updates on a finite graph produce exact ties (two equal reduced
weights, or a reduced weight of exactly zero) that floating point resolves
by rounding. Decisions therefore treat values within ``TIE_RTOL`` of the
magnitudes involved as equal, which keeps them invariant under ``xi -> c xi``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from edgecover.graphs import EdgeCover, WeightedGraph, cover_cost


TIE_RTOL = 1e-12


class ContractError(ValueError):
    pass


@dataclass
class MessageState:
    x: np.ndarray
    k: int
    mask: np.ndarray

    def directed_values(self) -> np.ndarray:
        """Messages on all directed edges, flattened in row-major order."""
        return self.x[self.mask]


@dataclass
class BpRecord:
    k: int
    cost: float
    cover_edges: int
    max_delta: float
    decision_changed: bool


@dataclass
class BpTrace:
    records: list[BpRecord] = field(default_factory=list)
    state: MessageState | None = None
    cover: EdgeCover | None = None

    @property
    def costs(self) -> list[float]:
        return [r.cost for r in self.records]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "cost", "cover_edges", "max_delta", "decision_changed"])
        for r in self.records:
            w.writerow([r.k, f"{r.cost:.17g}", r.cover_edges, f"{r.max_delta:.17g}", int(r.decision_changed)])
        return buf.getvalue()


def bp_init(g: WeightedGraph) -> MessageState:
    N = g.n_vertices
    return MessageState(np.zeros((N, N)), 0, g.admissible())


def _check(g: WeightedGraph, s: MessageState) -> None:
    N = g.n_vertices
    if s.x.shape != (N, N):
        raise ContractError(f"message state shape {s.x.shape} does not match {N}-vertex graph")


def _reduced(g: WeightedGraph, s: MessageState) -> np.ndarray:
    # (xi - X)^+; non-edges stay +inf
    return np.maximum(g.weights - s.x, 0.0)


def bp_step(g: WeightedGraph, s: MessageState) -> MessageState:
    _check(g, s)
    r = _reduced(g, s)
    N = g.n_vertices
    rows = np.arange(N)
    best = r.argmin(axis=1)
    m1 = r[rows, best]
    r[rows, best] = np.inf
    m2 = r.min(axis=1)
    # x_new[w, v]: v's row minimum, except for v's own argmin w which gets the runner-up
    x = np.broadcast_to(m1, (N, N)).copy()
    x[best, rows] = m2
    x[~s.mask] = 0.0
    return MessageState(x, s.k + 1, s.mask)


def decision_matrix(g: WeightedGraph, s: MessageState) -> np.ndarray:
    """Boolean matrix ``P`` with ``P[v, u]`` true iff ``u`` is in ``pi(v)``."""
    _check(g, s)
    with np.errstate(invalid="ignore"):
        diff = g.weights - s.x
        tol = TIE_RTOL * np.where(s.mask, np.maximum(np.abs(g.weights), np.abs(s.x)), 0.0)
    pick = diff < -tol
    lonely = ~pick.any(axis=1)
    if lonely.any():
        idx = np.flatnonzero(lonely)
        pos = np.maximum(diff[idx], 0.0)
        rows = np.arange(idx.size)
        best = pos.argmin(axis=1)
        # lowest index among entries tied with the minimum
        near = pos <= (pos[rows, best] + tol[idx, best])[:, None] + tol[idx]
        pick[idx, near.argmax(axis=1)] = True
    return pick


def _cover_from_pick(g: WeightedGraph, pick: np.ndarray) -> EdgeCover:
    sym = np.triu(pick | pick.T, k=1)
    us, vs = np.nonzero(sym)
    edges = list(zip(us.tolist(), vs.tolist()))
    return EdgeCover(frozenset(edges), cover_cost(g, edges))


def bp_decide(g: WeightedGraph, s: MessageState) -> EdgeCover:
    return _cover_from_pick(g, decision_matrix(g, s))


def _max_delta(a: np.ndarray, b: np.ndarray) -> float:
    same = a == b  # covers matching infinities
    with np.errstate(invalid="ignore"):
        d = np.where(same, 0.0, np.abs(a - b))
    return float(d.max()) if d.size else 0.0


def bp_run(g: WeightedGraph, k_max: int, stop_tol: float = 0.0) -> BpTrace:
    """Run ``k_max`` synchronous sweeps, recording the cover after each.

    With ``stop_tol > 0`` the run stops early once the largest message
    change in a sweep is at most ``stop_tol``. The record for ``k = 0`` is
    the greedy nearest-neighbour cover.
    """
    if k_max < 0:
        raise ValueError(f"k_max must be >= 0, got {k_max}")
    s = bp_init(g)
    pick = decision_matrix(g, s)
    cover = _cover_from_pick(g, pick)
    trace = BpTrace([BpRecord(0, cover.cost, len(cover), 0.0, False)])
    for _ in range(k_max):
        nxt = bp_step(g, s)
        delta = _max_delta(nxt.x, s.x)
        s = nxt
        new_pick = decision_matrix(g, s)
        changed = bool((new_pick != pick).any())
        if changed:
            cover = _cover_from_pick(g, new_pick)
        pick = new_pick
        trace.records.append(BpRecord(s.k, cover.cost, len(cover), delta, changed))
        if stop_tol > 0 and delta <= stop_tol:
            break
    trace.state = s
    trace.cover = cover
    return trace


def message_tail(s: MessageState, grid) -> np.ndarray:
    """Empirical complementary CDF of the messages at each grid point."""
    vals = s.directed_values()
    if vals.size == 0:
        raise ContractError("message state has no directed edges")
    grid = np.asarray(grid, dtype=float)
    if np.any(np.diff(grid) < 0):
        raise ContractError("grid must be sorted ascending")
    srt = np.sort(vals)
    return 1.0 - np.searchsorted(srt, grid, side="right") / srt.size
