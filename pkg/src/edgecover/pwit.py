"""Truncated Poisson weighted infinite trees and the message process on them.

A :class:`PwitTree` holds a *forest* of independent trees stored level by
level, so a batch of trees is processed with segmented numpy reductions.
Level 0 holds the roots; the children of node ``i`` at level ``l`` occupy
the contiguous slice ``child_start[l][i] : child_start[l][i] + child_count[l][i]``
of level ``l + 1``, in increasing order of edge length.

Each node's child edge lengths are the points of a rate-1 Poisson process
on ``[0, L]``. A node with no point in ``[0, L]`` keeps its first arrival
``L + Exp(1)`` instead (memorylessness makes this exact); such nodes are
counted in ``PwitTree.extended``.

Directed-edge messages follow the convention ``X(u, v)`` = message that
``v`` sends to ``u``, computed from ``v``'s other neighbours:

    X(u, v) = min_{w ~ v, w != u} (xi(v, w) - X(v, w))^+.

``TreeMessages.down[l][i]`` is ``X(parent(i), i)`` for node ``i`` at level
``l`` (built from the subtree below ``i``); ``TreeMessages.up[l][i]`` is
``X(i, parent(i))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from edgecover.rde import fstar_sample
from edgecover.rng import derive_seed, make_rng

FSTAR = "fstar"
ZERO = "zero"
BOUNDARY_MODES = (FSTAR, ZERO)


class DegenerateTreeError(ValueError):
    pass


class InsufficientDepthError(ValueError):
    pass


@dataclass
class PwitTree:
    depth: int
    cutoff: float
    n_trees: int
    xi: list  # xi[l]: edge length from parent, levels 1..depth (xi[0] unused)
    parent: list  # parent[l]: index into level l - 1
    rank: list  # rank[l]: 1-based child index within the parent
    child_start: list  # levels 0..depth-1
    child_count: list
    extended: int = 0
    seed: int | None = None

    def level_size(self, level: int) -> int:
        return self.n_trees if level == 0 else self.xi[level].size

    def children(self, level: int, i: int) -> slice:
        s = int(self.child_start[level][i])
        return slice(s, s + int(self.child_count[level][i]))

    def address(self, level: int, i: int) -> tuple:
        """Word over positive integers naming node ``i`` (root = empty word)."""
        word = []
        while level > 0:
            word.append(int(self.rank[level][i]))
            i = int(self.parent[level][i])
            level -= 1
        return tuple(reversed(word))

    def tree_of(self, level: int, i: int) -> int:
        while level > 0:
            i = int(self.parent[level][i])
            level -= 1
        return i

    def root_lengths(self, tree: int = 0) -> np.ndarray:
        return self.xi[1][self.children(0, tree)]


def _poisson_children(rng: np.random.Generator, n_parents: int, L: float):
    """Sorted Poisson(1) arrivals on [0, L] for each of ``n_parents`` nodes.

    Given the count ``m``, the arrivals are ``L`` times the normalised partial
    sums of ``m + 1`` i.i.d. exponentials (uniform order statistics).
    """
    counts = rng.poisson(L, n_parents).astype(np.int64)
    empty = counts == 0
    counts[empty] = 1
    start = np.zeros(n_parents, dtype=np.int64)
    np.cumsum(counts[:-1], out=start[1:])
    xi = np.empty(int(counts.sum()))
    regular = ~empty
    for m in np.unique(counts[regular]):
        sel = np.flatnonzero(regular & (counts == m))
        e = rng.standard_exponential((sel.size, int(m) + 1))
        cs = np.cumsum(e, axis=1)
        pts = cs[:, :m] / cs[:, m:] * L
        xi[start[sel][:, None] + np.arange(m)] = pts
    n_ext = int(empty.sum())
    if n_ext:
        xi[start[empty]] = L + rng.standard_exponential(n_ext)
    return start, counts, xi, n_ext


def sample_truncated_pwit(d: int, L: float, seed: int, n_trees: int = 1) -> PwitTree:
    """Grow ``n_trees`` independent PWITs breadth-first to depth ``d``."""
    if d < 1:
        raise ValueError(f"depth must be >= 1, got {d}")
    if not L > 0:
        raise ValueError(f"cutoff L must be positive, got {L}")
    if n_trees < 1:
        raise ValueError(f"n_trees must be >= 1, got {n_trees}")
    rng = make_rng(seed, "pwit/tree", 0)
    xi, parent, rank = [None], [None], [None]
    child_start, child_count = [], []
    extended = 0
    size = n_trees
    for _ in range(d):
        start, counts, lengths, n_ext = _poisson_children(rng, size, L)
        extended += n_ext
        child_start.append(start)
        child_count.append(counts)
        par = np.repeat(np.arange(size, dtype=np.int64), counts)
        xi.append(lengths)
        parent.append(par)
        rank.append(np.arange(lengths.size, dtype=np.int64) - start[par] + 1)
        size = lengths.size
    return PwitTree(d, float(L), n_trees, xi, parent, rank, child_start, child_count, extended, seed)


@dataclass
class TreeMessages:
    down: list  # down[l] = X(parent, node) at level l, l = 1..depth
    boundary_mode: str
    up: list | None = None  # up[l] = X(node, parent), filled by topdown_pass


def _segmin(values: np.ndarray, start: np.ndarray) -> np.ndarray:
    return np.minimum.reduceat(values, start)


def _level_messages(t: PwitTree, level: int, below: np.ndarray) -> np.ndarray:
    """``X(parent(v), v)`` for nodes ``v`` at ``level`` from their children's values."""
    vals = np.maximum(t.xi[level + 1] - below, 0.0)
    return _segmin(vals, t.child_start[level])


def boundary_values(mode: str, rng: np.random.Generator, size: int) -> np.ndarray:
    if mode == FSTAR:
        return fstar_sample(rng, size)
    if mode == ZERO:
        return np.zeros(size)
    raise ValueError(f"unknown boundary mode {mode!r}; expected one of {BOUNDARY_MODES}")


def backward_pass(t: PwitTree, mode: str = FSTAR, seed: int = 0) -> TreeMessages:
    """Fill in ``X(parent, v)`` bottom-up from boundary values at depth ``d``."""
    rng = make_rng(seed, "pwit/boundary", 0)
    d = t.depth
    down = [None] * (d + 1)
    down[d] = boundary_values(mode, rng, t.level_size(d))
    for level in range(d - 1, 0, -1):
        down[level] = _level_messages(t, level, down[level + 1])
    return TreeMessages(down, mode)


# -- root decisions ------------------------------------------------------------


@dataclass
class RootSummary:
    degree: np.ndarray  # |C_opt(root)| per tree
    cost: np.ndarray
    min_edge_in: np.ndarray  # bool: first (shortest) root edge chosen
    chosen: np.ndarray  # bool per level-1 node: member of its root's cover


def _first_argmin(values: np.ndarray, start: np.ndarray) -> np.ndarray:
    """Per segment, the position of the first minimum (lowest index on ties)."""
    seg_min = _segmin(values, start)
    owner = np.repeat(np.arange(start.size), np.diff(np.append(start, values.size)))
    pos = np.where(values == seg_min[owner], np.arange(values.size), values.size)
    return _segmin(pos, start)


def root_summary(t: PwitTree, m: TreeMessages, root_messages: np.ndarray | None = None) -> RootSummary:
    """Root cover of every tree in the forest.

    A root keeps each child ``j`` with ``xi(root, j) < X(root, j)``; if there is
    none it keeps the single minimiser of ``(xi - X)^+`` (an exact zero falls
    in this branch).
    """
    x1 = m.down[1] if root_messages is None else root_messages
    start, counts = t.child_start[0], t.child_count[0]
    if (counts == 0).any():
        raise DegenerateTreeError("a root has no children")
    xi = t.xi[1]
    diff = xi - x1
    chosen = diff < 0.0
    degree = np.add.reduceat(chosen.astype(np.int64), start)
    lonely = degree == 0
    if lonely.any():
        best = _first_argmin(np.maximum(diff, 0.0), start)
        chosen[best[lonely]] = True
        degree[lonely] = 1
    cost = np.add.reduceat(np.where(chosen, xi, 0.0), start)
    return RootSummary(degree, cost, chosen[start].copy(), chosen)


def root_cover(t: PwitTree, m: TreeMessages, tree: int = 0) -> set:
    """1-based indices of the root children kept by the root of ``tree``."""
    s = root_summary(t, m)
    sl = t.children(0, tree)
    return {int(r) for r in t.rank[1][sl][s.chosen[sl]]}


def root_cost(t: PwitTree, m: TreeMessages, tree: int = 0) -> float:
    sl = t.children(0, tree)
    s = root_summary(t, m)
    return math.fsum(t.xi[1][sl][s.chosen[sl]])


def min_edge_in_cover(t: PwitTree, m: TreeMessages, tree: int = 0) -> bool:
    return bool(root_summary(t, m).min_edge_in[tree])


# -- both directions and the no-wasteful-edge check ----------------------------


def _two_smallest(values: np.ndarray, start: np.ndarray):
    first = _first_argmin(values, start)
    m1 = values[first]
    rest = values.copy()
    rest[first] = np.inf
    m2 = _segmin(rest, start)
    return m1, first, m2


def topdown_pass(t: PwitTree, m: TreeMessages) -> TreeMessages:
    """Add ``X(v, parent(v))`` for every non-root node, top-down."""
    d = t.depth
    up = [None] * (d + 1)
    for level in range(1, d + 1):
        p_level = level - 1
        start = t.child_start[p_level]
        terms = np.maximum(t.xi[level] - m.down[level], 0.0)
        m1, first, m2 = _two_smallest(terms, start)
        if p_level == 0:
            pterm = np.full(t.level_size(0), np.inf)
        else:
            pterm = np.maximum(t.xi[p_level] - up[p_level], 0.0)
        par = t.parent[level]
        other = np.minimum(m1, pterm)[par]
        is_first = np.zeros(terms.size, dtype=bool)
        is_first[first] = True
        other[is_first] = np.minimum(m2, pterm)[par[is_first]]
        up[level] = other
    return TreeMessages(m.down, m.boundary_mode, up)


def _choices(t: PwitTree, m: TreeMessages, level: int):
    """Cover choices of nodes at ``level`` (which must have children).

    Returns ``(child_in, parent_in)``: ``child_in[j]`` for level ``level + 1``
    node ``j`` says whether ``j`` is in ``C_opt(parent(j))``; ``parent_in[i]``
    says whether ``parent(i)`` is in ``C_opt(i)`` (False at the root). The
    parent is ranked before the children for tie-breaking.
    """
    start = t.child_start[level]
    cdiff = t.xi[level + 1] - m.down[level + 1]
    if level == 0:
        pdiff = np.full(t.level_size(0), np.inf)
    else:
        pdiff = t.xi[level] - m.up[level]
    child_in = cdiff < 0.0
    parent_in = pdiff < 0.0
    any_neg = parent_in | (np.add.reduceat(child_in.astype(np.int64), start) > 0)
    lonely = ~any_neg
    if lonely.any():
        cpos = np.maximum(cdiff, 0.0)
        ppos = np.maximum(pdiff, 0.0)
        cm1, cfirst, _ = _two_smallest(cpos, start)
        take_parent = lonely & (ppos <= cm1)
        take_child = lonely & ~take_parent
        parent_in |= take_parent
        child_in[cfirst[take_child]] = True
    return child_in, parent_in


def message_symmetry_check(t: PwitTree, m: TreeMessages, both_directions: TreeMessages | None = None) -> tuple[int, int]:
    """Count interior edges where ``v in C(w)`` and ``w in C(v)`` disagree.

    The slice is every edge whose endpoints both lie at depths ``1..d-1``.
    Returns ``(violations, edges_checked)``.
    """
    full = both_directions if both_directions is not None else topdown_pass(t, m)
    if full.up is None:
        raise ValueError("messages toward the root are missing; run topdown_pass first")
    if t.depth < 3:
        raise ValueError("interior slice is empty for depth < 3")
    violations = 0
    checked = 0
    for level in range(2, t.depth):
        child_in, _ = _choices(t, full, level - 1)
        _, parent_in = _choices(t, full, level)
        violations += int((child_in != parent_in).sum())
        checked += child_in.size
    return violations, checked


def recursion_mismatches(t: PwitTree, m: TreeMessages) -> int:
    """Internal edges whose stored message differs from its recomputation."""
    bad = 0
    for level in range(1, t.depth):
        bad += int((_level_messages(t, level, m.down[level + 1]) != m.down[level]).sum())
    return bad


# -- BP iterates on the tree ---------------------------------------------------


@dataclass
class TreeBpResult:
    messages: TreeMessages
    root_degree: list = field(default_factory=list)  # per iteration, arrays over trees
    root_cost: list = field(default_factory=list)
    agreement: list = field(default_factory=list)  # per iteration, bool per tree

    def disagreement_rate(self) -> np.ndarray:
        return np.array([1.0 - a.mean() for a in self.agreement])


def _cover_sets_equal(chosen_a: np.ndarray, chosen_b: np.ndarray, start: np.ndarray) -> np.ndarray:
    diff = (chosen_a != chosen_b).astype(np.int64)
    return np.add.reduceat(diff, start) == 0


def bp_on_pwit(t: PwitTree, k: int, init: str = ZERO, seed: int = 0,
               reference: TreeMessages | None = None) -> TreeBpResult:
    """Run ``k`` synchronous BP sweeps on the truncated tree.

    All downward messages start i.i.d. from ``init``; each sweep recomputes
    every level from the one below, while the depth-``d`` messages (which
    have no children in the truncation) keep their initial values. After
    each sweep the root decisions are compared with the root cover of
    ``reference`` (by default :func:`backward_pass` with fixed-point boundary).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k > t.depth:
        raise InsufficientDepthError(f"k = {k} sweeps need a tree of depth >= {k}, got {t.depth}")
    rng = make_rng(seed, "pwit/bp-init", 0)
    d = t.depth
    x = [None] + [boundary_values(init, rng, t.level_size(level)) for level in range(1, d + 1)]
    if reference is None:
        reference = backward_pass(t, FSTAR, derive_seed(seed, "pwit/bp-reference", 0))
    ref = root_summary(t, reference)
    res = TreeBpResult(TreeMessages(x, init))

    def record():
        s = root_summary(t, res.messages, x[1])
        res.root_degree.append(s.degree)
        res.root_cost.append(s.cost)
        res.agreement.append(_cover_sets_equal(s.chosen, ref.chosen, t.child_start[0]))

    record()
    for _ in range(k):
        x = [None] + [_level_messages(t, level, x[level + 1]) for level in range(1, d)] + [x[d]]
        res.messages = TreeMessages(x, init)
        record()
    return res


# -- Monte Carlo estimation ----------------------------------------------------


@dataclass
class RootEstimates:
    n_trees: int
    depth: int
    cutoff: float
    boundary_mode: str
    seed: int
    cost: np.ndarray
    degree: np.ndarray
    min_edge_in: np.ndarray
    extended: int

    def mean_stderr(self, values: np.ndarray) -> tuple[float, float]:
        values = np.asarray(values, dtype=float)
        return float(values.mean()), float(values.std(ddof=1) / math.sqrt(values.size))

    def degree_probabilities(self, kmax: int) -> np.ndarray:
        """Empirical ``P(deg = k)`` for ``k = 1..kmax`` plus a final ``> kmax`` bin."""
        counts = np.bincount(np.minimum(self.degree, kmax + 1), minlength=kmax + 2)[1:]
        return counts / self.degree.size


def estimate_root_statistics(n_trees: int, d: int = 4, L: float = 10.0, mode: str = FSTAR,
                             seed: int = 0, chunk: int = 500) -> RootEstimates:
    """Sample ``n_trees`` trees in fixed-size chunks and collect root statistics.

    Chunk ``c`` draws its tree and its boundary values from streams derived
    from ``(seed, c)``, so results depend only on the arguments.
    """
    costs, degrees, mins = [], [], []
    extended = 0
    done = 0
    c = 0
    while done < n_trees:
        b = min(chunk, n_trees - done)
        t = sample_truncated_pwit(d, L, derive_seed(seed, "pwit/chunk-tree", c), n_trees=b)
        msgs = backward_pass(t, mode, derive_seed(seed, "pwit/chunk-boundary", c))
        s = root_summary(t, msgs)
        costs.append(s.cost)
        degrees.append(s.degree)
        mins.append(s.min_edge_in)
        extended += t.extended
        done += b
        c += 1
    return RootEstimates(n_trees, d, float(L), mode, seed, np.concatenate(costs),
                         np.concatenate(degrees), np.concatenate(mins), extended)
