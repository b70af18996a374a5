import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from edgecover import graphs
from edgecover.graphs import (BIPARTITE, COMPLETE, EdgeCover, InvalidInstanceError,
                              MalformedCoverError, cover_cost, rescale, sample_bipartite,
                              sample_complete, validate_cover)


class TestSampleComplete:
    def test_two_vertices_one_positive_edge(self):
        g = sample_complete(2, 1.0, 3)
        assert g.edges() == [(0, 1)]
        assert g.weight(0, 1) > 0

    def test_too_small(self):
        with pytest.raises(InvalidInstanceError):
            sample_complete(1)

    def test_weight_mean(self):
        g = sample_complete(142, 1.0, 11)  # 10011 edges
        w = np.array([g.weight(u, v) for u, v in g.edges()])
        se = w.std(ddof=1) / math.sqrt(w.size)
        assert abs(w.mean() - 1.0) <= 3 * se

    def test_deterministic(self):
        a, b = sample_complete(5, 1.0, 42), sample_complete(5, 1.0, 42)
        assert np.array_equal(a.weights, b.weights)
        assert not np.array_equal(a.weights, sample_complete(5, 1.0, 43).weights)

    def test_symmetric_no_loops(self):
        g = sample_complete(7, 1.0, 0)
        assert np.array_equal(g.weights, g.weights.T)
        assert np.isinf(np.diag(g.weights)).all()

    def test_weights_read_only(self):
        g = sample_complete(4)
        with pytest.raises(ValueError):
            g.weights[0, 1] = 5.0

    @pytest.mark.parametrize("mean", [0.0, -1.0, math.nan])
    def test_bad_mean(self, mean):
        with pytest.raises(ValueError):
            sample_complete(4, mean)


class TestSampleBipartite:
    def test_single_edge(self):
        g = sample_bipartite(1, 1.0, 5)
        assert g.edges() == [(0, 1)]
        check = validate_cover(g, [(0, 1)])
        assert check.valid and check.cost == g.weight(0, 1)

    def test_structure(self):
        g = sample_bipartite(3, 1.0, 7)
        assert len(g.edges()) == 9
        with pytest.raises(InvalidInstanceError):
            g.weight(0, 1)
        with pytest.raises(InvalidInstanceError):
            g.weight(3, 5)
        assert g.adjacent(0, 4) and not g.adjacent(3, 4)

    def test_too_small(self):
        with pytest.raises(InvalidInstanceError):
            sample_bipartite(0)

    @pytest.mark.parametrize("kind", [COMPLETE, BIPARTITE])
    def test_mean_n_is_exact_multiple(self, kind):
        n = 9
        a = graphs.sample(kind, n, 1.0, 4)
        b = graphs.sample(kind, n, float(n), 4)
        fin = np.isfinite(a.weights)
        assert np.array_equal(b.weights[fin], n * a.weights[fin])


class TestRescale:
    def test_identity(self):
        g = sample_complete(6, 1.0, 1)
        assert np.array_equal(rescale(g, 1.0).weights, g.weights)

    @pytest.mark.parametrize("f", [0.0, -2.0])
    def test_bad_factor(self, f):
        with pytest.raises(ValueError):
            rescale(sample_complete(3), f)

    def test_mean_and_cost_scale(self):
        g = sample_complete(8, 1.0, 2)
        h = rescale(g, 8.0)  # power of two: exact
        assert h.mean == 8.0
        edges = [(0, 1), (2, 3), (4, 5), (6, 7)]
        assert cover_cost(h, edges) == 8.0 * cover_cost(g, edges)

    @settings(max_examples=50, deadline=None)
    @given(a=st.floats(0.1, 10), b=st.floats(0.1, 10), seed=st.integers(0, 2**32))
    def test_composition_within_one_ulp(self, a, b, seed):
        g = sample_complete(5, 1.0, seed)
        lhs = rescale(rescale(g, a), b).weights
        rhs = rescale(g, a * b).weights
        fin = np.isfinite(lhs)
        gap = np.abs(lhs[fin] - rhs[fin]) / np.spacing(rhs[fin])
        assert gap.max() <= 2.0

    def test_distribution_matches_mean_n(self):
        # rescaling a mean-1 graph by n gives exactly the mean-n sample
        g = sample_complete(10, 1.0, 9)
        assert np.array_equal(rescale(g, 10.0).weights, sample_complete(10, 10.0, 9).weights)


class TestValidateCover:
    def test_single_edge(self):
        g = sample_complete(2, 1.0, 0)
        c = validate_cover(g, EdgeCover.from_edges(g, [(0, 1)]))
        assert c.valid and c.uncovered == [] and c.cost == g.weight(0, 1)

    def test_uncovered(self, triangle):
        c = validate_cover(triangle, [(0, 1)])
        assert not c.valid and c.uncovered == [2]

    def test_unknown_vertex(self, triangle):
        with pytest.raises(MalformedCoverError):
            validate_cover(triangle, [(0, 7)])

    def test_non_edge(self):
        with pytest.raises(MalformedCoverError):
            validate_cover(sample_bipartite(2), [(0, 1)])

    def test_edge_orientation_ignored(self, triangle):
        assert EdgeCover.from_edges(triangle, [(1, 0), (2, 0)]).edges == frozenset({(0, 1), (0, 2)})


class TestTextFormat:
    @pytest.mark.parametrize("kind,n", [(COMPLETE, 6), (BIPARTITE, 4)])
    def test_round_trip(self, kind, n, tmp_path):
        g = graphs.sample(kind, n, 2.5, 17)
        path = tmp_path / "g.txt"
        graphs.dump(g, path)
        h = graphs.load(path)
        assert (h.kind, h.n, h.mean, h.seed) == (g.kind, g.n, g.mean, g.seed)
        assert np.array_equal(h.weights, g.weights)
        assert graphs.dumps(h) == graphs.dumps(g)

    def test_from_edge_weights_requires_all_edges(self):
        with pytest.raises(InvalidInstanceError):
            graphs.from_edge_weights(COMPLETE, 3, [(0, 1, 1.0)])
