import json
import math

import numpy as np
import pytest

from edgecover import harness
from edgecover.harness import (EXPERIMENTS, ConfigError, ExperimentConfig, StatSummary,
                               nonincreasing_within_noise, run_experiment)
from edgecover.rde import W1

SMALL = {
    "limit_kn": dict(replicas=6, n_ladder=(10, 20), k_max=10),
    "limit_knn": dict(replicas=6, n_ladder=(5, 10), k_max=10),
    "bp_vs_exact": dict(replicas=30, enum_replicas=10, n=9, k_max=8),
    "pwit_stats": dict(replicas=400, d=3, L=6.0, chunk=150),
    "rde_report": dict(pool_size=5000, iters=10, n=80, k_max=10, replicas=2),
    "endogeny": dict(pool_size=5000, iters=10),
}


class TestConfig:
    def test_defaults_carry_tolerances(self):
        assert ExperimentConfig.for_experiment("limit_kn").tolerance == 0.03
        assert ExperimentConfig.for_experiment("limit_knn").tolerance == 0.05
        assert ExperimentConfig.for_experiment("pwit_stats").replicas == 100_000

    def test_unknown_experiment(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.for_experiment("nope")

    @pytest.mark.parametrize("bad", [dict(replicas=0), dict(L=0.0), dict(mean_convention="half"),
                                     dict(boundary_mode="ones"), dict(tolerance=-1.0)])
    def test_invalid_values(self, bad):
        with pytest.raises(ConfigError):
            ExperimentConfig.for_experiment("pwit_stats", **bad)

    def test_ladder_too_small(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.for_experiment("limit_kn", n_ladder=(1, 10))

    def test_bp_vs_exact_range(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.for_experiment("bp_vs_exact", n=15)

    def test_parse_key_value(self):
        cfg = ExperimentConfig.parse("experiment = limit_kn  # K_n\nn_ladder = 50, 100\nreplicas = 3\nL = 2.5\n")
        assert cfg.n_ladder == (50, 100) and cfg.replicas == 3 and cfg.L == 2.5

    def test_parse_json_round_trip(self):
        cfg = ExperimentConfig.for_experiment("endogeny", master_seed=9)
        assert ExperimentConfig.parse(cfg.to_json()) == cfg

    @pytest.mark.parametrize("text", ["experiment = limit_kn\nbogus = 1", "replicas = 3", "experiment limit_kn",
                                      '{"experiment": "endogeny", "zzz": 1}'])
    def test_parse_errors(self, text):
        with pytest.raises(ConfigError):
            ExperimentConfig.parse(text)


class TestStatSummary:
    def test_pass_rule(self):
        assert StatSummary("x", 1.0, 0.1, 10, 1.02, "src", 0.03).passed
        assert not StatSummary("x", 1.0, 0.1, 10, 1.04, "src", 0.03).passed

    def test_needs_source(self):
        with pytest.raises(ValueError):
            StatSummary("x", 1.0, 0.1, 10, 1.0, "", 0.1)


class TestNoiseCheck:
    def test_flat_noise_allowed(self):
        m = [1.0, 0.5, 0.1, 0.1 + 1e-6, 0.1]
        assert nonincreasing_within_noise(m, [0.01] * 5)

    def test_real_rise_flagged(self):
        assert not nonincreasing_within_noise([1.0, 0.5, 0.1, 0.3], [0.001] * 4)

    def test_ignores_prefix(self):
        assert nonincreasing_within_noise([0.1, 0.9, 0.5, 0.4], [0.0] * 4, start=2)


@pytest.mark.parametrize("name", EXPERIMENTS)
class TestRunners:
    def test_runs_and_writes(self, name, tmp_path):
        cfg = ExperimentConfig.for_experiment(name, **SMALL[name])
        res = run_experiment(cfg)
        files = res.write(tmp_path)
        assert (tmp_path / f"{name}.json").exists()
        doc = json.loads((tmp_path / f"{name}.json").read_text())
        assert doc["config"]["experiment"] == name
        assert doc["passed"] == res.passed
        assert all(f.read_text() for f in files)
        for s in res.summaries:
            assert s.source and math.isfinite(s.estimate)

    def test_deterministic(self, name, tmp_path):
        cfg = ExperimentConfig.for_experiment(name, **SMALL[name])
        a = run_experiment(cfg)
        b = run_experiment(cfg)
        assert a.tables == b.tables and a.to_json() == b.to_json()

    def test_seed_matters(self, name):
        a = run_experiment(ExperimentConfig.for_experiment(name, **SMALL[name]))
        b = run_experiment(ExperimentConfig.for_experiment(name, master_seed=1, **SMALL[name]))
        assert a.tables != b.tables


class TestSpecificRunners:
    def test_two_vertex_ladder(self):
        res = run_experiment(ExperimentConfig.for_experiment("limit_kn", n_ladder=(2,), replicas=4000, k_max=3))
        rung = res.report["ladder"][0]
        assert abs(rung["mean_cost"] - 1.0) <= 4 * rung["stderr"]

    def test_mean_n_convention_scales_target(self):
        res = run_experiment(ExperimentConfig.for_experiment("limit_kn", n_ladder=(10,), replicas=3,
                                                             mean_convention="n"))
        assert res.report["ladder"][0]["target"] == pytest.approx(10 * (W1 + W1 * W1 / 2))

    def test_bp_vs_exact_two_vertices_zero_gap(self):
        res = run_experiment(ExperimentConfig.for_experiment("bp_vs_exact", n=2, replicas=5, enum_replicas=0))
        gaps = [float(r.split(",")[-1]) for r in res.tables["bp_vs_exact_gaps.csv"].splitlines()[1:]]
        assert gaps and all(g == 0.0 for g in gaps)

    def test_pwit_degree_bins(self):
        res = run_experiment(ExperimentConfig.for_experiment("pwit_stats", **SMALL["pwit_stats"]))
        assert res.report["degree_law_total"]["pass"]
        p = [res.summary(f"degree_p{k}").estimate for k in range(1, 6)]
        assert math.fsum(p) + res.report["degree_tail_above_5"] == pytest.approx(1.0, abs=1e-12)

    def test_rde_report_scalar_parts(self):
        res = run_experiment(ExperimentConfig.for_experiment("rde_report", **SMALL["rde_report"]))
        assert res.report["lambert_w"]["pass"]
        assert all(v["pass"] for v in res.report["t_iterate"].values())
        assert set(res.report["t_iterate"]) == {"0", "0.1", "1", "5"}

    def test_fixed_point_check_pools_instances(self):
        out = harness.fixed_point_tail_check(60, 5, seed=1, instances=3, grid=[0.0, 1.0])
        assert out["instances"] == 3 and len(out["empirical"]) == 2
        assert out["target"][0] == W1

    def test_human_lines(self):
        res = run_experiment(ExperimentConfig.for_experiment("endogeny", **SMALL["endogeny"]))
        text = res.human()
        assert text.splitlines()[0].startswith("endogeny: ")
        assert "final_mean_abs_diff" in text
