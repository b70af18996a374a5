"""Acceptance criteria 1-14, each at its stated tolerance.

Every test records one ``criterion N: PASS|FAIL ...`` line, printed in the
pytest terminal summary. Run alone with ``pytest tests/test_acceptance.py -s``.
"""

import math

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from edgecover import bp, graphs, pwit
from edgecover.harness import ExperimentConfig, run_experiment
from edgecover.rde import lambert_w, limit_constants, t_iterate

SEED = 20240601


def verdict(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _pwit(mode: str):
    return run_experiment(ExperimentConfig.for_experiment("pwit_stats", boundary_mode=mode, master_seed=SEED))


@pytest.fixture(scope="module")
def pwit_fstar():
    return _pwit(pwit.FSTAR)


@pytest.fixture(scope="module")
def pwit_zero():
    return _pwit(pwit.ZERO)


@pytest.fixture(scope="module")
def bp_vs_exact():
    return run_experiment(ExperimentConfig.for_experiment("bp_vs_exact", master_seed=SEED))


@pytest.fixture(scope="module")
def rde_report():
    return run_experiment(ExperimentConfig.for_experiment("rde_report", master_seed=SEED))


def test_criterion_01_lambert_w():
    w = lambert_w(1.0)
    res = abs(w * math.exp(w) - 1.0)
    verdict(1, res <= 1e-12 and round(w, 3) == 0.567, f"W(1)={w:.15f} residual={res:.2e}")


def test_criterion_02_operator_t():
    w = lambert_w(1.0)
    errs = {c0: abs(t_iterate(c0, 60)[-1] - w) for c0 in (0.0, 0.1, 1.0, 5.0)}
    verdict(2, all(e < 1e-12 for e in errs.values()),
            "max |c60 - W(1)| = " + f"{max(errs.values()):.2e}")


@pytest.mark.parametrize("crit,name", [(3, "limit_kn"), (4, "limit_knn")])
def test_criteria_03_04_finite_n_limits(crit, name):
    res = run_experiment(ExperimentConfig.for_experiment(name, master_seed=SEED))
    head = res.summaries[0]
    z = res.report["within_3_stderr"]["z"]
    ladder = " ".join(f"{r['n']}:{r['mean_cost']:.4f}" for r in res.report["ladder"])
    ok = head.passed and res.report["within_3_stderr"]["pass"] and res.report["ladder_toward_target"]["pass"]
    verdict(crit, ok, f"n=300 est {head.estimate:.4f} ± {head.stderr:.4f} target {head.target:.4f} "
                      f"tol {head.tolerance} z={z:.2f} ladder [{ladder}]")


def test_criterion_05_oracle_agreement(bp_vs_exact):
    r = bp_vs_exact.report
    ok = (r["oracle_agreement"]["pass"] and r["enumeration_exact"]["pass"]
          and r["enumeration_exact"]["instances"] >= 200 and r["instances"] >= 500)
    verdict(5, ok, f"{r['instances']} instances, max |dp - decompose| = {r['oracle_agreement']['max_abs_diff']:.2e}, "
                   f"{r['enumeration_exact']['instances']} enumerated exactly equal")


def test_criterion_06_bp_dominance(bp_vs_exact):
    r = bp_vs_exact.report["bp_dominance"]
    verdict(6, r["min_gap"] >= -1e-9, f"min over instances and k of (BP - exact) = {r['min_gap']:.3e}")


def test_criterion_07_pwit_root_cost(pwit_fstar):
    s = pwit_fstar.summary("root_cost")
    z = abs(s.estimate - 1.4560) / s.stderr
    verdict(7, abs(s.estimate - 1.4560) <= 0.02 and z <= 3.0,
            f"est {s.estimate:.4f} ± {s.stderr:.4f} over {s.replicas} trees, |diff| to 1.4560 = "
            f"{abs(s.estimate - 1.4560):.4f}, z={z:.2f}")


def test_criterion_08_degree_law(pwit_fstar):
    c = limit_constants()
    p = [pwit_fstar.summary(f"degree_p{k}").estimate for k in (1, 2, 3)]
    diffs = [abs(p[k - 1] - c.deg_k(k)) for k in (1, 2, 3)]
    exact_total = pwit_fstar.report["degree_law_total"]["pass"]
    verdict(8, max(diffs) <= 0.01 and exact_total,
            f"P(1..3) = {', '.join(f'{x:.4f}' for x in p)}, max |diff| = {max(diffs):.4f}, "
            f"bin counts sum to trees: {exact_total}")


def test_criterion_09_min_edge_probability(pwit_fstar):
    s = pwit_fstar.summary("min_edge_in_cover")
    target = limit_constants().min_edge_prob
    verdict(9, abs(s.estimate - target) <= 0.01, f"est {s.estimate:.4f} target {target:.4f}")


def test_criterion_10_fixed_point_messages(rde_report):
    r = rde_report.report["fixed_point_messages"]
    verdict(10, r["sup_distance"] <= 0.03,
            f"n=500 k=20 over {r['instances']} instances, sup distance {r['sup_distance']:.4f}")


def test_criterion_11_endogeny():
    res = run_experiment(ExperimentConfig.for_experiment("endogeny", master_seed=SEED))
    e = res.report["endogeny"]
    verdict(11, e["final"] < 0.01 and e["non_increasing_after_2"],
            f"E|X-Y| after {e['iterations']} iterations = {e['final']:.2e}, "
            f"non-increasing after 2: {e['non_increasing_after_2']}")


def test_criterion_12_scaling_invariance():
    mismatches = 0
    checks = 0
    for i in range(100):
        g = graphs.sample_complete(5 + i % 46, 1.0, SEED + i)
        for c in (0.5, 3.0):
            h = graphs.rescale(g, c)
            s, t = bp.bp_init(g), bp.bp_init(h)
            for k in range(21):
                if k in (0, 5, 20):
                    checks += 1
                    mismatches += bp.bp_decide(g, s).edges != bp.bp_decide(h, t).edges
                s, t = bp.bp_step(g, s), bp.bp_step(h, t)
    verdict(12, mismatches == 0, f"{mismatches} of {checks} decision sets differ")


def test_criterion_13_boundary_insensitivity(pwit_fstar, pwit_zero):
    a, b = pwit_fstar.summary("root_cost"), pwit_zero.summary("root_cost")
    combined = math.hypot(a.stderr, b.stderr)
    diff = abs(a.estimate - b.estimate)
    verdict(13, diff < 3 * combined,
            f"fixed-point boundary {a.estimate:.4f}, zero boundary {b.estimate:.4f}, "
            f"diff {diff:.4f} vs 3 x combined stderr {3 * combined:.4f}")


def test_zero_boundary_matches_propagated_tail(pwit_zero):
    """At depth d a zero boundary gives root messages with tail c_{d-1} e^{-y};
    the expected root cost is then ``c + e^{-c}(1 + c)``."""
    c = t_iterate(0.0, 3)[-1]
    expected = c + math.exp(-c) * (1.0 + c)
    s = pwit_zero.summary("root_cost")
    assert abs(s.estimate - expected) <= max(3 * s.stderr, 0.005)


SMALL = {
    "limit_kn": dict(replicas=20, n_ladder=(20, 40)),
    "limit_knn": dict(replicas=10, n_ladder=(10, 20)),
    "bp_vs_exact": dict(replicas=60, enum_replicas=20),
    "pwit_stats": dict(replicas=3000),
    "rde_report": dict(pool_size=20_000, n=200, replicas=2),
    "endogeny": dict(pool_size=20_000),
}


def test_criterion_14_determinism(tmp_path):
    differ = []
    for name, kw in SMALL.items():
        cfg = ExperimentConfig.for_experiment(name, master_seed=SEED, **kw)
        a = run_experiment(cfg).write(tmp_path / "a" / name)
        b = run_experiment(cfg).write(tmp_path / "b" / name)
        assert [p.name for p in a] == [p.name for p in b]
        differ += [p.name for p, q in zip(a, b) if p.read_bytes() != q.read_bytes()]
    verdict(14, not differ, f"{len(SMALL)} experiments rerun, differing files: {differ or 'none'}")
