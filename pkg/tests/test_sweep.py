import pytest

from polarekr.qcount import ProblemParams, f0, h2_count
from polarekr.sweep import failures, h1_value, point_claims, sweep_bounds, sweep_lemmas


def claims(p):
    return {r["claim"]: r for r in point_claims(ProblemParams(*p))}


def test_equality_point():
    rec = claims((5, 3, 1, 2))["h2_over_h1"]
    assert rec["status"] == "pass" and rec["equality"] is True
    assert rec["lhs"] == rec["rhs"] == 435


def test_h1_over_h2_point():
    rec = claims((7, 4, 1, 2))["h1_over_h2"]
    assert rec["status"] == "pass" and rec["lhs"] > rec["rhs"]


def test_h2_over_h1_strict_point():
    rec = claims((7, 4, 2, 2))["h2_over_h1"]
    assert rec["status"] == "pass" and rec["equality"] is False and rec["lhs"] > rec["rhs"]


def test_f0_split_point():
    c = claims((6, 3, 1, 2))
    assert c["f0.isotropic"]["rhs"] == 1771 == c["f0.hyperbolic"]["rhs"]
    assert c["f0.isotropic"]["lhs"] > 1771 > c["f0.hyperbolic"]["lhs"]


def test_boundary_excluded_from_h1_h2_comparison():
    # m = t+1 is never an h1 vs h2 grid point
    assert not any(k.startswith(("h1_over", "h2_over")) for k in claims((8, 3, 2, 2)))


def test_h1_value_kinds():
    p = ProblemParams(6, 3, 1, 2)
    assert h1_value(p) > f0(p)[0] > h1_value(p, "hyperbolicJoin")
    assert h1_value(ProblemParams(5, 3, 1, 2)) == h2_count(ProblemParams(5, 3, 1, 2))


def test_bounds_sweep():
    report = sweep_bounds(8, [2, 3, 4, 5])
    assert len(report) == 4 * 4 * 28
    assert failures(report) == []
    ratio = next(r for r in report if r["claim"] == "bounds.ratio_lower" and r["params"] == {"m": 3, "i": 2, "q": 2})
    assert ratio["rhs"] == "7/3"


def test_default_grid_passes():
    report = sweep_lemmas(range(2, 9), range(2, 6), range(1, 4), [2, 3])
    assert failures(report) == []
    keys = [(r["params"]["nu"], r["params"]["m"], r["params"]["t"], r["params"]["q"], r["claim"]) for r in report]
    assert keys == sorted(keys)
    kinds = {r["claim"] for r in report}
    assert {"bounds", "f0.isotropic", "f0.hyperbolic", "h1_over_h2", "h2_over_h1"} <= kinds


def test_sweep_order_independent():
    a = sweep_lemmas([7, 6, 5], [4, 3], [2, 1], [3, 2])
    b = sweep_lemmas([5, 6, 7], [3, 4], [1, 2], [2, 3])
    assert a == b


@pytest.mark.parametrize("p", [(2, 2, 1, 2), (3, 3, 2, 3)])
def test_points_outside_hypotheses_only_check_bounds(p):
    assert set(claims(p)) == {"bounds"}
