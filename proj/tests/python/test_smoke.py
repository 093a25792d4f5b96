"""Smoke tests for the python bindings."""

import pytest

import lanesched


def tiny_instance(vehicles=None):
    return {
        "format_version": 1,
        "horizon": 60.0,
        "separation_gap": 1.0,
        "cluster_cap": 10.0,
        "plan": {
            "cycle_enforced": True,
            "num_connections": 2,
            "stages": [
                {"id": 0, "connections": [0], "min_green": 0.0, "max_green": 100.0, "intergreen": 3.0},
                {"id": 1, "connections": [1], "min_green": 0.0, "max_green": 100.0, "intergreen": 3.0},
            ],
        },
        "controller": {
            "current_stage": 0,
            "current_connection": 0,
            "stage_start": 0.0,
            "elapsed": 0.0,
            "queues": [0, 0],
        },
        "vehicles": vehicles
        if vehicles is not None
        else [
            {"connection": 0, "arr": 1.0, "dep": 3.0},
            {"connection": 0, "arr": 2.0, "dep": 4.0},
            {"connection": 1, "arr": 0.5, "dep": 2.5},
        ],
    }


def test_solve_matches_oracle():
    inst = tiny_instance()
    res = lanesched.solve(inst)
    orc = lanesched.oracle(inst)
    assert res["stats"]["optimal"]
    assert res["total_delay"] == pytest.approx(orc["optimal_delay"], abs=1e-9)


def test_heuristics_are_admissible_at_the_root():
    inst = tiny_instance()
    opt = lanesched.oracle(inst)["optimal_delay"]
    assert lanesched.heuristic(inst, "pdwspt") <= opt + 1e-9
    assert lanesched.heuristic(inst, "eris") <= opt + 1e-9
    assert lanesched.heuristic(inst, "none") == 0.0


def test_empty_instance():
    res = lanesched.solve(tiny_instance(vehicles=[]))
    assert res["total_delay"] == 0.0
    assert res["entries"] == []


def test_canonicalize_is_idempotent():
    once = lanesched.canonicalize(tiny_instance())
    assert lanesched.canonicalize(once) == once


def test_invalid_instance_raises():
    bad = tiny_instance()
    bad["vehicles"][0]["dep"] = 0.5  # dep <= arr
    with pytest.raises(ValueError):
        lanesched.solve(bad)


def test_check_sets_agree_on_the_optimum():
    inst = tiny_instance()
    delays = {
        checks: lanesched.solve(inst, {"checks": checks})["total_delay"]
        for checks in ("none", "dominance", "dominance-minmax", "all")
    }
    assert len(set(delays.values())) == 1


def test_run_scenario():
    scenario = {
        "format_version": 1,
        "duration": 60.0,
        "seeds": [1],
        "intersections": [
            {
                "name": "A",
                "plan": tiny_instance()["plan"],
                "policy": {"type": "astar", "heuristic": "pdwspt", "max_expansions": 2000},
            }
        ],
        "demand": [
            {"intersection": 0, "connection": 0, "rate_per_hour": 240.0, "cross_time": 2.5}
        ],
    }
    m = lanesched.run_scenario(scenario, seed=1)
    assert m["conservation_ok"]
    assert m["safety_violations"] == 0
    assert m["injected"] == m["completed"] + m["in_network"]
