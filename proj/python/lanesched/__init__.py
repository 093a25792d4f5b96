"""Python interface to the lane-based intersection scheduling engine.

The C++ core exchanges JSON text; this wrapper converts to and from dicts.
"""

import json

from ._core import (  # noqa: F401
    InstanceError,
    OracleLimitError,
    __version__,
    canonical_instance,
    heuristic_value,
    oracle_json,
    run_scenario_json,
    solve_json,
)


def solve(instance: dict, config: dict | None = None) -> dict:
    """Compute a minimum-delay signal timing plan for an instance dict."""
    return json.loads(solve_json(json.dumps(instance), json.dumps(config or {})))


def oracle(instance: dict, max_states: int = 2_000_000, config: dict | None = None) -> dict:
    """Exhaustive optimum for a small instance (guarded at 12 vehicles)."""
    return json.loads(oracle_json(json.dumps(instance), max_states, json.dumps(config or {})))


def heuristic(instance: dict, kind: str = "pdwspt") -> float:
    """Root-state admissible lower bound on total delay."""
    return heuristic_value(json.dumps(instance), kind)


def canonicalize(instance: dict) -> dict:
    """Round-trip an instance through the canonical file form."""
    return json.loads(canonical_instance(json.dumps(instance)))


def run_scenario(scenario: dict, seed: int) -> dict:
    """Closed-loop rolling-horizon simulation of one seed."""
    return json.loads(run_scenario_json(json.dumps(scenario), seed))
