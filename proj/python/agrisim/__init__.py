"""Python access to the agrisim simulation core."""

import json

from . import _agrisim
from ._agrisim import (
    Error,
    ValidationError,
    brute_force_optimal,
    enu_to_wgs84,
    improve,
    max_speed_for_dose,
    nearest_neighbor,
    offload_slack,
    spray_window,
    wgs84_to_enu,
)

schema_version = _agrisim.schema_version


def default_scenario():
    return json.loads(_agrisim.default_scenario())


def validate_scenario(scenario=None):
    """Return the effective scenario with every default filled in."""
    return json.loads(_agrisim.validate_scenario(json.dumps(scenario or {})))


def run_scenario(scenario=None, events=False):
    report, log = _agrisim.run_scenario(json.dumps(scenario or {}))
    report = json.loads(report)
    if not events:
        return report
    return report, [json.loads(line) for line in log.splitlines()]


def sweep(scenario, path, values, jobs=1):
    return [json.loads(r) for r in _agrisim.sweep(json.dumps(scenario or {}), path, json.dumps(list(values)), jobs)]


def presets():
    return [json.loads(p) for p in _agrisim.presets()]


def simulate_link(preset, uplink_rates_bps, duration_s=10.0, tick_s=0.01):
    return json.loads(_agrisim.simulate_link(preset, list(uplink_rates_bps), duration_s, tick_s))
