#!/usr/bin/env python
"""
Sample Scenario Setup Script
Writes one scenario document per theorem scenario into scenarios/
Usage: python manage.py shell < setup_sample_scenarios.py
"""

import json
from pathlib import Path

from django.conf import settings

from paperlib.scenarios import SCENARIO_IDS, build_scenario

print("Writing sample scenarios...")

# Smaller ranges for the scenarios that blow up or enumerate the most
params_by_id = {
    'thm-main': {'n': '1..5', 'b2': '1..4'},
    'lem-U': {},
    'fund-Xn': {'n': '1..5'},
    'fund-Yn': {'n': '1..5'},
    'thm-X-SW': {'n': '1..10'},
}

target = Path(settings.BASE_DIR) / 'scenarios'
target.mkdir(exist_ok=True)

for scenario_id in SCENARIO_IDS:
    params = params_by_id.get(scenario_id, {'n': '1..5'})
    scenario = build_scenario(scenario_id, params)
    path = target / f"{scenario_id}.json"
    path.write_text(json.dumps({'id': scenario_id, 'params': params}, indent=2) + '\n', encoding='utf-8')
    print(f"Wrote {path.name}: {len(scenario.checks)} checks")

# Custom checks on lattice literals
literal_checks = [
    {
        'name': 'H + <-1>',
        'op': 'lattice_invariants',
        'args': {'lattice': 'basis = [x, y, q]; blocks = [H, -1]', 'characteristic': [[0, 0, 1], [0, 0, 0]]},
        'expect': {'rank': 3, 'signature': -1, 'parity': 'odd', 'determinant': 1, 'characteristic': [True, False]},
        'anchor': 'H + <-1> is odd of signature -1, and q is characteristic',
    },
    {
        'name': 'U as a Gram matrix',
        'op': 'lattice_invariants',
        'args': {'lattice': 'name = U; basis = [x, y]; gram = [[0, 1], [1, 0]]', 'characteristic': [[0, 0], [2, 0]]},
        'expect': {'rank': 2, 'signature': 0, 'parity': 'even', 'determinant': -1, 'characteristic': [True, True]},
        'anchor': 'the hyperbolic plane is even, so every even vector is characteristic',
    },
]
build_scenario('lem-U', {}, literal_checks)
path = target / 'lattice-literals.json'
path.write_text(json.dumps({'id': 'lem-U', 'checks': literal_checks}, indent=2) + '\n', encoding='utf-8')
print(f"Wrote {path.name}: {len(literal_checks)} checks")

print("\n✅ Sample scenarios written!")
print("\nRun one with: python manage.py verify --scenario scenarios/thm-main.json")
