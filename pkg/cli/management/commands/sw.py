"""
Run a torus surgery chain and print the value after each step

Usage:
    python manage.py sw chain.json
    python manage.py sw chain.json --format json --save-state state.json
    python manage.py sw --state state.json

A chain document is either explicit steps on a base value,
    {"base_value": 1, "chain": [{"torus": "d1", "p": 1, "q": -1, "vanishing": true}, ...]}
or a built-in chain with its n and optional blow-ups,
    {"builtin": "xn", "n": 4, "blowups": 2}
A built-in chain ends in a full SW state, which --save-state writes out.
--state reads such a document back and reports its invariants.
"""

import json
from pathlib import Path

from django.core.management.base import BaseCommand

from cli.options import add_output_arguments, emit, exit_codes, invalid, output_format, read_json, render_document
from paperlib.constructions import build_Xn, build_Yn, surgery_chain
from swengine.blowup import blowup_sw, chamber_spread
from swengine.invariants import check_irreducible, sw_fingerprint
from swengine.serializers import SurgeryChainSerializer, SWStateSerializer
from swengine.surgery import trace_surgery_chain

BUILTIN_CHAINS = {
    'xn': (build_Xn, 'vanishing-P'),
    'yn': (build_Yn, 'vanishing-Q'),
}


def fingerprint_json(state):
    return [[list(key), count] for key, count in sw_fingerprint(state)]


def chamber_values(state):
    if state.b2plus != 1:
        return None
    return sorted(chamber_spread(state).value_union())


class Command(BaseCommand):
    help = 'Print per-step SW values of a surgery chain and the final fingerprint'

    def add_arguments(self, parser):
        parser.add_argument('chain', nargs='?', default=None, help='Path to a chain document (JSON)')
        parser.add_argument('--state', default=None, help='Path to a saved SW state (JSON) to inspect')
        parser.add_argument('--save-state', default=None, help='Write the final state of a built-in chain here')
        add_output_arguments(parser)

    def handle(self, *args, **options):
        fmt = output_format(options)
        if bool(options.get('chain')) == bool(options.get('state')):
            raise invalid({'source': 'give a chain document or --state, not both'})
        if options.get('state'):
            self._inspect(options, fmt)
            return

        serializer = SurgeryChainSerializer(data=read_json(options['chain']))
        if not serializer.is_valid():
            raise invalid(serializer.errors)
        data = serializer.validated_data
        if options.get('save_state') and not data.get('builtin'):
            raise invalid({'save_state': 'only a built-in chain ends in a full state'})
        with exit_codes():
            document, state = self._run(data)
            if options.get('save_state'):
                Path(options['save_state']).write_text(
                    json.dumps(state.to_json(), sort_keys=True, indent=2) + '\n', encoding='utf-8')
        if fmt == 'json':
            emit(self, render_document(document, 'json'), options.get('out'))
            return
        lines = [f"step {i}: {step}  SW = {value}" for i, (step, value) in
                 enumerate(zip(['base'] + document['steps'], document['values']))]
        lines.append(f"final |SW| = {document['final']}")
        if document['fingerprint'] is not None:
            lines.append(f"fingerprint: {document['fingerprint']}")
        if document.get('chamber_values') is not None:
            lines.append(f"chamber values: {document['chamber_values']}")
        emit(self, '\n'.join(lines) + '\n', options.get('out'))

    def _run(self, data):
        builtin = data.get('builtin')
        if builtin:
            build, axiom_id = BUILTIN_CHAINS[builtin]
            specs = surgery_chain(data['n'], axiom_id)
            base_value = 1
        else:
            specs = data['specs']
            base_value = data['base_value']
        values = trace_surgery_chain(base_value, specs)
        document = {
            'steps': [str(spec) for spec in specs],
            'values': values,
            'final': abs(values[-1]),
            'fingerprint': None,
            'chamber_values': None,
        }
        state = None
        if builtin:
            state = build(data['n']).sw
            if data['blowups']:
                state = blowup_sw(state, data['blowups'])
            document['fingerprint'] = fingerprint_json(state)
            document['chamber_values'] = chamber_values(state)
        return document, state

    def _inspect(self, options, fmt):
        serializer = SWStateSerializer(data=read_json(options['state']))
        if not serializer.is_valid():
            raise invalid(serializer.errors)
        with exit_codes():
            state = serializer.save()
            document = {
                'lattice': str(state.lattice),
                'classes': state.support_size,
                'magnitudes': sorted({abs(v) for v in state.distinct_values()}),
                'irreducible': check_irreducible(state),
                'fingerprint': fingerprint_json(state),
                'chamber_values': chamber_values(state),
            }
        emit(self, render_document(document, fmt), options.get('out'))
