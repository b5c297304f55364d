"""
Run a theorem scenario and print its report

Usage:
    python manage.py verify --theorem fund-Xn --n 1..5
    python manage.py verify --scenario scenarios/thm-main.json --format json --out report.json
    python manage.py verify --theorem fund-Yn --max-cosets 50000
"""

from django.core.management.base import BaseCommand, CommandError

from cli.certificate_cache import CachingEnumerator, open_cache
from cli.options import (
    EXIT_FAILED,
    EXIT_RESOURCE,
    add_output_arguments,
    emit,
    exit_codes,
    invalid,
    output_format,
    read_json,
)
from fpgroup.coset_enumeration import EnumerationBounds
from paperlib.reports import render
from paperlib.scenarios import RunContext, build_scenario, run_theorem_scenario
from paperlib.serializers import ScenarioDocumentSerializer


class Command(BaseCommand):
    help = 'Run a theorem scenario; exit 0 iff every check passes'

    def add_arguments(self, parser):
        parser.add_argument('--theorem', default=None, help="Scenario id, e.g. thm-main or fund-Xn")
        parser.add_argument('--scenario', default=None, help="Path to a scenario document (JSON)")
        parser.add_argument('--n', default=None, help="n as an integer or a range a..b")
        parser.add_argument('--b2', default=None, help="b2 as an integer or a range a..b")
        parser.add_argument('--workers', type=int, default=None, help="Threads for independent checks")
        parser.add_argument('--max-cosets', type=int, default=None, help="Live coset bound")
        parser.add_argument('--max-definitions', type=int, default=None, help="Coset definition bound")
        add_output_arguments(parser)

    def handle(self, *args, **options):
        fmt = output_format(options)
        with exit_codes():
            scenario = self._scenario(options)
            bounds = EnumerationBounds(max_cosets=options.get('max_cosets'),
                                       max_definitions=options.get('max_definitions'))
            context = RunContext(enumerator=CachingEnumerator(open_cache(options.get('cache_dir'))),
                                 bounds=bounds)
            report = run_theorem_scenario(scenario, workers=options.get('workers'), context=context)
            document = report.to_json()
        emit(self, render(document, fmt), options.get('out'))
        if not report.passed:
            failed = [r.check.name for r in report.results if not r.passed]
            if report.resource_limited:
                raise CommandError(f"scenario {scenario.scenario_id} ran out of bounds: {', '.join(failed)}",
                                   returncode=EXIT_RESOURCE)
            raise CommandError(f"scenario {scenario.scenario_id} failed: {', '.join(failed)}",
                               returncode=EXIT_FAILED)

    def _scenario(self, options):
        params = {name: options[name] for name in ('n', 'b2') if options.get(name) is not None}
        if options.get('scenario'):
            data = read_json(options['scenario'])
            if isinstance(data, dict):
                data = dict(data, params=dict(data.get('params') or {}, **params))
            serializer = ScenarioDocumentSerializer(data=data)
            if not serializer.is_valid():
                raise invalid(serializer.errors)
            return serializer.save()
        if not options.get('theorem'):
            raise invalid({'theorem': 'give --theorem or --scenario'})
        return build_scenario(options['theorem'], params)
