"""
Decide whether a finitely presented group is trivial

Usage:
    python manage.py pi1 --builtin xn --n 2
    python manage.py pi1 --text "gens: a; rels: a^2"
    python manage.py pi1 --file group.txt --strategy felsch --max-cosets 50000
"""

from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from cli.certificate_cache import CachingEnumerator, open_cache
from cli.options import EXIT_RESOURCE, add_output_arguments, emit, exit_codes, invalid, output_format, render_document
from fpgroup.coset_enumeration import STRATEGIES, EnumerationBounds
from fpgroup.presentation import format_presentation, parse_presentation
from fpgroup.triviality import UNKNOWN, is_trivial
from paperlib.certificates import BUILTIN_CERTIFICATES


class Command(BaseCommand):
    help = 'Print Trivial, Nontrivial(witness) or Unknown for a presentation'

    def add_arguments(self, parser):
        parser.add_argument('--text', default=None, help='Presentation text, "gens: ...; rels: ..."')
        parser.add_argument('--file', default=None, help='File holding presentation text')
        parser.add_argument('--builtin', default=None, help=f"One of {', '.join(BUILTIN_CERTIFICATES)}")
        parser.add_argument('--n', type=int, default=1, help='n for a built-in presentation')
        parser.add_argument('--strategy', default=None, help=f"One of {', '.join(STRATEGIES)}")
        parser.add_argument('--max-cosets', type=int, default=None, help='Live coset bound')
        add_output_arguments(parser)

    def handle(self, *args, **options):
        fmt = output_format(options)
        strategy = options.get('strategy')
        if strategy is not None and strategy not in STRATEGIES:
            raise invalid({'strategy': f"expected one of {', '.join(STRATEGIES)}"})
        with exit_codes():
            presentation = self._presentation(options)
            enumerator = CachingEnumerator(open_cache(options.get('cache_dir')))
            bounds = EnumerationBounds(max_cosets=options.get('max_cosets'))
            verdict = is_trivial(presentation, bounds=bounds, strategy=strategy, enumerator=enumerator)
        document = {
            'presentation': format_presentation(presentation),
            'verdict': str(verdict),
            'source': verdict.source or 'enumeration',
            'enumeration': str(verdict.outcome) if verdict.outcome is not None else None,
        }
        text = render_document(document, 'json') if fmt == 'json' else f"{verdict}\n"
        emit(self, text, options.get('out'))
        if verdict.status == UNKNOWN:
            raise CommandError(f"no verdict within the bounds: {verdict.outcome}", returncode=EXIT_RESOURCE)

    def _presentation(self, options):
        sources = [name for name in ('text', 'file', 'builtin') if options.get(name)]
        if len(sources) != 1:
            raise invalid({'source': 'give exactly one of --text, --file, --builtin'})
        if options.get('builtin'):
            try:
                builder = BUILTIN_CERTIFICATES[options['builtin']]
            except KeyError:
                raise invalid({'builtin': f"expected one of {', '.join(BUILTIN_CERTIFICATES)}"})
            return builder(options['n'])
        if options.get('file'):
            try:
                return parse_presentation(Path(options['file']).read_text(encoding='utf-8'))
            except OSError as e:
                raise invalid({'file': str(e)})
        return parse_presentation(options['text'])
