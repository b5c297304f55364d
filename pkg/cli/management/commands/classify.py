"""
Classify a profile up to homeomorphism

Usage:
    python manage.py classify S2xS2
    python manage.py classify profile.json --compare "T4#2CP2bar"
"""

from pathlib import Path

from django.core.management.base import BaseCommand

from cli.options import add_output_arguments, emit, exit_codes, invalid, output_format, read_json, render_document
from manifold.catalogue import get_profile
from manifold.classification import homeo_classify, homeo_equivalent
from manifold.serializers import ProfileComparisonSerializer, ProfileSerializer


class Command(BaseCommand):
    help = 'Print the homeomorphism class of a profile, or compare two profiles'

    def add_arguments(self, parser):
        parser.add_argument('profile', help='Catalogue name or path to a profile document (JSON)')
        parser.add_argument('--compare', default=None, help='Second profile to compare against')
        add_output_arguments(parser)

    def handle(self, *args, **options):
        fmt = output_format(options)
        with exit_codes():
            first = self._load(options['profile'])
            first_class = homeo_classify(first)
            if options.get('compare'):
                second = self._load(options['compare'])
                second_class = homeo_classify(second)
                document = ProfileComparisonSerializer({
                    'first': first.name,
                    'second': second.name,
                    'first_class': str(first_class),
                    'second_class': str(second_class),
                    'homeomorphic': homeo_equivalent(first, second),
                }).data
            else:
                document = {
                    'profile': ProfileSerializer(first).data,
                    'class': str(first_class),
                    'model': first_class.model_name(),
                    'axiom': first_class.axiom,
                }
        emit(self, render_document(dict(document), fmt), options.get('out'))

    def _load(self, source):
        if source.endswith('.json') or Path(source).is_file():
            serializer = ProfileSerializer(data=read_json(source))
            if not serializer.is_valid():
                raise invalid(serializer.errors)
            return serializer.save()
        return get_profile(source)
