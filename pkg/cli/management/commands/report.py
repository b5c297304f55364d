"""
Re-render a saved report

Usage:
    python manage.py report report.json --format table
"""

from django.core.management.base import BaseCommand

from cli.options import add_output_arguments, emit, invalid, output_format, read_json
from paperlib.reports import render
from paperlib.serializers import ReportSerializer


class Command(BaseCommand):
    help = 'Render a saved report as a table or as canonical JSON'

    def add_arguments(self, parser):
        parser.add_argument('report', help='Path to a report written by verify --format json')
        add_output_arguments(parser)

    def handle(self, *args, **options):
        fmt = output_format(options)
        document = read_json(options['report'])
        serializer = ReportSerializer(data=document)
        if not serializer.is_valid():
            raise invalid(serializer.errors)
        emit(self, render(document, fmt), options.get('out'))
