"""
Flags and plumbing shared by the fourcalc management commands.
"""

import json
import logging
from contextlib import contextmanager
from pathlib import Path

from django.core.management.base import CommandError

from config.exceptions import InputError, ResourceBoundError
from paperlib.reports import FORMATS

logger = logging.getLogger(__name__)

EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


def add_output_arguments(parser):
    parser.add_argument('--format', default='table', help="Output format: json or table (default table)")
    parser.add_argument('--out', default=None, help="Write the output to this path instead of stdout")
    parser.add_argument('--cache-dir', default=None,
                        help="Certificate cache directory (default: FOURCALC_CACHE)")


def output_format(options) -> str:
    fmt = options.get('format') or 'table'
    if fmt not in FORMATS:
        raise CommandError(f"unknown format '{fmt}', expected one of {', '.join(FORMATS)}",
                           returncode=EXIT_INPUT)
    return fmt


def emit(command, text: str, out=None):
    if out:
        Path(out).write_text(text, encoding='utf-8')
        logger.info(f"Wrote {out}")
    else:
        command.stdout.write(text, ending='')


def render_document(document, fmt: str) -> str:
    """JSON documents for --format json, key: value lines otherwise."""
    if fmt == 'json':
        return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + '\n'
    lines = []
    for key, value in document.items():
        if not isinstance(value, str):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key}: {value}")
    return '\n'.join(lines) + '\n'


def read_json(path):
    try:
        return json.loads(Path(path).read_text(encoding='utf-8'))
    except OSError as e:
        raise CommandError(f"cannot read {path}: {e}", returncode=EXIT_INPUT)
    except json.JSONDecodeError as e:
        raise CommandError(f"{path} is not valid JSON: {e}", returncode=EXIT_INPUT)


def invalid(errors) -> CommandError:
    return CommandError(f"invalid input: {json.dumps(errors, sort_keys=True, default=str)}", returncode=EXIT_INPUT)


@contextmanager
def exit_codes():
    """Input errors exit 2, exceeded bounds exit 3."""
    try:
        yield
    except InputError as e:
        raise CommandError(str(e), returncode=EXIT_INPUT)
    except ResourceBoundError as e:
        raise CommandError(str(e), returncode=EXIT_RESOURCE)
