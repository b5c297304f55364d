"""
Report rendering. Both renderers take the report document (the output of
Report.to_json() or a saved report file), so a saved report renders the
same way as a fresh one.
"""

import json

FORMATS = ('json', 'table')

TABLE_COLUMNS = (('check', 34), ('op', 22), ('expected', 30), ('computed', 30), ('result', 6))


def render_json(document) -> str:
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def _cell(value, width):
    if not isinstance(value, str):
        value = json.dumps(value, sort_keys=True, separators=(',', ':'))
    if len(value) > width:
        value = value[:width - 3] + '...'
    return value.ljust(width)


def render_table(document) -> str:
    params = ', '.join(f"{k}={v}" for k, v in sorted(document.get('params', {}).items()))
    lines = [
        f"scenario {document['scenario']} ({params})  schema {document.get('schema_version', '?')}",
        '  '.join(_cell(title, width) for title, width in TABLE_COLUMNS).rstrip(),
        '  '.join('-' * width for _, width in TABLE_COLUMNS),
    ]
    for check in document['checks']:
        computed = check['computed'] if not check.get('error') else f"{check['error_family']}: {check['error']}"
        row = (check['name'], check['op'], check['expected'], computed, 'PASS' if check['passed'] else 'FAIL')
        lines.append('  '.join(_cell(value, width) for value, (_, width) in zip(row, TABLE_COLUMNS)).rstrip())
    passed = sum(1 for c in document['checks'] if c['passed'])
    lines.append(f"{passed}/{len(document['checks'])} checks passed: {'PASS' if document['passed'] else 'FAIL'}")
    axiom_ids = [a['id'] for a in document.get('axioms', [])]
    if axiom_ids:
        lines.append(f"axioms: {', '.join(axiom_ids)}")
    return '\n'.join(lines) + '\n'


def render(document, fmt: str) -> str:
    return render_table(document) if fmt == 'table' else render_json(document)
