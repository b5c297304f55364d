import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from cli.certificate_cache import CachingEnumerator, certificate_key, open_cache
from cli.options import exit_codes
from config.exceptions import InputError, ResourceBoundError
from fpgroup.coset_enumeration import EnumerationBounds
from fpgroup.presentation import parse_presentation


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        self.cache_dir = str(self.dir / 'cache')

    def tearDown(self):
        self.tmp.cleanup()

    def run_command(self, name, *args, **options):
        out = StringIO()
        options.setdefault('cache_dir', self.cache_dir)
        call_command(name, *args, stdout=out, **options)
        return out.getvalue()

    def exit_code(self, name, *args, **options):
        with self.assertRaises(CommandError) as raised:
            self.run_command(name, *args, **options)
        return raised.exception.returncode

    def write_json(self, filename, data):
        path = self.dir / filename
        path.write_text(json.dumps(data), encoding='utf-8')
        return str(path)


class VerifyCommandTests(CommandTestCase):
    def test_fund_xn(self):
        output = self.run_command('verify', theorem='fund-Xn', n='1..2')
        self.assertIn('4/4 checks passed: PASS', output)

    def test_json_is_deterministic(self):
        first = self.run_command('verify', theorem='fund-Yn', n='1..2', format='json')
        second = self.run_command('verify', theorem='fund-Yn', n='1..2', format='json')
        self.assertEqual(first, second)
        self.assertTrue(json.loads(first)['passed'])

    def test_unknown_theorem(self):
        self.assertEqual(self.exit_code('verify', theorem='nonsense'), 2)

    def test_n_zero(self):
        self.assertEqual(self.exit_code('verify', theorem='thm-X-SW', n='0'), 2)

    def test_missing_theorem(self):
        self.assertEqual(self.exit_code('verify'), 2)

    def test_unknown_format(self):
        self.assertEqual(self.exit_code('verify', theorem='lem-U', format='xml'), 2)

    def test_failing_scenario(self):
        path = self.write_json('bad.json', {
            'id': 'thm-X-SW',
            'params': {'n': 2},
            'checks': [{'name': 'wrong', 'op': 'sw_magnitudes', 'args': {'family': 'X', 'n': 2}, 'expect': [5]}],
        })
        out = str(self.dir / 'report.json')
        self.assertEqual(self.exit_code('verify', scenario=path, format='json', out=out), 1)
        report = json.loads(Path(out).read_text(encoding='utf-8'))
        self.assertFalse(report['passed'])
        self.assertEqual(report['checks'][0]['computed'], [4])

    def test_scenario_file_with_override(self):
        path = self.write_json('lem.json', {'id': 'fund-Yn', 'params': {'n': '1..3'}})
        output = self.run_command('verify', scenario=path, n='2', format='json')
        self.assertEqual(json.loads(output)['params']['n'], [2])

    def test_bad_scenario_file(self):
        path = self.write_json('bad.json', {'id': 'nope'})
        self.assertEqual(self.exit_code('verify', scenario=path), 2)

    def test_report_rerender(self):
        out = str(self.dir / 'lem.json')
        self.run_command('verify', theorem='lem-U', format='json', out=out)
        table = self.run_command('report', out)
        self.assertIn('scenario lem-U', table)
        again = self.run_command('report', out, format='json')
        self.assertEqual(json.loads(again), json.loads(Path(out).read_text(encoding='utf-8')))

    def test_report_rejects_other_json(self):
        path = self.write_json('other.json', {'hello': 1})
        self.assertEqual(self.exit_code('report', path), 2)

    @override_settings(FOURCALC_TIETZE_MAX_LENGTH=0, FOURCALC_QUOTIENT_CEILING=2)
    def test_bound_exhausted_exits_3(self):
        out = str(self.dir / 'report.json')
        self.assertEqual(self.exit_code('verify', theorem='fund-Xn', n='1', max_cosets=1, format='json', out=out), 3)
        report = json.loads(Path(out).read_text(encoding='utf-8'))
        self.assertEqual(report['checks'][0]['error_family'], 'resource')

    def test_bad_bounds(self):
        self.assertEqual(self.exit_code('verify', theorem='fund-Xn', n='1', max_cosets=0), 2)

    def test_lattice_literal_checks(self):
        path = self.write_json('lattice.json', {
            'id': 'lem-U',
            'checks': [{'name': 'H + <-1>', 'op': 'lattice_invariants',
                        'args': {'lattice': 'basis = [x, y, q]; blocks = [H, -1]', 'characteristic': [[0, 0, 1]]},
                        'expect': {'rank': 3, 'signature': -1, 'parity': 'odd', 'determinant': 1,
                                   'characteristic': [True]}}],
        })
        self.assertIn('1/1 checks passed: PASS', self.run_command('verify', scenario=path))

    def test_malformed_lattice_literal(self):
        path = self.write_json('lattice.json', {
            'id': 'lem-U',
            'checks': [{'name': 'bad', 'op': 'lattice_invariants', 'args': {'lattice': 'basis = [x]; blocks = [Q]'}}],
        })
        self.assertEqual(self.exit_code('verify', scenario=path), 2)


class Pi1CommandTests(CommandTestCase):
    def test_builtin(self):
        self.assertEqual(self.run_command('pi1', builtin='xn', n=2), 'Trivial\n')

    def test_cyclic(self):
        self.assertEqual(self.run_command('pi1', text='gens: a; rels: a^2'), 'Nontrivial(Z/2)\n')

    def test_json(self):
        document = json.loads(self.run_command('pi1', text='gens: a b; rels: a*b^-1 b^2*a^-1', format='json'))
        self.assertEqual(document['verdict'], 'Trivial')

    def test_file(self):
        path = self.dir / 'group.txt'
        path.write_text('gens: a; rels: a^3', encoding='utf-8')
        self.assertEqual(self.run_command('pi1', file=str(path)), 'Nontrivial(Z/3)\n')

    def test_malformed(self):
        self.assertEqual(self.exit_code('pi1', text='gens: a; rels: ['), 2)

    def test_needs_one_source(self):
        self.assertEqual(self.exit_code('pi1'), 2)
        self.assertEqual(self.exit_code('pi1', text='gens: a; rels: a', builtin='xn'), 2)

    def test_unknown_builtin_and_strategy(self):
        self.assertEqual(self.exit_code('pi1', builtin='zz'), 2)
        self.assertEqual(self.exit_code('pi1', builtin='v0', strategy='random'), 2)

    def test_felsch(self):
        self.assertEqual(self.run_command('pi1', text='gens: a b; rels: a*b^-1 b^2*a^-1', strategy='felsch'), 'Trivial\n')


class SwCommandTests(CommandTestCase):
    def test_builtin_xn(self):
        path = self.write_json('chain.json', {'builtin': 'xn', 'n': 4})
        document = json.loads(self.run_command('sw', path, format='json'))
        self.assertEqual(document['final'], 16)
        self.assertEqual([abs(v) for v in document['values']], [1, 1, 4, 4, 16])
        self.assertEqual(document['fingerprint'], [[[16, 4], 2]])

    def test_blowups(self):
        path = self.write_json('chain.json', {'builtin': 'yn', 'n': 2, 'blowups': 2})
        document = json.loads(self.run_command('sw', path, format='json'))
        self.assertEqual(document['fingerprint'], [[[4, 4], 8]])
        self.assertEqual(document['chamber_values'], [-5, -4, -3, -1, 0, 1, 3, 4, 5])

    def test_empty_chain(self):
        path = self.write_json('chain.json', {'base_value': 3})
        output = self.run_command('sw', path)
        self.assertIn('final |SW| = 3', output)

    def test_explicit_chain(self):
        path = self.write_json('chain.json', {'chain': [
            {'torus': 'd1', 'p': 3, 'q': -1, 'vanishing': True},
            {'torus': 'd2', 'p': 1, 'q': 2, 'f01': 1},
        ]})
        document = json.loads(self.run_command('sw', path, format='json'))
        self.assertEqual(document['values'], [1, 3, 5])

    def test_non_coprime(self):
        path = self.write_json('chain.json', {'chain': [{'torus': 'd1', 'p': 2, 'q': 2}]})
        self.assertEqual(self.exit_code('sw', path), 2)

    def test_missing_file(self):
        self.assertEqual(self.exit_code('sw', str(self.dir / 'missing.json')), 2)

    def test_state_round_trip(self):
        chain = self.write_json('chain.json', {'builtin': 'yn', 'n': 2, 'blowups': 2})
        state = str(self.dir / 'state.json')
        self.run_command('sw', chain, save_state=state)
        document = json.loads(self.run_command('sw', state=state, format='json'))
        self.assertEqual(document['classes'], 8)
        self.assertEqual(document['magnitudes'], [4])
        self.assertFalse(document['irreducible'])
        self.assertEqual(document['fingerprint'], [[[4, 4], 8]])
        self.assertEqual(document['chamber_values'], [-5, -4, -3, -1, 0, 1, 3, 4, 5])

    def test_state_needs_one_source(self):
        chain = self.write_json('chain.json', {'builtin': 'xn', 'n': 1})
        self.assertEqual(self.exit_code('sw'), 2)
        self.assertEqual(self.exit_code('sw', chain, state=chain), 2)

    def test_save_state_needs_builtin(self):
        chain = self.write_json('chain.json', {'base_value': 3})
        self.assertEqual(self.exit_code('sw', chain, save_state=str(self.dir / 'state.json')), 2)

    def test_bad_state_document(self):
        path = self.write_json('state.json', {'lattice': 'basis = [x]; blocks = [-1]', 'b2plus': 0,
                                              'entries': [{'coords': [2], 'value': 1}, {'coords': [-2], 'value': 1}]})
        self.assertEqual(self.exit_code('sw', state=path), 2)


class ClassifyCommandTests(CommandTestCase):
    def test_catalogue_name(self):
        document = json.loads(self.run_command('classify', 'S2xS2', format='json'))
        self.assertEqual(document['class'], 'SimplyConnectedEven(1, 1)')
        self.assertEqual(document['model'], 'S2xS2')

    def test_compare(self):
        path = self.write_json('m.json', {'name': 'M', 'chi': 4, 'sigma': 0, 'spin': 'no', 'cover_spin': 'no'})
        document = json.loads(self.run_command('classify', path, compare='CP2#CP2bar', format='json'))
        self.assertTrue(document['homeomorphic'])
        self.assertFalse(json.loads(self.run_command('classify', path, compare='S2xS2', format='json'))['homeomorphic'])

    def test_unknown_name(self):
        self.assertEqual(self.exit_code('classify', 'K3'), 2)

    def test_unclassifiable(self):
        self.assertEqual(self.exit_code('classify', 'T4'), 2)

    def test_invalid_profile(self):
        path = self.write_json('bad.json', {'name': 'B', 'chi': 3, 'sigma': 0})
        self.assertEqual(self.exit_code('classify', path), 2)


class CertificateCacheTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.enumerator = CachingEnumerator(open_cache(self.tmp.name))
        self.group = parse_presentation('gens: a; rels: a^3')

    def tearDown(self):
        self.tmp.cleanup()

    def test_hit(self):
        first = self.enumerator(self.group)
        second = self.enumerator(self.group)
        self.assertEqual(first, second)
        self.assertEqual((self.enumerator.misses, self.enumerator.hits), (1, 1))

    def test_tighter_bounds_rerun(self):
        self.enumerator(self.group)
        outcome = self.enumerator(self.group, bounds=EnumerationBounds(max_cosets=1))
        self.assertFalse(outcome.completed)
        self.assertEqual(self.enumerator.hits, 0)

    def test_bound_exceeded_not_stored(self):
        self.enumerator(self.group, bounds=EnumerationBounds(max_cosets=1))
        self.enumerator(self.group, bounds=EnumerationBounds(max_cosets=1))
        self.assertEqual(self.enumerator.misses, 2)

    def test_key_depends_on_strategy(self):
        self.assertNotEqual(certificate_key(self.group, (), 'hlt'), certificate_key(self.group, (), 'felsch'))


class ExitCodeTests(SimpleTestCase):
    def test_mapping(self):
        for error, code in ((InputError('bad'), 2), (ResourceBoundError('big'), 3)):
            with self.assertRaises(CommandError) as raised:
                with exit_codes():
                    raise error
            self.assertEqual(raised.exception.returncode, code)
