from django.test import SimpleTestCase, override_settings

from config.exceptions import InputError
from fpgroup.abelian import abelianization
from fpgroup.coset_enumeration import EnumerationBounds, coset_enumerate
from fpgroup.triviality import is_trivial
from manifold.classification import homeo_classify, homeo_equivalent
from manifold.profiles import betti_split
from paperlib.axioms import axiom, axioms
from paperlib.blocks import BLOCK_IDS, build_block, candidate_summary
from paperlib.certificates import (
    BUILTIN_CERTIFICATES,
    XN_GLUING,
    YN_GLUING,
    capitalized,
    v0_presentation,
    w2_presentation,
    xn_certificate,
    yn_certificate,
)
from paperlib.constructions import (
    build_An,
    build_Xn,
    build_Xn_quotient,
    build_Yn,
    build_Yn_quotient,
    surgery_chain,
)
from paperlib.exceptions import ScenarioParameterError, UnknownBlockError, UnknownScenarioError
from paperlib.reports import render_json, render_table
from paperlib.scenarios import Check, RunContext, build_scenario, parse_params, run_check, run_theorem_scenario
from paperlib.serializers import ReportSerializer, ScenarioDocumentSerializer
from swengine.blowup import chamber_spread
from swengine.invariants import check_irreducible, sw_fingerprint
from swengine.surgery import run_surgery_chain


class CertificateTests(SimpleTestCase):
    def test_v0_shape(self):
        p = v0_presentation(1)
        self.assertEqual(p.generator_names, ('x', 'y', 'a', 'b'))
        self.assertEqual(len(p.relators), 4)
        # b^-1 x^-1 b x a^-1
        self.assertEqual(len(p.relators[3]), 5)
        self.assertEqual(len(v0_presentation(3).relators[3]), 13)

    def test_v0_abelianization(self):
        for n in range(1, 6):
            invariants = abelianization(v0_presentation(n))
            self.assertEqual((invariants.free_rank, invariants.torsion_factors), (2, ()))

    def test_w2_adds_two_commutators(self):
        self.assertEqual(len(w2_presentation(2).relators), 6)
        self.assertEqual(w2_presentation(2).generator_names, ('s1', 't1', 's2', 't2'))

    def test_capitalized(self):
        self.assertEqual(capitalized("[t2^-1,s1^-1]^3*s2^-1"), "[T2^-1,S1^-1]^3*S2^-1")
        self.assertEqual(capitalized("mu*[s2,t2]"), "mu*[S2,T2]")

    def test_xn_trivial(self):
        for n in range(1, 6):
            self.assertTrue(is_trivial(xn_certificate(n)).is_trivial, n)

    def test_yn_trivial(self):
        for n in range(1, 6):
            self.assertTrue(is_trivial(yn_certificate(n)).is_trivial, n)

    def test_xn_trivial_after_permuting_relators(self):
        p = xn_certificate(2)
        order = list(reversed(range(len(p.relators))))
        self.assertTrue(is_trivial(p.permuted(order)).is_trivial)

    def test_yn_trivial_after_permuting_relators(self):
        p = yn_certificate(2)
        count = len(p.relators)
        order = list(range(1, count, 2)) + list(range(0, count, 2))
        self.assertTrue(is_trivial(p.permuted(order)).is_trivial)

    def test_gluing_is_needed(self):
        p = xn_certificate(1)
        count = len(p.relators)
        unglued = p.without_relators(range(count - len(XN_GLUING), count))
        self.assertGreaterEqual(abelianization(unglued).free_rank, 2)
        self.assertFalse(is_trivial(unglued).is_trivial)

    def test_yn_relative_enumeration(self):
        p = yn_certificate(1)
        subgroup = [p.generator(name) for name in ('s1', 's2', 'mu', 't2')]
        outcome = coset_enumerate(p, subgroup)
        self.assertTrue(outcome.completed)
        self.assertEqual(outcome.index, 1)

    def test_yn_shape(self):
        p = yn_certificate(1)
        self.assertEqual(p.rank, 9)
        self.assertEqual(len(p.relators), 12 + 8 + len(YN_GLUING))

    def test_n_must_be_positive(self):
        for builder in BUILTIN_CERTIFICATES.values():
            with self.assertRaises(ScenarioParameterError):
                builder(0)


class BlockTests(SimpleTestCase):
    def test_ranks_and_profiles(self):
        u, r = build_block('U'), build_block('R')
        self.assertEqual(u.lattice.rank, 14)
        self.assertEqual((u.profile.chi, u.profile.sigma, u.profile.b1), (8, -4, 4))
        self.assertEqual(r.lattice.rank, 12)
        self.assertEqual((r.profile.chi, r.profile.sigma, r.profile.b1), (6, -2, 4))

    def test_u_candidates(self):
        block = build_block('U')
        candidates = block.candidates()
        self.assertEqual(candidate_summary(block, candidates),
                         {'count': 2, 'squares': [4], 'negation_closed': True})
        L = block.lattice
        for K in candidates:
            ev = L.evaluations(K)
            values = [ev[L.index(label)] for label in ('x', 'y', 'q1', 'q2', 'q3', 'q4')]
            sign = 1 if values[0] > 0 else -1
            self.assertEqual([sign * v for v in values], [2, 2, 1, 1, 1, 1])
            for label in ('d1', 'D1', 'd4', 'D4'):
                self.assertEqual(ev[L.index(label)], 0)

    def test_r_candidates(self):
        block = build_block('R')
        self.assertEqual(candidate_summary(block, block.candidates()),
                         {'count': 2, 'squares': [6], 'negation_closed': True})

    def test_vanishing_blocks_are_empty(self):
        for block_id in ('vanishing-P', 'vanishing-Q-odd', 'vanishing-Q-even'):
            block = build_block(block_id)
            self.assertEqual(block.candidates(), [], block_id)
            self.assertTrue(block.axioms[0].axiom_id.startswith('vanishing'))

    def test_vanishing_block_ranks(self):
        self.assertEqual(build_block('vanishing-P').lattice.rank, 12)
        self.assertEqual(build_block('vanishing-Q-even').lattice.rank, 10)
        self.assertNotIn('D2', build_block('vanishing-Q-even').lattice.basis_labels)

    def test_unknown_block(self):
        with self.assertRaises(UnknownBlockError):
            build_block('W')

    def test_block_ids(self):
        self.assertEqual(len(BLOCK_IDS), 5)


class ConstructionTests(SimpleTestCase):
    def test_xn_profile(self):
        p = build_Xn(2).profile
        self.assertEqual((p.chi, p.sigma, p.b1), (8, -4, 0))
        self.assertEqual(betti_split(p), (1, 5))
        self.assertTrue(p.pi1.is_trivial)
        self.assertEqual(p.spin, 'no')
        self.assertTrue(p.has_involution)

    def test_yn_profile(self):
        p = build_Yn(2).profile
        self.assertEqual((p.chi, p.sigma), (6, -2))
        self.assertEqual(betti_split(p), (1, 3))
        self.assertTrue(p.pi1.is_trivial)

    def test_sw_values(self):
        for n in (1, 2, 3):
            for built in (build_Xn(n), build_Yn(n)):
                self.assertEqual(sorted(v for _, v in built.sw.base_values), [-n * n, n * n])
                self.assertEqual(built.sw.b2plus, 1)

    def test_trace(self):
        for n in range(1, 11):
            self.assertEqual([abs(v) for v in build_Xn(n).trace], [1, 1, n, n, n * n])
            self.assertEqual(run_surgery_chain(1, surgery_chain(n, 'vanishing-Q')), n * n)

    def test_irreducible(self):
        self.assertTrue(check_irreducible(build_Xn(3).sw))
        self.assertTrue(check_irreducible(build_Yn(3).sw))

    def test_fingerprints(self):
        self.assertEqual(sw_fingerprint(build_Xn(2).sw), (((4, 4), 2),))
        self.assertEqual(sw_fingerprint(build_Yn(2).sw), (((4, 6), 2),))
        self.assertNotEqual(sw_fingerprint(build_Xn(1).sw), sw_fingerprint(build_Xn(2).sw))

    def test_quotients(self):
        x, y = build_Xn_quotient(1).profile, build_Yn_quotient(1).profile
        self.assertEqual((x.chi, x.sigma, str(x.pi1)), (4, -2, 'z2'))
        self.assertEqual((y.chi, y.sigma, str(y.pi1)), (3, -1, 'z2'))
        self.assertEqual(homeo_classify(x).model_name(), 'Z1#2CP2bar')
        self.assertEqual(homeo_classify(y).model_name(), 'Z1#CP2bar')
        self.assertTrue(homeo_equivalent(x, build_Xn_quotient(4).profile))

    def test_classes(self):
        self.assertEqual(homeo_classify(build_Xn(1).profile).model_name(), 'CP2#5CP2bar')
        self.assertEqual(homeo_classify(build_Yn(1).profile).model_name(), 'CP2#3CP2bar')

    def test_an(self):
        built = build_An(2, 3)
        self.assertEqual((built.profile.chi, built.profile.sigma), (5, -3))
        self.assertEqual(homeo_classify(built.profile).model_name(), 'Z1#3CP2bar')
        self.assertEqual(built.sw.exceptional, 4)
        union = chamber_spread(built.sw).value_union()
        self.assertEqual(union, frozenset({-5, -4, -3, -1, 0, 1, 3, 4, 5}))

    def test_an_b2_one_is_the_quotient(self):
        built = build_An(2, 1)
        self.assertEqual((built.profile.chi, built.profile.sigma), (3, -1))
        self.assertEqual(built.sw, build_Yn(2).sw)

    def test_parameter_ranges(self):
        with self.assertRaises(ScenarioParameterError):
            build_Xn(0)
        with self.assertRaises(ScenarioParameterError):
            build_An(1, 0)

    @override_settings(FOURCALC_MAX_N=3)
    def test_n_ceiling(self):
        with self.assertRaises(ScenarioParameterError):
            build_Yn(4)

    def test_axioms_recorded(self):
        ids = [a.axiom_id for a in build_Xn(1).axioms]
        self.assertIn('symplectic-seed', ids)
        self.assertIn('vanishing-P', ids)
        self.assertIn('free-involution', [a.axiom_id for a in build_Yn_quotient(1).axioms])


class AxiomTests(SimpleTestCase):
    def test_lookup(self):
        self.assertEqual(axiom('symplectic-seed').to_json()['payload'], {'seed_value': '1'})
        self.assertEqual(len(axioms('freedman', 'donaldson')), 2)

    def test_unknown(self):
        with self.assertRaises(ScenarioParameterError):
            axiom('nope')


class ScenarioTests(SimpleTestCase):
    def test_parse_params(self):
        self.assertEqual(parse_params({'n': '2..4', 'b2': 3}), {'n': (2, 3, 4), 'b2': (3,)})
        self.assertEqual(parse_params({'n': [3, 1, '1']})['n'], (1, 3))
        self.assertEqual(parse_params(None), {'n': (1, 2, 3, 4, 5), 'b2': (1, 2, 3, 4)})

    def test_bad_params(self):
        for params in ({'n': 0}, {'n': '5..1'}, {'n': 'many'}, {'b2': 17}, {'m': 1}, {'n': True}):
            with self.assertRaises(ScenarioParameterError, msg=params):
                parse_params(params)

    def test_unknown_scenario(self):
        with self.assertRaises(UnknownScenarioError):
            build_scenario('nonsense')

    def test_lem_u(self):
        report = run_theorem_scenario(build_scenario('lem-U'))
        self.assertTrue(report.passed)
        document = report.to_json()
        self.assertEqual(document['schema_version'], '1.0')
        self.assertEqual([c['computed']['count'] for c in document['checks']], [2, 0])
        self.assertIn('vanishing-P', [a['id'] for a in document['axioms']])

    def test_fund_xn(self):
        report = run_theorem_scenario(build_scenario('fund-Xn', {'n': '1..2'}))
        self.assertTrue(report.passed)
        self.assertEqual(len(report.results), 4)

    def test_thm_b2_2(self):
        self.assertTrue(run_theorem_scenario(build_scenario('thm-b2=2', {'n': '1..3'})).passed)

    def test_thm_b2_1(self):
        self.assertTrue(run_theorem_scenario(build_scenario('thm-b2=1', {'n': '1..3'})).passed)

    def test_thm_main(self):
        self.assertTrue(run_theorem_scenario(build_scenario('thm-main', {'n': '1..3', 'b2': '1..3'})).passed)

    def test_remaining_scenarios(self):
        for scenario_id in ('cor-irr', 'thm-X-SW', 'thm-basicQ', 'fund-Yn', 'top-class'):
            report = run_theorem_scenario(build_scenario(scenario_id, {'n': '1..2'}))
            self.assertTrue(report.passed, scenario_id)

    def test_parallel_keeps_order(self):
        scenario = build_scenario('thm-X-SW', {'n': '1..4'})
        serial = run_theorem_scenario(scenario, workers=1).to_json()
        parallel = run_theorem_scenario(scenario, workers=4).to_json()
        self.assertEqual(serial, parallel)

    def test_component_error_fails_check(self):
        result = run_check(Check('bad block', 'basic_classes', {'block': 'W'}, None))
        self.assertFalse(result.passed)
        self.assertEqual(result.error_family, 'input')

    def test_wrong_expectation_fails(self):
        result = run_check(Check('sw', 'sw_magnitudes', {'family': 'X', 'n': 2}, [5]))
        self.assertFalse(result.passed)
        self.assertEqual(result.computed, [4])
        self.assertEqual(result.error, '')

    def test_custom_checks(self):
        checks = [{'name': 'h1', 'op': 'abelianization_v0', 'args': {'n': 2}, 'expect': 'Z^2'}]
        report = run_theorem_scenario(build_scenario('fund-Xn', {'n': 1}, checks))
        self.assertEqual(len(report.results), 1)
        self.assertTrue(report.passed)

    def test_lattice_literal_check(self):
        check = Check('H + <-1>', 'lattice_invariants',
                      {'lattice': 'basis = [x, y, q]; blocks = [H, -1]', 'characteristic': [[0, 0, 1], [0, 0, 0]]},
                      {'rank': 3, 'signature': -1, 'parity': 'odd', 'determinant': 1,
                       'characteristic': [True, False]})
        self.assertTrue(run_check(check).passed)

    def test_lattice_literal_gram_form(self):
        result = run_check(Check('U', 'lattice_invariants',
                                 {'lattice': 'name = U; basis = [x, y]; gram = [[0, 1], [1, 0]]'}, None))
        self.assertEqual(result.computed, {'rank': 2, 'signature': 0, 'parity': 'even', 'determinant': -1,
                                           'characteristic': []})

    def test_malformed_lattice_literal_rejected_when_built(self):
        for args in ({'lattice': 'basis = [x]; gram = [[0, 1'}, {'lattice': 7},
                     {'lattice': 'basis = [x]; blocks = [-1]', 'characteristic': [[1, 2]]}):
            checks = [{'name': 'bad', 'op': 'lattice_invariants', 'args': args}]
            with self.assertRaises(InputError, msg=args):
                build_scenario('lem-U', None, checks)

    def test_b2_must_be_an_integer(self):
        for args in ({'n': 1, 'b2': 'two'}, {'n': 1, 'b2': 17}, {'n': 1, 'b2': True}):
            result = run_check(Check('chambers', 'chamber_values', args, None))
            self.assertEqual(result.error_family, 'input', args)
        result = run_check(Check('class', 'homeo_class', {'family': 'A', 'n': 1, 'b2': [2]}, None))
        self.assertEqual(result.error_family, 'input')

    @override_settings(FOURCALC_TIETZE_MAX_LENGTH=0, FOURCALC_QUOTIENT_CEILING=2)
    def test_exhausted_enumeration_is_a_resource_failure(self):
        context = RunContext(bounds=EnumerationBounds(max_cosets=1))
        report = run_theorem_scenario(build_scenario('fund-Xn', {'n': 1}), context=context)
        pi1 = report.results[0]
        self.assertEqual(pi1.check.op, 'pi1_xn')
        self.assertEqual(pi1.error_family, 'resource')
        self.assertTrue(report.resource_limited)

    def test_semantic_failure_is_not_resource_limited(self):
        checks = [{'name': 'wrong', 'op': 'sw_magnitudes', 'args': {'family': 'X', 'n': 2}, 'expect': [5]}]
        report = run_theorem_scenario(build_scenario('thm-X-SW', {'n': 2}, checks))
        self.assertFalse(report.passed)
        self.assertFalse(report.resource_limited)


class ReportTests(SimpleTestCase):
    def setUp(self):
        self.document = run_theorem_scenario(build_scenario('lem-U')).to_json()

    def test_json_is_stable(self):
        self.assertEqual(render_json(self.document), render_json(dict(self.document)))
        self.assertTrue(render_json(self.document).endswith('}\n'))

    def test_table(self):
        table = render_table(self.document)
        self.assertIn('scenario lem-U', table)
        self.assertIn('PASS', table)
        self.assertIn('2/2 checks passed', table)

    def test_every_check_has_an_anchor(self):
        self.assertTrue(all(check['anchor'] for check in self.document['checks']))

    def test_report_serializer(self):
        serializer = ReportSerializer(data=self.document)
        self.assertTrue(serializer.is_valid(), serializer.errors)

    def test_scenario_document_serializer(self):
        serializer = ScenarioDocumentSerializer(data={'id': 'fund-Yn', 'params': {'n': '1..2'}})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        scenario = serializer.save()
        self.assertEqual(scenario.params['n'], (1, 2))
        self.assertEqual(len(scenario.checks), 2)

    def test_scenario_document_rejects_bad_n(self):
        serializer = ScenarioDocumentSerializer(data={'id': 'thm-X-SW', 'params': {'n': 0}})
        self.assertFalse(serializer.is_valid())
