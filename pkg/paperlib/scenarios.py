"""
Theorem scenarios: named lists of checks, each an operation with its
arguments and the value it must produce.

A scenario fixes its parameter ranges (n, b2) up front and expands its
default checks from them; a scenario document may also list its own
checks. Checks run independently, possibly on a thread pool, and the
report keeps the declared order. A check whose operation raises fails
with the error message and family; the runner itself never raises for a
component error.
"""

import json
import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from django.conf import settings

from config.exceptions import FourCalcError
from fpgroup.abelian import abelianization
from fpgroup.coset_enumeration import EnumerationBounds, coset_enumerate
from fpgroup.exceptions import EnumerationBoundError
from fpgroup.triviality import UNKNOWN, is_trivial
from lattice.intersection_forms import is_characteristic, parse_lattice_literal, signature_and_parity
from manifold.classification import homeo_classify, homeo_equivalent
from paperlib.axioms import axioms
from paperlib.blocks import BLOCK_IDS, build_block, candidate_summary
from paperlib.certificates import v0_presentation, xn_certificate, yn_certificate
from paperlib.constructions import (
    build_An,
    build_Xn,
    build_Xn_quotient,
    build_Yn,
    build_Yn_quotient,
    check_b2,
    check_n,
)
from paperlib.exceptions import ScenarioParameterError, UnknownScenarioError
from swengine.blowup import chamber_spread
from swengine.invariants import check_irreducible, sw_fingerprint

logger = logging.getLogger(__name__)

SCENARIO_IDS = (
    'thm-main', 'thm-b2=2', 'thm-b2=1', 'cor-irr', 'lem-U',
    'thm-X-SW', 'thm-basicQ', 'fund-Xn', 'fund-Yn', 'top-class',
)

DEFAULT_PARAMS = {'n': '1..5', 'b2': '1..4'}

_RANGE = re.compile(r'^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$')


# ========================
# PARAMETERS
# ========================

def parse_values(value, name: str) -> Tuple[int, ...]:
    """An int, a list of ints, or text "a..b" / "a" -> sorted distinct values."""
    if isinstance(value, bool):
        raise ScenarioParameterError(f"{name} must be an integer, a list or a range, got {value!r}")
    if isinstance(value, int):
        values = [value]
    elif isinstance(value, str):
        match = _RANGE.match(value)
        if match:
            low, high = int(match.group(1)), int(match.group(2))
            if low > high:
                raise ScenarioParameterError(f"empty range {value!r} for {name}")
            values = list(range(low, high + 1))
        elif value.strip().lstrip('-').isdigit():
            values = [int(value)]
        else:
            raise ScenarioParameterError(f"cannot read {name} = {value!r}; use an integer or a..b")
    elif isinstance(value, (list, tuple)) and value:
        values = []
        for item in value:
            values.extend(parse_values(item, name))
    else:
        raise ScenarioParameterError(f"{name} must be an integer, a list or a range, got {value!r}")
    check = check_n if name == 'n' else check_b2
    for v in values:
        check(v)
    return tuple(sorted(set(values)))


def parse_params(params: Optional[Dict[str, Any]]) -> Dict[str, Tuple[int, ...]]:
    params = dict(params or {})
    unknown = set(params) - set(DEFAULT_PARAMS)
    if unknown:
        raise ScenarioParameterError(f"unknown scenario parameters: {', '.join(sorted(unknown))}")
    return {name: parse_values(params.get(name, default), name) for name, default in DEFAULT_PARAMS.items()}


# ========================
# CHECK OPERATIONS
# ========================

@dataclass(frozen=True)
class RunContext:
    """Shared by every check of a run; the CLI swaps in a caching enumerator and its bounds."""

    enumerator: Callable = coset_enumerate
    bounds: Optional[EnumerationBounds] = None


def _integer(args, name, default=None):
    value = args.get(name, default)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ScenarioParameterError(f"check needs an integer {name}, got {value!r}")
    (check_n if name == 'n' else check_b2)(value)
    return value


def _n(args):
    return _integer(args, 'n')


def _b2(args):
    return _integer(args, 'b2', 1)


def _many(args):
    values = args.get('n')
    if not isinstance(values, list) or not values:
        raise ScenarioParameterError(f"check needs a nonempty list n, got {values!r}")
    return [_n({'n': v}) for v in values]


FAMILIES: Dict[str, Callable] = {
    'X': build_Xn,
    'Y': build_Yn,
    "X'": build_Xn_quotient,
    "Y'": build_Yn_quotient,
}


def _construct(args, n=None):
    family = args.get('family')
    n = _n(args) if n is None else n
    if family == 'A':
        return build_An(n, _b2(args))
    try:
        return FAMILIES[family](n)
    except KeyError:
        raise ScenarioParameterError(f"unknown family {family!r}; known: A, {', '.join(FAMILIES)}") from None


def _ids(built):
    return tuple(a.axiom_id for a in built.axioms)


def _pi1(presentation, context: RunContext):
    verdict = is_trivial(presentation, bounds=context.bounds, enumerator=context.enumerator)
    if verdict.status == UNKNOWN:
        raise EnumerationBoundError(f"no triviality verdict within the bounds: {verdict.outcome}")
    return str(verdict), ('normal-generation',)


def op_pi1_xn(args, context: RunContext):
    return _pi1(xn_certificate(_n(args)), context)


def op_pi1_yn(args, context: RunContext):
    return _pi1(yn_certificate(_n(args)), context)


def op_abelianization_v0(args, context: RunContext):
    return str(abelianization(v0_presentation(_n(args)))), ()


def op_basic_classes(args, context: RunContext):
    block_id = args.get('block')
    if block_id not in BLOCK_IDS:
        raise ScenarioParameterError(f"unknown block {block_id!r}; known: {', '.join(BLOCK_IDS)}")
    block = build_block(block_id)
    summary = candidate_summary(block, block.candidates())
    return summary, tuple(a.axiom_id for a in block.axioms)


def op_sw_chain(args, context: RunContext):
    built = _construct(args)
    return [abs(v) for v in built.trace], _ids(built)


def op_sw_magnitudes(args, context: RunContext):
    built = _construct(args)
    return sorted({abs(v) for v in built.sw.distinct_values()}), _ids(built)


def op_irreducible(args, context: RunContext):
    built = _construct(args)
    return check_irreducible(built.sw), _ids(built) + ('irreducibility',)


def op_profile(args, context: RunContext):
    built = _construct(args)
    p = built.profile
    return {'chi': p.chi, 'sigma': p.sigma, 'b2plus': p.b2plus, 'b2minus': p.b2minus,
            'pi1': str(p.pi1), 'spin': p.spin}, _ids(built)


def op_homeo_class(args, context: RunContext):
    built = _construct(args)
    klass = homeo_classify(built.profile)
    return klass.model_name() or str(klass), _ids(built) + (klass.axiom,)


def op_homeo_equal(args, context: RunContext):
    built = [_construct(args, n) for n in _many(args)]
    first = built[0].profile
    equal = all(homeo_equivalent(first, b.profile) for b in built[1:])
    return equal, _ids(built[0]) + (homeo_classify(first).axiom,)


def op_fingerprints_distinct(args, context: RunContext):
    built = [_construct(args, n) for n in _many(args)]
    prints = [sw_fingerprint(b.sw) for b in built]
    return len(set(prints)) == len(prints), _ids(built[0])


def op_chamber_values(args, context: RunContext):
    n = _n(args)
    built = build_An(n, _b2(args))
    union = chamber_spread(built.sw).value_union()
    square = n * n
    allowed = {0, 1, -1}
    for v in (square, -square):
        allowed |= {v - 1, v, v + 1}
    return {'contains_n2': square in union and -square in union,
            'within': union <= allowed}, _ids(built)


def _lattice(args):
    text = args.get('lattice')
    if not isinstance(text, str):
        raise ScenarioParameterError(f"check needs a lattice literal, got {text!r}")
    return parse_lattice_literal(text)


def _vectors(args, lattice):
    vectors = args.get('characteristic', [])
    if not isinstance(vectors, list) or not all(
            isinstance(v, list) and all(isinstance(c, int) and not isinstance(c, bool) for c in v) for v in vectors):
        raise ScenarioParameterError(f"characteristic must be a list of coordinate lists, got {vectors!r}")
    return [lattice.coerce(v) for v in vectors]


def op_lattice_invariants(args, context: RunContext):
    """Rank, signature, parity and determinant of a lattice literal, plus characteristic tests."""
    lattice = _lattice(args)
    signature, parity = signature_and_parity(lattice)
    return {
        'rank': lattice.rank,
        'signature': signature,
        'parity': parity,
        'determinant': lattice.determinant,
        'characteristic': [is_characteristic(lattice, v) for v in _vectors(args, lattice)],
    }, ()


def _check_lattice_args(args):
    _vectors(args, _lattice(args))


HANDLERS: Dict[str, Callable] = {
    'pi1_xn': op_pi1_xn,
    'pi1_yn': op_pi1_yn,
    'abelianization_v0': op_abelianization_v0,
    'basic_classes': op_basic_classes,
    'sw_chain': op_sw_chain,
    'sw_magnitudes': op_sw_magnitudes,
    'irreducible': op_irreducible,
    'profile': op_profile,
    'homeo_class': op_homeo_class,
    'homeo_equal': op_homeo_equal,
    'fingerprints_distinct': op_fingerprints_distinct,
    'chamber_values': op_chamber_values,
    'lattice_invariants': op_lattice_invariants,
}

# Run on listed checks when a scenario is built
ARGUMENT_CHECKS: Dict[str, Callable] = {
    'lattice_invariants': _check_lattice_args,
}


# ========================
# SCENARIOS
# ========================

@dataclass(frozen=True)
class Check:
    name: str
    op: str
    args: Dict[str, Any] = field(default_factory=dict)
    expect: Any = None
    anchor: str = ''

    def to_json(self):
        return {'name': self.name, 'op': self.op, 'args': self.args, 'expect': self.expect,
                'anchor': self.anchor}


@dataclass(frozen=True)
class TheoremScenario:
    scenario_id: str
    params: Dict[str, Tuple[int, ...]]
    checks: Tuple[Check, ...]

    def to_json(self):
        return {'id': self.scenario_id, 'params': {k: list(v) for k, v in self.params.items()},
                'checks': [c.to_json() for c in self.checks]}


def _block_check(block_id, count, squares):
    return Check(f"basic classes of {block_id}", 'basic_classes', {'block': block_id},
                 {'count': count, 'squares': squares, 'negation_closed': True},
                 f"the adjunction inequality leaves {count} candidate classes on {block_id}")


def _pi1_checks(family, ns):
    op = 'pi1_xn' if family == 'X' else 'pi1_yn'
    return [Check(f"pi1 {family}_{n}", op, {'n': n}, 'Trivial', f"{family}_{n} is simply connected")
            for n in ns]


def _exotic_checks(family, quotient_model, ns):
    quotient = f"{family}'"
    checks = _pi1_checks(family, ns)
    checks += [Check(f"irreducible {family}_{n}", 'irreducible', {'family': family, 'n': n}, True,
                     f"no two basic classes of {family}_{n} differ by a class of square -4")
               for n in ns]
    checks += [Check(f"class of {quotient}_{n}", 'homeo_class', {'family': quotient, 'n': n},
                     quotient_model, f"{quotient}_{n} is homeomorphic to {quotient_model}")
               for n in ns]
    checks.append(Check(f"{quotient}_n homeomorphic", 'homeo_equal', {'family': quotient, 'n': list(ns)},
                        True, f"the {quotient}_n share one homeomorphism class"))
    checks.append(Check(f"{family}_n fingerprints distinct", 'fingerprints_distinct',
                        {'family': family, 'n': list(ns)}, True,
                        f"SW invariants tell the {family}_n apart"))
    return checks


def _chain_checks(family, ns):
    return [Check(f"SW chain {family}_{n}", 'sw_chain', {'family': family, 'n': n},
                  [1, 1, n, n, n * n], f"|SW| runs 1, 1, n, n, n^2 along the surgeries for {family}_{n}")
            for n in ns] + [
        Check(f"SW of {family}_{n}", 'sw_magnitudes', {'family': family, 'n': n}, [n * n],
              f"SW({family}_{n}) = +-{n * n} on its two basic classes")
        for n in ns]


def _default_checks(scenario_id, params) -> List[Check]:
    ns, b2s = params['n'], params['b2']
    if scenario_id == 'thm-main':
        checks = []
        for b2 in b2s:
            args = {'family': 'A', 'b2': b2}
            model = 'Z1#CP2bar' if b2 == 1 else f"Z1#{b2}CP2bar"
            checks += [Check(f"chamber values A_{n}, b2={b2}", 'chamber_values', {'n': n, 'b2': b2},
                             {'contains_n2': True, 'within': True},
                             f"cover SW values of A_{n} lie in {{0, +-1, +-n^2, +-n^2 +- 1}} and hit +-n^2")
                       for n in ns]
            checks += [Check(f"class of A_{n}, b2={b2}", 'homeo_class', dict(args, n=n), model,
                             f"A_{n} is homeomorphic to {model}") for n in ns]
            checks.append(Check(f"A_n fingerprints distinct, b2={b2}", 'fingerprints_distinct',
                                dict(args, n=list(ns)), True, "cover SW invariants tell the A_n apart"))
        return checks
    if scenario_id == 'thm-b2=2':
        return _exotic_checks('X', 'Z1#2CP2bar', ns)
    if scenario_id == 'thm-b2=1':
        return _exotic_checks('Y', 'Z1#CP2bar', ns)
    if scenario_id == 'cor-irr':
        return [Check(f"irreducible {family}_{n}", 'irreducible', {'family': family, 'n': n}, True,
                      f"{family}_{n} is irreducible")
                for family in ('X', 'Y') for n in ns]
    if scenario_id == 'lem-U':
        return [_block_check('U', 2, [4]), _block_check('vanishing-P', 0, [])]
    if scenario_id == 'thm-X-SW':
        return _chain_checks('X', ns)
    if scenario_id == 'thm-basicQ':
        return [_block_check('R', 2, [6]), _block_check('vanishing-Q-odd', 0, []),
                _block_check('vanishing-Q-even', 0, [])] + _chain_checks('Y', ns)
    if scenario_id == 'fund-Xn':
        return _pi1_checks('X', ns) + [
            Check(f"H1 of v0, n={n}", 'abelianization_v0', {'n': n}, 'Z^2',
                  "the v0 piece has free abelianization of rank 2") for n in ns]
    if scenario_id == 'fund-Yn':
        return _pi1_checks('Y', ns)
    if scenario_id == 'top-class':
        checks = []
        for n in ns:
            checks += [
                Check(f"profile X_{n}", 'profile', {'family': 'X', 'n': n},
                      {'chi': 8, 'sigma': -4, 'b2plus': 1, 'b2minus': 5, 'pi1': 'trivial', 'spin': 'no'},
                      "chi = 8, sigma = -4"),
                Check(f"profile Y_{n}", 'profile', {'family': 'Y', 'n': n},
                      {'chi': 6, 'sigma': -2, 'b2plus': 1, 'b2minus': 3, 'pi1': 'trivial', 'spin': 'no'},
                      "chi = 6, sigma = -2"),
                Check(f"profile X'_{n}", 'profile', {'family': "X'", 'n': n},
                      {'chi': 4, 'sigma': -2, 'b2plus': 0, 'b2minus': 2, 'pi1': 'z2', 'spin': 'no'},
                      "the quotient halves chi and sigma"),
                Check(f"profile Y'_{n}", 'profile', {'family': "Y'", 'n': n},
                      {'chi': 3, 'sigma': -1, 'b2plus': 0, 'b2minus': 1, 'pi1': 'z2', 'spin': 'no'},
                      "the quotient halves chi and sigma"),
                Check(f"class of X_{n}", 'homeo_class', {'family': 'X', 'n': n}, 'CP2#5CP2bar',
                      f"X_{n} is homeomorphic to CP2#5CP2bar"),
                Check(f"class of Y_{n}", 'homeo_class', {'family': 'Y', 'n': n}, 'CP2#3CP2bar',
                      f"Y_{n} is homeomorphic to CP2#3CP2bar"),
            ]
        return checks
    raise UnknownScenarioError(f"unknown scenario '{scenario_id}'")


def build_scenario(scenario_id: str, params: Optional[Dict[str, Any]] = None,
                   checks: Optional[List[Dict[str, Any]]] = None) -> TheoremScenario:
    if scenario_id not in SCENARIO_IDS:
        raise UnknownScenarioError(f"unknown scenario '{scenario_id}'; known: {', '.join(SCENARIO_IDS)}")
    parsed = parse_params(params)
    if checks:
        listed = []
        for item in checks:
            if item.get('op') not in HANDLERS:
                raise ScenarioParameterError(f"unknown check operation {item.get('op')!r}")
            if item['op'] in ARGUMENT_CHECKS:
                ARGUMENT_CHECKS[item['op']](dict(item.get('args') or {}))
            listed.append(Check(item['name'], item['op'], dict(item.get('args') or {}), item.get('expect'),
                                item.get('anchor', '')))
    else:
        listed = _default_checks(scenario_id, parsed)
    return TheoremScenario(scenario_id, parsed, tuple(listed))


# ========================
# RUNNER
# ========================

def _plain(value):
    """JSON-native form, so tuples compare equal to lists."""
    return json.loads(json.dumps(value, sort_keys=True))


@dataclass(frozen=True)
class CheckResult:
    check: Check
    computed: Any = None
    passed: bool = False
    error: str = ''
    error_family: str = ''
    axiom_ids: Tuple[str, ...] = ()

    def to_json(self):
        return {
            'name': self.check.name,
            'op': self.check.op,
            'args': self.check.args,
            'anchor': self.check.anchor,
            'expected': self.check.expect,
            'computed': self.computed,
            'passed': self.passed,
            'error': self.error,
            'error_family': self.error_family,
        }


@dataclass(frozen=True)
class Report:
    scenario: TheoremScenario
    results: Tuple[CheckResult, ...]

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    @property
    def resource_limited(self):
        """Failed only because a configured bound ran out."""
        failed = [r for r in self.results if not r.passed]
        return bool(failed) and all(r.error_family == 'resource' for r in failed)

    def axiom_ids(self):
        seen = []
        for result in self.results:
            for axiom_id in result.axiom_ids:
                if axiom_id and axiom_id not in seen:
                    seen.append(axiom_id)
        return seen

    def to_json(self):
        return {
            'schema_version': settings.REPORT_SCHEMA_VERSION,
            'scenario': self.scenario.scenario_id,
            'params': {k: list(v) for k, v in self.scenario.params.items()},
            'passed': self.passed,
            'checks': [r.to_json() for r in self.results],
            'axioms': [a.to_json() for a in axioms(*self.axiom_ids())],
        }


def run_check(check: Check, context: Optional[RunContext] = None) -> CheckResult:
    context = context or RunContext()
    try:
        computed, axiom_ids = HANDLERS[check.op](check.args, context)
        computed = _plain(computed)
    except FourCalcError as e:
        logger.error(f"Check '{check.name}' failed: {e}")
        return CheckResult(check, error=str(e), error_family=e.family)
    except Exception as e:
        logger.exception(f"Check '{check.name}' raised")
        return CheckResult(check, error=f"{type(e).__name__}: {e}", error_family='internal')
    passed = computed == _plain(check.expect)
    if not passed:
        logger.error(f"Check '{check.name}' computed {computed}, expected {check.expect}")
    return CheckResult(check, computed, passed, axiom_ids=tuple(axiom_ids))


def run_theorem_scenario(scenario: TheoremScenario, workers: Optional[int] = None,
                         context: Optional[RunContext] = None) -> Report:
    workers = settings.FOURCALC_SCENARIO_WORKERS if workers is None else workers
    context = context or RunContext()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = tuple(pool.map(lambda c: run_check(c, context), scenario.checks))
    else:
        results = tuple(run_check(c, context) for c in scenario.checks)
    report = Report(scenario, results)
    logger.info(f"Scenario {scenario.scenario_id}: {sum(r.passed for r in results)}/{len(results)} checks passed")
    return report
