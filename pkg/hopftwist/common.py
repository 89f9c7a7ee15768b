import argparse
import json
from collections import OrderedDict
from xml.etree import ElementTree

import numpy as np
from sympy.polys.domains import QQ
from tabulate import tabulate

from .ring import FieldElem, PrincipalIdeal, format_rational


class CheckReport(object):
    """Named pass/fail checks collected by a validator, plus the values it computed.

    Args:
        name: title printed above the check table
    """

    def __init__(self, name):
        self.name = name
        self.checks = []
        self.values = OrderedDict()

    def add(self, name, passed, detail=''):
        self.checks.append({'name': name, 'passed': bool(passed), 'detail': detail})
        return bool(passed)

    def extend(self, other, prefix=None):
        """Copy the checks and values of another report into this one."""
        for check in other.checks:
            name = '{}: {}'.format(prefix, check['name']) if prefix else check['name']
            self.add(name, check['passed'], check['detail'])
        for key, value in other.values.items():
            self.values['{}.{}'.format(prefix, key) if prefix else key] = value

    def record(self, key, value):
        self.values[key] = value

    @property
    def passed(self):
        return all(check['passed'] for check in self.checks)

    def failures(self):
        return [check for check in self.checks if not check['passed']]

    def format(self):
        """Check table followed by the recorded values, Gram matrices as plain tables."""
        lines = ['{}: {}'.format(self.name, 'PASS' if self.passed else 'FAIL')]
        if self.checks:
            lines.append(tabulate([[c['name'], 'ok' if c['passed'] else 'FAILED', c['detail']] for c in self.checks],
                                  headers=['check', 'result', 'detail']))

        for key, value in self.values.items():
            lines.append('')
            if isinstance(value, np.ndarray) and value.ndim == 2:
                lines.append('{}:'.format(key))
                lines.append(format_matrix(value))
            else:
                lines.append('{}: {}'.format(key, json.dumps(to_jsonable(value), sort_keys=True)))
        return '\n'.join(lines)

    def to_dict(self):
        return {
            'name': self.name,
            'passed': self.passed,
            'checks': self.checks,
            'values': to_jsonable(self.values),
        }

    @classmethod
    def from_dict(cls, data):
        """Rebuild a report sent back by a worker; values stay in their JSON form."""
        report = cls(data['name'])
        for check in data['checks']:
            report.add(check['name'], check['passed'], check['detail'])
        for key, value in data['values'].items():
            report.record(key, value)
        return report


def to_jsonable(value):
    """Canonical JSON form: rationals as 'p/q', field elements as coefficient arrays."""
    if isinstance(value, FieldElem):
        return value.to_json()
    if isinstance(value, QQ.dtype):
        return format_rational(value)
    if isinstance(value, PrincipalIdeal):
        return {'generator': value.generator.to_json()}
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, 'to_json'):
        return value.to_json()
    return value


def dump_json(value):
    return json.dumps(to_jsonable(value), sort_keys=True, indent=2)


def format_matrix(array):
    return tabulate([[str(entry) for entry in row] for row in array], tablefmt='plain')


def junit_xml(reports):
    """One testsuite per report, one testcase per check."""
    root = ElementTree.Element('testsuites')
    for report in reports:
        suite = ElementTree.SubElement(root, 'testsuite', name=report.name, tests=str(len(report.checks)),
                                       failures=str(len(report.failures())))
        for check in report.checks:
            case = ElementTree.SubElement(suite, 'testcase', classname=report.name, name=check['name'])
            if not check['passed']:
                ElementTree.SubElement(case, 'failure', message=str(check['detail']) or 'failed')
    return ElementTree.tostring(root, encoding='unicode')


def _add_shared_arguments(parser, suppress=False):
    """Options accepted both before and after the subcommand."""
    default = {'default': argparse.SUPPRESS} if suppress else {}

    group = parser.add_argument_group('files')
    group.add_argument('-c', '--config', help='config .yaml file', **default)
    group.add_argument('-o', '--output', help='file to write the report to instead of stdout', **default)

    group = parser.add_argument_group('general')
    group.add_argument('--report', choices=['text', 'json', 'junit'], help='report format', **default)
    group.add_argument('-v', '--verbose', action='store_const', const=True, help='log intermediate results',
                       **default)
    group.add_argument('--progress', action='store_const', const=True, help='show a progress bar', **default)
    group.add_argument('--parallel', action='store_const', const=True,
                       help='run example suites on celery workers', **default)
    group.add_argument('--broker', help='celery broker url', **default)

    group = parser.add_argument_group('parameters')
    group.add_argument('--seed', help='seed for randomized searches and samples', type=int, **default)
    group.add_argument('--generator_attempts', help='candidates tried in the free generator search', type=int,
                       **default)
    group.add_argument('--rescale_bound', help='largest prime exponent tried when rescaling integrals', type=int,
                       **default)


def parse_args(data=None):
    """Define the command line arguments to be passed."""
    parser = argparse.ArgumentParser(prog='hopftwist',
                                     description='Integrals, torsors and twisted forms of finite Hopf algebras.')
    _add_shared_arguments(parser)
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    def command(name, help_text):
        sub = commands.add_parser(name, help=help_text)
        _add_shared_arguments(sub, suppress=True)
        actions = sub.add_subparsers(dest='action', metavar='action')
        actions.required = True
        return actions

    def action(actions, name, help_text, *inputs):
        sub = actions.add_parser(name, help=help_text)
        _add_shared_arguments(sub, suppress=True)
        for input_name in inputs:
            sub.add_argument(input_name, help='{} .json document'.format(input_name))
        return sub

    hopf = command('hopf', 'Hopf algebra checks')
    action(hopf, 'validate', 'check the Hopf axioms', 'hopf')
    action(hopf, 'dual', 'write the dual Hopf algebra', 'hopf')
    sub = action(hopf, 'integrals', 'module of integrals and its free generator', 'hopf')
    sub.add_argument('--side', choices=['left', 'right'], default='left', help='integral side')
    action(hopf, 'check-h1', 'unimodular, free integrals fixed by the antipode', 'hopf')
    sub = action(hopf, 'check-h2', 'commutative, separable, eps(I(A)) a square', 'hopf')
    sub.add_argument('--sqrt', required=True, help='square root witness of eps(theta)')

    comodule = command('comodule', 'comodule checks')
    action(comodule, 'fixed-points', 'lattice of fixed points', 'comodule')
    action(comodule, 'tensor', 'diagonal tensor product of two comodules', 'comodule', 'other')
    action(comodule, 'to-module', 'the module over the dual algebra', 'comodule')

    form = command('form', 'symmetric bundle checks')
    action(form, 'invariants', 'rank, signature, determinant class and Hasse invariants over Q', 'bundle')
    sub = action(form, 'isometric', 'check an isometry witness, or decide over Q', 'bundle', 'other')
    sub.add_argument('--witness', help='.json file holding the isometry matrix')
    action(form, 'fixed', 'the fixed point form', 'bundle')

    sub = commands.add_parser('twist', help='twist of an equivariant bundle by a torsor')
    _add_shared_arguments(sub, suppress=True)
    sub.set_defaults(action='compute')
    sub.add_argument('--hopf', help='hopf .json document, checked against the torsor')
    sub.add_argument('--phs', required=True, help='phs .json document')
    sub.add_argument('--bundle', required=True, help='bundle .json document')
    sub.add_argument('--sqrt', required=True, help='square root witness of eps(theta)')
    sub.add_argument('--out', help='.json file to write the twisted bundle and its basis and integrals to')

    examples = command('examples', 'worked examples')
    action(examples, 'list', 'list the example suites')
    sub = action(examples, 'run', 'run one example suite')
    sub.add_argument('name', help='suite name')
    sub.add_argument('--params', nargs='*', default=[], help='suite parameters as key=value')
    action(examples, 'run-all', 'run every example suite')
    sub = action(examples, 'export', 'write the Kummer example documents and a manifest')
    sub.add_argument('directory', help='directory to write the .json documents to')
    sub.add_argument('--params', nargs='*', default=[], help='p=... and y=... as key=value')

    sub = commands.add_parser('pipeline', help='run the commands of a manifest')
    _add_shared_arguments(sub, suppress=True)
    sub.set_defaults(action='run')
    sub.add_argument('manifest', help='manifest .json document')

    if data:
        args = parser.parse_args(data)
    else:
        args = parser.parse_args()
    return args
