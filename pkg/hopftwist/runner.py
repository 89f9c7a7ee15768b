import json
import logging
import os
import sys

import numpy as np
import yaml

from .common import CheckReport, dump_json, junit_xml, parse_args
from .comodule import fixed_points, tensor_diagonal, to_module
from .errors import ConfigError, InputError, MathematicalError, SchemaError
from .examples import SUITES, export_documents, get_suite
from .hopf import (validate_hopf, dual, integrals, check_H1, check_H2, is_unimodular, antipode_on_integrals,
                   counit_product_check, theta_pairing_check, is_larson_sweedler_iso)
from .parsers import BUILT_CLASSES, DocumentParser, bundle_document, comodule_document, hopf_document, load
from .phs import twist
from .progress import SuiteProgress
from .symbundle import fixed_form, rational_invariants, verify_isometry, decide_isometry_Q, restriction_check

logger = logging.getLogger(__name__)

SEED_VARIABLE = 'HOPF_TWIST_SEED'


class PipelineRunner(object):
    """Runs one command line, or every command of a manifest, and writes the reports.

    Args:
        args: namespace returned by parse_args
    """

    report = None
    output = None
    verbose = None
    seed = None
    generator_attempts = None
    rescale_bound = None
    parallel = None
    broker = None
    progress = None

    def __init__(self, args):
        self.args = args
        self.load_parameters(args)
        self.cache = {}
        self.constants = {}

    def load_parameters(self, args):
        """Load parameters from defaults, the config file, the command line and the environment.

        Args:
            args: parsed command line arguments
        """

        # Default parameter values
        parameters = {
            'report': 'text',
            'output': None,
            'verbose': False,
            'seed': 0,
            'generator_attempts': 200,
            'rescale_bound': 2,
            'parallel': False,
            'broker': 'pyamqp://guest@localhost//',
            'progress': False,
        }

        # Parse config file. These override default values.
        config_file = getattr(args, 'config', None)
        if config_file:
            try:
                with open(config_file) as infile:
                    config = yaml.safe_load(infile) or {}
            except (IOError, yaml.YAMLError) as e:
                raise ConfigError('Cannot read config file {}: {}'.format(config_file, e))
            if not isinstance(config, dict):
                raise ConfigError('Config file {} is not a mapping'.format(config_file))
            for key, value in config.items():
                if key not in parameters:
                    raise ConfigError('Unknown config parameter: {}'.format(key))
                parameters[key] = value

        # Parse passed parameters. These override default and config values.
        for key, value in vars(args).items():
            if key in parameters and value is not None:
                parameters[key] = value

        seed = os.environ.get(SEED_VARIABLE)
        if seed:
            try:
                parameters['seed'] = int(seed)
            except ValueError:
                raise ConfigError('{} must be an integer, got {!r}'.format(SEED_VARIABLE, seed))

        if parameters['report'] not in ('text', 'json', 'junit'):
            raise ConfigError('Unknown report format: {}'.format(parameters['report']))

        # Set passed parameters
        for key, value in parameters.items():
            setattr(self, key, value)

    def run(self):
        """Execute the command and write the reports.

        Returns:
            exit code: 0 if every check passed, 1 if a check failed, 2 on malformed input
        """
        logging.basicConfig(level=logging.DEBUG if self.verbose else logging.WARNING,
                            format='%(levelname)s %(name)s: %(message)s')
        try:
            if self.args.command == 'pipeline':
                reports = self.run_manifest(self.args.manifest)
            else:
                reports = self.execute(self.args)
            self.write(reports)
        except InputError as e:
            print('{}: {}'.format(type(e).__name__, e), file=sys.stderr)
            return e.exit_code
        return 0 if all(report.passed for report in reports) else 1

    def execute(self, args):
        """Run one parsed command; a MathematicalError becomes a failed report."""
        name = '{} {}'.format(args.command, args.action)
        logger.debug('Running %s', name)
        handler = getattr(self, '_{}_{}'.format(args.command, args.action.replace('-', '_')))
        try:
            return handler(args)
        except MathematicalError as e:
            report = CheckReport(name)
            report.add(type(e).__name__, False, str(e))
            return [report]

    def run_manifest(self, path):
        """Run the commands of a manifest in order; they share this runner's parameters and object cache."""
        manifest = self.load(path, 'manifest')
        reports = []
        for command in manifest.commands:
            args = parse_args(command)
            if args.command == 'pipeline':
                raise SchemaError('Manifests cannot run other manifests')
            reports.extend(self.execute(args))
        return reports

    def load(self, path, expected):
        result = load(path, self.cache, self.constants)
        if not isinstance(result, BUILT_CLASSES[expected]):
            raise SchemaError('{} is not a {} document'.format(path, expected))
        logger.debug('Loaded %s from %s', result, path)
        return result

    def write(self, reports):
        """Serialize every report through one writer, to stdout or the output file."""
        if self.report == 'json':
            text = dump_json({'passed': all(r.passed for r in reports), 'reports': [r.to_dict() for r in reports]})
        elif self.report == 'junit':
            text = junit_xml(reports)
        else:
            text = '\n\n'.join(report.format() for report in reports)

        if self.output:
            with open(self.output, 'w') as outfile:
                outfile.write(text + '\n')
        else:
            print(text)

    # hopf

    def _hopf_validate(self, args):
        return [validate_hopf(self.load(args.hopf, 'hopf'))]

    def _hopf_dual(self, args):
        H = self.load(args.hopf, 'hopf')
        D = dual(H)
        report = validate_hopf(D)
        report.name = 'hopf dual'
        report.record('dual', hopf_document(D))
        return [report]

    def _hopf_integrals(self, args):
        H = self.load(args.hopf, 'hopf')
        data = integrals(H, side=args.side, rescale_bound=self.rescale_bound)
        report = CheckReport('hopf integrals')
        report.add('free generator', True, '{} integrals'.format(args.side))
        if args.side == 'left':
            report.add('counit product = rank', counit_product_check(H, data))
            report.add('theta pairings', theta_pairing_check(H, data))
            report.add('u -> u theta invertible over R', is_larson_sweedler_iso(H, data))
        report.record('integrals', data)
        return [report]

    def _hopf_check_h1(self, args):
        H = self.load(args.hopf, 'hopf')
        report = CheckReport('hopf check-h1')
        report.add('H1', check_H1(H, rescale_bound=self.rescale_bound),
                   'unimodular, free integrals, S fixes the integrals')
        report.record('unimodular', is_unimodular(H))
        report.record('antipode sign on integrals', antipode_on_integrals(H))
        return [report]

    def _hopf_check_h2(self, args):
        H = self.load(args.hopf, 'hopf')
        data = integrals(H, rescale_bound=self.rescale_bound)
        witness = DocumentParser(args.hopf, self.cache, self.constants).element(H.base, args.sqrt)
        report = CheckReport('hopf check-h2')
        report.add('H2', True, 'eps(theta) R is the square of {} R'.format(witness))
        report.record('h2', check_H2(H, witness, data))
        report.record('antipode sign on integrals', antipode_on_integrals(H))
        return [report]

    # comodule

    def _comodule_fixed_points(self, args):
        M = self.load(args.comodule, 'comodule')
        report = CheckReport('comodule fixed-points')
        failures = M.check_axioms()
        report.add('comodule axioms', not failures, '; '.join(detail for _, detail in failures))
        if not failures:
            basis = fixed_points(M)
            report.record('rank', basis.shape[1])
            report.record('basis', basis)
        return [report]

    def _comodule_tensor(self, args):
        M = self.load(args.comodule, 'comodule')
        N = self.load(args.other, 'comodule')
        T = tensor_diagonal(M, N)
        report = CheckReport('comodule tensor')
        failures = T.check_axioms()
        report.add('comodule axioms', not failures, '; '.join(detail for _, detail in failures))
        report.record('tensor', comodule_document(T))
        return [report]

    def _comodule_to_module(self, args):
        action = to_module(self.load(args.comodule, 'comodule'))
        report = CheckReport('comodule to-module')
        failures = action.check_axioms()
        report.add('module axioms', not failures, '; '.join(detail for _, detail in failures))
        for i, matrix in enumerate(action.matrices):
            report.record('f_{}'.format(i), matrix)
        return [report]

    # form

    def _form_invariants(self, args):
        b = self.load(args.bundle, 'bundle')
        invariants = rational_invariants(b)
        report = CheckReport('form invariants')
        report.add('Hasse product formula', invariants.product_formula())
        report.record('invariants', invariants)
        return [report]

    def _form_isometric(self, args):
        first = self.load(args.bundle, 'bundle')
        second = self.load(args.other, 'bundle')
        report = CheckReport('form isometric')
        if args.witness:
            witness = self._read_matrix(args.witness, first)
            report.add('witness is an isometry', verify_isometry(witness, first, second), 'P^T G1 P = G2')
            report.record('witness', witness)
        else:
            report.add('isometric over Q', decide_isometry_Q(first, second), 'rank, signature, det, Hasse')
        return [report]

    def _form_fixed(self, args):
        b = self.load(args.bundle, 'bundle')
        if b.module is None:
            raise SchemaError('{} has no coaction'.format(args.bundle))
        theta_dual = integrals(b.module.hopf, rescale_bound=self.rescale_bound).theta_dual
        fixed = fixed_form(b, theta_dual, attempts=self.generator_attempts, seed=self.seed)
        report = CheckReport('form fixed')
        report.add('restriction is eps(theta_dual) q^A', restriction_check(b, fixed, theta_dual))
        report.record('basis', fixed.basis)
        report.record('gram', fixed.gram)
        return [report]

    def _read_matrix(self, path, b):
        try:
            with open(path) as infile:
                document = json.load(infile)
        except (IOError, ValueError) as e:
            raise SchemaError('Cannot read matrix {}: {}'.format(path, e))
        if isinstance(document, dict):
            if 'matrix' not in document:
                raise SchemaError('Matrix document {} has no "matrix" key'.format(path))
            document = document['matrix']
        return DocumentParser(path, self.cache, self.constants).expressions(b.ring).array(
            document, (b.rank, b.rank))

    # twist

    def _twist_compute(self, args):
        P = self.load(args.phs, 'phs')
        b = self.load(args.bundle, 'bundle')
        if args.hopf and not self.load(args.hopf, 'hopf').same_structure(P.hopf):
            raise SchemaError('Torsor {} is not over {}'.format(args.phs, args.hopf))
        witness = DocumentParser(args.phs, self.cache, self.constants).element(P.hopf.base, args.sqrt)
        result = twist(b, P, witness, attempts=self.generator_attempts, seed=self.seed)

        report = CheckReport('twist')
        report.add('twisted form perfect', result.bundle.is_perfect(), 'integral Gram with unit determinant')
        report.record('basis', result.basis)
        report.record('gram', result.gram)
        report.record('integrals', {'theta': result.theta, 'theta_dual': result.theta_dual,
                                    'lambda_sqrt': result.lambda_sqrt})
        if args.out:
            document = dict(result.to_json(), **bundle_document(result.bundle))
            with open(args.out, 'w') as outfile:
                outfile.write(dump_json(document) + '\n')
        return [report]

    # examples

    def _examples_list(self, args):
        report = CheckReport('examples')
        report.record('suites', np.array([[suite.name, suite.description,
                                           ' '.join('{}={}'.format(k, v) for k, v in suite.defaults.items())]
                                          for suite in SUITES.values()], dtype=object))
        return [report]

    def _examples_run(self, args):
        suite = get_suite(args.name)
        return [suite.run(self.suite_parameters(suite, args.params))]

    def _examples_run_all(self, args):
        names = list(SUITES)
        if self.parallel:
            return self.run_parallel(names)

        progress = SuiteProgress(names, enabled=self.progress)
        progress.initialize_progressbar()
        reports = []
        for name in names:
            suite = SUITES[name]
            report = suite.run(self.suite_parameters(suite))
            progress.update_progressbar(name, report.passed)
            reports.append(report)
        progress.finish()
        return reports

    def _examples_export(self, args):
        suite = SUITES['kummer-twist']
        paths = export_documents(args.directory, **suite.parameters(self.suite_parameters(suite, args.params)))
        report = CheckReport('examples export')
        report.record('written', paths)
        return [report]

    def run_parallel(self, names):
        """Run the suites on celery workers and collect the reports in suite order."""
        from celery import group

        from .celery import app, run_suite

        app.conf.broker_url = self.broker
        jobs = group(run_suite.s(name, self.suite_parameters(SUITES[name])) for name in names)
        results = jobs.apply_async().get()
        return [CheckReport.from_dict(result) for result in results]

    def suite_parameters(self, suite, tokens=()):
        """key=value tokens as a dict; suites that take a seed get the runner's seed unless one is given."""
        params = {}
        for token in tokens or ():
            key, sep, value = token.partition('=')
            if not sep or not key:
                raise SchemaError('Suite parameters are key=value, got {!r}'.format(token))
            params[key] = value
        if 'seed' in suite.defaults and 'seed' not in params:
            params['seed'] = self.seed
        return params


def main(data=None):
    args = parse_args(data)
    try:
        runner = PipelineRunner(args)
    except InputError as e:
        print('{}: {}'.format(type(e).__name__, e), file=sys.stderr)
        return e.exit_code
    return runner.run()
