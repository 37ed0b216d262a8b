#!/usr/bin/env python
# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
flagcheck is a configman app that verifies curvature conditions of flag
simplicial complexes and studies their automorphisms.
"""
import collections
import hashlib
import io
import re
import sys
import time

import networkx as nx

from flagcheck import __version__
from flagcheck.base import CheckArgumentError, reorder_dag
from flagcheck.checks import parse_check
from flagcheck.curvature_checks import Verdict
from flagcheck.fileformat import (
    FormatError,
    dump_complex,
    dump_map,
    dumps,
    load_complex,
    load_map,
    report_document,
)
from flagcheck.generators import CorpusSpec, CorpusSpecError, generate
from flagcheck.generic_app import App, main
from flagcheck.hyperbolicity import (
    DisconnectedGraphError,
    SizeCapExceeded,
    bottleneck_check,
    delta_four_point,
)
from flagcheck.isometry import (
    EllipticIsometryError,
    EmptyDomainError,
    MapDefinitionError,
    RestrictionError,
    WindowTooSmallError,
    check_automorphism,
    check_isometric_embedding,
    displacement_profile,
    graph_of_axes,
    invariant_geodesics,
    min_idempotence,
    min_set,
    power,
    union_of_axes_check,
)
from flagcheck.mixins import with_executor

try:
    import raven
except ImportError:  # pragma: no cover
    raven = None

from configman import Namespace, RequiredConfig


EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64


#==============================================================================
class UsageError(Exception):
    pass


# errors that mean the request itself was wrong
USAGE_ERRORS = (UsageError, FormatError, CheckArgumentError, CorpusSpecError)

# a requested isometry subcommand whose preconditions do not hold is a
# failed result, not a crash
ISOMETRY_PRECONDITION_ERRORS = (
    EllipticIsometryError,
    EmptyDomainError,
    MapDefinitionError,
    RestrictionError,
    WindowTooSmallError,
    DisconnectedGraphError,
)


#------------------------------------------------------------------------------
def line_splitter(text):
    return [x.strip() for x in re.split('\n|,|;', text.strip())
            if x.strip() and not x.strip().startswith('#')]


#------------------------------------------------------------------------------
def exit_code_for(statuses):
    """fail beats unknown beats pass"""
    statuses = list(statuses)
    if Verdict.FAIL in statuses:
        return EXIT_FAIL
    if Verdict.UNKNOWN in statuses:
        return EXIT_UNKNOWN
    return EXIT_PASS


#------------------------------------------------------------------------------
def companion_map_path(output):
    """where `--gen` puts the map next to the complex file"""
    if output.endswith('.json'):
        return output[:-len('.json')] + '.map.json'
    return output + '.map.json'


#==============================================================================
class _CheckRequest(collections.namedtuple(
    '_CheckRequest', ['check_class', 'arguments']
)):
    @property
    def app_name(self):
        return self.check_class.app_name

    @property
    def depends_on(self):
        return self.check_class.depends_on


#==============================================================================
@with_executor()
class FlagCheckBase(RequiredConfig):

    app_name = 'flagcheck'
    app_version = __version__
    app_description = __doc__

    required_config = Namespace()

    required_config.namespace('limits')
    required_config.limits.add_option(
        'budget',
        default=64,
        doc='filling area budget, in triangles',
    )
    required_config.limits.add_option(
        'search_limit',
        default=20000,
        doc='filling states explored per loop before giving up',
    )
    required_config.limits.add_option(
        'cycle_cap',
        default=12,
        doc='longest full cycle the enumeration accepts',
    )
    required_config.limits.add_option(
        'clique_cap',
        default=16,
        doc='largest simplex enumerated',
    )
    required_config.limits.add_option(
        'delta_cap',
        default=400,
        doc='most vertices the four-point and bottleneck kernels accept',
    )
    required_config.limits.add_option(
        'axis_scale',
        default=0,
        doc='local geodesic scale of stitched axes (0 means the '
            'translation length of the power)',
    )
    required_config.limits.add_option(
        'bottleneck_radius',
        default=0,
        doc='ball radius of the bottleneck test on the graph of axes',
    )

    required_config.add_option(
        name='input',
        default='',
        doc='complex file to read ("-" for stdin)',
        short_form='i',
        exclude_from_print_conf=True,
        exclude_from_dump_conf=True,
    )
    required_config.add_option(
        name='check',
        default='',
        doc='checks to run, for example "klarge 6, mlocated 8, sd 2 0" '
            '(known: flag, klarge k, locallyklarge k, mlocated m, '
            'sd n [origin] for SD\'_n parts T and V, simplyconnected, '
            'lemmas n origin, systolic [k], wheels k)',
        short_form='c',
        exclude_from_print_conf=True,
        exclude_from_dump_conf=True,
    )
    required_config.add_option(
        name='isom',
        default='',
        doc='isometry subcommands, for example "profile, embed, axes 2" '
            '(known: profile, minset, embed, idempotence, axes n, '
            'union n, axesgraph n)',
        exclude_from_print_conf=True,
        exclude_from_dump_conf=True,
    )
    required_config.add_option(
        name='map',
        default='',
        doc='map file of the automorphism for --isom',
        exclude_from_print_conf=True,
        exclude_from_dump_conf=True,
    )
    required_config.add_option(
        name='power',
        default=1,
        doc='apply the map this many times before any isometry subcommand',
    )
    required_config.add_option(
        name='gen',
        default='',
        doc='generate a corpus complex, for example "disk d=7 r=3"',
        exclude_from_print_conf=True,
        exclude_from_dump_conf=True,
    )
    required_config.add_option(
        name='output',
        default='-',
        doc='where --gen and --export write ("-" for stdout)',
        short_form='o',
        exclude_from_print_conf=True,
        exclude_from_dump_conf=True,
    )
    required_config.add_option(
        name='delta',
        default=False,
        doc='compute the exact four-point delta of the input',
        exclude_from_print_conf=True,
        exclude_from_dump_conf=True,
    )
    required_config.add_option(
        name='export',
        default=False,
        doc='write the 1-skeleton of the input as GraphML to --output',
        exclude_from_print_conf=True,
        exclude_from_dump_conf=True,
    )
    required_config.add_option(
        name='report',
        default='-',
        doc='where the report goes ("-" for stdout)',
        short_form='r',
    )
    required_config.add_option(
        name='seed',
        default=0,
        doc='seed of random corpus complexes that do not name one',
    )
    required_config.add_option(
        name='timings',
        default=False,
        doc='include wall clock timings in the report',
    )
    required_config.add_option(
        name='version',
        default=False,
        doc='Print current version and exit',
        short_form='v',
        exclude_from_print_conf=True,
        exclude_from_dump_conf=True,
    )

    required_config.namespace('sentry')
    required_config.sentry.add_option(
        'dsn',
        doc='DSN for Sentry via raven',
        default='',
        reference_value_from='secrets.sentry',
    )

    def __init__(self, config):
        self.config = config
        self.timings = collections.OrderedDict()

    def main(self):
        try:
            if self.config.get('version'):
                self.print_version()
                return EXIT_PASS
            if self.config.get('gen'):
                return self.cmd_gen(
                    self.config['gen'], self.config.get('output') or '-'
                )
            if not self.config.get('input'):
                raise UsageError(
                    'nothing to do; give --gen or an --input with one of '
                    '--check, --isom, --delta or --export'
                )
            complex_file = self.load_input(self.config['input'])
            if self.config.get('check'):
                document, code = self.cmd_check(
                    complex_file, line_splitter(self.config['check'])
                )
            elif self.config.get('isom'):
                if not self.config.get('map'):
                    raise UsageError('--isom needs a --map file')
                h = self.load_automorphism(
                    self.config['map'], complex_file.complex.vertex_count
                )
                document, code = self.cmd_isom(
                    complex_file, h, line_splitter(self.config['isom'])
                )
            elif self.config.get('delta'):
                document, code = self.cmd_delta(complex_file)
            elif self.config.get('export'):
                return self.cmd_export(
                    complex_file, self.config.get('output') or '-'
                )
            else:
                raise UsageError(
                    'nothing to do with %s' % self.config['input']
                )
        except USAGE_ERRORS as x:
            self.config.logger.error('%s', x)
            return EXIT_USAGE
        self.write_report(document)
        return code

    def print_version(self, stream=None):
        (stream or sys.stdout).write('%s\n' % self.app_version)

    #--------------------------------------------------------------------------
    # input and output

    def _read(self, path):
        if path == '-':
            return sys.stdin.read()
        try:
            with io.open(path, encoding='utf-8') as f:
                return f.read()
        except (IOError, OSError) as x:
            raise UsageError('cannot read %s: %s' % (path, x))

    def _write(self, path, text):
        if path == '-':
            sys.stdout.write(text)
            return
        with io.open(path, 'w', encoding='utf-8') as f:
            f.write(text)

    def load_input(self, path):
        try:
            return load_complex(self._read(path))
        except FormatError as x:
            raise FormatError('%s: %s' % (path, x))

    def load_automorphism(self, path, vertex_count):
        try:
            return load_map(self._read(path), vertex_count)
        except FormatError as x:
            raise FormatError('%s: %s' % (path, x))

    def configuration(self, **extra):
        """the settings a report depends on; the executor and the number of
        jobs never change a result and are left out"""
        limits = self.config.limits
        configuration = collections.OrderedDict([
            ('budget', limits.budget),
            ('search_limit', limits.search_limit),
            ('cycle_cap', limits.cycle_cap),
            ('clique_cap', limits.clique_cap),
            ('delta_cap', limits.delta_cap),
            ('axis_scale', limits.axis_scale),
            ('bottleneck_radius', limits.bottleneck_radius),
            ('seed', self.config.seed),
        ])
        configuration.update(sorted(extra.items()))
        return configuration

    def make_report(self, complex_file, results, **extra):
        return report_document(
            self.app_version,
            complex_file.digest,
            self.configuration(**extra),
            results,
            timings=self.timings if self.config.get('timings') else None,
        )

    def write_report(self, document):
        self._write(self.config.get('report') or '-', dumps(document))

    #--------------------------------------------------------------------------
    # running with crash capture

    def _capture_exception(self):
        if self.config.sentry and self.config.sentry.dsn:
            assert raven, "raven not installed"
            try:
                client = raven.Client(dsn=self.config.sentry.dsn)
                identifier = client.get_ident(client.captureException())
                self.config.logger.info(
                    'Error captured in Sentry. Reference: %s' % identifier
                )
            except Exception:
                # losing the report to Sentry must not hide the real error
                self.config.logger.debug(
                    'Failed to capture and send error to Sentry',
                    exc_info=True
                )

    def _timed(self, label, function, *args, **kwargs):
        t0 = time.time()
        try:
            return function(*args, **kwargs)
        except USAGE_ERRORS + ISOMETRY_PRECONDITION_ERRORS + (
            SizeCapExceeded,
        ):
            raise
        except Exception:
            self._capture_exception()
            self.config.logger.error(
                'error when running %s', label, exc_info=True
            )
            raise
        finally:
            self.timings[label] = round(time.time() - t0, 3)

    def _log_verdict(self, label, verdict):
        if verdict.is_fail:
            self.config.logger.info('%s: fail, witness %r', label,
                                    verdict.witness)
        elif verdict.is_unknown:
            self.config.logger.warning(
                '%s: unknown, %d loops undecided', label,
                len(verdict.undecided)
            )
        else:
            self.config.logger.info('%s: pass', label)

    #--------------------------------------------------------------------------
    # commands

    def cmd_check(self, complex_file, checks):
        """run the requested checks, prerequisites first"""
        requests = [_CheckRequest(*parse_check(text)) for text in checks]
        if not requests:
            raise UsageError('no checks requested')
        results = []
        statuses = {}
        for request in reorder_dag(requests):
            check = request.check_class(
                self.config,
                complex_file,
                request.arguments,
                executor=self.executor,
                prerequisites=dict(
                    (name, statuses.get(name, 'not-run'))
                    for name in request.depends_on
                ),
            )
            self.config.logger.debug('running %s', check.name)
            verdict = self._timed(check.name, check.main)
            self._log_verdict(check.name, verdict)
            statuses[check.app_name] = _worst(
                statuses.get(check.app_name), verdict.status
            )
            result = collections.OrderedDict([
                ('check', check.name),
                ('verdict', verdict),
            ])
            if check.prerequisites:
                result['prerequisites'] = check.prerequisites
            results.append(result)
        code = exit_code_for(r['verdict'].status for r in results)
        return self.make_report(complex_file, results), code

    def cmd_isom(self, complex_file, h, subcommands):
        """validate the map, raise it to --power and run the isometry
        subcommands on it"""
        complex_ = complex_file.complex
        if not subcommands:
            raise UsageError('no isometry subcommands requested')
        parsed = [_parse_subcommand(text) for text in subcommands]
        extra = {
            'map_digest': hashlib.sha256(
                dump_map(h, complex_.vertex_count).encode('utf-8')
            ).hexdigest()
        }
        extra['power'] = self.config.get('power', 1)
        verdict = check_automorphism(complex_, h)
        if not verdict.is_pass:
            self._log_verdict('map', verdict)
            results = [collections.OrderedDict([
                ('subcommand', 'map'),
                ('status', verdict.status),
                ('verdict', verdict),
            ])]
            return self.make_report(complex_file, results, **extra), \
                EXIT_FAIL
        results = []
        try:
            h = power(h, extra['power'])
        except (MapDefinitionError, EmptyDomainError) as x:
            results.append(_error_result('power', x))
            return self.make_report(complex_file, results, **extra), \
                EXIT_FAIL
        cache = {}
        for name, n in parsed:
            label = name if n is None else '%s %d' % (name, n)
            try:
                result = self._timed(
                    label, self._isometry_result, complex_, h, name, n,
                    cache
                )
            except ISOMETRY_PRECONDITION_ERRORS as x:
                self.config.logger.info('%s: %s', label, x)
                result = _error_result(label, x)
            results.append(result)
        code = exit_code_for(r['status'] for r in results)
        return self.make_report(complex_file, results, **extra), code

    def _displacement(self, complex_, h, cache):
        if 'report' not in cache:
            cache['report'] = displacement_profile(
                complex_,
                h,
                clique_cap=self.config.limits.clique_cap,
                executor=self.executor
            )
        return cache['report']

    def _isometry_result(self, complex_, h, name, n, cache):
        label = name if n is None else '%s %d' % (name, n)
        result = collections.OrderedDict([('subcommand', label)])
        scale = self.config.limits.axis_scale or None
        report = self._displacement(complex_, h, cache)
        if name == 'profile':
            result['status'] = Verdict.PASS
            result['profile'] = report
        elif name == 'minset':
            result['status'] = Verdict.PASS
            result['min_set'] = min_set(complex_, h, report)
        elif name == 'embed':
            verdict = check_isometric_embedding(
                complex_, min_set(complex_, h, report)
            )
            result['status'] = verdict.status
            result['verdict'] = verdict
        elif name == 'idempotence':
            verdict = min_idempotence(complex_, h, report)
            result['status'] = verdict.status
            result['verdict'] = verdict
        elif name == 'axes':
            found, axes = invariant_geodesics(
                complex_, h, n, scale=scale, report=report,
                executor=self.executor
            )
            # the search for axes is not exhaustive
            result['status'] = Verdict.PASS if axes else Verdict.UNKNOWN
            result['power'] = found
            result['axes'] = axes
        elif name == 'union':
            verdict = union_of_axes_check(
                complex_, h, n, scale=scale, executor=self.executor
            )
            result['status'] = verdict.status
            result['verdict'] = verdict
            result['axes'] = verdict.evidence
        elif name == 'axesgraph':
            axes_graph = graph_of_axes(
                complex_, h, n, scale=scale, executor=self.executor
            )
            result['axes_graph'] = axes_graph
            cap = self.config.limits.delta_cap
            try:
                result['delta'] = delta_four_point(
                    axes_graph, cap=cap, executor=self.executor
                )
                verdict = bottleneck_check(
                    axes_graph, self.config.limits.bottleneck_radius, cap=cap
                )
            except SizeCapExceeded as x:
                self.config.logger.warning('%s: %s', label, x)
                result['status'] = Verdict.UNKNOWN
                result['error'] = str(x)
                return result
            result['status'] = verdict.status
            result['bottleneck'] = verdict
        return result

    def cmd_delta(self, complex_file):
        result = collections.OrderedDict([('command', 'delta')])
        try:
            delta = self._timed(
                'delta',
                delta_four_point,
                complex_file.complex,
                cap=self.config.limits.delta_cap,
                executor=self.executor
            )
        except SizeCapExceeded as x:
            self.config.logger.error('%s', x)
            result['status'] = Verdict.UNKNOWN
            result['error'] = str(x)
            return self.make_report(complex_file, [result]), EXIT_UNKNOWN
        except DisconnectedGraphError as x:
            self.config.logger.error('%s', x)
            result['status'] = Verdict.FAIL
            result['error'] = str(x)
            return self.make_report(complex_file, [result]), EXIT_FAIL
        self.config.logger.info('delta = %s', delta.delta)
        result['status'] = Verdict.PASS
        result['delta'] = delta
        return self.make_report(complex_file, [result]), EXIT_PASS

    def cmd_gen(self, text, output):
        spec = CorpusSpec.from_string(text)
        if spec.kind == 'random' and 'seed=' not in text:
            spec = CorpusSpec(
                'random',
                n=spec.n,
                p=spec.p,
                seed=self.config.get('seed', 0)
            )
        generated = generate(spec)
        complex_ = generated.complex
        self.config.logger.info(
            '%s: %d vertices, %d edges', spec, complex_.vertex_count,
            complex_.graph.number_of_edges()
        )
        self._write(output, dump_complex(complex_))
        if generated.automorphism is not None:
            if output == '-':
                self.config.logger.warning(
                    'not writing the map of %s next to stdout', spec
                )
            else:
                self._write(
                    companion_map_path(output),
                    dump_map(generated.automorphism, complex_.vertex_count)
                )
        return EXIT_PASS

    def cmd_export(self, complex_file, output):
        """the 1-skeleton as GraphML for external graph viewers"""
        if output == '-':
            raise UsageError('--export needs an --output file')
        complex_ = complex_file.complex
        boundary = set(complex_.boundary)
        graph = nx.Graph()
        for v in complex_.vertices:
            attributes = {'boundary': v in boundary}
            if complex_.labels is not None:
                attributes['label'] = complex_.labels[v]
            graph.add_node(v, **attributes)
        graph.add_edges_from(complex_.edges())
        nx.write_graphml(graph, output)
        return EXIT_PASS


#------------------------------------------------------------------------------
def _worst(first, second):
    order = [None, Verdict.PASS, Verdict.UNKNOWN, Verdict.FAIL]
    return max(first, second, key=order.index)


#------------------------------------------------------------------------------
def _error_result(label, error):
    return collections.OrderedDict([
        ('subcommand', label),
        ('status', Verdict.FAIL),
        ('error', '%s: %s' % (error.__class__.__name__, error)),
    ])


# subcommand: does it take a power
ISOMETRY_SUBCOMMANDS = collections.OrderedDict([
    ('profile', False),
    ('minset', False),
    ('embed', False),
    ('idempotence', False),
    ('axes', True),
    ('union', True),
    ('axesgraph', True),
])


#------------------------------------------------------------------------------
def _parse_subcommand(text):
    words = text.split()
    name = words[0].lower()
    if name not in ISOMETRY_SUBCOMMANDS:
        raise UsageError(
            'unknown isometry subcommand %r (known: %s)'
            % (name, ', '.join(ISOMETRY_SUBCOMMANDS))
        )
    if not ISOMETRY_SUBCOMMANDS[name]:
        if len(words) != 1:
            raise UsageError('%s takes no argument' % name)
        return name, None
    if len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
        raise UsageError('usage: %s n, with n >= 1' % name)
    return name, int(words[1])


#==============================================================================
class FlagCheckApp(FlagCheckBase, App):
    """flagcheck as a generic_app App.  Keeping the options in
    FlagCheckBase lets another application runner reuse them without the
    App base class."""


def local_main():  # pragma: no cover
    sys.exit(main(FlagCheckApp))


if __name__ == '__main__':  # pragma: no cover
    local_main()
