# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
The checks the command line can request with `--check`.  Each one is a
thin job around a library checker: it reads its limits from the
configuration and returns the checker's Verdict unchanged.
"""

import collections

from flagcheck.base import BaseCheck, CheckArgumentError
from flagcheck.curvature_checks import (
    DisconnectedComplexError,
    Verdict,
    check_flag,
    check_local_lemmas,
    check_sd_all,
    check_sd_n,
    check_simple_connectivity,
    is_k_large,
    is_locally_k_large,
    is_m_located,
    is_systolic,
)
from flagcheck.loops import find_wheels
from flagcheck.mixins import with_executor_as_argument, with_limits


#==============================================================================
class FlagCheck(BaseCheck):
    app_name = 'flag'

    def run(self):
        simplices = self.complex_file.simplices
        if simplices is None:
            return check_flag(self.complex)
        return check_flag(
            simplices, clique_cap=self.limits.clique_cap
        )


#==============================================================================
@with_executor_as_argument
@with_limits('cycle_cap')
class KLargeCheck(BaseCheck):
    app_name = 'klarge'
    required_arguments = ('k',)

    def run(self, executor):
        k, = self.arguments
        return is_k_large(
            self.complex, k, executor=executor, **self.limit_arguments()
        )


#==============================================================================
@with_executor_as_argument
@with_limits('clique_cap', 'cycle_cap')
class LocallyKLargeCheck(BaseCheck):
    app_name = 'locallyklarge'
    required_arguments = ('k',)

    def run(self, executor):
        k, = self.arguments
        return is_locally_k_large(
            self.complex, k, executor=executor, **self.limit_arguments()
        )


#==============================================================================
@with_executor_as_argument
@with_limits('budget', 'search_limit', 'cycle_cap')
class MLocatedCheck(BaseCheck):
    app_name = 'mlocated'
    required_arguments = ('m',)

    def run(self, executor):
        m, = self.arguments
        return is_m_located(
            self.complex, m, executor=executor, **self.limit_arguments()
        )


#==============================================================================
@with_executor_as_argument
class SDCheck(BaseCheck):
    """the triangle and vertex conditions up to depth n, around one origin
    or around every vertex"""
    app_name = 'sd'
    required_arguments = ('n',)
    optional_arguments = ('origin',)

    def run(self, executor):
        if len(self.arguments) == 2:
            n, origin = self.arguments
            _check_origin(self.complex, origin)
            return check_sd_n(self.complex, origin, n).as_verdict()
        n, = self.arguments
        reports = check_sd_all(self.complex, n, executor=executor)
        failing = [o for o, report in reports.items() if not report.passed]
        notes = collections.OrderedDict([
            ('origins', len(reports)),
            ('failing_origins', failing),
        ])
        if failing:
            verdict = reports[failing[0]].as_verdict()
            return Verdict.failed(
                (failing[0],) + tuple(verdict.witness),
                evidence=reports[failing[0]],
                notes=notes
            )
        return Verdict.passed(notes=notes)


#==============================================================================
@with_limits('budget', 'search_limit')
class SimplyConnectedCheck(BaseCheck):
    app_name = 'simplyconnected'

    def run(self):
        try:
            return check_simple_connectivity(
                self.complex, **self.limit_arguments()
            )
        except DisconnectedComplexError:
            return Verdict.failed('disconnected')


#==============================================================================
class LemmasCheck(BaseCheck):
    """the two local adjacency lemmas at depth n around an origin.

    They presuppose 8-location and the SD'_n triangle and vertex
    conditions; the verdicts of those checks, when requested in the same
    run, are recorded next to this one."""
    app_name = 'lemmas'
    depends_on = ('mlocated', 'sd')
    required_arguments = ('n', 'origin')

    def run(self):
        n, origin = self.arguments
        _check_origin(self.complex, origin)
        return check_local_lemmas(self.complex, origin, n)


#==============================================================================
@with_executor_as_argument
@with_limits('budget', 'search_limit', 'clique_cap', 'cycle_cap')
class SystolicCheck(BaseCheck):
    app_name = 'systolic'
    optional_arguments = ('k',)

    def run(self, executor):
        k = self.arguments[0] if self.arguments else 6
        return is_systolic(
            self.complex, k, executor=executor, **self.limit_arguments()
        )


#==============================================================================
@with_limits('cycle_cap')
class WheelsCheck(BaseCheck):
    """passes when the complex contains no k-wheel"""
    app_name = 'wheels'
    required_arguments = ('k',)

    def run(self):
        k, = self.arguments
        wheels = find_wheels(self.complex, k, **self.limit_arguments())
        if wheels:
            return Verdict.failed(
                wheels[0], notes={'wheels': len(wheels)}
            )
        return Verdict.passed()


#------------------------------------------------------------------------------
def _check_origin(complex_, origin):
    if not 0 <= origin < complex_.vertex_count:
        raise CheckArgumentError(
            'origin %d is not a vertex of a complex with %d vertices'
            % (origin, complex_.vertex_count)
        )


#------------------------------------------------------------------------------
def _check_minimum(check_class, value, least):
    if value < least:
        raise CheckArgumentError(
            '%s needs an argument of at least %d, got %d'
            % (check_class.app_name, least, value)
        )


# least value of the first argument
MINIMUM_FIRST_ARGUMENT = {
    'klarge': 4,
    'locallyklarge': 4,
    'mlocated': 4,
    'sd': 1,
    'lemmas': 2,
    'systolic': 4,
    'wheels': 4,
}

CHECKS = collections.OrderedDict(
    (check_class.app_name, check_class) for check_class in (
        FlagCheck,
        KLargeCheck,
        LocallyKLargeCheck,
        MLocatedCheck,
        SDCheck,
        SimplyConnectedCheck,
        LemmasCheck,
        SystolicCheck,
        WheelsCheck,
    )
)


#------------------------------------------------------------------------------
def parse_check(text):
    """(check class, arguments) for an entry like 'klarge 5'"""
    words = text.split()
    if not words:
        raise CheckArgumentError('empty check')
    name = words[0].lower()
    if name not in CHECKS:
        raise CheckArgumentError(
            'unknown check %r (known: %s)' % (name, ', '.join(CHECKS))
        )
    check_class = CHECKS[name]
    arguments = check_class.parse_arguments(words[1:])
    if arguments and name in MINIMUM_FIRST_ARGUMENT:
        _check_minimum(check_class, arguments[0], MINIMUM_FIRST_ARGUMENT[name])
    return check_class, arguments
