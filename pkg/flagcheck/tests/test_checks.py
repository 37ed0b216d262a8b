# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

import unittest

import mock
from nose.tools import eq_, ok_, assert_raises

from flagcheck import checks
from flagcheck.base import CheckArgumentError
from flagcheck.complex_core import FlagComplex
from flagcheck.fileformat import ComplexFile
from flagcheck.generators import cycle, cylinder, disk, octahedron, wheel
from flagcheck.loops import LoopPath

from flagcheck.tests.base import limits_config


def _run(check_text, complex_, simplices=None, **limits):
    check_class, arguments = checks.parse_check(check_text)
    check = check_class(
        limits_config(**limits),
        ComplexFile(complex_, simplices),
        arguments
    )
    return check.main()


class TestParseCheck(unittest.TestCase):

    def test_parse(self):
        eq_(checks.parse_check('klarge 6'), (checks.KLargeCheck, (6,)))
        eq_(checks.parse_check('  SD 2 0 '), (checks.SDCheck, (2, 0)))
        eq_(checks.parse_check('systolic'), (checks.SystolicCheck, ()))
        eq_(
            checks.parse_check('simplyconnected'),
            (checks.SimplyConnectedCheck, ())
        )

    def test_errors(self):
        for text in (
            '',
            'curvy 3',
            'klarge',
            'klarge six',
            'klarge 3',
            'mlocated 2',
            'sd 0',
            'lemmas 1 0',
            'lemmas 2',
            'flag 1',
            'wheels 3',
        ):
            assert_raises(CheckArgumentError, checks.parse_check, text)

    def test_every_check_is_known(self):
        eq_(
            list(checks.CHECKS),
            [
                'flag',
                'klarge',
                'locallyklarge',
                'mlocated',
                'sd',
                'simplyconnected',
                'lemmas',
                'systolic',
                'wheels',
            ]
        )


class TestChecks(unittest.TestCase):

    def test_flag(self):
        ok_(_run('flag', octahedron().complex).is_pass)
        triangle = FlagComplex(3, [(0, 1), (1, 2), (0, 2)])
        verdict = _run('flag', triangle, simplices=[(0, 1), (1, 2), (0, 2)])
        ok_(verdict.is_fail)
        eq_(verdict.witness, (0, 1, 2))

    def test_klarge(self):
        verdict = _run('klarge 5', octahedron().complex)
        ok_(verdict.is_fail)
        eq_(verdict.witness, LoopPath((0, 2, 1, 3), closed=True))
        ok_(_run('klarge 4', octahedron().complex).is_pass)

    def test_executor_is_used(self):
        check_class, arguments = checks.parse_check('klarge 4')
        executor = mock.Mock(side_effect=lambda function, items: [
            function(item) for item in items
        ])
        check = check_class(
            limits_config(),
            ComplexFile(octahedron().complex),
            arguments,
            executor=executor
        )
        ok_(check.main().is_pass)
        ok_(executor.called)

    def test_locally_k_large(self):
        ok_(_run('locallyklarge 6', disk(6, 2).complex).is_pass)
        ok_(_run('locallyklarge 6', wheel(5).complex).is_fail)

    def test_mlocated_reads_its_limits(self):
        complex_ = disk(6, 2).complex
        ok_(_run('mlocated 8', complex_).is_fail)
        ok_(_run('mlocated 8', complex_, budget=2).is_unknown)

    def test_sd_around_one_origin(self):
        verdict = _run('sd 1 0', cylinder(4, 2).complex)
        ok_(verdict.is_fail)
        eq_(verdict.witness, ('triangle', 1, (6, 7)))
        assert_raises(
            CheckArgumentError, _run, 'sd 1 99', cylinder(4, 2).complex
        )

    def test_sd_sweep(self):
        verdict = _run('sd 1', cycle(6).complex)
        ok_(verdict.is_pass)
        eq_(verdict.notes['origins'], 6)
        eq_(verdict.notes['failing_origins'], [])
        verdict = _run('sd 1', cylinder(4, 2).complex)
        ok_(verdict.is_fail)
        eq_(verdict.witness, (0, 'triangle', 1, (6, 7)))
        eq_(verdict.notes['failing_origins'][0], 0)

    def test_simply_connected(self):
        ok_(_run('simplyconnected', disk(7, 2).complex).is_pass)
        ok_(_run('simplyconnected', cycle(6).complex).is_fail)
        verdict = _run('simplyconnected', FlagComplex(3, [(0, 1)]))
        eq_(verdict.witness, 'disconnected')

    def test_lemmas(self):
        eq_(checks.LemmasCheck.depends_on, ('mlocated', 'sd'))
        ok_(_run('lemmas 2 0', disk(7, 3).complex).is_pass)
        assert_raises(
            CheckArgumentError, _run, 'lemmas 2 500', disk(7, 2).complex
        )

    def test_systolic(self):
        ok_(_run('systolic', disk(6, 2).complex).is_pass)
        ok_(_run('systolic 7', disk(7, 2).complex).is_pass)
        ok_(_run('systolic', cycle(6).complex).is_fail)

    def test_wheels(self):
        verdict = _run('wheels 5', wheel(5).complex)
        ok_(verdict.is_fail)
        eq_(verdict.witness.hub, 0)
        eq_(verdict.witness.rim, LoopPath((1, 2, 3, 4, 5), closed=True))
        eq_(verdict.notes, {'wheels': 1})
        ok_(_run('wheels 6', wheel(5).complex).is_pass)
