# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

import unittest

from nose.tools import eq_, ok_, assert_raises

from flagcheck import loops
from flagcheck.complex_core import FlagComplex
from flagcheck.generators import (
    complete,
    cycle,
    icosahedron,
    octahedron,
    strip,
    wheel,
)
from flagcheck.loops import FillingCertificate, LoopPath, PathError


class TestLoopPath(unittest.TestCase):

    def test_lengths(self):
        eq_(LoopPath((0, 1, 2)).length, 2)
        eq_(LoopPath((0, 1, 2), closed=True).length, 3)
        eq_(len(LoopPath((4,))), 0)

    def test_closed_loop_may_not_repeat(self):
        assert_raises(PathError, LoopPath, (0, 1, 0), closed=True)
        assert_raises(PathError, LoopPath, ())

    def test_steps(self):
        eq_(LoopPath((0, 1, 2)).steps(), [(0, 1), (1, 2)])
        eq_(
            LoopPath((0, 1, 2), closed=True).steps(),
            [(0, 1), (1, 2), (2, 0)]
        )

    def test_validate(self):
        complex_ = cycle(6).complex
        loop = LoopPath(range(6), closed=True)
        ok_(loop.validate(complex_) is loop)
        assert_raises(
            PathError, LoopPath((0, 2)).validate, complex_
        )
        assert_raises(
            PathError, LoopPath((0, 1), closed=True).validate, complex_
        )

    def test_concatenate(self):
        joined = LoopPath((0, 1, 2)).concatenate(LoopPath((2, 3)))
        eq_(joined, LoopPath((0, 1, 2, 3)))
        assert_raises(
            PathError,
            LoopPath((0, 1)).concatenate,
            LoopPath((2, 3))
        )
        assert_raises(
            PathError,
            LoopPath((0, 1, 2), closed=True).concatenate,
            LoopPath((2, 3))
        )

    def test_is_full(self):
        ok_(LoopPath(range(6), closed=True).is_full(cycle(6).complex))
        ok_(not LoopPath(range(4), closed=True).is_full(complete(4).complex))
        ok_(LoopPath((0, 1, 2)).is_full(cycle(6).complex))
        ok_(not LoopPath((0, 1, 2)).is_full(complete(3).complex))
        # a triangle is never a full cycle
        ok_(not LoopPath((0, 1, 2), closed=True).is_full(cycle(3).complex))

    def test_canonical(self):
        eq_(loops.canonical_cycle([3, 2, 1, 0]), (0, 1, 2, 3))
        eq_(loops.canonical_cycle([2, 5, 0, 4]), (0, 4, 2, 5))
        eq_(
            LoopPath((5, 4, 3, 2, 1, 0), closed=True).canonical(),
            LoopPath(range(6), closed=True)
        )
        open_path = LoopPath((3, 2, 1))
        ok_(open_path.canonical() is open_path)


class TestFullCycles(unittest.TestCase):

    def test_hexagon(self):
        eq_(
            loops.enumerate_full_cycles(cycle(6).complex, 6),
            [LoopPath((0, 1, 2, 3, 4, 5), closed=True)]
        )
        eq_(loops.enumerate_full_cycles(cycle(6).complex, 5), [])

    def test_square(self):
        eq_(
            loops.enumerate_full_cycles(cycle(4).complex, 4),
            [LoopPath((0, 1, 2, 3), closed=True)]
        )

    def test_short_lengths(self):
        eq_(loops.enumerate_full_cycles(cycle(3).complex, 3), [])
        eq_(loops.enumerate_full_cycles(complete(5).complex, 5), [])

    def test_octahedron_equators(self):
        eq_(
            loops.enumerate_full_cycles(octahedron().complex, 4),
            [
                LoopPath((0, 2, 1, 3), closed=True),
                LoopPath((0, 4, 1, 5), closed=True),
                LoopPath((2, 4, 3, 5), closed=True),
            ]
        )

    def test_wheel_rim_only(self):
        eq_(
            loops.enumerate_full_cycles(wheel(6).complex, 8),
            [LoopPath((1, 2, 3, 4, 5, 6), closed=True)]
        )

    def test_cycle_cap(self):
        assert_raises(
            loops.CycleCapExceeded,
            loops.enumerate_full_cycles,
            cycle(6).complex,
            13
        )
        eq_(
            len(loops.enumerate_full_cycles(
                cycle(14).complex, 14, cycle_cap=14
            )),
            1
        )

    def test_executor_is_used(self):
        calls = []

        def executor(function, items):
            items = list(items)
            calls.append(len(items))
            return [function(item) for item in items]

        found = loops.enumerate_full_cycles(
            cycle(5).complex, 5, executor=executor
        )
        eq_(calls, [5])
        eq_(found, [LoopPath(range(5), closed=True)])


class TestTighten(unittest.TestCase):

    def test_backtrack_and_chord(self):
        complex_ = cycle(6).complex
        eq_(
            loops.tighten(complex_, LoopPath((0, 1, 2, 1, 0, 5))),
            LoopPath((0, 5))
        )

    def test_chord(self):
        complex_ = wheel(5).complex
        eq_(
            loops.tighten(complex_, LoopPath((1, 2, 3, 0))),
            LoopPath((1, 0))
        )

    def test_already_full(self):
        complex_ = cycle(6).complex
        eq_(
            loops.tighten(complex_, LoopPath((0, 1, 2, 3))),
            LoopPath((0, 1, 2, 3))
        )

    def test_closed_is_refused(self):
        assert_raises(
            PathError,
            loops.tighten,
            cycle(6).complex,
            LoopPath(range(6), closed=True)
        )


class TestFilling(unittest.TestCase):

    def test_one_ball(self):
        complex_ = wheel(5).complex
        rim = LoopPath((1, 2, 3, 4, 5), closed=True)
        eq_(loops.in_one_ball(complex_, rim), 0)
        certificate = loops.fill(complex_, rim)
        eq_(certificate.kind, FillingCertificate.ONE_BALL)
        eq_(certificate.apex, 0)
        ok_(certificate.null_homotopic)
        ok_(certificate.verify(complex_, rim))
        eq_(certificate.as_dict(), {'kind': 'one-ball', 'apex': 0})

    def test_homology_obstruction(self):
        complex_ = cycle(6).complex
        loop = LoopPath(range(6), closed=True)
        eq_(loops.in_one_ball(complex_, loop), None)
        ok_(not loops.homology_class_is_zero(complex_, loop))
        certificate = loops.fill(complex_, loop)
        eq_(certificate.kind, FillingCertificate.HOMOLOGY_OBSTRUCTION)
        ok_(not certificate.null_homotopic)
        ok_(certificate.verify(complex_, loop))

    def test_diagram_around_a_strip(self):
        # the outline of a 2 by 4 strip lies in no 1-ball
        complex_ = strip(2, 4).complex
        loop = LoopPath((0, 2, 4, 6, 7, 5, 3, 1), closed=True)
        loop.validate(complex_)
        ok_(loops.homology_class_is_zero(complex_, loop))
        certificate = loops.fill(complex_, loop)
        eq_(certificate.kind, FillingCertificate.DIAGRAM)
        ok_(certificate.verify(complex_, loop))
        ok_(len(certificate.triangles) >= 6)
        eq_(
            certificate.as_dict()['triangles'],
            [list(t) for t in certificate.triangles]
        )

    def test_forged_certificates_do_not_verify(self):
        complex_ = strip(2, 4).complex
        loop = LoopPath((0, 2, 4, 6, 7, 5, 3, 1), closed=True)
        forged = FillingCertificate(
            FillingCertificate.DIAGRAM, triangles=[(0, 2, 3)]
        )
        ok_(not forged.verify(complex_, loop))
        wrong_apex = FillingCertificate(FillingCertificate.ONE_BALL, apex=0)
        ok_(not wrong_apex.verify(complex_, loop))

    def test_unknown_when_the_budget_is_too_small(self):
        complex_ = strip(2, 4).complex
        loop = LoopPath((0, 2, 4, 6, 7, 5, 3, 1), closed=True)
        certificate = loops.fill(complex_, loop, area_budget=2)
        eq_(certificate.kind, FillingCertificate.UNKNOWN)
        eq_(certificate.as_dict(), {'kind': 'unknown', 'budget': 2})

    def test_fill_preconditions(self):
        complex_ = wheel(5).complex
        assert_raises(
            PathError, loops.fill, complex_, LoopPath((1, 2, 3))
        )
        assert_raises(
            ValueError,
            loops.fill,
            complex_,
            LoopPath((1, 2, 3, 4, 5), closed=True),
            area_budget=0
        )

    def test_cone_diagram(self):
        rim = LoopPath((1, 2, 3, 4, 5), closed=True)
        triangles = loops.cone_diagram(rim, 0)
        eq_(
            triangles,
            [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5)]
        )
        certificate = FillingCertificate(
            FillingCertificate.DIAGRAM, triangles=triangles
        )
        ok_(certificate.verify(wheel(5).complex, rim))


class TestWheels(unittest.TestCase):

    def test_single_wheel(self):
        eq_(
            loops.find_wheels(wheel(5).complex, 5),
            [loops.Wheel(0, LoopPath((1, 2, 3, 4, 5), closed=True))]
        )
        eq_(loops.find_wheels(wheel(5).complex, 4), [])

    def test_icosahedron_has_a_wheel_at_every_vertex(self):
        found = loops.find_wheels(icosahedron().complex, 5)
        eq_([w.hub for w in found], list(range(12)))
        ok_(all(w.k == 5 for w in found))

    def test_k_below_four(self):
        assert_raises(ValueError, loops.find_wheels, wheel(3).complex, 3)

    def test_no_wheels_without_triangles(self):
        eq_(loops.find_wheels(FlagComplex(5, []), 4), [])
