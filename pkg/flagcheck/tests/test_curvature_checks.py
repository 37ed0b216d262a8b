# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

import unittest

from nose.tools import eq_, ok_, assert_raises

from flagcheck import curvature_checks as cc
from flagcheck.complex_core import FlagComplex
from flagcheck.curvature_checks import Verdict
from flagcheck.generators import (
    cycle,
    cylinder,
    disk,
    icosahedron,
    octahedron,
    wheel,
)
from flagcheck.loops import FillingCertificate, LoopPath


class TestVerdict(unittest.TestCase):

    def test_constructors(self):
        ok_(Verdict.passed().is_pass)
        ok_(Verdict.passed())
        failed = Verdict.failed((0, 1))
        ok_(failed.is_fail)
        ok_(not failed)
        eq_(failed.witness, (0, 1))
        unknown = Verdict.unknown(['x'])
        ok_(unknown.is_unknown)
        eq_(unknown.undecided, ['x'])
        assert_raises(ValueError, Verdict, 'maybe')

    def test_repr(self):
        eq_(repr(Verdict.passed()), '<Verdict pass>')
        eq_(repr(Verdict.failed(3)), '<Verdict fail 3>')
        eq_(repr(Verdict.unknown([1, 2])), '<Verdict unknown (2 undecided)>')

    def test_combine(self):
        passed = Verdict.passed()
        unknown = Verdict.unknown(['a'])
        failed = Verdict.failed('w')
        ok_(cc.combine([passed, unknown, failed]) is failed)
        combined = cc.combine([passed, unknown, Verdict.unknown(['b'])])
        ok_(combined.is_unknown)
        eq_(combined.undecided, ['a', 'b'])
        ok_(cc.combine([passed, passed]).is_pass)
        ok_(cc.combine([]).is_pass)


class TestFlagAndLargeness(unittest.TestCase):

    def test_flag(self):
        ok_(cc.check_flag(octahedron().complex).is_pass)
        ok_(cc.check_flag([(0, 1, 2), (2, 3)]).is_pass)
        verdict = cc.check_flag([(0, 1), (1, 2), (0, 2)])
        ok_(verdict.is_fail)
        eq_(verdict.witness, (0, 1, 2))

    def test_octahedron_is_four_large_only(self):
        complex_ = octahedron().complex
        ok_(cc.is_k_large(complex_, 4).is_pass)
        verdict = cc.is_k_large(complex_, 5)
        ok_(verdict.is_fail)
        eq_(verdict.witness, LoopPath((0, 2, 1, 3), closed=True))

    def test_k_below_four(self):
        assert_raises(ValueError, cc.is_k_large, cycle(6).complex, 3)
        assert_raises(
            ValueError, cc.is_locally_k_large, cycle(6).complex, 2
        )

    def test_hexagon_is_six_large(self):
        ok_(cc.is_k_large(cycle(6).complex, 6).is_pass)
        ok_(cc.is_k_large(cycle(6).complex, 7).is_fail)

    def test_icosahedron_is_locally_five_large(self):
        complex_ = icosahedron().complex
        verdict = cc.is_locally_k_large(complex_, 5)
        ok_(verdict.is_pass)
        # 12 vertices, 30 edges, 20 triangles
        eq_(verdict.notes, {'simplices': 62})
        verdict = cc.is_locally_k_large(complex_, 6)
        ok_(verdict.is_fail)
        simplex, loop = verdict.witness
        eq_(simplex, (0,))
        eq_(loop, LoopPath((1, 2, 3, 4, 5), closed=True))


class TestLocation(unittest.TestCase):

    def test_wheel_rim_is_in_a_ball(self):
        verdict = cc.is_m_located(wheel(6).complex, 8)
        ok_(verdict.is_pass)
        eq_(verdict.notes, {'cycles': 1, 'exempt': 0})

    def test_hexagon_is_exempt(self):
        verdict = cc.is_m_located(cycle(6).complex, 6)
        ok_(verdict.is_pass)
        eq_(verdict.notes, {'cycles': 1, 'exempt': 1})

    def test_flat_disk_is_not_eight_located(self):
        complex_ = disk(6, 2).complex
        verdict = cc.is_m_located(complex_, 8)
        ok_(verdict.is_fail)
        eq_(verdict.witness.length, 8)
        ok_(verdict.evidence.null_homotopic)
        ok_(verdict.evidence.verify(complex_, verdict.witness))
        # below eight the flat disk has only the links of its vertices
        ok_(cc.is_m_located(complex_, 7).is_pass)

    def test_undecided_cycles_make_it_unknown(self):
        complex_ = disk(6, 2).complex
        verdict = cc.is_m_located(complex_, 8, area_budget=2)
        ok_(verdict.is_unknown)
        ok_(all(loop.length == 8 for loop in verdict.undecided))

    def test_m_below_four(self):
        assert_raises(ValueError, cc.is_m_located, cycle(6).complex, 3)


class TestSDConditions(unittest.TestCase):

    def test_cylinder_failures(self):
        report = cc.check_sd_n(cylinder(4, 2).complex, 0, 1)
        ok_(not report.passed)
        eq_(report.triangle_failures, [(1, (6, 7))])
        eq_(report.vertex_failures, [(1, 2, 1, 3)])
        verdict = report.as_verdict()
        ok_(verdict.is_fail)
        eq_(verdict.witness, ('triangle', 1, (6, 7)))
        ok_(verdict.evidence is report)

    def test_vertex_witness(self):
        report = cc.SDReport(0, 1, vertex_failures=[(1, 2, 1, 3)])
        eq_(report.as_verdict().witness, ('vertex', 1, 2, 1, 3))

    def test_hexagon_passes_everywhere(self):
        reports = cc.check_sd_all(cycle(6).complex, 1)
        eq_(list(reports), list(range(6)))
        ok_(all(report.passed for report in reports.values()))

    def test_origin_sweep(self):
        report = cc.check_sd_origin(wheel(6).complex, 0)
        eq_(report.depth, 1)
        ok_(report.passed)

    def test_depth_below_one(self):
        assert_raises(ValueError, cc.check_sd_n, cycle(6).complex, 0, 0)


class TestSimpleConnectivity(unittest.TestCase):

    def test_hexagon_is_not_simply_connected(self):
        complex_ = cycle(6).complex
        verdict = cc.check_simple_connectivity(complex_)
        ok_(verdict.is_fail)
        eq_(verdict.witness, LoopPath((3, 2, 1, 0, 5, 4), closed=True))
        eq_(
            verdict.evidence.kind,
            FillingCertificate.HOMOLOGY_OBSTRUCTION
        )

    def test_filled_complexes(self):
        ok_(cc.check_simple_connectivity(wheel(5).complex).is_pass)
        ok_(cc.check_simple_connectivity(octahedron().complex).is_pass)
        ok_(cc.check_simple_connectivity(disk(7, 2).complex).is_pass)

    def test_disconnected(self):
        assert_raises(
            cc.DisconnectedComplexError,
            cc.check_simple_connectivity,
            FlagComplex(3, [(0, 1)])
        )

    def test_systolic(self):
        ok_(cc.is_systolic(disk(6, 2).complex).is_pass)
        ok_(cc.is_systolic(disk(7, 2).complex, 7).is_pass)
        # locally large but with a hole
        ok_(cc.is_systolic(cycle(6).complex).is_fail)
        # not locally 6-large: the witness is a short link cycle
        verdict = cc.is_systolic(icosahedron().complex)
        ok_(verdict.is_fail)
        eq_(verdict.witness[0], (0,))
        verdict = cc.is_systolic(FlagComplex(2, []))
        ok_(verdict.is_fail)
        eq_(verdict.witness, 'disconnected')


# origin 0; 1 and 2 around it; the path 3 4 5 at distance two; 6 above it
CORNER_EDGES = [
    (0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (2, 5),
    (3, 4), (4, 5), (3, 6), (4, 6), (5, 6),
]

# origin 0; 1 and 2 around it; the path 3 4 5 at distance two with 1 under
# 3 4 and 2 under 4 5; 6 over 3 4 and 7 over 4 5
LADDER_EDGES = [
    (0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (2, 5),
    (3, 4), (4, 5), (3, 6), (4, 6), (4, 7), (5, 7),
]


class TestLocalLemmas(unittest.TestCase):

    def test_hyperbolic_disk(self):
        complex_ = disk(7, 3).complex
        verdict = cc.check_local_lemmas(complex_, 0, 2)
        ok_(verdict.is_pass)
        # the projection of an outer vertex onto the ball is a simplex
        eq_(verdict.notes['corner_configurations'], 0)
        eq_(verdict.notes['ladder_configurations'], 14)
        eq_(verdict.notes['ladder_converse_exceptions'], 14)

    def test_depth_below_two(self):
        assert_raises(
            ValueError, cc.check_local_lemmas, disk(7, 2).complex, 0, 1
        )

    def test_corner_holds(self):
        complex_ = FlagComplex(7, CORNER_EDGES + [(1, 2)])
        verdict = cc.check_local_lemmas(complex_, 0, 2)
        ok_(verdict.is_pass)
        eq_(verdict.notes['corner_configurations'], 1)

    def test_corner_fails_on_a_square(self):
        # 0 1 4 2 is a square with no diagonal
        complex_ = FlagComplex(7, CORNER_EDGES)
        verdict = cc.check_local_lemmas(complex_, 0, 2)
        ok_(verdict.is_fail)
        eq_(verdict.witness, {
            'v': 6, 'y': 3, 'z': 5, 'w': 4, 'u1': 1, 'u2': 2,
            'lemma': 'corner',
        })
        eq_(verdict.notes['corner_configurations'], 1)

    def test_corner_skips_a_shortcut(self):
        # 1 reaches z directly, so nothing is claimed about 1 and 2
        complex_ = FlagComplex(7, CORNER_EDGES + [(1, 5)])
        verdict = cc.check_local_lemmas(complex_, 0, 2)
        ok_(verdict.is_pass)
        ok_(verdict.notes['corner_configurations'] > 0)

    def test_ladder_holds(self):
        complex_ = FlagComplex(8, LADDER_EDGES + [(1, 2), (6, 7)])
        verdict = cc.check_local_lemmas(complex_, 0, 3)
        ok_(verdict.is_pass)
        eq_(verdict.notes['ladder_configurations'], 2)
        eq_(verdict.notes['ladder_converse_exceptions'], 0)

    def test_ladder_fails_on_a_square(self):
        complex_ = FlagComplex(8, LADDER_EDGES + [(6, 7)])
        verdict = cc.check_local_lemmas(complex_, 0, 3)
        ok_(verdict.is_fail)
        eq_(verdict.witness, {
            'v1': 3, 'v2': 4, 'v3': 5, 'w1': 1, 'w2': 2, 'p1': 6, 'p2': 7,
            'lemma': 'ladder',
        })
        eq_(verdict.notes['ladder_configurations'], 1)

    def test_ladder_converse_is_counted(self):
        complex_ = FlagComplex(8, LADDER_EDGES + [(1, 2)])
        verdict = cc.check_local_lemmas(complex_, 0, 3)
        ok_(verdict.is_pass)
        eq_(verdict.notes['ladder_configurations'], 2)
        eq_(verdict.notes['ladder_converse_exceptions'], 2)

    def test_ladder_scans_spheres_only(self):
        # one level out the path 3 4 5 lies inside the ball, not on the
        # sphere, and is no longer a ladder
        complex_ = FlagComplex(8, LADDER_EDGES + [(6, 7)])
        verdict = cc.check_local_lemmas(complex_, 0, 4)
        ok_(verdict.is_pass)
        eq_(verdict.notes['ladder_configurations'], 0)
