# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

import pickle
import unittest

import networkx as nx
from hypothesis import given, settings, strategies as st
from nose.tools import eq_, ok_, assert_raises

from flagcheck import complex_core
from flagcheck.complex_core import (
    UNREACHABLE,
    FlagComplex,
    SubcomplexView,
)
from flagcheck.generators import complete, cycle, octahedron, path, wheel


#------------------------------------------------------------------------------
@st.composite
def relabeled_graphs(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) \
        if pairs else []
    permutation = draw(st.permutations(list(range(n))))
    return n, edges, permutation


class TestFlagComplex(unittest.TestCase):

    def test_definition_errors(self):
        assert_raises(
            complex_core.ComplexDefinitionError,
            FlagComplex, 2, [(0, 0)]
        )
        assert_raises(
            complex_core.ComplexDefinitionError,
            FlagComplex, 2, [(0, 2)]
        )
        assert_raises(
            complex_core.ComplexDefinitionError,
            FlagComplex, -1
        )
        assert_raises(
            complex_core.ComplexDefinitionError,
            FlagComplex, 2, [(0, 1)], labels=['a']
        )
        assert_raises(
            complex_core.ComplexDefinitionError,
            FlagComplex, 2, [(0, 1)], boundary=[5]
        )

    def test_edges_are_canonical(self):
        complex_ = FlagComplex(4, [(3, 2), (1, 0), (0, 1), (2, 0)])
        eq_(list(complex_.edges()), [(0, 1), (0, 2), (2, 3)])
        eq_(complex_.degree(0), 2)
        ok_(complex_.adjacent(3, 2))
        ok_(not complex_.adjacent(1, 3))
        eq_(complex_.closed_neighborhood(2), frozenset([0, 2, 3]))

    def test_equality_and_pickling(self):
        complex_ = wheel(5).complex
        again = pickle.loads(pickle.dumps(complex_))
        eq_(again, complex_)
        eq_(hash(again), hash(complex_))
        ok_(complex_ != cycle(6).complex)

    def test_is_simplex(self):
        complex_ = octahedron().complex
        ok_(complex_.is_simplex((0, 2, 4)))
        ok_(not complex_.is_simplex((0, 1)))
        ok_(not complex_.is_simplex(()))
        ok_(not complex_.is_simplex((0, 0)))
        ok_(not complex_.is_simplex((0, 9)))

    def test_simplices_of_a_triangle(self):
        eq_(
            [tuple(s) for s in complete(3).complex.simplices()],
            [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]
        )

    def test_simplices_max_size(self):
        simplices = complete(4).complex.simplices(max_size=2)
        eq_(len(simplices), 4 + 6)
        eq_(simplices[-1].dimension, 1)

    def test_clique_cap(self):
        assert_raises(
            complex_core.CliqueCapExceeded,
            complete(5).complex.simplices,
            clique_cap=4
        )

    def test_maximal_simplices_of_octahedron(self):
        maximal = octahedron().complex.maximal_simplices()
        eq_(len(maximal), 8)
        ok_(all(len(s) == 3 for s in maximal))
        eq_(tuple(maximal[0]), (0, 2, 4))

    def test_simplex_rejects_repeats(self):
        assert_raises(
            complex_core.NotASimplexError,
            complex_core.Simplex,
            (1, 1)
        )
        eq_(complex_core.Simplex((3, 1, 2)), (1, 2, 3))


class TestIngest(unittest.TestCase):

    def test_hollow_triangle_is_not_flag(self):
        try:
            complex_core.ingest_explicit([(0, 1), (1, 2), (0, 2)])
        except complex_core.FlagViolation as x:
            eq_(x.witness, (0, 1, 2))
        else:
            raise AssertionError('FlagViolation not raised')

    def test_solid_triangle(self):
        complex_ = complex_core.ingest_explicit([(0, 1, 2)])
        eq_(list(complex_.edges()), [(0, 1), (0, 2), (1, 2)])

    def test_isolated_vertices_kept(self):
        complex_ = complex_core.ingest_explicit([(0, 1)], vertex_count=4)
        eq_(complex_.vertex_count, 4)
        eq_(complex_.degree(3), 0)

    def test_vertex_out_of_range(self):
        assert_raises(
            complex_core.ComplexDefinitionError,
            complex_core.ingest_explicit,
            [(0, 5)],
            vertex_count=3
        )

    def test_export_simplices(self):
        complex_ = complex_core.ingest_explicit([(0, 1, 2), (2, 3)])
        eq_(
            complex_core.export_simplices(complex_),
            [(0,), (1,), (2,), (3,), (0, 1), (0, 2), (1, 2), (2, 3),
             (0, 1, 2)]
        )


class TestViewsAndLinks(unittest.TestCase):

    def test_link_of_a_wheel_hub(self):
        link_complex, vertex_map = complex_core.link(wheel(5).complex, (0,))
        eq_(link_complex.vertex_count, 5)
        eq_(len(list(link_complex.edges())), 5)
        eq_(vertex_map, (1, 2, 3, 4, 5))

    def test_link_of_an_edge(self):
        link_complex, vertex_map = complex_core.link(
            octahedron().complex, (0, 2)
        )
        eq_(vertex_map, (4, 5))
        eq_(list(link_complex.edges()), [])

    def test_link_of_a_non_simplex(self):
        assert_raises(
            complex_core.NotASimplexError,
            complex_core.link,
            octahedron().complex,
            (0, 1)
        )

    def test_span(self):
        view = complex_core.span(path(4).complex, [2, 1])
        ok_(isinstance(view, SubcomplexView))
        eq_(view.vertex_set, (1, 2))
        ok_(1 in view)
        ok_(3 not in view)
        eq_(view.window_boundary(), (1, 2))
        inner, vertex_map = view.as_complex()
        eq_(inner.vertex_count, 2)
        eq_(list(inner.edges()), [(0, 1)])
        eq_(inner.boundary, (0, 1))
        eq_(vertex_map, (1, 2))

    def test_span_checks_vertices(self):
        assert_raises(
            complex_core.ComplexDefinitionError,
            complex_core.span,
            path(4).complex,
            [7]
        )


class TestDistances(unittest.TestCase):

    def test_cycle_distances(self):
        complex_ = cycle(6).complex
        eq_(complex_core.distance(complex_, 0, 3), 3)
        eq_(complex_core.eccentricity(complex_, 0), 3)
        eq_(complex_core.ball(complex_, 0, 1).vertex_set, (0, 1, 5))
        eq_(complex_core.sphere(complex_, 0, 2).vertex_set, (2, 4))
        eq_(complex_core.sphere(complex_, 0, 0).vertex_set, (0,))

    def test_negative_radius(self):
        assert_raises(ValueError, complex_core.ball, cycle(6).complex, 0, -1)

    def test_unreachable(self):
        complex_ = FlagComplex(3, [(0, 1)])
        ok_(complex_core.distance(complex_, 0, 2) is UNREACHABLE)
        ok_(not UNREACHABLE)
        eq_(repr(UNREACHABLE), 'UNREACHABLE')
        ok_(pickle.loads(pickle.dumps(UNREACHABLE)) is UNREACHABLE)
        matrix = complex_core.distance_matrix(complex_)
        eq_(matrix[0, 2], -1)
        eq_(matrix[0, 1], 1)
        ok_(not complex_core.is_connected(complex_))

    def test_distance_matrix_of_a_networkx_graph(self):
        # networkx graphs carry a `graph` attribute of their own
        matrix = complex_core.distance_matrix(nx.path_graph(5))
        eq_(matrix[0, 4], 4)
        eq_(matrix.shape, (5, 5))

    def test_distance_matrix_of_a_view(self):
        view = SubcomplexView(cycle(6).complex, [0, 1, 2, 3, 4])
        matrix = complex_core.distance_matrix(view)
        # the short way round went through 5
        eq_(matrix[0, 4], 4)
        eq_(complex_core.distance(cycle(6).complex, 0, 4), 2)

    def test_boundary_distances(self):
        complex_ = FlagComplex(3, [(0, 1), (1, 2)], boundary=[0])
        margins = complex_core.boundary_distances(complex_)
        eq_(dict(margins), {0: 0, 1: 1, 2: 2})
        ok_(complex_core.window_distance_certified(margins, 2, 2))
        ok_(not complex_core.window_distance_certified(margins, 1, 2))
        ok_(not complex_core.window_distance_certified(
            margins, 0, UNREACHABLE
        ))
        ok_(complex_core.window_distance_certified(None, 0, 5))
        eq_(complex_core.boundary_distances(cycle(5).complex), None)

    @settings(max_examples=50, deadline=None)
    @given(relabeled_graphs())
    def test_distances_do_not_depend_on_labels(self, drawn):
        n, edges, permutation = drawn
        original = FlagComplex(n, edges)
        relabeled = FlagComplex(
            n, [(permutation[u], permutation[v]) for u, v in edges]
        )
        before = complex_core.distance_matrix(original)
        after = complex_core.distance_matrix(relabeled)
        for u in range(n):
            for v in range(n):
                eq_(before[u, v], after[permutation[u], permutation[v]])
