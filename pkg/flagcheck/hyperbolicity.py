# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
Exact four-point Gromov delta and the bottleneck test for quasi-trees.

Delta is kept doubled as an integer; `DeltaResult.delta` hands it out as
a Fraction so half-integers never go through floating point.
"""

import fractions
import functools

import networkx as nx
import numpy as np

from flagcheck.complex_core import SubcomplexView, distance_matrix
from flagcheck.curvature_checks import Verdict
from flagcheck.executor import run_all


DEFAULT_DELTA_CAP = 400


#==============================================================================
class SizeCapExceeded(Exception):
    pass


#==============================================================================
class DisconnectedGraphError(ValueError):
    pass


#==============================================================================
class DeltaResult(object):
    def __init__(self, doubled, witness):
        self.doubled = int(doubled)
        self.witness = witness

    def __repr__(self):
        return '<DeltaResult delta=%s witness=%r>' % (self.delta,
                                                      self.witness)

    def __eq__(self, other):
        return (
            isinstance(other, DeltaResult) and
            self.doubled == other.doubled and
            self.witness == other.witness
        )

    def __ne__(self, other):
        return not self == other

    @property
    def delta(self):
        return fractions.Fraction(self.doubled, 2)

    def verify(self, distances, index=None):
        """recompute the gap of the three pair sums on the witness.

        `index` translates witness vertices to rows of `distances` when
        the witness was reported in parent vertex numbers."""
        if self.witness is None:
            return self.doubled == 0
        i, j, k, l = [
            index[v] if index is not None else v for v in self.witness
        ]
        sums = sorted([
            distances[i, j] + distances[k, l],
            distances[i, k] + distances[j, l],
            distances[i, l] + distances[j, k],
        ])
        return int(sums[2] - sums[1]) == self.doubled


#==============================================================================
class DeltaProfile(object):
    """delta over a growing family of windows"""

    def __init__(self, labels, results):
        self.labels = list(labels)
        self.results = list(results)

    def __repr__(self):
        return '<DeltaProfile %r>' % (
            [(label, str(r.delta)) for label, r in zip(self.labels,
                                                       self.results)],
        )

    @property
    def non_decreasing(self):
        values = [r.doubled for r in self.results]
        return all(a <= b for a, b in zip(values, values[1:]))


#------------------------------------------------------------------------------
def metric(graph_like, cap=DEFAULT_DELTA_CAP):
    """(distance matrix, vertex labels) of a complex, view or graph"""
    if isinstance(graph_like, SubcomplexView):
        labels = list(graph_like.vertex_set)
        count = len(labels)
    elif hasattr(graph_like, 'as_graph'):
        graph_like = graph_like.as_graph()
    if isinstance(graph_like, nx.Graph):
        labels = sorted(graph_like.nodes())
        graph_like = nx.relabel_nodes(
            graph_like, dict((v, i) for i, v in enumerate(labels))
        )
        count = len(labels)
    elif not isinstance(graph_like, SubcomplexView):
        labels = list(range(graph_like.vertex_count))
        count = len(labels)
    if cap is not None and count > cap:
        raise SizeCapExceeded(
            '%d vertices exceed the cap of %d' % (count, cap)
        )
    distances = distance_matrix(graph_like)
    if (distances < 0).any():
        raise DisconnectedGraphError('graph is not connected')
    return distances, labels


#------------------------------------------------------------------------------
def _widest_gap_from(distances, i):
    """(doubled delta, quadruple) over quadruples starting at i, keeping
    the lexicographically first quadruple reaching the maximum"""
    count = distances.shape[0]
    best = (-1, None)
    for j in range(i + 1, count - 2):
        ks, ls = np.triu_indices(count - j - 1, 1)
        ks = ks + j + 1
        ls = ls + j + 1
        sums = np.stack([
            distances[i, j] + distances[ks, ls],
            distances[i, ks] + distances[j, ls],
            distances[i, ls] + distances[j, ks],
        ])
        sums.sort(axis=0)
        gaps = sums[2] - sums[1]
        position = int(np.argmax(gaps))
        if gaps[position] > best[0]:
            best = (
                int(gaps[position]),
                (i, j, int(ks[position]), int(ls[position]))
            )
    return best


#------------------------------------------------------------------------------
def delta_four_point(graph_like, cap=DEFAULT_DELTA_CAP, executor=None):
    distances, labels = metric(graph_like, cap)
    count = len(labels)
    if count < 4:
        return DeltaResult(0, None)
    work = functools.partial(_widest_gap_from, distances)
    best = (-1, None)
    for gap, quadruple in run_all(executor, work, range(count - 3)):
        if gap > best[0]:
            best = (gap, quadruple)
    doubled, quadruple = best
    return DeltaResult(doubled, tuple(labels[v] for v in quadruple))


#------------------------------------------------------------------------------
def delta_profile(graphs, labels=None, cap=DEFAULT_DELTA_CAP, executor=None):
    graphs = list(graphs)
    if labels is None:
        labels = list(range(len(graphs)))
    return DeltaProfile(
        labels,
        [delta_four_point(g, cap=cap, executor=executor) for g in graphs]
    )


#------------------------------------------------------------------------------
def _separated(graph, distances, x, y, m, radius):
    """does removing the ball around m cut x from y"""
    removed = set(np.flatnonzero(distances[m] <= radius).tolist())
    if x in removed or y in removed:
        return True
    kept = graph.subgraph(v for v in graph if v not in removed)
    return not nx.has_path(kept, x, y)


#------------------------------------------------------------------------------
def bottleneck_check(graph_like, delta_param, cap=DEFAULT_DELTA_CAP):
    """every pair x, y is separated by the ball of radius delta_param
    around some vertex halfway between them"""
    if delta_param < 0:
        raise ValueError('negative radius %r' % (delta_param,))
    distances, labels = metric(graph_like, cap)
    count = len(labels)
    graph = nx.Graph()
    graph.add_nodes_from(range(count))
    rows, columns = np.nonzero(distances == 1)
    graph.add_edges_from(zip(rows.tolist(), columns.tolist()))
    for x in range(count):
        for y in range(x + 1, count):
            d = int(distances[x, y])
            halfway = np.flatnonzero(np.abs(2 * distances[x] - d) <= 1)
            if not any(
                _separated(graph, distances, x, y, int(m), delta_param)
                for m in halfway
            ):
                return Verdict.failed((labels[x], labels[y]))
    return Verdict.passed()
