# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
Cycles and paths: full-cycle enumeration, tightening, 1-ball containment,
bounded filling search and wheel detection.
"""

import collections
import functools
import heapq

import numpy as np

from flagcheck.complex_core import link
from flagcheck.executor import run_all


DEFAULT_CYCLE_CAP = 12
DEFAULT_AREA_BUDGET = 64
DEFAULT_SEARCH_LIMIT = 20000
# how much longer than the loop an intermediate word may grow while filling
FILLING_SLACK = 2


#==============================================================================
class PathError(ValueError):
    pass


#==============================================================================
class CycleCapExceeded(Exception):
    pass


#==============================================================================
class LoopPath(object):
    """a vertex sequence, open or closed.

    The length of an open path is its edge count, len(vertices) - 1; a
    closed loop has as many edges as vertices."""

    def __init__(self, vertices, closed=False):
        self.vertices = tuple(vertices)
        self.closed = bool(closed)
        if not self.vertices:
            raise PathError('empty path')
        if self.closed and len(set(self.vertices)) != len(self.vertices):
            raise PathError('closed loop %r repeats a vertex' % (vertices,))

    def __repr__(self):
        return '<LoopPath %s%r>' % (
            'closed ' if self.closed else '', self.vertices
        )

    def __eq__(self, other):
        return (
            isinstance(other, LoopPath) and
            self.vertices == other.vertices and
            self.closed == other.closed
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.vertices, self.closed))

    def __len__(self):
        return self.length

    def __iter__(self):
        return iter(self.vertices)

    @property
    def length(self):
        if self.closed:
            return len(self.vertices)
        return len(self.vertices) - 1

    def steps(self):
        """consecutive vertex pairs, including the closing one"""
        pairs = list(zip(self.vertices, self.vertices[1:]))
        if self.closed and len(self.vertices) > 1:
            pairs.append((self.vertices[-1], self.vertices[0]))
        return pairs

    def validate(self, complex_):
        for v in self.vertices:
            complex_.check_vertex(v)
        for u, v in self.steps():
            if not complex_.adjacent(u, v):
                raise PathError('%r and %r are not adjacent' % (u, v))
        if self.closed and len(self.vertices) < 3:
            raise PathError('a closed loop needs three vertices')
        return self

    def concatenate(self, other):
        """alpha * beta for open paths where alpha ends where beta starts"""
        if self.closed or other.closed:
            raise PathError('only open paths concatenate')
        if self.vertices[-1] != other.vertices[0]:
            raise PathError(
                'path ends at %r but the next starts at %r' %
                (self.vertices[-1], other.vertices[0])
            )
        return LoopPath(self.vertices + other.vertices[1:])

    def is_full(self, complex_):
        """no chords and no repeated vertex; for closed loops the span is
        the cycle itself, which also rules out triangles"""
        vertices = self.vertices
        if len(set(vertices)) != len(vertices):
            return False
        count = len(vertices)
        for i in range(count):
            for j in range(i + 2, count):
                if self.closed and i == 0 and j == count - 1:
                    continue
                if complex_.adjacent(vertices[i], vertices[j]):
                    return False
        if self.closed:
            return count >= 4
        return True

    def canonical(self):
        """lexicographically least rotation/reflection of a closed loop"""
        if not self.closed:
            return self
        return LoopPath(canonical_cycle(self.vertices), closed=True)


#------------------------------------------------------------------------------
def canonical_cycle(vertices):
    vertices = list(vertices)
    candidates = []
    for sequence in (vertices, vertices[::-1]):
        for i in range(len(sequence)):
            candidates.append(tuple(sequence[i:] + sequence[:i]))
    return min(candidates)


#==============================================================================
class FillingCertificate(object):
    """evidence about the homotopy type of a closed loop.

    kind is one of ONE_BALL (apex set), DIAGRAM (triangles set),
    HOMOLOGY_OBSTRUCTION or UNKNOWN (budget set)."""

    ONE_BALL = 'one-ball'
    DIAGRAM = 'diagram'
    HOMOLOGY_OBSTRUCTION = 'homology-obstruction'
    UNKNOWN = 'unknown'

    def __init__(self, kind, apex=None, triangles=None, budget=None):
        self.kind = kind
        self.apex = apex
        self.triangles = tuple(triangles or ())
        self.budget = budget

    def __repr__(self):
        if self.kind == self.ONE_BALL:
            return '<FillingCertificate one-ball apex=%r>' % self.apex
        if self.kind == self.DIAGRAM:
            return '<FillingCertificate diagram area=%d>' % len(
                self.triangles
            )
        return '<FillingCertificate %s>' % self.kind

    @property
    def null_homotopic(self):
        return self.kind in (self.ONE_BALL, self.DIAGRAM)

    def as_dict(self):
        result = {'kind': self.kind}
        if self.kind == self.ONE_BALL:
            result['apex'] = self.apex
        elif self.kind == self.DIAGRAM:
            result['triangles'] = [list(t) for t in self.triangles]
        elif self.kind == self.UNKNOWN:
            result['budget'] = self.budget
        return result

    def verify(self, complex_, loop):
        """re-check the certificate against the complex"""
        if self.kind == self.ONE_BALL:
            return (
                self.apex is not None and
                all(
                    v in complex_.closed_neighborhood(self.apex)
                    for v in loop.vertices
                )
            )
        if self.kind == self.DIAGRAM:
            for triangle in self.triangles:
                if len(triangle) != 3 or not complex_.is_simplex(triangle):
                    return False
            odd = collections.Counter()
            for triangle in self.triangles:
                a, b, c = sorted(triangle)
                for edge in ((a, b), (a, c), (b, c)):
                    odd[edge] += 1
            for u, v in loop.steps():
                odd[(min(u, v), max(u, v))] += 1
            return all(count % 2 == 0 for count in odd.values())
        if self.kind == self.HOMOLOGY_OBSTRUCTION:
            return not homology_class_is_zero(complex_, loop)
        return True


#==============================================================================
class Wheel(object):
    def __init__(self, hub, rim):
        self.hub = hub
        self.rim = rim

    def __repr__(self):
        return '<Wheel hub=%r rim=%r>' % (self.hub, self.rim.vertices)

    def __eq__(self, other):
        return (
            isinstance(other, Wheel) and
            self.hub == other.hub and
            self.rim == other.rim
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.hub, self.rim))

    @property
    def k(self):
        return self.rim.length

    def sort_key(self):
        return (self.hub, self.rim.vertices)


#------------------------------------------------------------------------------
def _closing_distances(complex_, start):
    """breadth-first distances from `start` inside the vertices >= start,
    the only vertices a cycle with least vertex `start` may use"""
    lengths = {start: 0}
    frontier = [start]
    while frontier:
        following = []
        for u in frontier:
            for v in complex_.neighbors(u):
                if v > start and v not in lengths:
                    lengths[v] = lengths[u] + 1
                    following.append(v)
        frontier = following
    return lengths


#------------------------------------------------------------------------------
def _full_cycles_from(complex_, max_len, start):
    """full cycles whose least vertex is `start`, in canonical form"""
    found = []
    reach = _closing_distances(complex_, start)
    start_neighbors = complex_.neighbors(start)
    path = [start]
    # interior[v] counts how many path vertices other than the tip and the
    # start are adjacent to v; such a vertex would close a chord
    blocked = collections.Counter()

    def extend():
        tip = path[-1]
        for x in sorted(complex_.neighbors(tip)):
            if x <= start or x in path or blocked[x]:
                continue
            if x in start_neighbors:
                if len(path) >= 3 and path[1] < x:
                    found.append(tuple(path) + (x,))
                continue
            if len(path) + 1 >= max_len:
                continue
            if reach.get(x, max_len) + len(path) > max_len:
                continue
            if len(path) >= 2:
                for y in complex_.neighbors(tip):
                    blocked[y] += 1
            path.append(x)
            extend()
            path.pop()
            if len(path) >= 2:
                for y in complex_.neighbors(tip):
                    blocked[y] -= 1

    for first in sorted(start_neighbors):
        if first <= start:
            continue
        path.append(first)
        extend()
        path.pop()
    return found


#------------------------------------------------------------------------------
def enumerate_full_cycles(complex_, max_len, cycle_cap=DEFAULT_CYCLE_CAP,
                          executor=None):
    """every full cycle of length at most `max_len`, each once, in canonical
    form and sorted by (length, vertices)"""
    if max_len > cycle_cap:
        raise CycleCapExceeded(
            'cycle length %d exceeds cap %d' % (max_len, cycle_cap)
        )
    if max_len < 4:
        return []
    work = functools.partial(_full_cycles_from, complex_, max_len)
    starts = list(complex_.vertices)
    batches = run_all(executor, work, starts)
    cycles = [c for batch in batches for c in batch]
    cycles.sort(key=lambda c: (len(c), c))
    return [LoopPath(c, closed=True) for c in cycles]


#------------------------------------------------------------------------------
def tighten(complex_, path):
    """tighten an open path to a full path with the same endpoints.

    Scans pairs (i, j) left to right and applies the first rule that
    fits, then restarts: a repeated vertex cuts out everything up to its
    second occurrence, an adjacency v_i ~ v_j with j > i + 1 cuts out the
    vertices strictly between."""
    if path.closed:
        raise PathError('tighten expects an open path')
    vertices = list(path.vertices)
    changed = True
    while changed:
        changed = False
        for i in range(len(vertices)):
            for j in range(i + 1, len(vertices)):
                if vertices[i] == vertices[j]:
                    del vertices[i + 1:j + 1]
                    changed = True
                elif j > i + 1 and complex_.adjacent(vertices[i],
                                                     vertices[j]):
                    del vertices[i + 1:j]
                    changed = True
                if changed:
                    break
            if changed:
                break
    return LoopPath(vertices)


#------------------------------------------------------------------------------
def in_one_ball(complex_, loop):
    """the least vertex whose closed neighborhood holds the whole loop"""
    common = None
    for v in loop.vertices:
        if common is None:
            common = set(complex_.closed_neighborhood(v))
        else:
            common &= complex_.closed_neighborhood(v)
        if not common:
            return None
    return min(common) if common else None


#==============================================================================
class BoundarySpace(object):
    """the image of the triangle boundary map over GF(2), reduced once per
    complex so that loops can be tested for homology triviality"""

    def __init__(self, complex_):
        self.edge_index = dict(
            (edge, i) for i, edge in enumerate(complex_.edges())
        )
        triangles = [s for s in complex_.simplices(max_size=3, clique_cap=None)
                     if len(s) == 3]
        matrix = np.zeros((len(triangles), len(self.edge_index)), dtype=bool)
        for row, (a, b, c) in enumerate(triangles):
            for edge in ((a, b), (a, c), (b, c)):
                matrix[row, self.edge_index[edge]] = True
        self.pivots = {}
        for row in matrix:
            reduced = self.reduce(row)
            nonzero = np.flatnonzero(reduced)
            if nonzero.size:
                self.pivots[nonzero[0]] = reduced

    def reduce(self, vector):
        vector = vector.copy()
        while True:
            nonzero = np.flatnonzero(vector)
            for column in nonzero:
                if column in self.pivots:
                    vector = np.logical_xor(vector, self.pivots[column])
                    break
            else:
                return vector

    def vector(self, loop):
        vector = np.zeros(len(self.edge_index), dtype=bool)
        for u, v in loop.steps():
            column = self.edge_index[(min(u, v), max(u, v))]
            vector[column] = np.logical_not(vector[column])
        return vector

    def is_boundary(self, loop):
        return not self.reduce(self.vector(loop)).any()


_boundary_spaces = {}


#------------------------------------------------------------------------------
def boundary_space(complex_):
    key = id(complex_)
    cached = _boundary_spaces.get(key)
    if cached is None or cached[0] is not complex_:
        if len(_boundary_spaces) > 32:
            _boundary_spaces.clear()
        cached = (complex_, BoundarySpace(complex_))
        _boundary_spaces[key] = cached
    return cached[1]


#------------------------------------------------------------------------------
def homology_class_is_zero(complex_, loop):
    """True when the loop bounds a sum of triangles mod 2"""
    return boundary_space(complex_).is_boundary(loop)


#------------------------------------------------------------------------------
def _canonical_word(word):
    if not word:
        return ()
    return canonical_cycle(word)


#------------------------------------------------------------------------------
def _reductions(complex_, word, max_length):
    """(new_word, triangle or None) moves out of a cyclic word"""
    count = len(word)
    if count <= 2:
        # a backtrack u v u, or a single vertex, bounds nothing
        yield (), None
        return
    for i in range(count):
        before, here, after = word[i - 1], word[i], word[(i + 1) % count]
        if before == after:
            # spur: drop `here` and the repeated vertex
            rest = [word[(i + k) % count] for k in range(2, count)]
            yield tuple(rest), None
    for i in range(count):
        before, here, after = word[i - 1], word[i], word[(i + 1) % count]
        if before != after and complex_.adjacent(before, after):
            rest = word[:i] + word[i + 1:]
            yield rest, tuple(sorted((before, here, after)))
    if count >= max_length:
        return
    for i in range(count):
        here, after = word[i], word[(i + 1) % count]
        apexes = complex_.neighbors(here) & complex_.neighbors(after)
        for apex in sorted(apexes):
            if apex in word:
                continue
            pushed = word[:i + 1] + (apex,) + word[i + 1:]
            yield pushed, tuple(sorted((here, apex, after)))


#------------------------------------------------------------------------------
def _search_diagram(complex_, loop, area_budget, search_limit):
    """best-first reduction of the loop to nothing, shortest words first.

    Returns the list of triangles used or None when the budget or the
    search limit runs out."""
    start = tuple(loop.vertices)
    max_length = len(start) + FILLING_SLACK
    start_key = _canonical_word(start)
    best_area = {start_key: 0}
    parents = {start_key: (None, None)}
    queue = [(len(start), 0, start_key, start)]
    explored = 0
    while queue:
        __, area, key, word = heapq.heappop(queue)
        if area > best_area.get(key, area):
            continue
        if not word:
            triangles = []
            while key is not None:
                key, triangle = parents[key]
                if triangle is not None:
                    triangles.append(triangle)
            triangles.reverse()
            return triangles
        explored += 1
        if search_limit is not None and explored > search_limit:
            return None
        for new_word, triangle in _reductions(complex_, word, max_length):
            new_area = area + (1 if triangle is not None else 0)
            if area_budget is not None and new_area > area_budget:
                continue
            new_key = _canonical_word(new_word)
            if new_key in best_area and best_area[new_key] <= new_area:
                continue
            best_area[new_key] = new_area
            parents[new_key] = (key, triangle)
            heapq.heappush(
                queue, (len(new_word), new_area, new_key, new_word)
            )
    return None


#------------------------------------------------------------------------------
def fill(complex_, loop, area_budget=DEFAULT_AREA_BUDGET,
         search_limit=DEFAULT_SEARCH_LIMIT):
    """semi-decide whether a closed loop is null-homotopic.

    `area_budget` of None lifts the triangle bound; the search is then
    limited by `search_limit` alone (None lifts that too, the state space
    being finite)."""
    if not loop.closed:
        raise PathError('fill expects a closed loop')
    if area_budget is not None and area_budget < 1:
        raise ValueError('area budget must be at least 1')
    apex = in_one_ball(complex_, loop)
    if apex is not None:
        return FillingCertificate(FillingCertificate.ONE_BALL, apex=apex)
    if not homology_class_is_zero(complex_, loop):
        return FillingCertificate(FillingCertificate.HOMOLOGY_OBSTRUCTION)
    triangles = _search_diagram(complex_, loop, area_budget, search_limit)
    if triangles is not None:
        return FillingCertificate(
            FillingCertificate.DIAGRAM, triangles=triangles
        )
    return FillingCertificate(FillingCertificate.UNKNOWN, budget=area_budget)


#------------------------------------------------------------------------------
def cone_diagram(loop, apex):
    """the triangles of the cone over a loop from an apex adjacent to it"""
    return [
        tuple(sorted((apex, u, v)))
        for u, v in loop.steps()
        if apex not in (u, v)
    ]


#------------------------------------------------------------------------------
def find_wheels(complex_, k, cycle_cap=DEFAULT_CYCLE_CAP):
    """every k-wheel: a hub plus a full k-cycle in its link"""
    if k < 4:
        raise ValueError('wheels need k >= 4, got %r' % k)
    wheels = []
    for hub in complex_.vertices:
        if complex_.degree(hub) < k:
            continue
        link_complex, vertex_map = link(complex_, (hub,))
        for cycle in enumerate_full_cycles(link_complex, k,
                                           cycle_cap=max(cycle_cap, k)):
            if cycle.length != k:
                continue
            rim = LoopPath(
                canonical_cycle([vertex_map[v] for v in cycle.vertices]),
                closed=True
            )
            wheels.append(Wheel(hub, rim))
    wheels.sort(key=Wheel.sort_key)
    return wheels
