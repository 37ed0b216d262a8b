# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
Checkers producing verdicts about combinatorial curvature: flagness,
k-largeness and its local version, m-location, condition SD'_n (its
triangle and vertex parts) around an origin, simple connectivity and the
local configuration lemmas around an origin.
"""

import collections
import functools
import itertools

import networkx as nx

from flagcheck.complex_core import (
    DEFAULT_CLIQUE_CAP,
    FlagComplex,
    FlagViolation,
    distances_from,
    eccentricity,
    ingest_explicit,
    is_connected,
    link,
)
from flagcheck.executor import run_all
from flagcheck.loops import (
    DEFAULT_AREA_BUDGET,
    DEFAULT_CYCLE_CAP,
    DEFAULT_SEARCH_LIMIT,
    FillingCertificate,
    LoopPath,
    canonical_cycle,
    enumerate_full_cycles,
    fill,
    in_one_ball,
)


#==============================================================================
class DisconnectedComplexError(ValueError):
    pass


#==============================================================================
class Verdict(object):
    """outcome of a checker: pass, fail with a witness, or unknown with the
    loops the search could not decide.  `evidence` keeps whatever backs the
    verdict (a filling certificate, prerequisite results) and `notes` keeps
    counts and remarks for the report."""

    PASS = 'pass'
    FAIL = 'fail'
    UNKNOWN = 'unknown'

    def __init__(self, status, witness=None, undecided=(), evidence=None,
                 notes=None):
        if status not in (self.PASS, self.FAIL, self.UNKNOWN):
            raise ValueError('unknown verdict status %r' % (status,))
        self.status = status
        self.witness = witness
        self.undecided = list(undecided)
        self.evidence = evidence
        self.notes = notes or {}

    @classmethod
    def passed(cls, **kwargs):
        return cls(cls.PASS, **kwargs)

    @classmethod
    def failed(cls, witness, **kwargs):
        return cls(cls.FAIL, witness=witness, **kwargs)

    @classmethod
    def unknown(cls, undecided, **kwargs):
        return cls(cls.UNKNOWN, undecided=undecided, **kwargs)

    def __repr__(self):
        if self.status == self.FAIL:
            return '<Verdict fail %r>' % (self.witness,)
        if self.status == self.UNKNOWN:
            return '<Verdict unknown (%d undecided)>' % len(self.undecided)
        return '<Verdict pass>'

    def __bool__(self):
        return self.status == self.PASS

    @property
    def is_pass(self):
        return self.status == self.PASS

    @property
    def is_fail(self):
        return self.status == self.FAIL

    @property
    def is_unknown(self):
        return self.status == self.UNKNOWN


#------------------------------------------------------------------------------
def combine(verdicts):
    """fail wins over unknown, unknown wins over pass"""
    verdicts = list(verdicts)
    for verdict in verdicts:
        if verdict.is_fail:
            return verdict
    undecided = []
    for verdict in verdicts:
        undecided.extend(verdict.undecided)
    if any(v.is_unknown for v in verdicts):
        return Verdict.unknown(undecided)
    return Verdict.passed()


#==============================================================================
class SDReport(object):
    def __init__(self, origin, depth, triangle_failures=(),
                 vertex_failures=()):
        self.origin = origin
        self.depth = depth
        self.triangle_failures = list(triangle_failures)
        self.vertex_failures = list(vertex_failures)

    def __repr__(self):
        return '<SDReport origin=%r depth=%r triangle=%d vertex=%d>' % (
            self.origin,
            self.depth,
            len(self.triangle_failures),
            len(self.vertex_failures),
        )

    def __eq__(self, other):
        return (
            isinstance(other, SDReport) and
            self.origin == other.origin and
            self.depth == other.depth and
            self.triangle_failures == other.triangle_failures and
            self.vertex_failures == other.vertex_failures
        )

    def __ne__(self, other):
        return not self == other

    @property
    def passed(self):
        return not self.triangle_failures and not self.vertex_failures

    def as_verdict(self):
        if self.passed:
            return Verdict.passed()
        if self.triangle_failures:
            witness = ('triangle',) + tuple(self.triangle_failures[0])
        else:
            witness = ('vertex',) + tuple(self.vertex_failures[0])
        return Verdict.failed(witness, evidence=self)


#------------------------------------------------------------------------------
def check_flag(source, clique_cap=DEFAULT_CLIQUE_CAP):
    """a FlagComplex is flag by construction; an explicit simplex list is
    flag when it is the clique complex of its own edges"""
    if isinstance(source, FlagComplex):
        return Verdict.passed()
    try:
        ingest_explicit(source, clique_cap=clique_cap)
    except FlagViolation as x:
        return Verdict.failed(x.witness)
    return Verdict.passed()


#------------------------------------------------------------------------------
def _k_large_pre(k):
    if k < 4:
        raise ValueError('k-largeness needs k >= 4, got %r' % (k,))


#------------------------------------------------------------------------------
def is_k_large(complex_, k, cycle_cap=DEFAULT_CYCLE_CAP, executor=None):
    _k_large_pre(k)
    cycles = enumerate_full_cycles(
        complex_, k - 1, cycle_cap=cycle_cap, executor=executor
    )
    if cycles:
        return Verdict.failed(cycles[0])
    return Verdict.passed()


#------------------------------------------------------------------------------
def _short_link_cycle(complex_, k, cycle_cap, simplex):
    """the shortest full cycle of length < k in the link of simplex, in
    parent vertex numbers, or None"""
    link_complex, vertex_map = link(complex_, simplex)
    cycles = enumerate_full_cycles(link_complex, k - 1, cycle_cap=cycle_cap)
    if not cycles:
        return None
    return LoopPath(
        canonical_cycle([vertex_map[v] for v in cycles[0].vertices]),
        closed=True
    )


#------------------------------------------------------------------------------
def is_locally_k_large(complex_, k, clique_cap=DEFAULT_CLIQUE_CAP,
                       cycle_cap=DEFAULT_CYCLE_CAP, executor=None):
    _k_large_pre(k)
    simplices = complex_.simplices(clique_cap=clique_cap)
    work = functools.partial(_short_link_cycle, complex_, k, cycle_cap)
    for simplex, cycle in zip(simplices, run_all(executor, work, simplices)):
        if cycle is not None:
            return Verdict.failed((simplex, cycle))
    return Verdict.passed(notes={'simplices': len(simplices)})


#------------------------------------------------------------------------------
def _locate(complex_, area_budget, search_limit, cycle):
    if in_one_ball(complex_, cycle) is not None:
        return None
    return fill(
        complex_, cycle, area_budget=area_budget, search_limit=search_limit
    )


#------------------------------------------------------------------------------
def is_m_located(complex_, m, area_budget=DEFAULT_AREA_BUDGET,
                 search_limit=DEFAULT_SEARCH_LIMIT,
                 cycle_cap=DEFAULT_CYCLE_CAP, executor=None):
    """every full null-homotopic cycle of length at most m lies in a 1-ball.

    Cycles carrying nonzero mod 2 homology are exempt.  Cycles the filling
    search cannot decide make the verdict unknown unless something fails."""
    if m < 4:
        raise ValueError('m-location needs m >= 4, got %r' % (m,))
    cycles = enumerate_full_cycles(
        complex_, m, cycle_cap=cycle_cap, executor=executor
    )
    work = functools.partial(_locate, complex_, area_budget, search_limit)
    undecided = []
    exempt = 0
    for cycle, certificate in zip(cycles, run_all(executor, work, cycles)):
        if certificate is None:
            continue
        if certificate.null_homotopic:
            return Verdict.failed(cycle, evidence=certificate)
        if certificate.kind == FillingCertificate.HOMOLOGY_OBSTRUCTION:
            exempt += 1
        else:
            undecided.append(cycle)
    notes = {'cycles': len(cycles), 'exempt': exempt}
    if undecided:
        return Verdict.unknown(undecided, notes=notes)
    return Verdict.passed(notes=notes)


#------------------------------------------------------------------------------
def _layers(complex_, origin, depth):
    lengths = distances_from(complex_, origin, cutoff=depth)
    layers = collections.defaultdict(set)
    for v, length in lengths.items():
        layers[length].add(v)
    return lengths, layers


#------------------------------------------------------------------------------
def check_sd_n(complex_, origin, n):
    """collect every failure of the triangle and vertex conditions for the
    spheres of radius 2..n+1 around origin"""
    if n < 1:
        raise ValueError('depth must be at least 1, got %r' % (n,))
    complex_.check_vertex(origin)
    lengths, layers = _layers(complex_, origin, n + 1)
    report = SDReport(origin, n)
    inner = set(layers[0])
    for i in range(1, n + 1):
        inner |= layers[i]
        outer = layers[i + 1]
        for a in sorted(outer):
            for b in sorted(complex_.neighbors(a)):
                if b > a and b in outer:
                    common = complex_.neighbors(a) & complex_.neighbors(b)
                    if not common & inner:
                        report.triangle_failures.append((i, (a, b)))
        for v in sorted(outer):
            below = sorted(complex_.neighbors(v) & inner)
            for u, w in itertools.combinations(below, 2):
                if complex_.adjacent(u, w):
                    continue
                if not any(
                    complex_.adjacent(t, u) and complex_.adjacent(t, w)
                    for t in below
                ):
                    report.vertex_failures.append((i, v, u, w))
    report.triangle_failures.sort()
    report.vertex_failures.sort()
    return report


#------------------------------------------------------------------------------
def _sd_for_origin(complex_, n, origin):
    return check_sd_n(complex_, origin, n)


#------------------------------------------------------------------------------
def check_sd_all(complex_, n, executor=None):
    origins = list(complex_.vertices)
    work = functools.partial(_sd_for_origin, complex_, n)
    return collections.OrderedDict(
        zip(origins, run_all(executor, work, origins))
    )


#------------------------------------------------------------------------------
def check_sd_origin(complex_, origin):
    """the conditions at every radius around origin; radii past its
    eccentricity hold vacuously"""
    return check_sd_n(complex_, origin, max(1, eccentricity(complex_, origin)))


#------------------------------------------------------------------------------
def _edge(u, v):
    return (u, v) if u < v else (v, u)


#------------------------------------------------------------------------------
def _fundamental_cycle(parents, depth, u, v):
    left, right = [u], [v]
    while left[-1] != right[-1]:
        if depth[left[-1]] >= depth[right[-1]]:
            left.append(parents[left[-1]])
        else:
            right.append(parents[right[-1]])
    return left + right[-2::-1]


#==============================================================================
class _TrivialEdges(object):
    """edges whose loop through the spanning tree is known to be
    null-homotopic, closed under the triangle rule"""

    def __init__(self, complex_, tree_edges):
        self.known = set()
        self.triangles_of = collections.defaultdict(list)
        for triangle in complex_.simplices(max_size=3, clique_cap=None):
            if len(triangle) == 3:
                a, b, c = triangle
                for edge in ((a, b), (a, c), (b, c)):
                    self.triangles_of[edge].append(triangle)
        self.add(tree_edges)

    def __contains__(self, edge):
        return edge in self.known

    def add(self, edges):
        pending = list(edges)
        while pending:
            edge = pending.pop()
            if edge in self.known:
                continue
            self.known.add(edge)
            for a, b, c in self.triangles_of[edge]:
                sides = [(a, b), (a, c), (b, c)]
                unknown = [e for e in sides if e not in self.known]
                if len(unknown) == 1:
                    pending.append(unknown[0])


#------------------------------------------------------------------------------
def check_simple_connectivity(complex_, area_budget=DEFAULT_AREA_BUDGET,
                              search_limit=DEFAULT_SEARCH_LIMIT):
    if not is_connected(complex_):
        raise DisconnectedComplexError('complex is not connected')
    if complex_.vertex_count == 0:
        return Verdict.passed()
    parents = {0: None}
    depth = {0: 0}
    tree_edges = []
    for u, v in nx.bfs_edges(complex_.graph, 0):
        parents[v] = u
        depth[v] = depth[u] + 1
        tree_edges.append(_edge(u, v))
    trivial = _TrivialEdges(complex_, tree_edges)
    undecided = []
    filled = 0
    for edge in complex_.edges():
        if edge in trivial:
            continue
        loop = LoopPath(
            _fundamental_cycle(parents, depth, edge[0], edge[1]),
            closed=True
        )
        certificate = fill(
            complex_,
            loop,
            area_budget=area_budget,
            search_limit=search_limit
        )
        if certificate.null_homotopic:
            filled += 1
            trivial.add([edge])
        elif certificate.kind == FillingCertificate.HOMOLOGY_OBSTRUCTION:
            return Verdict.failed(loop, evidence=certificate)
        else:
            undecided.append(loop)
    notes = {'filled_cycles': filled}
    # a later fill may have settled an edge that was undecided earlier
    undecided = [
        loop for loop in undecided
        if _edge(loop.vertices[-1], loop.vertices[0]) not in trivial
    ]
    if undecided:
        return Verdict.unknown(undecided, notes=notes)
    return Verdict.passed(notes=notes)


#------------------------------------------------------------------------------
def is_systolic(complex_, k=6, area_budget=DEFAULT_AREA_BUDGET,
                search_limit=DEFAULT_SEARCH_LIMIT,
                clique_cap=DEFAULT_CLIQUE_CAP, cycle_cap=DEFAULT_CYCLE_CAP,
                executor=None):
    """connected, simply connected and locally k-large"""
    if not is_connected(complex_):
        return Verdict.failed('disconnected')
    local = is_locally_k_large(
        complex_,
        k,
        clique_cap=clique_cap,
        cycle_cap=cycle_cap,
        executor=executor
    )
    if local.is_fail:
        return local
    return combine([
        local,
        check_simple_connectivity(
            complex_, area_budget=area_budget, search_limit=search_limit
        ),
    ])


#------------------------------------------------------------------------------
def _related(complex_, a, b):
    """adjacency with every vertex related to itself"""
    return a == b or complex_.adjacent(a, b)


#------------------------------------------------------------------------------
def _corner_configurations(complex_, layers, inside, n):
    """v outside at n+1, y and z inside at distance 2 below v, w below v
    joining them, u1 and u2 one level further in"""
    for v in sorted(layers[n + 1]):
        below = sorted(complex_.neighbors(v) & inside[n])
        for y, z in itertools.combinations(below, 2):
            if complex_.adjacent(y, z):
                continue
            joints = (
                complex_.neighbors(y) & complex_.neighbors(z) &
                complex_.neighbors(v) & inside[n]
            )
            for w in sorted(joints):
                for u1 in sorted(
                    complex_.neighbors(y) & complex_.neighbors(w) &
                    inside[n - 1]
                ):
                    for u2 in sorted(
                        complex_.neighbors(w) & complex_.neighbors(z) &
                        inside[n - 1]
                    ):
                        yield (v, y, z, w, u1, u2)


#------------------------------------------------------------------------------
def _ladder_configurations(complex_, layers, inside, n):
    """a path v1 v2 v3 at level n-1 with w1, w2 below its two edges and
    p1, p2 above them"""
    level = layers[n - 1]
    for v2 in sorted(level):
        around = sorted(complex_.neighbors(v2) & level)
        for v1, v3 in itertools.permutations(around, 2):
            lower_1 = complex_.neighbors(v1) & complex_.neighbors(v2)
            lower_2 = complex_.neighbors(v2) & complex_.neighbors(v3)
            for w1 in sorted(lower_1 & inside[n - 2]):
                for w2 in sorted(lower_2 & inside[n - 2]):
                    for p1 in sorted(lower_1 & layers[n]):
                        for p2 in sorted(lower_2 & layers[n]):
                            yield (v1, v2, v3, w1, w2, p1, p2)


#------------------------------------------------------------------------------
def check_local_lemmas(complex_, origin, n):
    """scan every configuration of the two local adjacency lemmas around
    origin at depth n and check their conclusions.

    Corner: for v at distance n+1, y and z in the n-ball adjacent to v at
    distance 2 from each other, w in the n-ball adjacent to y, v and z, and
    u1, u2 in the (n-1)-ball with u1 ~ y, w and u2 ~ w, z: when u1 is not
    adjacent to z and u2 not adjacent to y, u1 ~ u2.

    Ladder: for v1 ~ v2 ~ v3 at distance n-1, w1, w2 in the (n-2)-ball below
    the edges v1v2 and v2v3, and p1, p2 at distance n above them:
    p1 ~ p2 implies w1 ~ w2.  The converse is counted but not enforced.
    The path and p1, p2 are taken on the spheres, not inside the balls.

    Adjacency is reflexive throughout: a vertex is related to itself."""
    if n < 2:
        raise ValueError('local lemmas need n >= 2, got %r' % (n,))
    complex_.check_vertex(origin)
    lengths, layers = _layers(complex_, origin, n + 1)
    inside = {}
    running = set()
    for i in range(n + 1):
        running = running | layers[i]
        inside[i] = frozenset(running)
    notes = {
        'corner_configurations': 0,
        'ladder_configurations': 0,
        'ladder_converse_exceptions': 0,
    }
    for configuration in _corner_configurations(complex_, layers, inside, n):
        notes['corner_configurations'] += 1
        v, y, z, w, u1, u2 = configuration
        if complex_.adjacent(u1, z) or complex_.adjacent(u2, y):
            continue
        if not _related(complex_, u1, u2):
            witness = dict(zip(('v', 'y', 'z', 'w', 'u1', 'u2'),
                               configuration))
            witness['lemma'] = 'corner'
            return Verdict.failed(witness, notes=notes)
    for configuration in _ladder_configurations(complex_, layers, inside, n):
        notes['ladder_configurations'] += 1
        v1, v2, v3, w1, w2, p1, p2 = configuration
        lower = _related(complex_, w1, w2)
        upper = _related(complex_, p1, p2)
        if upper and not lower:
            witness = dict(zip(('v1', 'v2', 'v3', 'w1', 'w2', 'p1', 'p2'),
                               configuration))
            witness['lemma'] = 'ladder'
            return Verdict.failed(witness, notes=notes)
        if lower and not upper:
            notes['ladder_converse_exceptions'] += 1
    return Verdict.passed(notes=notes)
