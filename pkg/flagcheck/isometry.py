# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
Simplicial automorphisms, total and windowed.

A total map is an Automorphism, a permutation of the vertices.  A
PartialAutomorphism stands for an isometry of an infinite periodic
complex seen through a finite window: it is only defined where the
window holds both a vertex and its image, and distances measured inside
the window are only trusted up to the distance to the window boundary.
"""

import collections
import functools
import itertools

import networkx as nx

from flagcheck.complex_core import (
    DEFAULT_CLIQUE_CAP,
    UNREACHABLE,
    SubcomplexView,
    boundary_distances,
    distance_matrix,
    distances_from,
    window_distance_certified,
)
from flagcheck.curvature_checks import Verdict
from flagcheck.executor import run_all
from flagcheck.loops import LoopPath, canonical_cycle


# geodesics tried per vertex before an uncovered vertex stops counting as
# exhaustively searched
GEODESIC_CAP = 64


#==============================================================================
class MapDefinitionError(ValueError):
    pass


#==============================================================================
class EmptyDomainError(ValueError):
    pass


#==============================================================================
class WindowTooSmallError(ValueError):
    pass


#==============================================================================
class EllipticIsometryError(ValueError):
    pass


#==============================================================================
class RestrictionError(ValueError):
    pass


#==============================================================================
class Automorphism(object):
    """a total vertex map given as the list of images"""

    is_total = True

    def __init__(self, mapping):
        self.mapping = tuple(int(x) for x in mapping)

    def __repr__(self):
        return '<Automorphism %r>' % (self.mapping,)

    def __eq__(self, other):
        return (
            isinstance(other, Automorphism) and
            self.mapping == other.mapping
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.mapping)

    def __call__(self, v):
        return self.mapping[v]

    def __len__(self):
        return len(self.mapping)

    @property
    def domain(self):
        return tuple(range(len(self.mapping)))

    def get(self, v):
        if 0 <= v < len(self.mapping):
            return self.mapping[v]
        return None

    def defined(self, v):
        return 0 <= v < len(self.mapping)

    def items(self):
        return enumerate(self.mapping)

    def as_list(self, vertex_count=None):
        return list(self.mapping)

    def inverse(self):
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise MapDefinitionError('%r is not a permutation' % (self,))
        inverse = [0] * len(self.mapping)
        for v, image in enumerate(self.mapping):
            inverse[image] = v
        return Automorphism(inverse)

    def compose(self, other):
        """self after other"""
        return Automorphism(self.mapping[v] for v in other.mapping)

    @classmethod
    def identity(cls, vertex_count):
        return cls(range(vertex_count))


#==============================================================================
class PartialAutomorphism(object):
    """an injective vertex map defined on `domain` only"""

    is_total = False

    def __init__(self, mapping):
        self.mapping = collections.OrderedDict(
            (int(k), int(v)) for k, v in sorted(dict(mapping).items())
        )
        if len(set(self.mapping.values())) != len(self.mapping):
            raise MapDefinitionError('partial map is not injective')

    def __repr__(self):
        return '<PartialAutomorphism on %d vertices>' % len(self.mapping)

    def __eq__(self, other):
        return (
            isinstance(other, PartialAutomorphism) and
            self.mapping == other.mapping
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(tuple(self.mapping.items()))

    def __call__(self, v):
        return self.mapping[v]

    def __len__(self):
        return len(self.mapping)

    @property
    def domain(self):
        return tuple(self.mapping)

    def get(self, v):
        return self.mapping.get(v)

    def defined(self, v):
        return v in self.mapping

    def items(self):
        return self.mapping.items()

    def as_list(self, vertex_count):
        return [self.mapping.get(v) for v in range(vertex_count)]

    @classmethod
    def from_list(cls, values):
        """a list of images with None marking vertices left out"""
        return cls(
            (v, image) for v, image in enumerate(values) if image is not None
        )

    def inverse(self):
        return PartialAutomorphism(
            (image, v) for v, image in self.mapping.items()
        )

    def compose(self, other):
        """self after other, defined where both steps are"""
        return PartialAutomorphism(
            (v, self.mapping[image])
            for v, image in other.items()
            if image in self.mapping
        )


#==============================================================================
class DisplacementReport(object):
    ELLIPTIC = 'elliptic'
    HYPERBOLIC = 'hyperbolic'

    def __init__(self, displacements, certified, translation_length,
                 min_vertices, invariant_simplex):
        self.displacements = displacements
        self.certified = frozenset(certified)
        self.translation_length = translation_length
        self.min_vertices = tuple(min_vertices)
        self.invariant_simplex = invariant_simplex

    def __repr__(self):
        return '<DisplacementReport |h|=%r %s>' % (
            self.translation_length, self.classification
        )

    @property
    def classification(self):
        if self.invariant_simplex is not None:
            return self.ELLIPTIC
        return self.HYPERBOLIC

    @property
    def is_elliptic(self):
        return self.invariant_simplex is not None


#==============================================================================
class AxesGraph(object):
    """axes as vertices, an edge where two axes come within distance one"""

    def __init__(self, axes, edges, d_min):
        self.axes = list(axes)
        self.edges = sorted(edges)
        self.d_min = d_min

    def __repr__(self):
        return '<AxesGraph axes=%d edges=%d>' % (
            len(self.axes), len(self.edges)
        )

    def as_graph(self):
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.axes)))
        graph.add_edges_from(self.edges)
        return graph


#------------------------------------------------------------------------------
def check_automorphism(complex_, h):
    """a verdict that is true when h is a bijective, adjacency preserving
    vertex map; partial maps go to check_partial_automorphism"""
    if not h.is_total:
        return check_partial_automorphism(complex_, h)
    if len(h) != complex_.vertex_count:
        return Verdict.failed(('size', len(h)))
    seen = set()
    for v, image in h.items():
        if not 0 <= image < complex_.vertex_count or image in seen:
            return Verdict.failed(('not-bijective', v))
        seen.add(image)
    # a bijection sending edges to edges is onto the edges as well
    for u, v in complex_.edges():
        if not complex_.adjacent(h(u), h(v)):
            return Verdict.failed(('edge', (u, v)))
    return Verdict.passed()


#------------------------------------------------------------------------------
def check_partial_automorphism(complex_, h):
    domain = h.domain
    if not domain:
        return Verdict.failed(('empty-domain', None))
    seen = set()
    for v in domain:
        image = h(v)
        if not (0 <= v < complex_.vertex_count and
                0 <= image < complex_.vertex_count):
            return Verdict.failed(('out-of-range', v))
        if image in seen:
            return Verdict.failed(('not-injective', v))
        seen.add(image)
    for u, v in itertools.combinations(domain, 2):
        before = complex_.adjacent(u, v)
        if before != complex_.adjacent(h(u), h(v)):
            kind = 'edge' if before else 'non-edge'
            return Verdict.failed((kind, (u, v)))
    if not nx.is_connected(complex_.graph.subgraph(domain)):
        return Verdict.failed(('disconnected-domain', None))
    return Verdict.passed()


#------------------------------------------------------------------------------
def power(h, n):
    """h composed with itself n times; negative n composes the inverse"""
    if n == 0:
        if not h.is_total:
            raise MapDefinitionError('the zeroth power of a partial map')
        return Automorphism.identity(len(h))
    base = h if n > 0 else h.inverse()
    result = base
    for __ in range(abs(n) - 1):
        result = base.compose(result)
        if not result.is_total and not len(result):
            break
    if not result.is_total and not len(result):
        raise EmptyDomainError('power %d of the map has an empty domain' % n)
    return result


#------------------------------------------------------------------------------
def _window_distance(complex_, x, y):
    lengths = distances_from(complex_, x)
    return lengths.get(y, UNREACHABLE)


#------------------------------------------------------------------------------
def _displacement(complex_, h, x):
    return _window_distance(complex_, x, h(x))


#------------------------------------------------------------------------------
def _invariant_simplex(complex_, h, clique_cap):
    for simplex in complex_.simplices(clique_cap=clique_cap):
        if all(h.defined(v) for v in simplex):
            if set(h(v) for v in simplex) == set(simplex):
                return simplex
    return None


#------------------------------------------------------------------------------
def displacement_profile(complex_, h, clique_cap=DEFAULT_CLIQUE_CAP,
                         executor=None):
    """displacement of every vertex in the domain of h.

    Inside a window a displacement is certified when it does not exceed
    the distance from the vertex to the window boundary; only certified
    values take part in the translation length and the minimal set."""
    margins = boundary_distances(complex_)
    domain = list(h.domain)
    work = functools.partial(_displacement, complex_, h)
    displacements = collections.OrderedDict(
        zip(domain, run_all(executor, work, domain))
    )
    certified = [
        x for x, d in displacements.items()
        if window_distance_certified(margins, x, d)
    ]
    if not certified:
        raise WindowTooSmallError('no displacement could be certified')
    translation_length = min(displacements[x] for x in certified)
    min_vertices = [
        x for x in certified if displacements[x] == translation_length
    ]
    return DisplacementReport(
        displacements,
        certified,
        translation_length,
        min_vertices,
        _invariant_simplex(complex_, h, clique_cap),
    )


#------------------------------------------------------------------------------
def min_set(complex_, h, report=None):
    """the full subcomplex on the vertices of least displacement"""
    if report is None:
        report = displacement_profile(complex_, h)
    members = set(report.min_vertices)
    for x in report.min_vertices:
        image = h.get(x)
        if image is None or image not in report.certified:
            continue
        if image not in members:
            raise RestrictionError(
                'h moves %r out of its minimal set to %r' % (x, image)
            )
    return SubcomplexView(complex_, members)


#------------------------------------------------------------------------------
def min_idempotence(complex_, h, report=None):
    """recompute displacement inside Y = Min(h), with Y as its own window,
    and compare with |h| measured in the complex"""
    if report is None:
        report = displacement_profile(complex_, h)
    view = min_set(complex_, h, report)
    inner, vertex_map = view.as_complex()
    index = dict((v, i) for i, v in enumerate(vertex_map))
    restricted = dict(
        (index[x], index[h(x)])
        for x in view
        if h.defined(x) and h(x) in index
    )
    if not restricted:
        raise RestrictionError('h does not restrict to its minimal set')
    if len(restricted) == inner.vertex_count and not inner.boundary:
        inner_map = Automorphism(
            restricted[i] for i in range(inner.vertex_count)
        )
    else:
        inner_map = PartialAutomorphism(restricted)
    try:
        inner_report = displacement_profile(
            inner, inner_map, clique_cap=None
        )
    except WindowTooSmallError:
        return Verdict.unknown([], notes={'certified': 0})
    for i in sorted(inner_report.certified):
        if inner_report.displacements[i] != report.translation_length:
            return Verdict.failed(
                (vertex_map[i], inner_report.displacements[i])
            )
    return Verdict.passed(notes={'certified': len(inner_report.certified)})


#------------------------------------------------------------------------------
def check_isometric_embedding(complex_, sub):
    """distances inside `sub` against distances in the complex, over the
    pairs whose ambient distance is certified"""
    if not len(sub):
        raise ValueError('empty subcomplex')
    margins = boundary_distances(complex_)
    ambient = distance_matrix(complex_)
    inner_complex, vertex_map = sub.as_complex()
    inner = distance_matrix(inner_complex)
    checked = 0
    for i, j in itertools.combinations(range(len(vertex_map)), 2):
        x, y = vertex_map[i], vertex_map[j]
        d = int(ambient[x, y])
        if d < 0:
            continue
        if not (window_distance_certified(margins, x, d) or
                window_distance_certified(margins, y, d)):
            continue
        checked += 1
        d_sub = int(inner[i, j])
        if d_sub != d:
            return Verdict.failed(
                (x, y, UNREACHABLE if d_sub < 0 else d_sub, d)
            )
    return Verdict.passed(notes={'pairs': checked})


#------------------------------------------------------------------------------
def _least_geodesic(complex_, x, y):
    """the lexicographically least shortest path from x to y"""
    to_target = distances_from(complex_, y)
    if x not in to_target:
        return None
    path = [x]
    while path[-1] != y:
        here = path[-1]
        path.append(min(
            v for v in complex_.neighbors(here)
            if to_target.get(v) == to_target[here] - 1
        ))
    return path


#------------------------------------------------------------------------------
def _defined_prefix(h, segment):
    """images of segment up to the first vertex outside the domain"""
    images = []
    for v in segment:
        image = h.get(v)
        if image is None:
            break
        images.append(image)
    return images


#------------------------------------------------------------------------------
def local_geodesic_check(complex_, path, scale, min_vertices=None,
                         certified=None):
    """every two points of the path at most `scale` apart along it are
    exactly that far apart in the complex.

    The path is unrolled when closed.  A shortcut inside a window is a
    shortcut in the ambient complex, so failures are always real, while a
    pair only counts as checked when its parameter distance is within the
    window margin.  With `min_vertices` the certified vertices of the path
    must also lie in the minimal set."""
    margins = boundary_distances(complex_)
    vertices = list(path.vertices)
    count = len(vertices)
    checked = 0
    uncertified = 0
    for a in range(count):
        lengths = distances_from(complex_, vertices[a], cutoff=scale)
        last = a + scale if path.closed else min(a + scale, count - 1)
        for b in range(a + 1, last + 1):
            y = vertices[b % count]
            d = lengths.get(y)
            if d is None or d != b - a:
                return Verdict.failed((a, b, d if d is not None else
                                       UNREACHABLE))
            if window_distance_certified(margins, vertices[a], d):
                checked += 1
            else:
                uncertified += 1
    if min_vertices is not None:
        members = set(min_vertices)
        for v in vertices:
            if (certified is None or v in certified) and v not in members:
                return Verdict.failed(('outside-min', v))
    return Verdict.passed(
        notes={'checked': checked, 'uncertified': uncertified}
    )


#------------------------------------------------------------------------------
def stitch_axis(complex_, h, x, scale=None, geodesic=None):
    """concatenate the images of a geodesic from x to h(x).

    A total map closes the path into a loop when the orbit of x comes
    back; a windowed map extends it both ways while the map is defined.
    Returns the resulting LoopPath, or None when it repeats a vertex or is
    not `scale`-locally geodesic (scale defaults to d(x, h(x)))."""
    if not h.defined(x) or h(x) == x:
        return None
    if geodesic is None:
        geodesic = _least_geodesic(complex_, x, h(x))
        if geodesic is None:
            return None
    translation = len(geodesic) - 1
    if scale is None:
        scale = translation
    path = list(geodesic)
    segment = list(geodesic)
    closed = False
    for __ in range(complex_.vertex_count + 1):
        images = _defined_prefix(h, segment)
        if len(images) < 2:
            break
        if len(images) < len(segment):
            # the window ends inside this segment
            path.extend(images[1:])
            break
        segment = images
        if segment[-1] == x:
            path.extend(segment[1:-1])
            closed = True
            break
        path.extend(segment[1:])
    else:
        return None
    if not closed:
        inverse = h.inverse()
        segment = list(geodesic)
        for __ in range(complex_.vertex_count + 1):
            images = _defined_prefix(inverse, reversed(segment))[::-1]
            if len(images) < 2:
                break
            path[:0] = images[:-1]
            if len(images) < len(segment):
                break
            segment = images
    if len(set(path)) != len(path):
        return None
    if closed and len(path) < 3:
        return None
    axis = LoopPath(path, closed=closed)
    if not local_geodesic_check(complex_, axis, scale).is_pass:
        return None
    if closed:
        axis = LoopPath(canonical_cycle(path), closed=True)
    return axis


#------------------------------------------------------------------------------
def _stitch_seed(complex_, h, scale, x):
    return stitch_axis(complex_, h, x, scale=scale)


#------------------------------------------------------------------------------
def _distinct_axes(candidates):
    axes = {}
    for axis in candidates:
        if axis is not None:
            axes.setdefault(frozenset(axis.vertices), axis)
    return sorted(axes.values(), key=lambda a: sorted(a.vertices))


#------------------------------------------------------------------------------
def axes_of(complex_, g, report=None, scale=None, executor=None):
    """every axis stitched from a seed in Min(g)"""
    if report is None:
        report = displacement_profile(complex_, g)
    seeds = list(report.min_vertices)
    work = functools.partial(_stitch_seed, complex_, g, scale)
    return _distinct_axes(run_all(executor, work, seeds))


#------------------------------------------------------------------------------
def invariant_geodesics(complex_, h, max_power, scale=None, report=None,
                        executor=None):
    """the least n <= max_power with an h^n-invariant locally geodesic
    path, and every such path found; (None, []) when there is none"""
    if max_power < 1:
        raise ValueError('max_power must be at least 1')
    if report is None:
        report = displacement_profile(complex_, h)
    if report.is_elliptic:
        raise EllipticIsometryError(
            'h fixes the simplex %r' % (report.invariant_simplex,)
        )
    for n in range(1, max_power + 1):
        try:
            g = power(h, n)
            g_report = report if n == 1 else displacement_profile(
                complex_, g
            )
        except (EmptyDomainError, WindowTooSmallError):
            break
        if g_report.is_elliptic or not g_report.translation_length:
            continue
        axes = axes_of(
            complex_, g, report=g_report, scale=scale, executor=executor
        )
        if axes:
            return n, axes
    return None, []


#------------------------------------------------------------------------------
def _all_geodesics(complex_, x, y):
    paths = []
    for path in nx.all_shortest_paths(complex_.graph, x, y):
        paths.append(path)
        if len(paths) > GEODESIC_CAP:
            return sorted(paths[:GEODESIC_CAP]), False
    return sorted(paths), True


#------------------------------------------------------------------------------
def union_of_axes_check(complex_, h, n, axes=None, scale=None,
                        executor=None):
    """every certified vertex of Min(h) lies on an h^n-invariant axis.

    Vertices missed by the seeded stitching are retried with every
    geodesic to their image.  On a total map an exhausted retry proves
    that no axis passes through the vertex: the stretch of an axis between
    x and h^n(x) is itself a geodesic."""
    report = displacement_profile(complex_, h)
    g = power(h, n)
    g_report = report if n == 1 else displacement_profile(complex_, g)
    if axes is None:
        axes = axes_of(
            complex_, g, report=g_report, scale=scale, executor=executor
        )
    axes = list(axes)
    covered = set(v for axis in axes for v in axis.vertices)
    uncovered = []
    proven_absent = []
    for x in report.min_vertices:
        if x in covered:
            continue
        if not g.defined(x):
            uncovered.append(x)
            continue
        geodesics, exhaustive = _all_geodesics(complex_, x, g(x))
        for geodesic in geodesics:
            axis = stitch_axis(complex_, g, x, scale=scale, geodesic=geodesic)
            if axis is not None:
                axes.append(axis)
                covered.update(axis.vertices)
                break
        else:
            if exhaustive and g.is_total:
                proven_absent.append(x)
            else:
                uncovered.append(x)
    axes = _distinct_axes(axes)
    notes = {'axes': len(axes)}
    if uncovered or proven_absent:
        return Verdict.failed(
            {'uncovered': uncovered, 'proven_absent': proven_absent},
            evidence=axes,
            notes=notes
        )
    return Verdict.passed(evidence=axes, notes=notes)


#------------------------------------------------------------------------------
def _axis_distances(complex_, margins, axis, other):
    """least certified distance from axis to other, None if uncertified"""
    lengths = nx.multi_source_dijkstra_path_length(
        complex_.graph, set(axis.vertices), weight=None
    )
    best = None
    for v in other.vertices:
        d = lengths.get(v)
        if d is None:
            continue
        if d > 1 and not window_distance_certified(margins, v, d):
            continue
        if best is None or d < best:
            best = d
    return best


#------------------------------------------------------------------------------
def graph_of_axes(complex_, h, n, axes=None, scale=None, executor=None):
    if axes is None:
        axes = axes_of(complex_, power(h, n), scale=scale, executor=executor)
    axes = list(axes)
    margins = boundary_distances(complex_)
    edges = []
    d_min = {}
    for i, j in itertools.combinations(range(len(axes)), 2):
        d = _axis_distances(complex_, margins, axes[i], axes[j])
        d_min[(i, j)] = d
        if d is not None and d <= 1:
            edges.append((i, j))
    return AxesGraph(axes, edges, d_min)
