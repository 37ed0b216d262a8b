# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
The flag simplicial complex model.

A complex is stored as its 1-skeleton only.  Simplices are the cliques of
the graph and are enumerated on demand, never stored, so the flag
condition holds by construction.
"""

import itertools

import networkx as nx
import numpy as np


DEFAULT_CLIQUE_CAP = 16


#==============================================================================
class ComplexDefinitionError(ValueError):
    pass


#==============================================================================
class NotASimplexError(ValueError):
    pass


#==============================================================================
class CliqueCapExceeded(Exception):
    pass


#==============================================================================
class FlagViolation(Exception):
    """raised by `ingest_explicit` when an explicit simplex list is not the
    flag completion of its own 1-skeleton.  The witness is the smallest
    clique that the list leaves out."""

    def __init__(self, witness):
        super(FlagViolation, self).__init__(
            'clique %r spans no simplex' % (witness,)
        )
        self.witness = witness


#==============================================================================
class _Unreachable(object):
    """distance between vertices of different components"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(_Unreachable, cls).__new__(cls)
        return cls._instance

    def __repr__(self):
        return 'UNREACHABLE'

    def __reduce__(self):
        return (_Unreachable, ())

    def __bool__(self):
        return False


UNREACHABLE = _Unreachable()


#==============================================================================
class Simplex(tuple):
    """a strictly increasing tuple of vertex indices"""

    def __new__(cls, vertices):
        ordered = sorted(set(vertices))
        if len(ordered) != len(vertices):
            raise NotASimplexError('repeated vertex in %r' % (vertices,))
        return super(Simplex, cls).__new__(cls, ordered)

    @property
    def dimension(self):
        return len(self) - 1


#==============================================================================
class FlagComplex(object):
    """immutable flag simplicial complex on the vertices 0..vertex_count-1

    `boundary` holds the window boundary markers of complexes that stand
    for a finite piece of an infinite complex.  Distances measured inside
    the window are only trusted up to the distance to that boundary."""

    #--------------------------------------------------------------------------
    def __init__(self, vertex_count, edges=(), labels=None, boundary=()):
        if vertex_count < 0:
            raise ComplexDefinitionError(
                'negative vertex count %r' % vertex_count
            )
        neighbors = [set() for __ in range(vertex_count)]
        for u, v in edges:
            for end in (u, v):
                if not 0 <= end < vertex_count:
                    raise ComplexDefinitionError(
                        'vertex %r out of range for %d vertices' %
                        (end, vertex_count)
                    )
            if u == v:
                raise ComplexDefinitionError('self loop at %r' % u)
            neighbors[u].add(v)
            neighbors[v].add(u)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != vertex_count:
                raise ComplexDefinitionError(
                    '%d labels for %d vertices' % (len(labels), vertex_count)
                )
        boundary = tuple(sorted(set(boundary)))
        for v in boundary:
            if not 0 <= v < vertex_count:
                raise ComplexDefinitionError(
                    'boundary vertex %r out of range' % (v,)
                )
        self.vertex_count = vertex_count
        self.labels = labels
        self.boundary = boundary
        self._neighbors = tuple(frozenset(x) for x in neighbors)
        graph = nx.Graph()
        graph.add_nodes_from(range(vertex_count))
        graph.add_edges_from(self.edges())
        self.graph = nx.freeze(graph)

    #--------------------------------------------------------------------------
    def __repr__(self):
        return '<FlagComplex vertices=%d edges=%d>' % (
            self.vertex_count, self.graph.number_of_edges()
        )

    def __eq__(self, other):
        return (
            isinstance(other, FlagComplex) and
            self.vertex_count == other.vertex_count and
            self._neighbors == other._neighbors and
            self.boundary == other.boundary
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.vertex_count, self._neighbors))

    def __getstate__(self):
        return {
            'vertex_count': self.vertex_count,
            'edges': list(self.edges()),
            'labels': self.labels,
            'boundary': self.boundary,
        }

    def __setstate__(self, state):
        self.__init__(
            state['vertex_count'],
            state['edges'],
            labels=state['labels'],
            boundary=state['boundary'],
        )

    #--------------------------------------------------------------------------
    @property
    def vertices(self):
        return range(self.vertex_count)

    def neighbors(self, v):
        return self._neighbors[v]

    def closed_neighborhood(self, v):
        return self._neighbors[v] | frozenset([v])

    def degree(self, v):
        return len(self._neighbors[v])

    def adjacent(self, u, v):
        return v in self._neighbors[u]

    def edges(self):
        """canonical edge list: u < v, sorted"""
        return [
            (u, v)
            for u in range(self.vertex_count)
            for v in sorted(self._neighbors[u])
            if u < v
        ]

    def is_simplex(self, vertices):
        vertices = list(vertices)
        if not vertices or len(set(vertices)) != len(vertices):
            return False
        for v in vertices:
            if not 0 <= v < self.vertex_count:
                return False
        return all(
            self.adjacent(u, v)
            for u, v in itertools.combinations(vertices, 2)
        )

    def check_vertex(self, v):
        if not isinstance(v, (int, np.integer)) or \
                not 0 <= v < self.vertex_count:
            raise ComplexDefinitionError(
                'vertex %r out of range for %d vertices' %
                (v, self.vertex_count)
            )

    #--------------------------------------------------------------------------
    def simplices(self, max_size=None, clique_cap=DEFAULT_CLIQUE_CAP):
        """every simplex, sorted by (size, vertices).

        Simplices larger than `max_size` are skipped; a simplex larger than
        `clique_cap` raises CliqueCapExceeded since the enumeration could
        not be trusted to stay small."""
        found = []
        for clique in nx.enumerate_all_cliques(self.graph):
            size = len(clique)
            if clique_cap is not None and size > clique_cap:
                raise CliqueCapExceeded(
                    'simplex of size %d exceeds clique cap %d' %
                    (size, clique_cap)
                )
            if max_size is not None and size > max_size:
                break
            found.append(Simplex(clique))
        found.sort(key=lambda s: (len(s), tuple(s)))
        return found

    def maximal_simplices(self):
        return sorted(
            (Simplex(c) for c in nx.find_cliques(self.graph)),
            key=lambda s: (len(s), tuple(s))
        )


#==============================================================================
class SubcomplexView(object):
    """the full subcomplex of `parent` spanned by `vertex_set`"""

    def __init__(self, parent, vertex_set):
        self.parent = parent
        self.vertex_set = tuple(sorted(set(vertex_set)))
        self._members = frozenset(self.vertex_set)

    def __repr__(self):
        return '<SubcomplexView %r>' % (self.vertex_set,)

    def __len__(self):
        return len(self.vertex_set)

    def __iter__(self):
        return iter(self.vertex_set)

    def __contains__(self, v):
        return v in self._members

    def __eq__(self, other):
        return (
            isinstance(other, SubcomplexView) and
            self.parent is other.parent and
            self.vertex_set == other.vertex_set
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.vertex_set)

    def neighbors(self, v):
        return self.parent.neighbors(v) & self._members

    def edges(self):
        return [
            (u, v)
            for u in self.vertex_set
            for v in sorted(self.neighbors(u))
            if u < v
        ]

    def window_boundary(self):
        """vertices of the view that touch the parent's window boundary or
        a parent vertex outside the view"""
        boundary = set(self.parent.boundary) & self._members
        for v in self.vertex_set:
            if self.parent.neighbors(v) - self._members:
                boundary.add(v)
        return tuple(sorted(boundary))

    def as_complex(self, inherit_boundary=True):
        """return (complex, vertex_map) with the view relabeled densely;
        vertex_map[i] is the parent vertex of vertex i"""
        index = dict((v, i) for i, v in enumerate(self.vertex_set))
        edges = [(index[u], index[v]) for u, v in self.edges()]
        labels = None
        if self.parent.labels is not None:
            labels = [self.parent.labels[v] for v in self.vertex_set]
        boundary = ()
        if inherit_boundary:
            boundary = [index[v] for v in self.window_boundary()]
        complex_ = FlagComplex(
            len(self.vertex_set),
            edges,
            labels=labels,
            boundary=boundary,
        )
        return complex_, self.vertex_set


#------------------------------------------------------------------------------
def build_complex(vertex_count, edges, labels=None, boundary=()):
    return FlagComplex(vertex_count, edges, labels=labels, boundary=boundary)


#------------------------------------------------------------------------------
def close_under_faces(simplex_list):
    faces = set()
    for simplex in simplex_list:
        simplex = tuple(Simplex(simplex))
        for size in range(1, len(simplex) + 1):
            faces.update(itertools.combinations(simplex, size))
    return faces


#------------------------------------------------------------------------------
def ingest_explicit(simplex_list, vertex_count=None,
                    clique_cap=DEFAULT_CLIQUE_CAP):
    """build a FlagComplex out of an explicit list of simplices, raising
    FlagViolation when the list is not the clique complex of its edges"""
    faces = close_under_faces(simplex_list)
    top = max([v for face in faces for v in face] or [-1])
    if vertex_count is None:
        vertex_count = top + 1
    elif top >= vertex_count:
        raise ComplexDefinitionError(
            'vertex %r out of range for %d vertices' % (top, vertex_count)
        )
    faces.update((v,) for v in range(vertex_count))
    edges = [face for face in faces if len(face) == 2]
    complex_ = FlagComplex(vertex_count, edges)
    missing = []
    for clique in nx.enumerate_all_cliques(complex_.graph):
        size = len(clique)
        if missing and size > len(missing[0]):
            break
        if clique_cap is not None and size > clique_cap:
            raise CliqueCapExceeded(
                'simplex of size %d exceeds clique cap %d' %
                (size, clique_cap)
            )
        candidate = tuple(sorted(clique))
        if candidate not in faces:
            missing.append(candidate)
    if missing:
        raise FlagViolation(Simplex(min(missing)))
    return complex_


#------------------------------------------------------------------------------
def export_simplices(complex_, clique_cap=DEFAULT_CLIQUE_CAP):
    return [tuple(s) for s in complex_.simplices(clique_cap=clique_cap)]


#------------------------------------------------------------------------------
def span(complex_, vertex_set):
    vertex_set = list(vertex_set)
    for v in vertex_set:
        complex_.check_vertex(v)
    return SubcomplexView(complex_, vertex_set)


#------------------------------------------------------------------------------
def link(complex_, simplex):
    """the link of `simplex` as (complex, vertex_map)"""
    simplex = tuple(simplex)
    for v in simplex:
        complex_.check_vertex(v)
    if not complex_.is_simplex(simplex):
        raise NotASimplexError('%r is not a simplex' % (simplex,))
    common = set(complex_.neighbors(simplex[0]))
    for v in simplex[1:]:
        common &= complex_.neighbors(v)
    common -= set(simplex)
    return SubcomplexView(complex_, common).as_complex(inherit_boundary=False)


#------------------------------------------------------------------------------
def distances_from(complex_, v, cutoff=None):
    """{vertex: distance} for the component of v, up to `cutoff`"""
    complex_.check_vertex(v)
    return nx.single_source_shortest_path_length(
        complex_.graph, v, cutoff=cutoff
    )


#------------------------------------------------------------------------------
def distance(complex_, u, v):
    complex_.check_vertex(u)
    complex_.check_vertex(v)
    try:
        return nx.shortest_path_length(complex_.graph, u, v)
    except nx.NetworkXNoPath:
        return UNREACHABLE


#------------------------------------------------------------------------------
def distance_matrix(graph_like):
    """all-pairs distances as an int32 numpy matrix, -1 where unreachable.

    Accepts a FlagComplex, a SubcomplexView (distances inside the view's
    own 1-skeleton, rows ordered as view.vertex_set) or a networkx graph
    with nodes 0..n-1."""
    if isinstance(graph_like, SubcomplexView):
        graph_like = graph_like.as_complex()[0]
    if isinstance(graph_like, nx.Graph):
        graph = graph_like
    else:
        graph = graph_like.graph
    n = graph.number_of_nodes()
    matrix = np.full((n, n), -1, dtype=np.int32)
    for source, lengths in nx.all_pairs_shortest_path_length(graph):
        for target, length in lengths.items():
            matrix[source, target] = length
    return matrix


#------------------------------------------------------------------------------
def eccentricity(complex_, v):
    return max(distances_from(complex_, v).values())


#------------------------------------------------------------------------------
def is_connected(complex_):
    return complex_.vertex_count == 0 or nx.is_connected(complex_.graph)


#------------------------------------------------------------------------------
def ball(complex_, v, i):
    if i < 0:
        raise ValueError('negative radius %r' % i)
    return SubcomplexView(complex_, distances_from(complex_, v, cutoff=i))


#------------------------------------------------------------------------------
def sphere(complex_, v, i):
    if i < 0:
        raise ValueError('negative radius %r' % i)
    lengths = distances_from(complex_, v, cutoff=i)
    return SubcomplexView(
        complex_,
        [u for u, length in lengths.items() if length == i]
    )


#------------------------------------------------------------------------------
def boundary_distances(complex_):
    """distance from every vertex to the nearest window boundary vertex;
    None when the complex carries no boundary markers"""
    if not complex_.boundary:
        return None
    lengths = nx.multi_source_dijkstra_path_length(
        complex_.graph, set(complex_.boundary), weight=None
    )
    return lengths


#------------------------------------------------------------------------------
def window_distance_certified(margins, x, d):
    """a distance d measured from x inside a window equals the ambient
    distance once d does not exceed the distance from x to the window
    boundary"""
    if d is UNREACHABLE:
        return False
    if margins is None:
        return True
    margin = margins.get(x)
    if margin is None:
        # no path to the boundary: the component is closed in the window
        return True
    return d <= margin
