# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
Deterministic corpus builders.

Every builder is a pure function of its CorpusSpec.  Complexes standing
for a piece of an infinite complex (disks, strips) carry window boundary
markers; the ones with a canonical symmetry come with it.
"""

import collections
import itertools

from flagcheck.complex_core import FlagComplex
from flagcheck.isometry import Automorphism, PartialAutomorphism


MAX_VERTICES = 20000
MASK64 = (1 << 64) - 1


#==============================================================================
class CorpusSpecError(ValueError):
    pass


GeneratedComplex = collections.namedtuple(
    'GeneratedComplex', ['complex', 'automorphism']
)


#==============================================================================
class CorpusSpec(object):
    """a corpus member: a kind and its integer (or probability) parameters.

    The textual form is the kind followed by key=value pairs, for example
    "disk d=7 r=3" or "strip w=2 l=10 pattern=down"."""

    # kind: ((parameter, converter, default or None when required), ...)
    KINDS = collections.OrderedDict([
        ('cycle', (('n', int, None),)),
        ('path', (('n', int, None),)),
        ('complete', (('n', int, None),)),
        ('wheel', (('k', int, None),)),
        ('octahedron', ()),
        ('icosahedron', ()),
        ('disk', (('d', int, None), ('r', int, None))),
        ('strip', (('w', int, None), ('l', int, None),
                   ('pattern', str, 'up'))),
        ('cylinder', (('c', int, None), ('h', int, None))),
        ('random', (('n', int, None), ('p', float, None),
                    ('seed', int, 0))),
    ])

    def __init__(self, kind, **parameters):
        if kind not in self.KINDS:
            raise CorpusSpecError('unknown corpus kind %r' % (kind,))
        self.kind = kind
        self.parameters = collections.OrderedDict()
        known = self.KINDS[kind]
        names = set(name for name, __, __ in known)
        for name in parameters:
            if name not in names:
                raise CorpusSpecError(
                    '%s takes no parameter %r' % (kind, name)
                )
        for name, converter, default in known:
            if name in parameters:
                try:
                    value = converter(parameters[name])
                except (TypeError, ValueError):
                    raise CorpusSpecError(
                        'bad value %r for %s' % (parameters[name], name)
                    )
            elif default is not None:
                value = default
            else:
                raise CorpusSpecError(
                    '%s needs the parameter %r' % (kind, name)
                )
            self.parameters[name] = value

    def __getattr__(self, name):
        parameters = self.__dict__.get('parameters', {})
        if name in parameters:
            return parameters[name]
        raise AttributeError(name)

    def __repr__(self):
        return '<CorpusSpec %s>' % self

    def __str__(self):
        return ' '.join(
            [self.kind] +
            ['%s=%s' % (k, v) for k, v in self.parameters.items()]
        )

    def __eq__(self, other):
        return (
            isinstance(other, CorpusSpec) and
            self.kind == other.kind and
            self.parameters == other.parameters
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(str(self))

    @classmethod
    def from_string(cls, text):
        words = text.split()
        if not words:
            raise CorpusSpecError('empty corpus spec')
        parameters = {}
        for word in words[1:]:
            if '=' not in word:
                raise CorpusSpecError('expected key=value, got %r' % word)
            key, value = word.split('=', 1)
            if key in parameters:
                raise CorpusSpecError('%r given twice' % key)
            parameters[key] = value
        return cls(words[0].lower(), **parameters)


#==============================================================================
class SplitMix64(object):
    """the 64-bit splitmix stream; seed -> identical draws on every
    platform"""

    def __init__(self, seed):
        self.state = seed & MASK64

    def next_int(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def next_float(self):
        """uniform in [0, 1) from the top 53 bits"""
        return (self.next_int() >> 11) * (1.0 / (1 << 53))


#------------------------------------------------------------------------------
def _require(condition, message, *args):
    if not condition:
        raise CorpusSpecError(message % args)


#------------------------------------------------------------------------------
def _check_size(vertex_count):
    _require(
        vertex_count <= MAX_VERTICES,
        '%d vertices exceed the corpus cap of %d', vertex_count, MAX_VERTICES
    )


#------------------------------------------------------------------------------
def cycle(n):
    _require(n >= 3, 'a cycle needs n >= 3, got %r', n)
    _check_size(n)
    complex_ = FlagComplex(n, [(i, (i + 1) % n) for i in range(n)])
    return GeneratedComplex(
        complex_, Automorphism((i + 1) % n for i in range(n))
    )


#------------------------------------------------------------------------------
def path(n):
    _require(n >= 1, 'a path needs n >= 1, got %r', n)
    _check_size(n)
    return GeneratedComplex(
        FlagComplex(n, [(i, i + 1) for i in range(n - 1)]), None
    )


#------------------------------------------------------------------------------
def complete(n):
    _require(n >= 1, 'a complete graph needs n >= 1, got %r', n)
    _check_size(n)
    return GeneratedComplex(
        FlagComplex(n, itertools.combinations(range(n), 2)), None
    )


#------------------------------------------------------------------------------
def wheel(k):
    """hub 0 over the rim 1..k"""
    _require(k >= 3, 'a wheel needs k >= 3, got %r', k)
    _check_size(k + 1)
    edges = [(0, i) for i in range(1, k + 1)]
    edges.extend((i, i % k + 1) for i in range(1, k + 1))
    rotation = [0] + [i % k + 1 for i in range(1, k + 1)]
    return GeneratedComplex(FlagComplex(k + 1, edges), Automorphism(rotation))


#------------------------------------------------------------------------------
def octahedron():
    """x=0, x'=1, y=2, y'=3, z=4, z'=5; opposite vertices are not joined"""
    opposite = set([(0, 1), (2, 3), (4, 5)])
    edges = [
        e for e in itertools.combinations(range(6), 2) if e not in opposite
    ]
    return GeneratedComplex(
        FlagComplex(6, edges), Automorphism([1, 0, 3, 2, 5, 4])
    )


#------------------------------------------------------------------------------
def icosahedron():
    """0 on top, upper ring 1..5, lower ring 6..10, 11 at the bottom"""
    edges = []
    for i in range(1, 6):
        following = i % 5 + 1
        edges.append((0, i))
        edges.append((i, following))
        edges.append((i, 5 + i))
        edges.append((i, 5 + following))
        edges.append((5 + i, 5 + following))
        edges.append((5 + i, 11))
    rotation = (
        [0] + [i % 5 + 1 for i in range(1, 6)] +
        [5 + i % 5 + 1 for i in range(1, 6)] + [11]
    )
    return GeneratedComplex(FlagComplex(12, edges), Automorphism(rotation))


#------------------------------------------------------------------------------
def disk_layer_sizes(d, r):
    """vertex count of each layer of Disk(d, r), center first"""
    sizes = [1]
    if r >= 1:
        # a ring is the list of its vertices' inner neighbor counts
        ring = [1] * d
        sizes.append(d)
        for __ in range(1, r):
            ring = _next_ring(d, ring)
            sizes.append(len(ring))
    return sizes


#------------------------------------------------------------------------------
def _next_ring(d, ring):
    following = []
    for inner in ring:
        count = d - 2 - inner
        following.append(2)
        following.extend([1] * (count - 2))
    return following


#------------------------------------------------------------------------------
def disk(d, r):
    """a triangulated disk where every interior vertex has degree d.

    Layer k is a ring at distance k from the center 0.  A vertex of a ring
    with p neighbors in the ring inside it gets d - 2 - p neighbors in the
    ring outside: a block whose first and last vertices are shared with
    the blocks of the two ring neighbors.  The outermost ring is the window
    boundary; rotating every ring by a d-th of its length is a symmetry."""
    _require(d >= 6, 'a disk needs degree d >= 6, got %r', d)
    _require(r >= 0, 'a disk needs radius r >= 0, got %r', r)
    edges = []
    rings = [[0]]
    if r >= 1:
        first = list(range(1, d + 1))
        edges.extend((0, v) for v in first)
        edges.extend((first[i], first[(i + 1) % d]) for i in range(d))
        rings.append(first)
        inner_counts = [1] * d
        next_id = d + 1
        for __ in range(1, r):
            ring = rings[-1]
            counts = [d - 2 - p for p in inner_counts]
            size = sum(count - 1 for count in counts)
            _check_size(next_id + size)
            shared = []
            offset = 0
            for count in counts:
                shared.append(next_id + offset)
                offset += count - 1
            outer = list(range(next_id, next_id + size))
            for i, v in enumerate(ring):
                start = shared[i] - next_id
                block = [
                    outer[(start + t) % size] for t in range(counts[i])
                ]
                edges.extend((v, u) for u in block)
            edges.extend(
                (outer[i], outer[(i + 1) % size]) for i in range(size)
            )
            rings.append(outer)
            inner_counts = _next_ring(d, inner_counts)
            next_id += size
    vertex_count = sum(len(ring) for ring in rings)
    edges = set((min(u, v), max(u, v)) for u, v in edges)
    boundary = rings[-1] if r >= 1 else []
    complex_ = FlagComplex(vertex_count, sorted(edges), boundary=boundary)
    rotation = [0] * vertex_count
    for ring in rings:
        step = len(ring) // d if len(ring) >= d else 0
        for i, v in enumerate(ring):
            rotation[v] = ring[(i + step) % len(ring)]
    return GeneratedComplex(complex_, Automorphism(rotation))


#------------------------------------------------------------------------------
def strip_vertex(w, column, row):
    return column * w + row


#------------------------------------------------------------------------------
def strip(w, l, pattern='up'):
    """w rows by l columns of a triangulated band; vertex (column, row) is
    column * w + row.  Each square gets the diagonal (i, r)-(i+1, r+1)
    ('up') or (i, r+1)-(i+1, r) ('down').  The end columns are the window
    boundary and the shift one column along is a partial automorphism."""
    _require(w >= 1, 'a strip needs w >= 1, got %r', w)
    _require(l >= 2, 'a strip needs l >= 2, got %r', l)
    _require(pattern in ('up', 'down'), 'unknown strip pattern %r', pattern)
    _check_size(w * l)
    edges = []
    for i in range(l):
        for r in range(w):
            here = strip_vertex(w, i, r)
            if r + 1 < w:
                edges.append((here, strip_vertex(w, i, r + 1)))
            if i + 1 < l:
                edges.append((here, strip_vertex(w, i + 1, r)))
                if r + 1 < w:
                    if pattern == 'up':
                        edges.append((here, strip_vertex(w, i + 1, r + 1)))
                    else:
                        edges.append((
                            strip_vertex(w, i, r + 1),
                            strip_vertex(w, i + 1, r)
                        ))
    boundary = (
        [strip_vertex(w, 0, r) for r in range(w)] +
        [strip_vertex(w, l - 1, r) for r in range(w)]
    )
    shift = PartialAutomorphism(
        (strip_vertex(w, i, r), strip_vertex(w, i + 1, r))
        for i in range(l - 1)
        for r in range(w)
    )
    return GeneratedComplex(
        FlagComplex(w * l, edges, boundary=boundary), shift
    )


#------------------------------------------------------------------------------
def cylinder(c, h):
    """h rings of c vertices, vertex (ring k, position j) is k * c + j,
    triangulated like the 'up' strip; rotation moves every position by
    one"""
    _require(c >= 4, 'a cylinder needs c >= 4, got %r', c)
    _require(h >= 1, 'a cylinder needs h >= 1, got %r', h)
    _check_size(c * h)
    edges = []
    for k in range(h):
        for j in range(c):
            here = k * c + j
            edges.append((here, k * c + (j + 1) % c))
            if k + 1 < h:
                edges.append((here, (k + 1) * c + j))
                edges.append((here, (k + 1) * c + (j + 1) % c))
    rotation = [k * c + (j + 1) % c for k in range(h) for j in range(c)]
    return GeneratedComplex(FlagComplex(c * h, edges), Automorphism(rotation))


#------------------------------------------------------------------------------
def random_flag(n, p, seed):
    """each pair u < v, taken in lexicographic order, consumes one draw of
    SplitMix64(seed) and is an edge when the draw is below p"""
    _require(n >= 0, 'negative vertex count %r', n)
    _require(0.0 <= p <= 1.0, 'edge probability %r outside [0, 1]', p)
    _check_size(n)
    stream = SplitMix64(seed)
    edges = [
        pair for pair in itertools.combinations(range(n), 2)
        if stream.next_float() < p
    ]
    return FlagComplex(n, edges)


#------------------------------------------------------------------------------
def generate(spec):
    """build the complex (and its canonical symmetry, if any) of a spec"""
    if isinstance(spec, str):
        spec = CorpusSpec.from_string(spec)
    kind, parameters = spec.kind, spec.parameters
    if kind == 'random':
        return GeneratedComplex(
            random_flag(parameters['n'], parameters['p'],
                        parameters['seed']),
            None
        )
    if kind in ('octahedron', 'icosahedron'):
        return BUILDERS[kind]()
    return BUILDERS[kind](**parameters)


BUILDERS = {
    'cycle': cycle,
    'path': path,
    'complete': complete,
    'wheel': wheel,
    'octahedron': octahedron,
    'icosahedron': icosahedron,
    'disk': disk,
    'strip': strip,
    'cylinder': cylinder,
}
