# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
The complex, map and report documents.

All three are JSON objects written with sorted keys, two space indents and
a trailing newline, so equal content gives byte-identical files.  Unknown
keys are rejected.  docs/user/fileformats.rst describes every field.
"""

import collections
import fractions
import hashlib
import json

import numpy as np

from flagcheck.complex_core import (
    UNREACHABLE,
    ComplexDefinitionError,
    FlagComplex,
    SubcomplexView,
    close_under_faces,
)
from flagcheck.curvature_checks import SDReport, Verdict
from flagcheck.hyperbolicity import DeltaResult, DeltaProfile
from flagcheck.isometry import (
    Automorphism,
    AxesGraph,
    DisplacementReport,
    PartialAutomorphism,
)
from flagcheck.loops import FillingCertificate, LoopPath, Wheel


COMPLEX_FORMAT = 'flagcheck-complex'
MAP_FORMAT = 'flagcheck-map'
REPORT_FORMAT = 'flagcheck-report'
VERSION = 1


#==============================================================================
class FormatError(ValueError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = 'line %d column %d: %s' % (line, column, message)
        super(FormatError, self).__init__(message)
        self.line = line
        self.column = column


#==============================================================================
class ComplexFile(object):
    """a parsed complex document"""

    def __init__(self, complex_, simplices=None):
        self.complex = complex_
        self.simplices = simplices

    def __repr__(self):
        return '<ComplexFile %r>' % (self.complex,)

    def document(self):
        return complex_document(self.complex, self.simplices)

    @property
    def digest(self):
        return hashlib.sha256(dumps(self.document()).encode('utf-8')) \
            .hexdigest()


#------------------------------------------------------------------------------
def dumps(document):
    return json.dumps(document, sort_keys=True, indent=2) + '\n'


#------------------------------------------------------------------------------
def _parse(text):
    try:
        document = json.loads(text)
    except ValueError as x:
        raise FormatError(
            x.msg if hasattr(x, 'msg') else str(x),
            getattr(x, 'lineno', None),
            getattr(x, 'colno', None),
        )
    if not isinstance(document, dict):
        raise FormatError('document is not a JSON object')
    return document


#------------------------------------------------------------------------------
def _check_header(document, format_name, required, optional=()):
    if document.get('format') != format_name:
        raise FormatError(
            'expected format %r, got %r' % (format_name,
                                           document.get('format'))
        )
    if document.get('version') != VERSION:
        raise FormatError(
            'unsupported version %r' % (document.get('version'),)
        )
    allowed = set(('format', 'version')) | set(required) | set(optional)
    unknown = sorted(set(document) - allowed)
    if unknown:
        raise FormatError('unknown fields %s' % ', '.join(unknown))
    missing = sorted(set(required) - set(document))
    if missing:
        raise FormatError('missing fields %s' % ', '.join(missing))


#------------------------------------------------------------------------------
def _is_int(value):
    return isinstance(value, int) and not isinstance(value, bool)


#------------------------------------------------------------------------------
def _int_list(value, name):
    if not isinstance(value, list) or not all(_is_int(v) for v in value):
        raise FormatError('%s must be a list of integers' % name)
    return value


#------------------------------------------------------------------------------
def complex_document(complex_, simplices=None):
    document = {
        'format': COMPLEX_FORMAT,
        'version': VERSION,
        'vertex_count': complex_.vertex_count,
        'edges': [list(e) for e in complex_.edges()],
    }
    if simplices is not None:
        document['simplices'] = [
            sorted(s) for s in sorted(
                (tuple(sorted(s)) for s in simplices),
                key=lambda s: (len(s), s)
            )
        ]
    if complex_.labels is not None:
        document['labels'] = list(complex_.labels)
    if complex_.boundary:
        document['boundary'] = list(complex_.boundary)
    return document


#------------------------------------------------------------------------------
def dump_complex(complex_, simplices=None):
    return dumps(complex_document(complex_, simplices))


#------------------------------------------------------------------------------
def load_complex(text):
    document = _parse(text)
    _check_header(
        document,
        COMPLEX_FORMAT,
        ('vertex_count', 'edges'),
        ('simplices', 'labels', 'boundary')
    )
    vertex_count = document['vertex_count']
    if not _is_int(vertex_count) or vertex_count < 0:
        raise FormatError('vertex_count must be a natural number')
    edges = document['edges']
    if not isinstance(edges, list):
        raise FormatError('edges must be a list')
    for edge in edges:
        _int_list(edge, 'edge %r' % (edge,))
        if len(edge) != 2:
            raise FormatError('edge %r does not have two ends' % (edge,))
    labels = document.get('labels')
    if labels is not None and (
        not isinstance(labels, list) or
        not all(isinstance(label, str) for label in labels)
    ):
        raise FormatError('labels must be a list of strings')
    boundary = _int_list(document.get('boundary', []), 'boundary')
    try:
        complex_ = FlagComplex(
            vertex_count,
            [tuple(e) for e in edges],
            labels=labels,
            boundary=boundary
        )
    except ComplexDefinitionError as x:
        raise FormatError(str(x))
    simplices = document.get('simplices')
    if simplices is not None:
        if not isinstance(simplices, list):
            raise FormatError('simplices must be a list')
        for simplex in simplices:
            _int_list(simplex, 'simplex %r' % (simplex,))
            if not simplex or len(set(simplex)) != len(simplex):
                raise FormatError('bad simplex %r' % (simplex,))
            for v in simplex:
                if not 0 <= v < vertex_count:
                    raise FormatError('simplex vertex %r out of range' % v)
        skeleton = set(
            face for face in close_under_faces(simplices) if len(face) == 2
        )
        if skeleton != set(complex_.edges()):
            raise FormatError('simplices disagree with edges')
        simplices = [tuple(sorted(s)) for s in simplices]
    return ComplexFile(complex_, simplices)


#------------------------------------------------------------------------------
def map_document(h, vertex_count):
    return {
        'format': MAP_FORMAT,
        'version': VERSION,
        'map': h.as_list(vertex_count),
    }


#------------------------------------------------------------------------------
def dump_map(h, vertex_count):
    return dumps(map_document(h, vertex_count))


#------------------------------------------------------------------------------
def load_map(text, vertex_count):
    """a total map becomes an Automorphism, one with null entries a
    PartialAutomorphism"""
    document = _parse(text)
    _check_header(document, MAP_FORMAT, ('map',))
    values = document['map']
    if not isinstance(values, list):
        raise FormatError('map must be a list')
    if len(values) != vertex_count:
        raise FormatError(
            'map has %d entries for %d vertices' % (len(values),
                                                   vertex_count)
        )
    for value in values:
        if value is None:
            continue
        if not _is_int(value) or not 0 <= value < vertex_count:
            raise FormatError('map entry %r out of range' % (value,))
    if any(value is None for value in values):
        try:
            return PartialAutomorphism.from_list(values)
        except ValueError as x:
            raise FormatError(str(x))
    return Automorphism(values)


#------------------------------------------------------------------------------
def report_document(tool_version, digest, configuration, results,
                    timings=None):
    document = {
        'format': REPORT_FORMAT,
        'version': VERSION,
        'tool_version': tool_version,
        'input_digest': digest,
        'configuration': jsonable(configuration),
        'results': jsonable(results),
    }
    if timings is not None:
        document['timings'] = jsonable(timings)
    return document


#------------------------------------------------------------------------------
def load_report(text):
    document = _parse(text)
    _check_header(
        document,
        REPORT_FORMAT,
        ('tool_version', 'input_digest', 'configuration', 'results'),
        ('timings',)
    )
    return document


#------------------------------------------------------------------------------
def jsonable(value):
    """plain JSON values for library results"""
    if value is None or isinstance(value, (bool, str, float)):
        return value
    if value is UNREACHABLE:
        return 'unreachable'
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, fractions.Fraction):
        return str(value)
    if isinstance(value, Verdict):
        document = {'status': value.status}
        if value.status == Verdict.FAIL:
            document['witness'] = jsonable(value.witness)
        if value.undecided:
            document['undecided'] = jsonable(value.undecided)
        if value.notes:
            document['notes'] = jsonable(value.notes)
        return document
    if isinstance(value, LoopPath):
        return {'closed': value.closed, 'vertices': list(value.vertices)}
    if isinstance(value, Wheel):
        return {'hub': value.hub, 'rim': list(value.rim.vertices)}
    if isinstance(value, FillingCertificate):
        return jsonable(value.as_dict())
    if isinstance(value, SDReport):
        return {
            'origin': value.origin,
            'depth': value.depth,
            'passed': value.passed,
            'triangle_failures': jsonable(value.triangle_failures),
            'vertex_failures': jsonable(value.vertex_failures),
        }
    if isinstance(value, DisplacementReport):
        return {
            'classification': value.classification,
            'translation_length': value.translation_length,
            'min_vertices': list(value.min_vertices),
            'invariant_simplex': jsonable(value.invariant_simplex),
            'displacements': [
                [x, jsonable(d), x in value.certified]
                for x, d in value.displacements.items()
            ],
        }
    if isinstance(value, AxesGraph):
        return {
            'axes': jsonable(value.axes),
            'edges': jsonable(value.edges),
            'd_min': [
                [i, j, jsonable(d)]
                for (i, j), d in sorted(value.d_min.items())
            ],
        }
    if isinstance(value, DeltaResult):
        return {
            'delta': str(value.delta),
            'delta_doubled': value.doubled,
            'witness': jsonable(value.witness),
        }
    if isinstance(value, DeltaProfile):
        return {
            'non_decreasing': value.non_decreasing,
            'windows': [
                [jsonable(label), jsonable(result)]
                for label, result in zip(value.labels, value.results)
            ],
        }
    if isinstance(value, SubcomplexView):
        return list(value.vertex_set)
    if isinstance(value, (Automorphism, PartialAutomorphism)):
        return [[k, v] for k, v in value.items()]
    if isinstance(value, dict):
        return collections.OrderedDict(
            (str(k), jsonable(v)) for k, v in value.items()
        )
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(v) for v in value)
    if isinstance(value, (list, tuple, range)):
        return [jsonable(v) for v in value]
    raise TypeError('cannot write %r to a report' % (value,))
