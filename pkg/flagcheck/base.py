# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

import collections

import networkx as nx

from configman import Namespace, RequiredConfig


#==============================================================================
class CircularDAGError(Exception):
    pass


#==============================================================================
class CheckArgumentError(ValueError):
    pass


#------------------------------------------------------------------------------
def toposort_flatten(data):
    """`data` maps every item to the items it depends on.  Items come out
    level by level, each level sorted, so the order is deterministic."""
    graph = nx.DiGraph()
    graph.add_nodes_from(data)
    for item, dependencies in data.items():
        graph.add_edges_from(
            (dependency, item) for dependency in dependencies
            if dependency != item
        )
    try:
        return [
            item
            for generation in nx.topological_generations(graph)
            for item in sorted(generation)
        ]
    except nx.NetworkXUnfeasible:
        cycle = sorted(set(u for u, __ in nx.find_cycle(graph)))
        raise CircularDAGError(
            'Cyclic dependencies exist among these items: %s' %
            ', '.join(cycle)
        )


#==============================================================================
def reorder_dag(sequence,
                depends_getter=lambda x: x.depends_on,
                name_getter=lambda x: x.app_name):
    """
    DAG = Directed Acyclic Graph
    If we have something like:
        lemmas depends on sd
        sd depends on nothing

    Given the order of [lemmas, sd] expect it to return [sd, lemmas].
    Several items may share a name; they stay together, in their original
    order, at the place of that name.

    parameters:

        :sequence: some sort of iterable list

        :depends_getter: a callable that extracts the depends on sub-list

        :name_getter: a callable that extracts the name
    """

    jobs = collections.defaultdict(set)
    map_ = collections.defaultdict(list)
    for each in sequence:
        name = name_getter(each)
        depends_on = depends_getter(each)
        if depends_on is None:
            depends_on = []
        elif isinstance(depends_on, str):
            depends_on = [depends_on]
        else:
            depends_on = list(depends_on)
        jobs[name].update(depends_on)
        map_[name].append(each)

    # a dependency nobody asked for is satisfied from outside
    roots = [name for name, deps in jobs.items() if not deps & set(map_)]
    if map_ and not roots:
        raise CircularDAGError("No check is at the root")

    return [item for x in toposort_flatten(jobs) for item in map_.get(x, [])]


#==============================================================================
class BaseCheck(RequiredConfig):
    """The base class of the checks the command line can request.

    A check is named by `app_name` and takes up to
    `len(required_arguments) + len(optional_arguments)` integer arguments.
    Subclasses implement `run`; class decorators from `flagcheck.mixins`
    change how `main` reaches it."""
    required_config = Namespace()

    app_name = None
    depends_on = ()
    required_arguments = ()
    optional_arguments = ()

    #--------------------------------------------------------------------------
    def __init__(self, config, complex_file, arguments=(), executor=None,
                 prerequisites=None):
        self.config = config
        self.complex_file = complex_file
        self.arguments = tuple(arguments)
        self.executor = executor
        self.prerequisites = prerequisites or {}

    #--------------------------------------------------------------------------
    def __repr__(self):
        return '<%s %s>' % (self.__class__.__name__, self.name)

    #--------------------------------------------------------------------------
    @property
    def name(self):
        return ' '.join([self.app_name] + [str(a) for a in self.arguments])

    #--------------------------------------------------------------------------
    @property
    def complex(self):
        return self.complex_file.complex

    #--------------------------------------------------------------------------
    @property
    def limits(self):
        return self.config.limits

    #--------------------------------------------------------------------------
    @classmethod
    def parse_arguments(cls, words):
        """integers for the words following the check name"""
        least = len(cls.required_arguments)
        most = least + len(cls.optional_arguments)
        if not least <= len(words) <= most:
            names = list(cls.required_arguments) + [
                '[%s]' % name for name in cls.optional_arguments
            ]
            raise CheckArgumentError(
                'usage: %s' % ' '.join([cls.app_name] + names)
            )
        try:
            return tuple(int(word) for word in words)
        except ValueError:
            raise CheckArgumentError(
                '%s takes integer arguments, got %r' % (cls.app_name, words)
            )

    #--------------------------------------------------------------------------
    def main(self, function=None):
        if not function:
            function = self._run_proxy
        return function()

    #--------------------------------------------------------------------------
    def _run_proxy(self, *args, **kwargs):
        """mixins replace this to hand resources to 'run'"""
        return self.run(*args, **kwargs)

    #--------------------------------------------------------------------------
    def run(self, *args, **kwargs):  # pragma: no cover
        raise NotImplementedError(
            "A definition of 'run' in a derived class is required"
        )
