# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

from configman import RequiredConfig, class_converter

from flagcheck.executor import PoolExecutor, SerialExecutor


#==============================================================================
#  mixin decorators
#
#  the functions found in this section modify apps and checks by adding
#  features and/or behaviors instead of using multiple inheritance.
#==============================================================================
def with_executor(resource_name='executor'):
    """a class decorator for flagcheck apps.  Configuration is set up as

        config.{resource_name}.executor_class
        config.{resource_name}.jobs

    and the instance gets `self.{resource_name}`, an executor built from
    that namespace.  Asking for more than one job with the serial default
    switches to the process pool.
    """
    def class_decorator(cls):
        if not issubclass(cls, RequiredConfig):
            raise Exception(
                '%s must have RequiredConfig as a base class' % cls
            )
        new_req = cls.get_required_config()
        new_req.namespace(resource_name)
        new_req[resource_name].add_option(
            'executor_class',
            default='flagcheck.executor.SerialExecutor',
            doc='a class that runs batches of independent work items',
            from_string_converter=class_converter,
        )
        new_req[resource_name].add_option(
            'jobs',
            default=1,
            doc='number of worker processes',
        )
        cls.required_config = new_req

        #----------------------------------------------------------------------
        def new__init__(self, *args, **kwargs):
            section = self.config[resource_name]
            executor_class = section.executor_class
            if section.jobs > 1 and executor_class is SerialExecutor:
                executor_class = PoolExecutor
            setattr(self, resource_name, executor_class(section))

        if hasattr(cls, '__init__'):
            original_init = cls.__init__

            def both_inits(self, *args, **kwargs):
                original_init(self, *args, **kwargs)
                return new__init__(self, *args, **kwargs)
            cls.__init__ = both_inits
        else:
            cls.__init__ = new__init__
        return cls
    return class_decorator


#==============================================================================
def with_executor_as_argument(cls):
    """a class decorator for checks.  It gives the check a _run_proxy that
    passes the executor handed to the check into its 'run' method, the
    serial default when it was given none."""
    def _run_proxy(self, *args, **kwargs):
        executor = self.executor
        if executor is None:
            executor = SerialExecutor(self.config)
        return self.run(executor, *args, **kwargs)
    cls._run_proxy = _run_proxy
    return cls


#==============================================================================
def with_limits(*names):
    """a class decorator for checks: `self.limit_arguments()` returns the
    named options of the `limits` namespace as keyword arguments"""
    keywords = {
        'budget': 'area_budget',
        'search_limit': 'search_limit',
        'cycle_cap': 'cycle_cap',
        'clique_cap': 'clique_cap',
        'delta_cap': 'cap',
    }

    def class_decorator(cls):
        def limit_arguments(self):
            return dict(
                (keywords[name], self.config.limits[name]) for name in names
            )
        cls.limit_arguments = limit_arguments
        cls.limit_names = names
        return cls
    return class_decorator
