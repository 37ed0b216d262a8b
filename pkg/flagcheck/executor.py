# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

import concurrent.futures
import os
from concurrent.futures.process import BrokenProcessPool

from configman.config_manager import RequiredConfig
from configman import Namespace


#------------------------------------------------------------------------------
def serial_map(function, items):
    """the executor used when a library call is given none"""
    return [function(item) for item in items]


#------------------------------------------------------------------------------
def run_all(executor, function, items):
    if executor is None:
        return serial_map(function, items)
    return executor(function, items)


#------------------------------------------------------------------------------
def _option(config, name, default=None):
    # configman's DotDict raises KeyError for a missing key
    if config is None:
        return default
    try:
        return getattr(config, name)
    except (AttributeError, KeyError):
        return default


#==============================================================================
class SerialExecutor(RequiredConfig):
    """run work items one after the other in the calling process"""
    required_config = Namespace()

    #--------------------------------------------------------------------------
    def __init__(self, config=None, quit_check_callback=None):
        self.config = config
        self.quit_check = quit_check_callback or (lambda: False)

    #--------------------------------------------------------------------------
    def _log(self, level, message, *args, **kwargs):
        logger = _option(self.config, 'logger')
        if logger is not None:
            getattr(logger, level)(message, *args, **kwargs)

    #--------------------------------------------------------------------------
    def __call__(self, function, items):
        """apply function to every item, results in input order"""
        items = list(items)
        self.quit_check()
        try:
            return serial_map(function, items)
        except BaseException:
            self._log(
                'error',
                'Exception raised while running %d work items',
                len(items),
                exc_info=True
            )
            raise


#==============================================================================
class PoolExecutor(SerialExecutor):
    """fan work items out over a pool of worker processes.

    `concurrent.futures` hands results back in submission order, so the
    merged output is the same whatever the number of workers."""
    required_config = Namespace()
    required_config.add_option(
        'chunk_size',
        default=8,
        doc='work items handed to a worker at a time',
    )

    #--------------------------------------------------------------------------
    @property
    def jobs(self):
        """the `jobs` option of the surrounding namespace, every cpu when
        it is not set"""
        jobs = _option(self.config, 'jobs')
        return max(1, jobs or os.cpu_count() or 1)

    #--------------------------------------------------------------------------
    def __call__(self, function, items):
        items = list(items)
        self.quit_check()
        if self.jobs == 1 or len(items) < 2:
            return super(PoolExecutor, self).__call__(function, items)
        chunk_size = _option(self.config, 'chunk_size', 8) or 1
        self._log(
            'debug',
            'spreading %d work items over %d processes',
            len(items),
            self.jobs
        )
        try:
            with concurrent.futures.ProcessPoolExecutor(self.jobs) as pool:
                return list(pool.map(function, items, chunksize=chunk_size))
        except BrokenProcessPool:
            self._log(
                'critical',
                'worker pool broke down, rerunning serially',
                exc_info=True
            )
            return serial_map(function, items)
        except BaseException:
            self._log(
                'error',
                'Exception raised in the worker pool',
                exc_info=True
            )
            raise
