# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

import unittest

import mock
from nose.tools import eq_, ok_, assert_raises

from configman import ConfigurationManager, Namespace, RequiredConfig

from flagcheck.base import BaseCheck
import flagcheck.mixins as fcm
from flagcheck.executor import PoolExecutor, SerialExecutor
from flagcheck.generic_app import environment

from flagcheck.tests.base import limits_config


class TestMixins(unittest.TestCase):

    def _config_for(self, cls, values=None):
        cm = ConfigurationManager(
            definition_source=[cls.get_required_config(), ],
            values_source_list=[environment, values or {}],
            argv_source=[],
        )
        return cm.get_config()

    def test_with_executor(self):
        @fcm.with_executor()
        class Alpha(RequiredConfig):
            def __init__(self, config):
                self.config = config
        alpha_required = Alpha.get_required_config()
        ok_(isinstance(alpha_required, Namespace))
        ok_('executor' in alpha_required)
        ok_('executor_class' in alpha_required.executor)
        ok_('jobs' in alpha_required.executor)
        a = Alpha(self._config_for(Alpha))
        ok_(isinstance(a.executor, SerialExecutor))
        ok_(not isinstance(a.executor, PoolExecutor))

    def test_more_jobs_switch_to_the_pool(self):
        @fcm.with_executor('workers')
        class Alpha(RequiredConfig):
            def __init__(self, config):
                self.config = config
        config = self._config_for(Alpha, {'workers.jobs': 3})
        a = Alpha(config)
        ok_(isinstance(a.workers, PoolExecutor))
        eq_(a.workers.jobs, 3)

    def test_needs_required_config(self):
        class Alpha(object):
            pass
        assert_raises(Exception, fcm.with_executor(), Alpha)

    def test_no_over_propagation(self):
        @fcm.with_executor()
        class Alpha(RequiredConfig):
            required_config = Namespace()
            required_config.add_option('a', default=0)

        @fcm.with_executor('workers')
        class Beta(RequiredConfig):
            required_config = Namespace()
            required_config.add_option('a', default=0)

        ok_('executor' in Alpha.get_required_config())
        ok_('workers' not in Alpha.get_required_config())
        ok_('executor' not in Beta.get_required_config())
        ok_('workers' in Beta.get_required_config())

    def test_with_executor_as_argument(self):
        @fcm.with_executor_as_argument
        class Alpha(BaseCheck):
            app_name = 'alpha'

            def run(self, executor):
                return executor
        executor = mock.Mock()
        a = Alpha(limits_config(), None, executor=executor)
        ok_(a.main() is executor)
        b = Alpha(limits_config(), None)
        ok_(isinstance(b.main(), SerialExecutor))

    def test_with_limits(self):
        @fcm.with_limits('budget', 'delta_cap', 'cycle_cap')
        class Alpha(BaseCheck):
            app_name = 'alpha'

            def run(self):
                return self.limit_arguments()
        eq_(Alpha.limit_names, ('budget', 'delta_cap', 'cycle_cap'))
        a = Alpha(limits_config(budget=5), None)
        eq_(a.main(), {'area_budget': 5, 'cap': 400, 'cycle_cap': 12})
