#! /usr/bin/env python
# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
Runs an App class under configman: the configuration comes from config
files, the environment and the command line, a stderr logger travels as
``config.logger`` and whatever the app's ``main`` returns becomes the
process exit code.
"""

import functools
import logging
import os
import sys
import threading

from configman import (
    ConfigurationManager,
    ConfigFileFutureProxy,
    Namespace,
    RequiredConfig,
    command_line,
)
from configman.config_exceptions import NotAnOptionError, OptionError
from configman.converters import CannotConvertError
from configman.dotdict import DotDictWithAcquisition

environment = DotDictWithAcquisition(os.environ)
environment.always_ignore_mismatches = True

USAGE_EXIT_CODE = 64
CONFIG_PATH_VARIABLE = 'DEFAULT_FLAGCHECK_CONFIG_PATH'
DEFAULT_CONFIG_PATH = './config'
APP_DETAILS = ('app_name', 'app_version', 'app_description')


#==============================================================================
class AppDetailMissingError(AttributeError):
    pass


#==============================================================================
class App(RequiredConfig):
    """a runnable application: name it with app_name, app_version and
    app_description, declare required_config and override main"""

    def __init__(self, config):
        self.config = config

    def main(self):  # pragma: no cover
        raise NotImplementedError(
            '%s does not define main' % self.__class__.__name__
        )


#------------------------------------------------------------------------------
def logging_required_config(app_name):
    lc = Namespace()
    lc.namespace('logging')
    lc.logging.add_option(
        'stderr_line_format_string',
        doc='format of a stderr log line, with {}-style fields of a '
            'logging record ({app_name} is replaced by the app name)',
        default='%s: {asctime} {levelname} - {message}' % app_name,
        reference_value_from='resource.logging',
    )
    lc.logging.add_option(
        'stderr_error_logging_level',
        doc='lowest level logged to stderr (10 - DEBUG, 20 - INFO, '
            '30 - WARNING, 40 - ERROR, 50 - CRITICAL)',
        default=20,
        reference_value_from='resource.logging',
    )
    return lc


#==============================================================================
class ThreadTaggingLogger(object):
    """forwards to a logging.Logger, tagging each message with the name of
    the thread that issued it; checks log from executor threads"""

    def __init__(self, logger):
        self.logger = logger

    def log(self, level, message, *args, **kwargs):
        tagged = ' - %s - %s' % (threading.current_thread().name, message)
        self.logger.log(level, tagged, *args, **kwargs)

    debug = functools.partialmethod(log, logging.DEBUG)
    info = functools.partialmethod(log, logging.INFO)
    warning = functools.partialmethod(log, logging.WARNING)
    error = functools.partialmethod(log, logging.ERROR)
    critical = functools.partialmethod(log, logging.CRITICAL)


#------------------------------------------------------------------------------
def setup_logger(app_name, config, local_config, args):
    """the 'logger' aggregation: a stderr-only logger named after the app.
    Reports may be written to stdout, log lines never are."""
    tear_down_logger(app_name)
    logger = logging.getLogger(app_name)
    logger.setLevel(logging.DEBUG)
    line_format = config.logging.stderr_line_format_string.replace(
        '{app_name}', app_name
    )
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(config.logging.stderr_error_logging_level)
    handler.setFormatter(logging.Formatter(line_format, style='{'))
    logger.addHandler(handler)
    return ThreadTaggingLogger(logger)


#------------------------------------------------------------------------------
def tear_down_logger(app_name):
    logger = logging.getLogger(app_name)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)


#------------------------------------------------------------------------------
def app_details(app_class):
    """(app_name, app_version, app_description) of an App class"""
    try:
        return tuple(getattr(app_class, name) for name in APP_DETAILS)
    except AttributeError as x:
        raise AppDetailMissingError(x)


#------------------------------------------------------------------------------
def config_path_from_environment():
    path = os.environ.get(CONFIG_PATH_VARIABLE)
    if path is None:
        return DEFAULT_CONFIG_PATH
    # set explicitly, so it has to exist
    if not os.path.isdir(path):
        raise IOError(
            '%s=%s is not a directory' % (CONFIG_PATH_VARIABLE, path)
        )
    return path


#------------------------------------------------------------------------------
def main(
    app_class,
    values_source_list=None,
    config_path=None,
    config_manager_cls=ConfigurationManager
):
    """configure app_class, run its main and return the exit code"""
    app_name, app_version, app_description = app_details(app_class)
    if values_source_list is None:
        values_source_list = [
            ConfigFileFutureProxy,
            environment,
            command_line,
        ]
    if config_path is None:
        config_path = config_path_from_environment()

    runtime = Namespace()
    runtime.add_aggregation(
        'logger',
        functools.partial(setup_logger, app_name)
    )
    definitions = (
        app_class.get_required_config(),
        logging_required_config(app_name),
        runtime,
    )

    try:
        config_manager = config_manager_cls(
            definitions,
            app_name=app_name,
            app_version=app_version,
            app_description=app_description,
            values_source_list=values_source_list,
            config_pathname=config_path
        )
    except (NotAnOptionError, OptionError, CannotConvertError) as x:
        print('%s: %s' % (app_name, x), file=sys.stderr)
        return USAGE_EXIT_CODE

    with config_manager.context() as config:
        config_manager.log_config(config.logger)
        code = app_class(config).main()
        config.logger.debug('%s done', app_name)
    # an app returning nothing succeeded
    return 0 if code is None else code
