# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted
import sys


class ErrorHandler(object):
    """
    A basic interface for error handlers. If an application needs to
    implement customised error handling, it must implement this interface and
    then register an instance with :func:`~neurogrow.Experiment.setErrorHandler`.
    Fatal problems and non-fatal diagnostics (for example newly inserted
    neurons that never fire on the adjustment data) are reported through
    this interface as :class:`~neurogrow.NeuroGrowException` objects.
    """
    def error(self, exception):
        """
        Receives notification of an error.
        """
        msg = '\t'+str(exception).replace('\n', '\n\t')
        print('Error:\n{:s}'.format(msg), file=sys.stderr)
        raise exception

    def warning(self, exception):
        """
        Receives notification of a warning.
        """
        msg = '\t'+str(exception).replace('\n', '\n\t')
        print('Warning:\n{:s}'.format(msg), file=sys.stderr)


class CollectingErrorHandler(ErrorHandler):
    """
    Error handler that keeps warnings in memory instead of printing them.
    """
    def __init__(self):
        self.warnings = []

    def warning(self, exception):
        self.warnings.append(exception)
