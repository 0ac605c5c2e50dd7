# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted


class NeuroGrowException(Exception):
    """
    Represent an error detected by the growing engine. Format errors carry the
    name of the offending file and the byte offset where parsing stopped.
    """
    def __init__(self, message, sourceName=None, offset=None):
        Exception.__init__(self, message)
        self.message = message
        self.sourceName = sourceName
        self.offset = offset

    def getSourceName(self):
        """
        Get the name of the file where the error was detected, if any.
        """
        return self.sourceName

    def getOffset(self):
        """
        Get the byte offset where the error is located, if any.
        """
        return self.offset

    def getMessage(self):
        """
        Get the error message.
        """
        return self.message

    def __str__(self):
        parts = []
        if self.sourceName is not None:
            parts.append(str(self.sourceName))
        if self.offset is not None:
            parts.append('offset {}'.format(self.offset))
        if parts:
            return '{}: {}'.format(', '.join(parts), self.message)
        return self.message


class DimensionError(NeuroGrowException):
    """Shapes of matrices, batches or layers do not agree."""


class InputError(NeuroGrowException):
    """An argument is outside the domain of the operation."""


class ConsistencyError(NeuroGrowException):
    """Two related objects (trace and network, plan and network) disagree."""


class NumericalError(NeuroGrowException):
    """A non-finite value was produced or received."""


class FormatError(NeuroGrowException):
    """A file does not follow the expected binary layout."""


class DegenerateInputError(NeuroGrowException):
    """The input makes the operation undefined (e.g. a zero norm)."""


class SizeError(NeuroGrowException):
    """The input exceeds a size guard."""


class ConfigError(NeuroGrowException):
    """The experiment configuration is invalid or cannot be read."""


class InactivityWarning(NeuroGrowException):
    """Newly inserted neurons produced no positive activation."""


class ConvergenceWarning(NeuroGrowException):
    """Training stopped at the epoch limit before the patience ran out."""
