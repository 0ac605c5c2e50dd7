# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted


class OutputHandler(object):
    """
    Implement this interface to handle the progress messages produced while
    training, expanding and reporting.

    Note that errors and warnings are not passed through this interface,
    see :class:`~neurogrow.ErrorHandler` for more information.
    """

    def output(self, kind, msg):
        """
         This method is called when the engine produces a message.

         Args:
            kind: kind of the message (see :class:`~neurogrow.Kind`).

            msg: text of the message.
        """
        print(msg)


class NullOutputHandler(OutputHandler):
    """
    Output handler that discards every message.
    """

    def output(self, kind, msg):
        pass


class Kind(object):
    """
    Represents the type of a progress message.
    """

    EPOCH = 'epoch'
    """
    Output of one training epoch (loss and, for classification, accuracy).
    """

    STAGE = 'stage'
    """
    Summary of one growth stage.
    """

    EXPAND = 'expand'
    """
    Output of an extender (layer widths, adjustment pass statistics).
    """

    PLAN = 'plan'
    """
    Per-layer allocation produced by a distributor.
    """

    EVAL = 'eval'
    """
    Evaluation result on a dataset split.
    """

    REPORT = 'report'
    """
    Files written and table-style summaries.
    """

    GRADCHECK = 'gradcheck'
    """
    Finite-difference gradient verification results.
    """

    DATA = 'data'
    """
    Dataset loading and splitting.
    """


def emit(handler, kind, msg, *args):
    """
    Format ``msg`` with ``args`` and forward it to ``handler`` when set.
    """
    if handler is None:
        return
    if args:
        msg = msg.format(*args)
    handler.output(kind, msg)
