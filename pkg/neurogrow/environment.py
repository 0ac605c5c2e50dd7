# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted
import os

from .base import BaseClass

DATA_DIR_VARIABLE = 'NEUROGROW_DATA'


class Environment(BaseClass):
    """
    This class provides access to the environment variables and to the
    directory where the image datasets are looked up.
    """

    def __init__(self, dataDirectory=None, variables=None):
        """
        Constructor with ability to select the dataset directory.
        Note that if dataDirectory is set, the ``NEUROGROW_DATA`` variable
        is ignored.

        Args:
            dataDirectory: The directory holding ``mnist/`` and ``fmnist/``.

            variables: Mapping used instead of the process environment.
        """
        self._vars = dict(os.environ if variables is None else variables)
        self._dataDir = dataDirectory

    def __iter__(self):
        return iter(sorted(self._vars.items()))

    def __setitem__(self, name, value):
        """
        Add an environment variable to the environment, or change its value if
        already defined.

        Args:
            name: Name of the environment variable.

            value: Value to be assigned.
        """
        self._vars[name] = str(value)

    def __getitem__(self, name):
        """
        Get the value of the environment variable called name, or `None` if it
        is not defined.
        """
        return self._vars.get(name)

    def setDataDir(self, dataDirectory):
        """
        Set the directory where datasets are searched.
        """
        self._dataDir = dataDirectory

    def getDataDir(self):
        """
        Get the directory where datasets are searched: the one set explicitly,
        otherwise the value of ``NEUROGROW_DATA``, otherwise `None`.
        """
        if self._dataDir:
            return self._dataDir
        return self._vars.get(DATA_DIR_VARIABLE) or None

    def toString(self):
        return 'Environment(dataDir={!r})'.format(self.getDataDir())
