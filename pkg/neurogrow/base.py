# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted


class BaseClass(object):
    def toString(self):
        return '<{}>'.format(type(self).__name__)

    def __str__(self):
        return self.toString()

    def __repr__(self):
        return self.toString()
