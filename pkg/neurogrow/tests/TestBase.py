#!/usr/bin/env python
# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted

from .context import neurogrow
import unittest
import tempfile
import shutil
import os

import numpy as np


class TestBase(unittest.TestCase):
    def setUp(self):
        self.output = neurogrow.NullOutputHandler()
        self.dirpath = tempfile.mkdtemp()

    def str2file(self, filename, content):
        fullpath = self.tmpfile(filename)
        with open(fullpath, 'w') as f:
            print(content, file=f)
        return fullpath

    def tmpfile(self, filename):
        return os.path.join(self.dirpath, filename)

    def tearDown(self):
        shutil.rmtree(self.dirpath)

    def randomNet(self, rng, n_in=4, widths=(5,), n_out=3,
                  head=neurogrow.Head.IDENTITY, bias_scale=0.1):
        net = neurogrow.Network.build(n_in, list(widths), n_out, rng, head)
        for layer in net.layers:
            layer.biases += rng.normal(0.0, bias_scale,
                                       size=layer.biases.shape)
        return net

    def blobs(self, n_classes=3, n_per_class=20, dim=4, seed=0):
        return neurogrow.synthetic_blobs(n_classes, n_per_class, dim, 0.3,
                                         seed)


if __name__ == '__main__':
    unittest.main()
