#!/usr/bin/env python
# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted

from . import TestBase
import unittest
from neurogrow import (FormatError, Head, forward, kaiming_extend,
                       load_network, save_network)

import numpy as np


class TestSerialization(TestBase.TestBase):
    """Test the binary network container."""

    def grownNet(self):
        rng = np.random.default_rng(0)
        net = self.randomNet(rng, 4, (5, 3), 2, Head.SOFTMAX)
        return kaiming_extend(net, 1, 2, rng, stage=3)

    def testSaveLoad(self):
        net = self.grownNet()
        path = self.tmpfile('net.ngrow')
        save_network(net, path)
        loaded = load_network(path)
        self.assertEqual(loaded.head, Head.SOFTMAX)
        self.assertEqual(loaded.hiddenWidths(), [5, 5])
        for a, b in zip(net.parameters(), loaded.parameters()):
            self.assertTrue(np.array_equal(a, b))
        self.assertEqual(list(loaded.layers[1].birthStages()),
                         [0, 0, 0, 3, 3])
        X = np.random.default_rng(1).uniform(size=(6, 4))
        self.assertTrue(np.array_equal(forward(net, X).output,
                                       forward(loaded, X).output))

    def testBadMagic(self):
        path = self.tmpfile('net.ngrow')
        save_network(self.grownNet(), path)
        with open(path, 'rb') as f:
            raw = f.read()
        with open(path, 'wb') as f:
            f.write(b'XGROW1' + raw[6:])
        with self.assertRaises(FormatError) as cm:
            load_network(path)
        self.assertEqual(cm.exception.getOffset(), 0)

    def testTruncatedAndTrailing(self):
        path = self.tmpfile('net.ngrow')
        save_network(self.grownNet(), path)
        with open(path, 'rb') as f:
            raw = f.read()
        for cut in (3, 10, len(raw) - 1):
            with open(path, 'wb') as f:
                f.write(raw[:cut])
            with self.assertRaises(FormatError):
                load_network(path)
        with open(path, 'wb') as f:
            f.write(raw + b'\x00')
        with self.assertRaises(FormatError):
            load_network(path)

    def testUnknownVersion(self):
        path = self.tmpfile('net.ngrow')
        save_network(self.grownNet(), path)
        with open(path, 'rb') as f:
            raw = f.read()
        with open(path, 'wb') as f:
            f.write(raw[:6] + b'\x02\x00' + raw[8:])
        with self.assertRaises(FormatError):
            load_network(path)


if __name__ == '__main__':
    unittest.main()
