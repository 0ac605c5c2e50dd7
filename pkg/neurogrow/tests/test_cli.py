#!/usr/bin/env python
# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted

from . import TestBase
import unittest
import os
from neurogrow import (CollectingErrorHandler, Environment, Head, Kind,
                       Network, OutputHandler, save_network)
from neurogrow.cli import EXIT_CONFIG, EXIT_OK, EXIT_RUNTIME, main

TINY = '\n'.join([
    'hidden_widths = [4]',
    'n_stages = 1',
    'seeds = [0, 1]',
    'max_epochs_per_stage = 2',
    'batch_size = 16',
    'lr = 0.01',
    'blobs_classes = 3',
    'blobs_per_class = 20',
    'blobs_dim = 4',
])


class RecordingOutputHandler(OutputHandler):
    def __init__(self):
        self.messages = []

    def output(self, kind, msg):
        self.messages.append((kind, msg))

    def kinds(self):
        return set(kind for kind, _ in self.messages)


class TestCli(TestBase.TestBase):
    """Test the command line interface."""

    def call(self, argv, out=None):
        return main(argv, out or self.output, CollectingErrorHandler(),
                    Environment(variables={}))

    def testGradcheck(self):
        out = RecordingOutputHandler()
        self.assertEqual(self.call(['gradcheck', '--nets', '5'], out),
                         EXIT_OK)
        self.assertIn(Kind.GRADCHECK, out.kinds())

    def testUsageErrors(self):
        self.assertEqual(self.call([]), EXIT_CONFIG)
        self.assertEqual(self.call(['shrink']), EXIT_CONFIG)
        self.assertEqual(self.call(['gradcheck', '--nets', 'many']),
                         EXIT_CONFIG)

    def testConfigErrors(self):
        missing = self.tmpfile('missing.toml')
        self.assertEqual(self.call(['grow', '--config', missing]),
                         EXIT_CONFIG)
        bad = self.str2file('bad.toml', 'n_stages = -2\n')
        self.assertEqual(self.call(['grow', '--config', bad]), EXIT_CONFIG)
        multi = self.str2file('multi.toml', 'hidden_widths = [3, 3]\n')
        self.assertEqual(self.call(['inactivity', '--config', multi]),
                         EXIT_CONFIG)

    def testConfigTypeErrors(self):
        fast = self.str2file('fast.toml', TINY.replace('lr = 0.01',
                                                       'lr = "fast"'))
        self.assertEqual(self.call(['grow', '--config', fast]), EXIT_CONFIG)
        flag = self.str2file('flag.toml', 'batch_size = true\n')
        self.assertEqual(self.call(['grow', '--config', flag]), EXIT_CONFIG)
        single = self.str2file('single.toml', '\n'.join([
            TINY, 'distributor = "SingleLayer"']))
        self.assertEqual(self.call(['grow', '--config', single,
                                    '--out', self.tmpfile('single')]),
                         EXIT_OK)

    def testMissingDataset(self):
        config = self.str2file('mnist.toml', 'dataset = "mnist"\n')
        self.assertEqual(self.call(['grow', '--config', config]),
                         EXIT_CONFIG)

    def testGrow(self):
        config = self.str2file('tiny.toml', TINY)
        out_dir = self.tmpfile('run')
        out = RecordingOutputHandler()
        status = self.call(['--config', config, 'grow', '--seed', '3',
                            '--out', out_dir], out)
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(sorted(os.listdir(out_dir)),
                         ['network_seed3.ngrow', 'stages.csv',
                          'summary.json'])
        self.assertIn(Kind.REPORT, out.kinds())
        self.assertIn(Kind.STAGE, out.kinds())

    def testInactivity(self):
        config = self.str2file('study.toml', '\n'.join([
            TINY, 'inactivity_widths = [3]',
            'inactivity_extenders = ["random", "swe"]',
            'inactivity_epochs = 1']))
        out_dir = self.tmpfile('study')
        self.assertEqual(self.call(['inactivity', '--config', config,
                                    '--out', out_dir]), EXIT_OK)
        self.assertTrue(os.path.isfile(os.path.join(out_dir,
                                                    'inactivity.csv')))

    def testEvalAndAudit(self):
        config = self.str2file('tiny.toml', TINY)
        path = self.tmpfile('net.ngrow')
        save_network(Network.build(4, [5], 3, 0, Head.SOFTMAX), path)
        out = RecordingOutputHandler()
        self.assertEqual(self.call(['eval', path, '--config', config], out),
                         EXIT_OK)
        self.assertIn('blobs-test', out.messages[-1][1])
        self.assertEqual(self.call(['audit', path, '--config', config,
                                    '--stage', '0'], out), EXIT_OK)
        wrong = self.tmpfile('wrong.ngrow')
        save_network(Network.build(7, [5], 3, 0, Head.SOFTMAX), wrong)
        self.assertEqual(self.call(['eval', wrong, '--config', config]),
                         EXIT_RUNTIME)
        self.assertEqual(self.call(['eval', self.tmpfile('none.ngrow'),
                                    '--config', config]), EXIT_RUNTIME)


if __name__ == '__main__':
    unittest.main()
