#!/usr/bin/env python
# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted

import unittest
import neurogrow
import os


class TestEnvironment(unittest.TestCase):
    """Test Environment."""

    def testEnvironment(self):
        from neurogrow import Environment, Experiment
        env1 = Environment()
        env2 = Environment(os.curdir)
        self.assertEqual(env2.getDataDir(), os.curdir)
        env1.setDataDir(env2.getDataDir())
        self.assertEqual(env1.getDataDir(), os.curdir)
        self.assertEqual(len(dict(env1)), len(list(env1)))
        self.assertEqual(list(sorted(dict(env1).items())), list(env1))
        env1['MyEnvVar'] = 'TEST'
        self.assertEqual(env1['MyEnvVar'], 'TEST')
        self.assertEqual(env2['MyEnvVar'], None)
        d = dict(env1)
        self.assertEqual(d['MyEnvVar'], 'TEST')
        experiment = Experiment(env2)
        self.assertIs(experiment.getEnvironment(), env2)

    def testDataDirVariable(self):
        from neurogrow import Environment
        env = Environment(variables={'NEUROGROW_DATA': '/data/images'})
        self.assertEqual(env.getDataDir(), '/data/images')
        env.setDataDir('/elsewhere')
        self.assertEqual(env.getDataDir(), '/elsewhere')
        self.assertIsNone(Environment(variables={}).getDataDir())
        self.assertIn('/data/images', Environment(
            variables={'NEUROGROW_DATA': '/data/images'}).toString())


if __name__ == '__main__':
    unittest.main()
