#!/usr/bin/env python
# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted

from . import TestBase
import unittest
from neurogrow import (ConfigError, DistributorKind, ExperimentConfig,
                       ExtenderKind)
from neurogrow.config import DEFAULTS, schedule_widths

import numpy as np


class TestConfig(TestBase.TestBase):
    """Test configuration files and validation."""

    def testDefaults(self):
        config = ExperimentConfig().validate()
        self.assertEqual(config.hidden_widths, [16])
        self.assertEqual(config.n_stages, 7)
        self.assertEqual(config.growth_fraction, 0.3)
        self.assertEqual(config.extender, ExtenderKind.SWE)
        self.assertEqual(config.seeds, [0, 1, 2, 3, 4])
        self.assertEqual(sorted(config.toDict()), sorted(DEFAULTS))
        self.assertEqual(config.effectiveAdjustLr(), config.lr)

    def testFromFile(self):
        path = self.str2file('grow.toml', '\n'.join([
            'dataset = "MNIST"',
            'task = "reconstruction"',
            'hidden_widths = [20, 10]',
            'extender = "random"',
            'seeds = 3',
            'adjust_lr = 0.01',
        ]))
        config = ExperimentConfig.fromFile(path).validate()
        self.assertEqual(config.dataset, 'mnist')
        self.assertEqual(config.hidden_widths, [20, 10])
        self.assertEqual(config.extender, ExtenderKind.KAIMING)
        self.assertEqual(config.seeds, [3])
        self.assertEqual(config.effectiveAdjustLr(), 0.01)

    def testFileErrors(self):
        with self.assertRaises(ConfigError) as cm:
            ExperimentConfig.fromFile(self.tmpfile('missing.toml'))
        self.assertEqual(cm.exception.getSourceName(),
                         self.tmpfile('missing.toml'))
        path = self.str2file('bad.toml', 'n_stages = = 3\n')
        with self.assertRaises(ConfigError):
            ExperimentConfig.fromFile(path)
        path = self.str2file('unknown.toml', 'n_stage = 3\n')
        with self.assertRaises(ConfigError) as cm:
            ExperimentConfig.fromFile(path)
        self.assertIn('n_stage', cm.exception.getMessage())

    def testValidate(self):
        bad = [
            dict(dataset='cifar'),
            dict(hidden_widths=[]),
            dict(hidden_widths=[4, 0]),
            dict(growth_fraction=0.0),
            dict(n_stages=-1),
            dict(distributor='single_layer', hidden_widths=[4, 4]),
            dict(lr=0.0),
            dict(val_fraction=1.0),
            dict(seeds=[]),
            dict(pool_factor=0),
        ]
        for values in bad:
            with self.assertRaises(ConfigError):
                ExperimentConfig(**values).validate()
        with self.assertRaises(ConfigError):
            ExperimentConfig(extender='net2net')
        with self.assertRaises(ConfigError):
            ExperimentConfig(seeds=['a'])
        with self.assertRaises(ConfigError):
            ExperimentConfig(hidden_widths=[4, 4]).validateInactivity()
        ExperimentConfig(hidden_widths=[4]).validateInactivity()

    def testDistributorSpellings(self):
        for name in ('single', 'single_layer', 'singlelayer', 'SingleLayer',
                     ' Single-Layer '):
            config = ExperimentConfig(distributor=name, hidden_widths=[4])
            self.assertEqual(config.validate().distributor,
                             DistributorKind.SINGLE_LAYER)
        self.assertEqual(ExperimentConfig(distributor='SVoD').distributor,
                         DistributorKind.SVOD)
        with self.assertRaises(ConfigError) as cm:
            ExperimentConfig(distributor='greedy')
        self.assertIn('greedy', cm.exception.getMessage())

    def testNumericTypes(self):
        for values in (dict(lr='fast'), dict(batch_size='64'),
                       dict(n_stages=2.5), dict(growth_fraction=None),
                       dict(max_epochs_per_stage=True),
                       dict(adjust_lr='0.1'), dict(hidden_widths=['8']),
                       dict(static_baseline='yes'),
                       dict(blobs_centered=1)):
            with self.assertRaises(ConfigError):
                ExperimentConfig(**values)
        config = ExperimentConfig(lr=1, batch_size=32.0, adjust_lr=None,
                                  val_fraction=np.float32(0.25))
        self.assertIsInstance(config.lr, float)
        self.assertIsInstance(config.batch_size, int)
        self.assertEqual(config.batch_size, 32)
        self.assertIsNone(config.adjust_lr)
        self.assertAlmostEqual(config.val_fraction, 0.25)
        path = self.str2file('fast.toml', 'lr = "fast"\n')
        with self.assertRaises(ConfigError) as cm:
            ExperimentConfig.fromFile(path)
        self.assertIn('lr', cm.exception.getMessage())
        self.assertEqual(cm.exception.getSourceName(), path)

    def testHashAndOverrides(self):
        a = ExperimentConfig(n_stages=2)
        b = ExperimentConfig.fromDict(a.toDict())
        self.assertEqual(a.configHash(), b.configHash())
        c = a.withOverrides(seeds=[7], out_dir=None)
        self.assertEqual(c.seeds, [7])
        self.assertEqual(c.out_dir, a.out_dir)
        self.assertNotEqual(a.configHash(), c.configHash())
        self.assertEqual(a.seeds, [0, 1, 2, 3, 4])

    def testScheduleWidths(self):
        self.assertEqual(schedule_widths(16, 7, 0.3),
                         [16, 21, 28, 37, 49, 64, 84, 110])
        self.assertEqual(schedule_widths(5, 0, 0.3), [5])
        self.assertEqual(schedule_widths(1, 2, 0.01), [1, 2, 3])


if __name__ == '__main__':
    unittest.main()
