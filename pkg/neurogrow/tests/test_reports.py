#!/usr/bin/env python
# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted

from . import TestBase
import unittest
import json
import os
from neurogrow import (CollectingErrorHandler, ExperimentConfig,
                       emit_reports, load_network, run_growth_experiment,
                       run_inactivity_study, summarize, text_summary)

import numpy as np
import pandas as pd


def tiny_config(**kwargs):
    values = dict(hidden_widths=[4], n_stages=2, seeds=[0, 1],
                  max_epochs_per_stage=2, early_stop_patience=2,
                  batch_size=16, lr=1e-2, blobs_classes=3,
                  blobs_per_class=20, blobs_dim=4)
    values.update(kwargs)
    return ExperimentConfig(**values)


class TestReports(TestBase.TestBase):
    """Test the report files."""

    def testGrowthReports(self):
        report = run_growth_experiment(tiny_config(static_baseline=True),
                                       self.output, CollectingErrorHandler())
        written = emit_reports(report, self.tmpfile('out'), self.output)
        names = sorted(os.path.basename(p) for p in written)
        self.assertEqual(names, ['baseline.csv', 'network_seed0.ngrow',
                                 'network_seed1.ngrow', 'stages.csv',
                                 'summary.json'])
        stages = pd.read_csv(self.tmpfile(os.path.join('out', 'stages.csv')))
        self.assertEqual(len(stages), 6)
        with open(self.tmpfile(os.path.join('out', 'summary.json'))) as f:
            summary = json.load(f)
        self.assertEqual(summary['kind'], 'growth')
        self.assertEqual(summary['config_hash'], report.config_hash)
        self.assertEqual(summary['schedule'], [4, 6, 8])
        self.assertEqual(summary['static_baseline']['n_seeds'], 2)
        for row in summary['stages']:
            part = stages[stages['stage'] == row['stage']]
            self.assertEqual(row['n_seeds'], 2)
            for column in ('test_loss', 'total_width_after', 'epochs'):
                self.assertAlmostEqual(row[column + '_mean'],
                                       part[column].mean(), delta=1e-12)
                self.assertAlmostEqual(row[column + '_std'],
                                       part[column].std(ddof=1), delta=1e-12)
        net = load_network(self.tmpfile(os.path.join(
            'out', 'network_seed1.ngrow')))
        self.assertEqual(net.hiddenWidths(),
                         report.networks[1].hiddenWidths())
        text = text_summary(report)
        self.assertIn('swe/svod', text)
        self.assertIn('static', text)

    def testSingleSeedHasZeroStd(self):
        report = run_growth_experiment(
            tiny_config(seeds=[4], n_stages=1, task='reconstruction'),
            self.output, CollectingErrorHandler())
        summary = summarize(report)
        for row in summary['stages']:
            self.assertEqual(row['test_loss_std'], 0.0)
            self.assertNotIn('test_accuracy_mean', row)
        json.dumps(summary)
        self.assertNotIn('test accuracy', text_summary(report).split('\n')[1])

    def testInactivityReports(self):
        config = tiny_config(hidden_widths=[3], inactivity_widths=[3],
                             inactivity_extenders=['kaiming', 'swe'],
                             inactivity_epochs=1, seeds=[0, 1])
        report = run_inactivity_study(config, self.output,
                                      CollectingErrorHandler())
        written = emit_reports(report, self.tmpfile('study'))
        self.assertEqual(sorted(os.path.basename(p) for p in written),
                         ['inactivity.csv', 'summary.json'])
        frame = pd.read_csv(written[0])
        self.assertEqual(len(frame), 4)
        summary = summarize(report)
        self.assertEqual(len(summary['inactivity']), 2)
        for row in summary['inactivity']:
            part = frame[frame['extender'] == row['extender']]
            self.assertAlmostEqual(row['inactive_new_pct_mean'],
                                   part['inactive_new_pct'].mean(),
                                   delta=1e-12)
        lines = text_summary(report).split('\n')
        self.assertEqual(len(lines), 3)
        self.assertTrue(np.all(frame['new_total'] == 3))


if __name__ == '__main__':
    unittest.main()
