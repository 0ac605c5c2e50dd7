# -*- coding: utf-8 -*-
"""
Report files written by :func:`emit_reports`.

``stages.csv`` has one row per (seed, stage):

=====================  ====================================================
seed                   run seed
stage                  stage index, 0 is the initial network
widths_before          hidden widths trained in this stage, ``;``-separated
widths_after           hidden widths after the expansion closing the stage
total_width_before     sum of ``widths_before``
total_width_after      sum of ``widths_after``
plan                   neurons added per hidden layer, ``;``-separated
votes                  negative-gradient probes per layer (steepest voting)
epochs                 epochs trained before early stopping
converged              false when the epoch limit ended the stage
train_loss             mean loss on the training split
val_loss               mean loss on the validation split
test_loss              mean loss on the test split
train_accuracy         accuracy on the training split (classification)
val_accuracy           accuracy on the validation split (classification)
test_accuracy          accuracy on the test split (classification)
inactive_total         hidden neurons that never fire on the training split
new_total              neurons born at this stage
inactive_new           neurons born at this stage that never fire
inactive_new_pct       ``100 * inactive_new / new_total``
seconds                wall-clock time of the stage
=====================  ====================================================

``baseline.csv`` has the same columns for the static networks trained from
scratch. ``inactivity.csv`` has one row per (seed, width, extender) with the
columns ``seed``, ``width``, ``extender``, ``new_width``, ``base_epochs``,
``new_total``, ``inactive_new``, ``inactive_new_pct``, ``inactive_total``,
``test_loss`` and ``test_accuracy``.

``summary.json`` holds, per stage (or per width and extender), the number of
seeds and the mean and sample standard deviation (``_mean``/``_std``
suffixes) of the numeric columns; a single seed has standard deviation 0.
"""
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted
import json
import math
import os

import numpy as np

from .experiment import RunReport, STAGE_METRICS
from .outputhandler import Kind, emit
from .serialization import save_network

STAGES_FILE = 'stages.csv'
BASELINE_FILE = 'baseline.csv'
INACTIVITY_FILE = 'inactivity.csv'
SUMMARY_FILE = 'summary.json'


def _native(value):
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def _records(frame):
    return [dict((k, _native(v)) for k, v in row.items())
            for row in frame.to_dict('records')]


def _baseline_summary(frame):
    summary = {'n_seeds': len(frame)}
    for column in STAGE_METRICS:
        if not frame[column].notna().any():
            continue
        summary[column + '_mean'] = _native(frame[column].mean())
        std = frame[column].std(ddof=1)
        summary[column + '_std'] = 0.0 if np.isnan(std) else _native(std)
    return summary


def summarize(report):
    """
    Get the content of ``summary.json`` as a dictionary.
    """
    summary = {
        'kind': report.kind,
        'config_hash': report.config_hash,
        'config': report.config.toDict(),
        'schedule': report.schedule,
    }
    if report.kind == RunReport.GROWTH:
        summary['stages'] = _records(report.aggregates())
        if report.baselines:
            summary['static_baseline'] = _baseline_summary(
                report.baselineFrame())
    else:
        summary['inactivity'] = _records(report.inactivityAggregates())
    return summary


def emit_reports(report, out_dir, outputhandler=None):
    """
    Write the report files (and the final network of every seed) to
    ``out_dir``, creating it when needed.

    Returns:
        The list of written paths.

    Raises:
        IOError: If the directory cannot be written.
    """
    if not os.path.isdir(out_dir):
        os.makedirs(out_dir)
    written = []

    def write_frame(frame, name):
        path = os.path.join(out_dir, name)
        frame.to_csv(path, index=False)
        written.append(path)

    if report.kind == RunReport.GROWTH:
        write_frame(report.toPandas(), STAGES_FILE)
        if report.baselines:
            write_frame(report.baselineFrame(), BASELINE_FILE)
    else:
        write_frame(report.inactivityFrame(), INACTIVITY_FILE)
    path = os.path.join(out_dir, SUMMARY_FILE)
    with open(path, 'w') as f:
        json.dump(summarize(report), f, indent=2, sort_keys=True)
    written.append(path)
    for seed in sorted(report.networks):
        path = os.path.join(out_dir, 'network_seed{}.ngrow'.format(seed))
        save_network(report.networks[seed], path)
        written.append(path)
    for path in written:
        emit(outputhandler, Kind.REPORT, 'wrote {}', path)
    return written


def _mean_std(values):
    values = np.asarray(values, dtype=np.float64)
    std = values.std(ddof=1) if values.size > 1 else 0.0
    return values.mean(), std


def text_summary(report):
    """
    Table-style summary: the final test metrics of a growth run (and its
    static baseline) or the inactive share of new neurons per width and
    extender.
    """
    lines = []
    if report.kind == RunReport.GROWTH:
        config = report.config
        rows = [('{}/{}'.format(config.extender, config.distributor),
                 report.finalRecords())]
        if report.baselines:
            rows.append(('static', [report.baselines[s]
                                    for s in sorted(report.baselines)]))
        lines.append('{:<20s} {:>10s} {:>24s} {:>20s}'.format(
            'method', 'width', 'test loss', 'test accuracy'))
        for name, records in rows:
            loss = _mean_std([r.test_eval.loss for r in records])
            width = _mean_std([sum(r.widths_after) for r in records])
            line = '{:<20s} {:>10.1f} {:>11.6g} +- {:<9.3g}'.format(
                name, width[0], loss[0], loss[1])
            if records[0].test_eval.accuracy is not None:
                acc = _mean_std([100.0 * r.test_eval.accuracy
                                 for r in records])
                line += ' {:>9.2f} +- {:<6.2f}'.format(acc[0], acc[1])
            lines.append(line.rstrip())
    else:
        lines.append('{:>6s} {:<14s} {:>26s}'.format(
            'width', 'extender', 'inactive among new (%)'))
        keys = []
        for r in report.inactivity:
            if (r.width, r.extender) not in keys:
                keys.append((r.width, r.extender))
        for width, extender in keys:
            pct = _mean_std([r.inactivity.inactiveNewPercent()
                             for r in report.inactivity
                             if r.width == width and r.extender == extender])
            lines.append('{:>6d} {:<14s} {:>17.1f} +- {:<5.1f}'.format(
                width, extender, pct[0], pct[1]).rstrip())
    return '\n'.join(lines)
