# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted
import time

import numpy as np
import pandas as pd

from .base import BaseClass
from .config import schedule_widths
from .dataset import (SplitSpec, Task, center_features, load_named,
                      make_reconstruction, split, synthetic_blobs)
from .diagnostics import evaluate, measure_inactivity
from .distributors import distribute
from .environment import Environment
from .errorhandler import ErrorHandler
from .exceptions import ConvergenceWarning
from .extenders import ExtenderInputs, apply_plan, extend
from .losses import LossKind
from .network import Head, Network
from .optimizer import AdamState, EarlyStopping, train
from .outputhandler import Kind, OutputHandler, emit
from .utils import Utils

# Share of the synthetic data held out as the test split.
BLOBS_TEST_FRACTION = 0.2

# Columns averaged over the seeds in the summaries.
STAGE_METRICS = [
    'total_width_after', 'epochs', 'train_loss', 'val_loss', 'test_loss',
    'train_accuracy', 'val_accuracy', 'test_accuracy', 'inactive_total',
    'inactive_new_pct',
]
INACTIVITY_METRICS = [
    'inactive_new', 'inactive_new_pct', 'inactive_total', 'test_loss',
    'test_accuracy',
]


def _joinWidths(widths):
    return ';'.join(str(int(w)) for w in widths)


def _aggregate(frame, keys, metrics):
    metrics = [c for c in metrics if c in frame and frame[c].notna().any()]
    grouped = frame.groupby(keys)
    mean = grouped[metrics].mean().add_suffix('_mean')
    std = grouped[metrics].std(ddof=1).fillna(0.0).add_suffix('_std')
    counts = grouped.size().rename('n_seeds')
    return pd.concat([counts, mean, std], axis=1).reset_index()


class StageRecord(BaseClass):
    """
    Measurements of one stage of one seed: the network is trained to early
    stopping, evaluated, scanned for inactive neurons born at this stage and
    finally expanded according to ``plan`` (``None`` after the last stage).
    """

    def __init__(self, seed, stage, widths_before, widths_after, plan,
                 epochs, converged, train_eval, val_eval, test_eval,
                 inactivity, seconds):
        self.seed = seed
        self.stage = stage
        self.widths_before = list(widths_before)
        self.widths_after = list(widths_after)
        self.plan = plan
        self.epochs = epochs
        self.converged = converged
        self.train_eval = train_eval
        self.val_eval = val_eval
        self.test_eval = test_eval
        self.inactivity = inactivity
        self.seconds = seconds

    def planCounts(self):
        if self.plan is None:
            return [0] * len(self.widths_before)
        return self.plan.toList()

    def toDict(self):
        def accuracy(result):
            return np.nan if result.accuracy is None else result.accuracy
        votes = None if self.plan is None else self.plan.votes
        return {
            'seed': self.seed,
            'stage': self.stage,
            'widths_before': _joinWidths(self.widths_before),
            'widths_after': _joinWidths(self.widths_after),
            'total_width_before': sum(self.widths_before),
            'total_width_after': sum(self.widths_after),
            'plan': _joinWidths(self.planCounts()),
            'votes': '' if votes is None else _joinWidths(votes),
            'epochs': self.epochs,
            'converged': bool(self.converged),
            'train_loss': self.train_eval.loss,
            'val_loss': self.val_eval.loss,
            'test_loss': self.test_eval.loss,
            'train_accuracy': accuracy(self.train_eval),
            'val_accuracy': accuracy(self.val_eval),
            'test_accuracy': accuracy(self.test_eval),
            'inactive_total': self.inactivity.inactiveTotal(),
            'new_total': self.inactivity.newTotal(),
            'inactive_new': self.inactivity.inactiveNew(),
            'inactive_new_pct': self.inactivity.inactiveNewPercent(),
            'seconds': self.seconds,
        }

    def toString(self):
        return 'StageRecord(seed={}, stage={}, widths {} -> {})'.format(
            self.seed, self.stage, self.widths_before, self.widths_after)


class InactivityRecord(BaseClass):
    """
    Outcome of doubling a trained single-hidden-layer network with one
    extender and training it a few more epochs.
    """

    def __init__(self, seed, width, extender, base_epochs, inactivity,
                 test_eval):
        self.seed = seed
        self.width = width
        self.extender = extender
        self.base_epochs = base_epochs
        self.inactivity = inactivity
        self.test_eval = test_eval

    def toDict(self):
        return {
            'seed': self.seed,
            'width': self.width,
            'extender': self.extender,
            'new_width': self.inactivity.layers[0].total_neurons,
            'base_epochs': self.base_epochs,
            'new_total': self.inactivity.newTotal(),
            'inactive_new': self.inactivity.inactiveNew(),
            'inactive_new_pct': self.inactivity.inactiveNewPercent(),
            'inactive_total': self.inactivity.inactiveTotal(),
            'test_loss': self.test_eval.loss,
            'test_accuracy': np.nan if self.test_eval.accuracy is None
            else self.test_eval.accuracy,
        }


class RunReport(BaseClass):
    """
    Results of an experiment: the per-seed stage records, the optional
    static baselines, the inactivity study rows and the final networks.
    Aggregates are always recomputed from the records.
    """

    GROWTH = 'growth'
    INACTIVITY = 'inactivity'

    def __init__(self, kind, config):
        self.kind = kind
        self.config = config
        self.config_hash = config.configHash()
        self.records = {}
        self.baselines = {}
        self.inactivity = []
        self.networks = {}
        self.schedule = schedule_widths(
            sum(config.hidden_widths), config.n_stages,
            config.growth_fraction)

    def seeds(self):
        return sorted(self.records)

    def finalRecords(self):
        """
        Get the last stage record of every seed.
        """
        return [self.records[seed][-1] for seed in self.seeds()]

    def toPandas(self):
        """
        Get one row per (seed, stage) as a pandas DataFrame.
        """
        rows = [record.toDict() for seed in self.seeds()
                for record in self.records[seed]]
        return pd.DataFrame(rows, columns=STAGE_COLUMNS)

    def aggregates(self):
        """
        Mean and sample standard deviation of every stage metric over the
        seeds, one row per stage.
        """
        return _aggregate(self.toPandas(), 'stage', STAGE_METRICS)

    def baselineFrame(self):
        rows = [self.baselines[seed].toDict()
                for seed in sorted(self.baselines)]
        return pd.DataFrame(rows, columns=STAGE_COLUMNS)

    def inactivityFrame(self):
        return pd.DataFrame([r.toDict() for r in self.inactivity],
                            columns=INACTIVITY_COLUMNS)

    def inactivityAggregates(self):
        return _aggregate(self.inactivityFrame(), ['width', 'extender'],
                          INACTIVITY_METRICS)

    def toString(self):
        return 'RunReport({}, {} seeds, config {})'.format(
            self.kind, len(self.records) or len(
                set(r.seed for r in self.inactivity)),
            self.config_hash[:10])


STAGE_COLUMNS = [
    'seed', 'stage', 'widths_before', 'widths_after', 'total_width_before',
    'total_width_after', 'plan', 'votes', 'epochs', 'converged',
    'train_loss', 'val_loss', 'test_loss', 'train_accuracy', 'val_accuracy',
    'test_accuracy', 'inactive_total', 'new_total', 'inactive_new',
    'inactive_new_pct', 'seconds',
]

INACTIVITY_COLUMNS = [
    'seed', 'width', 'extender', 'new_width', 'base_epochs', 'new_total',
    'inactive_new', 'inactive_new_pct', 'inactive_total', 'test_loss',
    'test_accuracy',
]


class Experiment(object):
    """
    Runs growth experiments and inactivity studies.

    Progress is written to the :class:`~neurogrow.OutputHandler` set with
    :func:`~neurogrow.Experiment.setOutputHandler`; non-fatal diagnostics
    (new neurons that never fire, stages that hit the epoch limit) go to the
    :class:`~neurogrow.ErrorHandler` set with
    :func:`~neurogrow.Experiment.setErrorHandler`.
    """

    def __init__(self, environment=None):
        """
        Args:
            environment (:class:`~neurogrow.Environment`): Where the image
            datasets are looked up.
        """
        if environment is None:
            environment = Environment()
        self._environment = environment
        self.setOutputHandler(OutputHandler())
        self.setErrorHandler(ErrorHandler())

    def setOutputHandler(self, outputhandler):
        self._outputhandler = outputhandler

    def getOutputHandler(self):
        return self._outputhandler

    def setErrorHandler(self, errorhandler):
        self._errorhandler = errorhandler

    def getErrorHandler(self):
        return self._errorhandler

    def getEnvironment(self):
        return self._environment

    def loadData(self, config):
        """
        Get the ``(train, val, test)`` datasets of a configuration.
        """
        if config.dataset == 'blobs':
            full = synthetic_blobs(
                config.blobs_classes, config.blobs_per_class,
                config.blobs_dim, config.blobs_spread, config.data_seed)
            rest, test = split(
                full, SplitSpec(BLOBS_TEST_FRACTION, config.data_seed))
        else:
            data_dir = self._environment.getDataDir()
            rest = load_named(config.dataset, data_dir, 'train')
            test = load_named(config.dataset, data_dir, 'test')
        if 0 < config.n_train_limit < len(rest):
            order = np.random.default_rng(config.data_seed).permutation(
                len(rest))
            rest = rest.subset(np.sort(order[:config.n_train_limit]))
        train_ds, val_ds = split(
            rest, SplitSpec(config.val_fraction, config.data_seed + 1))
        if config.dataset == 'blobs' and config.blobs_centered:
            train_ds, val_ds, test = center_features(train_ds, val_ds, test)
        datasets = []
        for ds, part in zip((train_ds, val_ds, test),
                            ('train', 'val', 'test')):
            if config.task == Task.RECONSTRUCTION:
                ds = make_reconstruction(ds)
            ds.name = '{}-{}'.format(config.dataset, part)
            datasets.append(ds)
        emit(self._outputhandler, Kind.DATA,
             '{}: {} train, {} validation, {} test rows, {} features',
             config.dataset, len(datasets[0]), len(datasets[1]),
             len(datasets[2]), datasets[0].numFeatures())
        return tuple(datasets)

    def _buildNetwork(self, config, train_ds, widths, rng):
        head = Head.SOFTMAX if config.task == Task.CLASSIFICATION \
            else Head.IDENTITY
        return Network.build(train_ds.numFeatures(), widths,
                             train_ds.outputDim(), rng, head)

    def _fit(self, config, net, state, train_ds, val_ds, rng, label):
        stopper = EarlyStopping(config.early_stop_patience,
                                config.max_epochs_per_stage)
        net, state, epochs, _ = stopper.fit(
            net, train_ds, val_ds, config.batch_size, config.lr, rng, state,
            LossKind.forTask(config.task))
        if not stopper.converged:
            self._errorhandler.warning(ConvergenceWarning(
                '{}: validation loss still improving after {} epochs'.format(
                    label, config.max_epochs_per_stage)))
        return net, state, epochs, stopper.converged

    def _extenderInputs(self, config, train_ds, stage, rng):
        adjust_batch = None
        if 0 < config.adjust_batch_size < len(train_ds):
            rows = np.sort(rng.permutation(len(train_ds))[
                :config.adjust_batch_size])
            adjust_batch = (train_ds.X[rows], train_ds.targets[rows])
        return ExtenderInputs(
            loss_kind=LossKind.forTask(config.task), lr=config.lr, rng=rng,
            stage=stage, adjust_batch=adjust_batch,
            adjust_lr=config.effectiveAdjustLr(), train_data=train_ds,
            batch_size=config.batch_size, pool_factor=config.pool_factor,
            candidate_epochs=config.candidate_epochs,
            outputhandler=self._outputhandler,
            errorhandler=self._errorhandler)

    def _expand(self, config, net, stage, train_ds, rng_extend, rng_plan):
        budget = Utils.ceilFraction(config.growth_fraction,
                                    sum(net.hiddenWidths()))
        plan = distribute(
            config.distributor, net, budget, (train_ds.X, train_ds.targets),
            LossKind.forTask(config.task), rng_plan, stage,
            config.probes_per_layer or None)
        emit(self._outputhandler, Kind.PLAN, '{} plan for stage {}: {}{}',
             config.distributor, stage, plan.toList(),
             '' if plan.votes is None else '  votes {}'.format(plan.votes))
        inputs = self._extenderInputs(config, train_ds, stage, rng_extend)
        return plan, apply_plan(net, plan, config.extender, inputs)

    def _evaluateAll(self, net, datasets):
        results = [evaluate(net, ds) for ds in datasets]
        for ds, result in zip(datasets, results):
            emit(self._outputhandler, Kind.EVAL, '{}: {}', ds.name, result)
        return results

    def _growSeed(self, config, seed, datasets):
        train_ds, val_ds, test_ds = datasets
        rng_init, rng_shuffle, rng_extend, rng_plan = \
            Utils.spawnRngs(seed, 4)
        net = self._buildNetwork(config, train_ds, config.hidden_widths,
                                 rng_init)
        state = AdamState.fresh(net)
        records = []
        for stage in range(config.n_stages + 1):
            start = time.time()
            net, state, epochs, converged = self._fit(
                config, net, state, train_ds, val_ds, rng_shuffle,
                'seed {} stage {}'.format(seed, stage))
            widths_before = net.hiddenWidths()
            results = self._evaluateAll(net, datasets)
            inactivity = measure_inactivity(net, train_ds, stage_filter=stage)
            plan = None
            if stage < config.n_stages:
                plan, net = self._expand(config, net, stage + 1, train_ds,
                                         rng_extend, rng_plan)
                state.resize(net)
            record = StageRecord(
                seed, stage, widths_before, net.hiddenWidths(), plan, epochs,
                converged, results[0], results[1], results[2], inactivity,
                time.time() - start)
            records.append(record)
            emit(self._outputhandler, Kind.STAGE,
                 'seed {} stage {}: {} epochs, test loss {:.6g}, '
                 'widths {} -> {}', seed, stage, epochs,
                 results[2].loss, widths_before, record.widths_after)
        return records, net

    def _staticBaseline(self, config, seed, widths, datasets):
        train_ds, val_ds, test_ds = datasets
        rngs = Utils.spawnRngs(seed, 6)
        start = time.time()
        net = self._buildNetwork(config, train_ds, widths, rngs[4])
        net, _, epochs, converged = self._fit(
            config, net, AdamState.fresh(net), train_ds, val_ds, rngs[5],
            'seed {} static baseline'.format(seed))
        results = self._evaluateAll(net, datasets)
        return StageRecord(
            seed, config.n_stages, widths, widths, None, epochs, converged,
            results[0], results[1], results[2],
            measure_inactivity(net, train_ds, stage_filter=0),
            time.time() - start)

    def runGrowth(self, config):
        """
        Grow networks stage by stage for every seed of ``config``.

        Returns:
            A :class:`~neurogrow.RunReport` with ``n_stages + 1`` records
            per seed.

        Raises:
            ConfigError: If the configuration is invalid.
        """
        config.validate()
        datasets = self.loadData(config)
        report = RunReport(RunReport.GROWTH, config)
        for seed in config.seeds:
            records, net = self._growSeed(config, seed, datasets)
            report.records[seed] = records
            report.networks[seed] = net
            if config.static_baseline:
                report.baselines[seed] = self._staticBaseline(
                    config, seed, net.hiddenWidths(), datasets)
        return report

    def runInactivity(self, config):
        """
        For every seed, width and extender: train a single-hidden-layer
        network to early stopping, double its width, train
        ``inactivity_epochs`` more epochs and count the new neurons that
        never fire on the training split.

        Raises:
            ConfigError: If the configuration is invalid or has more than
            one hidden layer.
        """
        config.validateInactivity()
        datasets = self.loadData(config)
        train_ds, val_ds, test_ds = datasets
        loss_kind = LossKind.forTask(config.task)
        report = RunReport(RunReport.INACTIVITY, config)
        for seed in config.seeds:
            for width in config.inactivity_widths:
                rng_init, rng_shuffle = Utils.spawnRngs([seed, width], 2)
                base = self._buildNetwork(config, train_ds, [width],
                                          rng_init)
                base, state, base_epochs, _ = self._fit(
                    config, base, AdamState.fresh(base), train_ds, val_ds,
                    rng_shuffle, 'seed {} width {}'.format(seed, width))
                for k, extender in enumerate(config.inactivity_extenders):
                    rng_extend, rng_train = Utils.spawnRngs(
                        [seed, width, k], 2)
                    inputs = self._extenderInputs(config, train_ds, 1,
                                                  rng_extend)
                    grown = extend(extender, base, 0, width, inputs)
                    grown_state = state.copy().resize(grown)
                    if config.inactivity_epochs:
                        train(grown, train_ds, config.inactivity_epochs,
                              config.batch_size, config.lr, rng_train,
                              grown_state, loss_kind)
                    inactivity = measure_inactivity(grown, train_ds,
                                                    stage_filter=1)
                    record = InactivityRecord(
                        seed, width, extender, base_epochs, inactivity,
                        evaluate(grown, test_ds))
                    report.inactivity.append(record)
                    emit(self._outputhandler, Kind.STAGE,
                         'seed {} width {} -> {} with {}: {} of {} new '
                         'neurons inactive', seed, width, 2 * width,
                         extender, inactivity.inactiveNew(),
                         inactivity.newTotal())
        return report


def run_growth_experiment(config, outputhandler=None, errorhandler=None,
                          environment=None):
    """
    Shortcut for :func:`~neurogrow.Experiment.runGrowth`.
    """
    experiment = Experiment(environment)
    if outputhandler is not None:
        experiment.setOutputHandler(outputhandler)
    if errorhandler is not None:
        experiment.setErrorHandler(errorhandler)
    return experiment.runGrowth(config)


def run_inactivity_study(config, outputhandler=None, errorhandler=None,
                         environment=None):
    """
    Shortcut for :func:`~neurogrow.Experiment.runInactivity`.
    """
    experiment = Experiment(environment)
    if outputhandler is not None:
        experiment.setOutputHandler(outputhandler)
    if errorhandler is not None:
        experiment.setErrorHandler(errorhandler)
    return experiment.runInactivity(config)


def static_baseline(config, outputhandler=None, errorhandler=None,
                    environment=None):
    """
    Run the growth experiment with static baselines enabled: every seed also
    trains, from scratch, a fixed network of the width its growth reached.
    """
    return run_growth_experiment(
        config.withOverrides(static_baseline=True), outputhandler,
        errorhandler, environment)
