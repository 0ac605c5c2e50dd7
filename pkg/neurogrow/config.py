# -*- coding: utf-8 -*-
"""
Experiment configuration.

A configuration file is a flat TOML document whose keys mirror the
attributes of :class:`ExperimentConfig`, for instance::

    dataset = "mnist"
    task = "reconstruction"
    hidden_widths = [16]
    n_stages = 7
    growth_fraction = 0.3
    extender = "swe"
    distributor = "svod"
    seeds = [0, 1, 2]
"""
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted
from past.builtins import basestring
import copy
import hashlib
import json
import numbers

import toml

from .base import BaseClass
from .dataset import Task
from .distributors import DistributorKind
from .exceptions import ConfigError, InputError
from .extenders import ExtenderKind
from .utils import Utils

DATASETS = ('mnist', 'fmnist', 'blobs')

DEFAULTS = {
    'dataset': 'blobs',
    'task': Task.CLASSIFICATION,
    'hidden_widths': [16],
    'n_stages': 7,
    'growth_fraction': 0.3,
    'extender': ExtenderKind.SWE,
    'distributor': DistributorKind.SVOD,
    'lr': 1e-3,
    'batch_size': 64,
    'max_epochs_per_stage': 100,
    'early_stop_patience': 5,
    # 0 selects max(stage budget, 8) probes per layer.
    'probes_per_layer': 0,
    'seeds': [0, 1, 2, 3, 4],
    'out_dir': 'results',
    # 0 runs the adjustment pass over the whole training split.
    'adjust_batch_size': 0,
    'adjust_lr': None,
    'val_fraction': 0.1,
    'data_seed': 0,
    'n_train_limit': 0,
    'static_baseline': False,
    'inactivity_widths': [20],
    'inactivity_extenders': [ExtenderKind.KAIMING, ExtenderKind.FROBENIUS,
                             ExtenderKind.FIREFLY_LITE, ExtenderKind.SWE],
    'inactivity_epochs': 5,
    'pool_factor': 5,
    'candidate_epochs': 1,
    'blobs_classes': 4,
    'blobs_per_class': 150,
    'blobs_dim': 8,
    'blobs_spread': 0.35,
    # Zero-mean features; `false` keeps them in [0, 1].
    'blobs_centered': True,
}


INT_KEYS = ('n_stages', 'batch_size', 'max_epochs_per_stage',
            'early_stop_patience', 'probes_per_layer', 'adjust_batch_size',
            'data_seed', 'n_train_limit', 'inactivity_epochs', 'pool_factor',
            'candidate_epochs', 'blobs_classes', 'blobs_per_class',
            'blobs_dim')

FLOAT_KEYS = ('growth_fraction', 'lr', 'adjust_lr', 'val_fraction',
              'blobs_spread')

BOOL_KEYS = ('static_baseline', 'blobs_centered')


def _number(key, value, integer):
    """
    Coerce a configuration value to ``int`` or ``float``. Strings and
    booleans are rejected, and integer keys reject fractional values.
    """
    if isinstance(value, (bool, basestring)) or value is None:
        raise ConfigError('{} must be {}, got {!r}'.format(
            key, 'an integer' if integer else 'a number', value))
    try:
        if integer and isinstance(value, numbers.Integral):
            return int(value)
        number = float(value)
        if not integer:
            return number
        if number != int(number):
            raise ValueError(value)
        return int(number)
    except (TypeError, ValueError, OverflowError):
        raise ConfigError('{} must be {}, got {!r}'.format(
            key, 'an integer' if integer else 'a number', value))


def schedule_widths(initial_total, n_stages, growth_fraction):
    """
    Total hidden width before every stage and after the last one:
    ``w[s + 1] = w[s] + ceil(growth_fraction * w[s])``.
    """
    widths = [int(initial_total)]
    for _ in range(int(n_stages)):
        widths.append(widths[-1] +
                      Utils.ceilFraction(growth_fraction, widths[-1]))
    return widths


class ExperimentConfig(BaseClass):
    """
    Settings of a growth experiment or an inactivity study. Every key of
    ``DEFAULTS`` is an attribute; unknown keys are rejected.
    """

    def __init__(self, **kwargs):
        values = copy.deepcopy(DEFAULTS)
        unknown = sorted(set(kwargs) - set(DEFAULTS))
        if unknown:
            raise ConfigError('unknown configuration keys: {}'.format(
                ', '.join(unknown)))
        values.update(kwargs)
        for key, value in values.items():
            setattr(self, key, value)
        self._normalize()

    @classmethod
    def fromDict(cls, values):
        return cls(**dict(values))

    @classmethod
    def fromFile(cls, path):
        """
        Read a TOML configuration file.

        Raises:
            ConfigError: If the file cannot be read or parsed, or contains
            unknown keys.
        """
        try:
            with open(path) as f:
                values = toml.load(f)
        except (IOError, OSError) as e:
            raise ConfigError('cannot read configuration: {}'.format(e),
                              sourceName=path)
        except toml.TomlDecodeError as e:
            raise ConfigError('invalid TOML: {}'.format(e), sourceName=path)
        try:
            return cls.fromDict(values)
        except ConfigError as e:
            raise ConfigError(e.getMessage(), sourceName=path)

    def _normalize(self):
        for key in ('hidden_widths', 'seeds', 'inactivity_widths',
                    'inactivity_extenders'):
            value = getattr(self, key)
            if isinstance(value, basestring) or not isinstance(
                    value, (list, tuple)):
                value = Utils.convToList(value)
            setattr(self, key, list(value))
        for key in ('hidden_widths', 'seeds', 'inactivity_widths'):
            setattr(self, key, [_number(key, v, True)
                                for v in getattr(self, key)])
        for key in INT_KEYS:
            setattr(self, key, _number(key, getattr(self, key), True))
        for key in FLOAT_KEYS:
            if key == 'adjust_lr' and self.adjust_lr is None:
                continue
            setattr(self, key, _number(key, getattr(self, key), False))
        for key in BOOL_KEYS:
            if not isinstance(getattr(self, key), bool):
                raise ConfigError('{} must be true or false, got {!r}'.format(
                    key, getattr(self, key)))
        try:
            self.extender = ExtenderKind.fromString(self.extender)
            self.inactivity_extenders = [
                ExtenderKind.fromString(e) for e in self.inactivity_extenders]
            self.distributor = DistributorKind.fromString(self.distributor)
        except InputError as e:
            raise ConfigError(e.getMessage())
        self.dataset = str(self.dataset).strip().lower()
        self.task = str(self.task).strip().lower()

    def validate(self):
        """
        Check the invariants of the configuration.

        Raises:
            ConfigError: On the first violated invariant.
        """
        def check(condition, message):
            if not condition:
                raise ConfigError(message)

        check(self.dataset in DATASETS,
              'dataset must be one of {}'.format(', '.join(DATASETS)))
        check(self.task in Task.ALL,
              'task must be one of {}'.format(', '.join(Task.ALL)))
        check(len(self.hidden_widths) >= 1, 'need at least one hidden layer')
        check(all(w >= 1 for w in self.hidden_widths),
              'hidden widths must be positive')
        check(self.n_stages >= 0, 'n_stages must be >= 0')
        check(self.growth_fraction > 0, 'growth_fraction must be > 0')
        check(self.distributor in DistributorKind.ALL,
              'distributor must be one of {}'.format(
                  ', '.join(DistributorKind.ALL)))
        check(self.distributor != DistributorKind.SINGLE_LAYER or
              len(self.hidden_widths) == 1,
              'the single-layer distributor needs exactly one hidden layer')
        check(self.lr > 0, 'lr must be > 0')
        check(self.adjust_lr is None or self.adjust_lr > 0,
              'adjust_lr must be > 0')
        check(self.batch_size >= 1, 'batch_size must be >= 1')
        check(self.max_epochs_per_stage >= 1,
              'max_epochs_per_stage must be >= 1')
        check(self.early_stop_patience >= 1,
              'early_stop_patience must be >= 1')
        check(self.probes_per_layer >= 0, 'probes_per_layer must be >= 0')
        check(len(self.seeds) >= 1, 'need at least one seed')
        check(self.adjust_batch_size >= 0, 'adjust_batch_size must be >= 0')
        check(0.0 < self.val_fraction < 1.0,
              'val_fraction must lie in (0, 1)')
        check(self.n_train_limit >= 0, 'n_train_limit must be >= 0')
        check(self.pool_factor >= 1, 'pool_factor must be >= 1')
        check(self.candidate_epochs >= 0, 'candidate_epochs must be >= 0')
        check(self.inactivity_epochs >= 0, 'inactivity_epochs must be >= 0')
        check(all(w >= 1 for w in self.inactivity_widths),
              'inactivity widths must be positive')
        check(self.blobs_classes >= 1 and self.blobs_per_class >= 1 and
              self.blobs_dim >= 1, 'blobs sizes must be positive')
        return self

    def validateInactivity(self):
        """
        Additional checks of the inactivity study, which works on networks
        with a single hidden layer.
        """
        self.validate()
        if len(self.hidden_widths) != 1:
            raise ConfigError(
                'the inactivity study needs a single hidden layer, got {}'
                .format(self.hidden_widths))
        if not self.inactivity_widths or not self.inactivity_extenders:
            raise ConfigError('the inactivity study needs widths and '
                              'extenders to compare')
        return self

    def toDict(self):
        return dict((key, copy.deepcopy(getattr(self, key)))
                    for key in DEFAULTS)

    def configHash(self):
        """
        Get the SHA-1 of the canonical JSON form of the configuration.
        """
        canonical = json.dumps(self.toDict(), sort_keys=True)
        return hashlib.sha1(canonical.encode('utf-8')).hexdigest()

    def withOverrides(self, **kwargs):
        """
        Get a copy with some keys replaced; keys set to `None` are ignored.
        """
        values = self.toDict()
        values.update((k, v) for k, v in kwargs.items() if v is not None)
        return ExperimentConfig.fromDict(values)

    def effectiveAdjustLr(self):
        return self.lr if self.adjust_lr is None else self.adjust_lr

    def toString(self):
        return 'ExperimentConfig({} {}, widths={}, {} x {} stages)'.format(
            self.dataset, self.task, self.hidden_widths, self.extender,
            self.n_stages)
