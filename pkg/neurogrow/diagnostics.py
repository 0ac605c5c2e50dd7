# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted

import numpy as np
import pandas as pd

from .base import BaseClass
from .backprop import backward
from .dataset import Task
from .exceptions import InputError, SizeError
from .losses import LossKind, compute_loss, count_correct
from .network import Head, Network, forward
from .outputhandler import Kind, emit
from .utils import Utils, CHUNK_SIZE

GRAD_CHECK_MAX_PARAMS = 100000


class LayerInactivity(object):
    """
    Inactivity counts of one hidden layer.
    """

    def __init__(self, total_neurons, inactive_total, new_total,
                 inactive_new):
        self.total_neurons = int(total_neurons)
        self.inactive_total = int(inactive_total)
        self.new_total = int(new_total)
        self.inactive_new = int(inactive_new)

    def inactivePercent(self):
        if self.total_neurons == 0:
            return 0.0
        return 100.0 * self.inactive_total / self.total_neurons

    def inactiveNewPercent(self):
        if self.new_total == 0:
            return 0.0
        return 100.0 * self.inactive_new / self.new_total

    def toDict(self):
        return {
            'total_neurons': self.total_neurons,
            'inactive_total': self.inactive_total,
            'new_total': self.new_total,
            'inactive_new': self.inactive_new,
            'inactive_pct': self.inactivePercent(),
            'inactive_new_pct': self.inactiveNewPercent(),
        }


class InactivityReport(BaseClass):
    """
    Per-layer counts of hidden neurons whose ReLU output is exactly zero on
    every sample of a dataset, with the neurons born at ``stage`` counted
    separately as "new".
    """

    def __init__(self, layers, stage=None):
        self.layers = layers
        self.stage = stage

    def inactiveTotal(self):
        return sum(layer.inactive_total for layer in self.layers)

    def inactiveNew(self):
        return sum(layer.inactive_new for layer in self.layers)

    def newTotal(self):
        return sum(layer.new_total for layer in self.layers)

    def inactiveNewPercent(self):
        new_total = self.newTotal()
        if new_total == 0:
            return 0.0
        return 100.0 * self.inactiveNew() / new_total

    def toDict(self):
        return {
            'stage': self.stage,
            'layers': [layer.toDict() for layer in self.layers],
        }

    def toPandas(self):
        """
        Return a pandas DataFrame with one row per hidden layer.
        """
        rows = []
        for l, layer in enumerate(self.layers):
            row = {'layer': l}
            row.update(layer.toDict())
            rows.append(row)
        return pd.DataFrame(rows)

    def toString(self):
        lines = ['layer  neurons  inactive  new  inactive_new']
        for l, layer in enumerate(self.layers):
            lines.append('{:5d}  {:7d}  {:8d}  {:3d}  {:12d}'.format(
                l, layer.total_neurons, layer.inactive_total,
                layer.new_total, layer.inactive_new))
        return '\n'.join(lines)


def max_activations(net, X, chunk_size=CHUNK_SIZE):
    """
    Largest post-ReLU activation of every hidden neuron over the rows of
    ``X``, streamed in chunks.
    """
    maxima = [np.zeros(width) for width in net.hiddenWidths()]
    for start, stop in Utils.chunks(X.shape[0], chunk_size):
        trace = forward(net, X[start:stop])
        for l in range(net.numHidden()):
            maxima[l] = np.maximum(
                maxima[l], trace.activations[l].max(axis=0))
    return maxima


def measure_inactivity(net, dataset, stage_filter=None,
                       chunk_size=CHUNK_SIZE):
    """
    Count the hidden neurons that never produce a positive activation on
    ``dataset``.

    Args:
        net: The network.

        dataset: :class:`~neurogrow.Dataset` to scan.

        stage_filter: Birth stage of the neurons counted as new. When
        omitted, every neuron inserted after construction (birth stage
        greater than zero) counts as new.

        chunk_size: Rows per forward pass.

    Raises:
        InputError: If the dataset is empty.
    """
    if len(dataset) == 0:
        raise InputError('cannot measure inactivity on an empty dataset')
    maxima = max_activations(net, dataset.X, chunk_size)
    layers = []
    for l, layer in enumerate(net.layers[:-1]):
        inactive = maxima[l] <= 0.0
        stages = layer.birthStages()
        if stage_filter is None:
            is_new = stages > 0
        else:
            is_new = stages == stage_filter
        layers.append(LayerInactivity(
            layer.numOutputs(), np.sum(inactive),
            np.sum(is_new), np.sum(inactive & is_new)))
    return InactivityReport(layers, stage_filter)


class EvalResult(BaseClass):
    """
    Mean loss over a dataset and, for classification, the accuracy.
    """

    def __init__(self, loss, sample_count, accuracy=None):
        self.loss = loss
        self.sample_count = sample_count
        self.accuracy = accuracy

    def toDict(self):
        d = {'loss': self.loss, 'sample_count': self.sample_count}
        if self.accuracy is not None:
            d['accuracy'] = self.accuracy
        return d

    def toString(self):
        if self.accuracy is None:
            return 'loss {:.6g} over {} samples'.format(
                self.loss, self.sample_count)
        return 'loss {:.6g}  accuracy {:.4f} over {} samples'.format(
            self.loss, self.accuracy, self.sample_count)


def evaluate(net, dataset, task=None, batch_size=CHUNK_SIZE):
    """
    Mean loss (MSE for reconstruction, cross-entropy for classification) and
    argmax accuracy over a whole dataset.

    Raises:
        InputError: If the dataset is empty.
    """
    n_rows = len(dataset)
    if n_rows == 0:
        raise InputError('cannot evaluate on an empty dataset')
    if task is None:
        task = dataset.task
    loss_kind = LossKind.forTask(task)
    total = 0.0
    correct = 0
    for start, stop in Utils.chunks(n_rows, batch_size):
        output = forward(net, dataset.X[start:stop]).output
        target = dataset.targets[start:stop]
        total += compute_loss(loss_kind, output, target) * (stop - start)
        if task == Task.CLASSIFICATION:
            correct += count_correct(output, target)
    accuracy = correct / n_rows if task == Task.CLASSIFICATION else None
    return EvalResult(total / n_rows, n_rows, accuracy)


def grad_check(net, batch, loss_kind, step=1e-6, grads=None, atol=1e-8):
    """
    Compare the gradients of :func:`~neurogrow.backward` with central finite
    differences on every parameter.

    Args:
        net: Network to check (left unchanged).

        batch: Pair ``(X, target)``.

        loss_kind: A :class:`~neurogrow.LossKind` value.

        step: Finite-difference step.

        grads: Gradients to check instead of running backward, in parameter
        order.

        atol: Differences below this value count as agreement.

    Returns:
        The maximum relative error over all parameters.

    Raises:
        SizeError: If the network has more than 100000 parameters.
    """
    if net.numParameters() > GRAD_CHECK_MAX_PARAMS:
        raise SizeError(
            'grad_check is limited to {} parameters, network has {}'.format(
                GRAD_CHECK_MAX_PARAMS, net.numParameters()))
    X, target = batch
    if grads is None:
        grads = backward(net, forward(net, X), target, loss_kind).asList()
    probe = net.copy()
    worst = 0.0
    for p, g in zip(probe.parameters(), grads):
        numeric = np.zeros_like(p)
        for idx in np.ndindex(*p.shape):
            saved = p[idx]
            p[idx] = saved + step
            plus = compute_loss(loss_kind, forward(probe, X).output, target)
            p[idx] = saved - step
            minus = compute_loss(loss_kind, forward(probe, X).output, target)
            p[idx] = saved
            numeric[idx] = (plus - minus) / (2.0 * step)
        err = Utils.relativeError(g, numeric, atol)
        if err.size:
            worst = max(worst, float(err.max()))
    return worst


def grad_check_suite(n_nets=50, rng=None, step=1e-6, outputhandler=None):
    """
    Run :func:`grad_check` on ``n_nets`` random small networks for every
    loss kind. Each network has one to three hidden layers of width two to
    six and is checked on a batch of five random rows.

    Returns:
        A dictionary mapping each :class:`~neurogrow.LossKind` value to the
        maximum relative error observed.
    """
    rng = Utils.toRng(rng)
    worst = {}
    for loss_kind in LossKind.ALL:
        head = Head.SOFTMAX if loss_kind == LossKind.SOFTMAX_CE \
            else Head.IDENTITY
        worst[loss_kind] = 0.0
        for _ in range(n_nets):
            n_in = int(rng.integers(2, 6))
            n_out = int(rng.integers(2, 5))
            widths = rng.integers(2, 7, size=int(rng.integers(1, 4)))
            net = Network.build(n_in, widths, n_out, rng, head)
            for layer in net.layers:
                layer.biases += rng.normal(0.0, 0.1, size=layer.biases.shape)
            X = rng.uniform(0.0, 1.0, size=(5, n_in))
            if loss_kind == LossKind.SOFTMAX_CE:
                target = rng.integers(0, n_out, size=5)
            else:
                target = rng.uniform(0.0, 1.0, size=(5, n_out))
            err = grad_check(net, (X, target), loss_kind, step)
            worst[loss_kind] = max(worst[loss_kind], err)
        emit(outputhandler, Kind.GRADCHECK,
             '{:<10s} {} networks  max relative error {:.3e}',
             loss_kind, n_nets, worst[loss_kind])
    return worst
