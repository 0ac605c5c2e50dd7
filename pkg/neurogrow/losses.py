# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted

import numpy as np

from .exceptions import DimensionError, InputError


class LossKind(object):
    """
    Loss functions understood by :func:`~neurogrow.backward`.
    """

    MSE = 'mse'
    """
    Mean squared error over the batch and the output dimensions.
    """

    SOFTMAX_CE = 'softmax_ce'
    """
    Mean softmax cross-entropy over the batch, targets are class indices.
    """

    ALL = (MSE, SOFTMAX_CE)

    @staticmethod
    def forTask(task):
        from .dataset import Task
        if task == Task.CLASSIFICATION:
            return LossKind.SOFTMAX_CE
        return LossKind.MSE


def softmax(logits):
    shifted = logits - np.max(logits, axis=1, keepdims=True)
    expd = np.exp(shifted)
    return expd / np.sum(expd, axis=1, keepdims=True)


def _log_softmax(logits):
    shifted = logits - np.max(logits, axis=1, keepdims=True)
    return shifted - np.log(np.sum(np.exp(shifted), axis=1, keepdims=True))


def _check_labels(logits, labels):
    logits = np.asarray(logits, dtype=np.float64)
    labels = np.asarray(labels).reshape(-1)
    if logits.ndim != 2 or logits.shape[0] != labels.shape[0]:
        raise DimensionError(
            'got {} labels for logits of shape {}'.format(
                labels.shape[0], logits.shape))
    if labels.size and (labels.min() < 0 or labels.max() >= logits.shape[1]):
        raise InputError(
            'labels must lie in [0, {})'.format(logits.shape[1]))
    return logits, labels.astype(np.int64)


def loss_mse(pred, target):
    """
    Mean over batch and output dimensions of the squared difference.

    Raises:
        DimensionError: If the shapes differ.
    """
    pred = np.asarray(pred, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if pred.shape != target.shape:
        raise DimensionError(
            'prediction shape {} differs from target shape {}'.format(
                pred.shape, target.shape))
    return float(np.mean((pred - target) ** 2))


def loss_softmax_ce(logits, labels):
    """
    Mean over the batch of ``-log softmax(logits)[label]``, computed with
    max-subtraction.

    Raises:
        InputError: If a label is out of range.
    """
    logits, labels = _check_labels(logits, labels)
    logp = _log_softmax(logits)
    return float(-np.mean(logp[np.arange(labels.shape[0]), labels]))


def compute_loss(kind, output, target):
    if kind == LossKind.MSE:
        return loss_mse(output, target)
    elif kind == LossKind.SOFTMAX_CE:
        return loss_softmax_ce(output, target)
    raise InputError('unknown loss {!r}'.format(kind))


def output_error(kind, output, target):
    """
    Gradient of the mean batch loss with respect to the output
    preactivations.
    """
    if kind == LossKind.MSE:
        target = np.asarray(target, dtype=np.float64)
        if output.shape != target.shape:
            raise DimensionError(
                'prediction shape {} differs from target shape {}'.format(
                    output.shape, target.shape))
        return 2.0 * (output - target) / output.size
    elif kind == LossKind.SOFTMAX_CE:
        output, labels = _check_labels(output, target)
        delta = softmax(output)
        delta[np.arange(labels.shape[0]), labels] -= 1.0
        return delta / labels.shape[0]
    raise InputError('unknown loss {!r}'.format(kind))


def count_correct(logits, labels):
    """
    Number of rows whose argmax matches the label.
    """
    labels = np.asarray(labels).reshape(-1)
    return int(np.sum(np.argmax(logits, axis=1) == labels))
