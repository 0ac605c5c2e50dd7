# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted

import numpy as np

from .backprop import backward
from .dataset import batches, Task
from .exceptions import DimensionError, InputError, NumericalError
from .losses import LossKind, compute_loss, count_correct
from .network import forward
from .outputhandler import Kind, emit

BETA1 = 0.9
BETA2 = 0.999
EPSILON = 1e-8


class AdamState(object):
    """
    First and second moments for every parameter array of a network (same
    order as :func:`~neurogrow.Network.parameters`) and the step counter.
    """

    def __init__(self, m, v, t=0):
        self.m = m
        self.v = v
        self.t = t

    @classmethod
    def fresh(cls, net):
        """
        Create a zero state matching the shapes of ``net``.
        """
        params = net.parameters()
        return cls([np.zeros_like(p) for p in params],
                   [np.zeros_like(p) for p in params], 0)

    def resize(self, net):
        """
        Adapt the state to a grown network. Existing moments keep their
        position (extenders only append rows and columns), moments of new
        entries start at zero and the step counter is preserved.
        """
        params = net.parameters()
        if len(params) != len(self.m):
            raise DimensionError(
                'state has {} tensors, network has {}'.format(
                    len(self.m), len(params)))
        for i, p in enumerate(params):
            if self.m[i].shape == p.shape:
                continue
            old = tuple(slice(0, min(a, b))
                        for a, b in zip(self.m[i].shape, p.shape))
            m = np.zeros_like(p)
            v = np.zeros_like(p)
            m[old] = self.m[i][old]
            v[old] = self.v[i][old]
            self.m[i] = m
            self.v[i] = v
        return self

    def copy(self):
        return AdamState([m.copy() for m in self.m],
                         [v.copy() for v in self.v], self.t)


def adam_step(net, grads, state, lr, masks=None):
    """
    Apply one Adam update (``beta1 = 0.9``, ``beta2 = 0.999``,
    ``eps = 1e-8``, bias-corrected) to the parameters of ``net`` in place.

    Args:
        net: The network to update.

        grads: A :class:`~neurogrow.GradientSet` or a list of arrays in
        parameter order.

        state: The :class:`~neurogrow.AdamState`, updated in place.

        lr: Learning rate.

        masks: Optional list of arrays multiplied into the gradients; entries
        with mask zero and zero moments stay frozen.

    Returns:
        The pair ``(net, state)``.

    Raises:
        NumericalError: If a gradient is not finite.
    """
    if lr <= 0:
        raise InputError('learning rate must be positive')
    params = net.parameters()
    grads = grads.asList() if hasattr(grads, 'asList') else list(grads)
    if len(grads) != len(params) or len(state.m) != len(params):
        raise DimensionError('gradients, state and parameters do not match')
    for g in grads:
        if not np.all(np.isfinite(g)):
            raise NumericalError('non-finite gradient passed to adam_step')
    state.t += 1
    bias1 = 1.0 - BETA1 ** state.t
    bias2 = 1.0 - BETA2 ** state.t
    for i, p in enumerate(params):
        g = grads[i]
        if g.shape != p.shape:
            raise DimensionError(
                'gradient shape {} differs from parameter shape {}'.format(
                    g.shape, p.shape))
        if masks is not None and masks[i] is not None:
            g = g * masks[i]
        state.m[i] = BETA1 * state.m[i] + (1.0 - BETA1) * g
        state.v[i] = BETA2 * state.v[i] + (1.0 - BETA2) * g * g
        m_hat = state.m[i] / bias1
        v_hat = state.v[i] / bias2
        p -= lr * m_hat / (np.sqrt(v_hat) + EPSILON)
    return net, state


def train(net, data, epochs, batch_size, lr, rng, optimizer_state=None,
          loss_kind=None, masks=None, outputhandler=None):
    """
    Mini-batch Adam training with a seeded shuffle every epoch.

    Args:
        net: Network, updated in place.

        data: Training :class:`~neurogrow.Dataset`.

        epochs: Number of passes over ``data``.

        batch_size: Rows per mini-batch.

        lr: Learning rate.

        rng: Generator used only for the batch order.

        optimizer_state: :class:`~neurogrow.AdamState` to continue from; a
        fresh one is used when omitted.

        loss_kind: Loss, inferred from the dataset task when omitted.

        masks: Optional gradient masks (see :func:`~neurogrow.adam_step`).

    Returns:
        A list with one dictionary per epoch holding ``epoch``, ``loss`` and,
        for classification, ``accuracy`` (both measured on the mini-batches
        before each update).

    Raises:
        InputError: If the dataset is empty.
    """
    if len(data) == 0:
        raise InputError('cannot train on an empty dataset')
    if batch_size < 1:
        raise InputError('batch_size must be >= 1')
    if loss_kind is None:
        loss_kind = LossKind.forTask(data.task)
    if optimizer_state is None:
        optimizer_state = AdamState.fresh(net)
    classification = data.task == Task.CLASSIFICATION
    metrics = []
    for epoch in range(epochs):
        total_loss = 0.0
        correct = 0
        for X, target in batches(data, batch_size, rng):
            trace = forward(net, X)
            total_loss += compute_loss(loss_kind, trace.output, target) * \
                X.shape[0]
            if classification:
                correct += count_correct(trace.output, target)
            grads = backward(net, trace, target, loss_kind)
            adam_step(net, grads, optimizer_state, lr, masks)
        record = {'epoch': epoch + 1, 'loss': total_loss / len(data)}
        if classification:
            record['accuracy'] = correct / len(data)
        metrics.append(record)
        emit(outputhandler, Kind.EPOCH, 'epoch {:3d}  train loss {:.6g}{}',
             epoch + 1, record['loss'],
             '  acc {:.4f}'.format(record['accuracy'])
             if classification else '')
    return metrics


class EarlyStopping(object):
    """
    Patience-based stopping on a validation loss with best-weight restore.
    """

    def __init__(self, patience=5, max_epochs=100):
        self.patience = patience
        self.max_epochs = max_epochs
        # Set by fit: False when the epoch limit ended the last run.
        self.converged = None

    def fit(self, net, train_data, val_data, batch_size, lr, rng,
            optimizer_state, loss_kind=None, outputhandler=None):
        """
        Train one epoch at a time until the validation loss has not improved
        for ``patience`` epochs or ``max_epochs`` is reached, then restore the
        weights (and optimizer state) of the best epoch.

        Returns:
            A tuple ``(net, optimizer_state, epochs_trained, best_val_loss)``.
        """
        from .diagnostics import evaluate
        best_loss = evaluate(net, val_data).loss
        best = (net.copy(), optimizer_state.copy())
        since_best = 0
        epochs = 0
        while epochs < self.max_epochs and since_best < self.patience:
            train(net, train_data, 1, batch_size, lr, rng, optimizer_state,
                  loss_kind, outputhandler=outputhandler)
            epochs += 1
            val_loss = evaluate(net, val_data).loss
            if val_loss < best_loss:
                best_loss = val_loss
                best = (net.copy(), optimizer_state.copy())
                since_best = 0
            else:
                since_best += 1
        self.converged = since_best >= self.patience
        net, optimizer_state = best
        return net, optimizer_state, epochs, best_loss
