# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted

import numpy as np

from .exceptions import ConsistencyError, DimensionError
from .losses import output_error
from .network import forward
from .utils import Utils, CHUNK_SIZE


class GradientSet(object):
    """
    Gradients of the mean batch loss: ``dW[l]`` and ``db[l]`` for every layer
    and the error signals ``deltas[l]`` (gradient with respect to the
    preactivations of layer ``l``, one row per sample). ``deltas`` is
    ``None`` for gradients accumulated over several chunks.
    """

    def __init__(self, dW, db, deltas=None):
        self.dW = dW
        self.db = db
        self.deltas = deltas

    def asList(self):
        """
        Get the gradients in the order of :func:`~neurogrow.Network.parameters`.
        """
        grads = []
        for dW, db in zip(self.dW, self.db):
            grads.append(dW)
            grads.append(db)
        return grads

    def isFinite(self):
        return all(np.all(np.isfinite(g)) for g in self.asList())


def _check_trace(net, trace):
    if len(trace.preactivations) != len(net.layers):
        raise ConsistencyError(
            'trace has {} layers, network has {}'.format(
                len(trace.preactivations), len(net.layers)))
    if trace.inputs.shape[1] != net.inputDim():
        raise ConsistencyError('trace input does not match the network')
    for l, layer in enumerate(net.layers):
        if trace.preactivations[l].shape[1] != layer.numOutputs():
            raise ConsistencyError(
                'trace layer {} has width {}, network layer has {}'.format(
                    l, trace.preactivations[l].shape[1], layer.numOutputs()))


def backward(net, trace, target, loss_kind):
    """
    Exact gradients of the mean batch loss with respect to every weight and
    bias. The ReLU derivative at zero is taken as zero, so a neuron whose
    preactivation is non-positive on every row gets exactly zero incoming
    gradients.

    Args:
        net: The network the trace was produced with.

        trace: Output of :func:`~neurogrow.forward`.

        target: Target matrix (MSE) or label vector (cross-entropy).

        loss_kind: A :class:`~neurogrow.LossKind` value.

    Raises:
        ConsistencyError: If the trace was not produced by ``net``.
    """
    _check_trace(net, trace)
    n_layers = len(net.layers)
    deltas = [None] * n_layers
    dW = [None] * n_layers
    db = [None] * n_layers
    delta = output_error(loss_kind, trace.output, target)
    for l in range(n_layers - 1, -1, -1):
        deltas[l] = delta
        h_prev = trace.layerInput(l)
        dW[l] = np.dot(delta.T, h_prev)
        db[l] = np.sum(delta, axis=0)
        if l > 0:
            upstream = np.dot(delta, net.layers[l].weights)
            delta = upstream * (trace.preactivations[l - 1] > 0)
    return GradientSet(dW, db, deltas)


def accumulate_gradients(net, X, target, loss_kind, chunk_size=CHUNK_SIZE):
    """
    Gradient of the mean loss over the whole of ``X``, computed in chunks of
    ``chunk_size`` rows and combined with weights proportional to the chunk
    sizes. This is one forward-backward pass over the data.
    """
    X = np.asarray(X, dtype=np.float64)
    n_rows = X.shape[0]
    if n_rows == 0:
        raise DimensionError('cannot accumulate gradients over zero rows')
    dW = [np.zeros_like(layer.weights) for layer in net.layers]
    db = [np.zeros_like(layer.biases) for layer in net.layers]
    for start, stop in Utils.chunks(n_rows, chunk_size):
        trace = forward(net, X[start:stop])
        grads = backward(net, trace, target[start:stop], loss_kind)
        weight = (stop - start) / n_rows
        for l in range(len(net.layers)):
            dW[l] += weight * grads.dW[l]
            db[l] += weight * grads.db[l]
    return GradientSet(dW, db)
