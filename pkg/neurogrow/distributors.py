# -*- coding: utf-8 -*-
"""
Distributors decide how many neurons every hidden layer receives in a stage.

The steepest voting distributor scores virtual probe neurons. A probe with
incoming weights ``w``, bias ``b`` and outgoing weights ``v`` is gated as
``h = relu((1 + z) * u)`` with ``u = w . h_prev + b``; the derivative of the
loss with respect to the gate at ``z = 0`` is::

    dL/dz = sum_rows (v . delta_next) * relu'(u) * u

where ``delta_next`` is the error signal of the next layer of the unmodified
network. Probes never enter the network, so probing leaves it unchanged.
"""
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted

import numpy as np

from .base import BaseClass
from .backprop import backward
from .exceptions import ConsistencyError, DimensionError, InputError
from .network import forward, kaiming_init
from .utils import Utils, CHUNK_SIZE

MIN_PROBES_PER_LAYER = 8


class DistributorKind(object):
    """
    Implemented distributors.
    """

    SVOD = 'svod'
    """
    Steepest voting: allocation proportional to negative-gradient probes.
    """

    RAS = 'ras'
    """
    Random allocation: every neuron goes to a uniformly random hidden layer.
    """

    SINGLE_LAYER = 'single'
    """
    Everything to the only hidden layer.
    """

    ALL = (SVOD, RAS, SINGLE_LAYER)

    ALIASES = {'single_layer': SINGLE_LAYER, 'singlelayer': SINGLE_LAYER,
               'single-layer': SINGLE_LAYER}

    @staticmethod
    def fromString(name):
        """
        Canonical distributor name; case-insensitive, aliases accepted.

        Raises:
            InputError: If the name is unknown.
        """
        name = str(name).strip().lower()
        name = DistributorKind.ALIASES.get(name, name)
        if name not in DistributorKind.ALL:
            raise InputError('unknown distributor {!r}'.format(name))
        return name



class ExpansionPlan(BaseClass):
    """
    Per-hidden-layer neuron counts for one stage.
    """

    def __init__(self, stage, per_layer_counts):
        counts = np.asarray(per_layer_counts, dtype=np.int64).reshape(-1)
        if np.any(counts < 0):
            raise InputError('plan counts must be non-negative')
        self.stage = int(stage)
        self.per_layer_counts = counts
        self.votes = None

    def total(self):
        return int(self.per_layer_counts.sum())

    def toList(self):
        return [int(c) for c in self.per_layer_counts]

    def toString(self):
        return 'ExpansionPlan(stage={}, counts={})'.format(
            self.stage, self.toList())


class ProbeStats(object):
    """
    Gating gradients of the probes of one hidden layer, with the probe
    parameters that produced them.
    """

    def __init__(self, layer_index, gradients, weights=None, biases=None,
                 outgoing=None):
        self.layer_index = layer_index
        self.gradients = gradients
        self.weights = weights
        self.biases = biases
        self.outgoing = outgoing

    def votes(self):
        """
        Number of probes with a strictly negative gradient.
        """
        return int(np.sum(self.gradients < 0))


def largest_remainder(total, weights):
    """
    Apportion ``total`` units proportionally to integer ``weights``: every
    entry gets the floor of its share, the leftover units go to the largest
    fractional remainders, ties toward the lower index. All-zero weights
    give equal shares.
    """
    weights = np.asarray(weights, dtype=np.int64).reshape(-1)
    if weights.size == 0:
        raise InputError('largest_remainder needs at least one weight')
    if np.any(weights < 0):
        raise InputError('weights must be non-negative')
    total = int(total)
    if weights.sum() == 0:
        weights = np.ones_like(weights)
    denom = int(weights.sum())
    numer = [total * int(w) for w in weights]
    counts = [n // denom for n in numer]
    remainders = [n % denom for n in numer]
    leftover = total - sum(counts)
    order = sorted(range(len(counts)), key=lambda i: (-remainders[i], i))
    for i in order[:leftover]:
        counts[i] += 1
    return np.array(counts, dtype=np.int64)


def _chunked_traces(net, eval_batch, loss_kind, chunk_size):
    X, target = eval_batch
    X = np.asarray(X, dtype=np.float64)
    if X.shape[0] == 0:
        raise InputError('evaluation batch is empty')
    for start, stop in Utils.chunks(X.shape[0], chunk_size):
        trace = forward(net, X[start:stop])
        grads = backward(net, trace, target[start:stop], loss_kind)
        yield (stop - start) / X.shape[0], trace, grads


def virtual_probe_gradients(net, layer_index, weights, biases, outgoing,
                            eval_batch, loss_kind, chunk_size=CHUNK_SIZE):
    """
    Gating gradients of explicit probes on layer ``layer_index``.

    Args:
        net: The network (not modified).

        layer_index: Hidden layer the probes belong to.

        weights: Probe incoming weights, ``P x fan_in``.

        biases: Probe biases, length ``P``.

        outgoing: Probe outgoing weights, ``P x width of the next layer``.

        eval_batch: Pair ``(X, target)``.

        loss_kind: A :class:`~neurogrow.LossKind` value.

    Returns:
        Array of ``P`` gradients ``dL/dz`` at ``z = 0``.
    """
    net.checkHidden(layer_index)
    layer = net.layers[layer_index]
    nxt = net.layers[layer_index + 1]
    weights = np.asarray(weights, dtype=np.float64)
    biases = np.asarray(biases, dtype=np.float64).reshape(-1)
    outgoing = np.asarray(outgoing, dtype=np.float64)
    if weights.shape[1] != layer.numInputs() or \
            outgoing.shape[1] != nxt.numOutputs() or \
            not weights.shape[0] == biases.shape[0] == outgoing.shape[0]:
        raise DimensionError('probe shapes do not match layer {}'.format(
            layer_index))
    total = np.zeros(weights.shape[0])
    for share, trace, grads in _chunked_traces(net, eval_batch, loss_kind,
                                               chunk_size):
        u = np.dot(trace.layerInput(layer_index), weights.T) + biases
        downstream = np.dot(grads.deltas[layer_index + 1], outgoing.T)
        total += share * np.sum(downstream * (u > 0) * u, axis=0)
    return total


def gating_gradients(net, layer_index, eval_batch, loss_kind,
                     chunk_size=CHUNK_SIZE):
    """
    Gating gradients ``dL/dz`` at ``z = 0`` of the neurons already present in
    layer ``layer_index``, i.e. ``sum_rows delta * u`` for each neuron.
    """
    net.checkHidden(layer_index)
    total = np.zeros(net.layers[layer_index].numOutputs())
    for share, trace, grads in _chunked_traces(net, eval_batch, loss_kind,
                                               chunk_size):
        u = trace.preactivations[layer_index]
        total += share * np.sum(grads.deltas[layer_index] * u, axis=0)
    return total


def probe_gradients(net, layer_index, probes_per_layer, eval_batch,
                    loss_kind, rng, chunk_size=CHUNK_SIZE):
    """
    Sample ``probes_per_layer`` virtual probes for a hidden layer and compute
    their gating gradients. Incoming weights are Kaiming over the layer's
    fan-in, biases are zero and outgoing weights are Kaiming over the next
    layer's width.

    Returns:
        A :class:`~neurogrow.ProbeStats`.
    """
    net.checkHidden(layer_index)
    rng = Utils.toRng(rng)
    n_in = net.layers[layer_index].numInputs()
    n_next = net.layers[layer_index + 1].numOutputs()
    weights = kaiming_init(probes_per_layer, n_in, rng)
    biases = np.zeros(probes_per_layer)
    outgoing = kaiming_init(probes_per_layer, n_next, rng)
    gradients = virtual_probe_gradients(
        net, layer_index, weights, biases, outgoing, eval_batch, loss_kind,
        chunk_size)
    return ProbeStats(layer_index, gradients, weights, biases, outgoing)


def svod_allocate(net, total_m, probes_per_layer, eval_batch, loss_kind,
                  rng, stage=1, chunk_size=CHUNK_SIZE):
    """
    Steepest voting allocation: every probe with a strictly negative gating
    gradient votes for its layer, and ``total_m`` is apportioned to the votes
    by largest remainder (uniformly when nobody votes).

    Args:
        probes_per_layer: Probes per hidden layer; ``None`` or ``0`` uses
        ``max(total_m, 8)``.
    """
    rng = Utils.toRng(rng)
    if not probes_per_layer:
        probes_per_layer = max(int(total_m), MIN_PROBES_PER_LAYER)
    stats = [
        probe_gradients(net, l, probes_per_layer, eval_batch, loss_kind, rng,
                        chunk_size)
        for l in range(net.numHidden())
    ]
    votes = [s.votes() for s in stats]
    plan = ExpansionPlan(stage, largest_remainder(total_m, votes))
    plan.votes = votes
    return plan


def ras_allocate(total_m, n_hidden_layers, rng, stage=1):
    """
    Random allocation: each of the ``total_m`` neurons goes to a uniformly
    random hidden layer.
    """
    if n_hidden_layers < 1:
        raise InputError('need at least one hidden layer')
    draws = Utils.toRng(rng).integers(0, n_hidden_layers, size=int(total_m))
    return ExpansionPlan(
        stage, np.bincount(draws, minlength=n_hidden_layers))


def single_layer_allocate(total_m, n_hidden_layers, stage=1):
    """
    Give every neuron to the only hidden layer.
    """
    if n_hidden_layers != 1:
        raise ConsistencyError(
            'single-layer distribution needs exactly one hidden layer, '
            'network has {}'.format(n_hidden_layers))
    return ExpansionPlan(stage, [int(total_m)])


def distribute(kind, net, total_m, eval_batch, loss_kind, rng, stage=1,
               probes_per_layer=None, chunk_size=CHUNK_SIZE):
    """
    Dispatch to the distributor named by ``kind``.
    """
    kind = DistributorKind.fromString(kind)
    if kind == DistributorKind.SVOD:
        return svod_allocate(net, total_m, probes_per_layer, eval_batch,
                             loss_kind, rng, stage, chunk_size)
    elif kind == DistributorKind.RAS:
        return ras_allocate(total_m, net.numHidden(), rng, stage)
    elif kind == DistributorKind.SINGLE_LAYER:
        return single_layer_allocate(total_m, net.numHidden(), stage)
    raise InputError('unknown distributor {!r}'.format(kind))
