# -*- coding: utf-8 -*-
"""
Extenders insert new neurons into a hidden layer and initialize them.

New neurons are always appended after the existing ones: ``m`` new rows in
the grown layer and ``m`` new columns at the end of the next layer. The
shared-weights extender works in three steps:

1. insert the neurons with Kaiming base weights, zero biases and zero
   outgoing weights, plus one all-zero coupling pair per (new, old) neuron;
2. run one forward-backward pass with the effective parameters::

       w_new_eff = w_new + sum_i w_c[new, i]
       w_i_eff   = w_i   - sum_new w_c[new, i]

   (biases alike) and take one plain gradient step on the couplings and on
   the next layer;
3. write the effective parameters back as the base weights and drop the
   couplings.
"""
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted

import numpy as np

from .backprop import accumulate_gradients
from .diagnostics import max_activations
from .distributors import gating_gradients
from .exceptions import (ConsistencyError, DegenerateInputError, InputError,
                         InactivityWarning)
from .losses import LossKind
from .network import DenseLayer, Network, NeuronTag, kaiming_init
from .optimizer import AdamState, train
from .outputhandler import Kind, emit
from .utils import Utils, CHUNK_SIZE


class ExtenderKind(object):
    """
    Implemented extenders.
    """

    SWE = 'swe'
    """
    Shared-weights extender: coupling-based adjustment, then merge.
    """

    KAIMING = 'kaiming'
    """
    Kaiming-initialized incoming and outgoing weights, no adjustment.
    """

    FROBENIUS = 'frobenius'
    """
    Kaiming insertion followed by rescaling to the previous Frobenius norms.
    """

    FIREFLY_LITE = 'firefly_lite'
    """
    Simplified candidate-pool selection by gating-gradient magnitude.
    """

    ALL = (SWE, KAIMING, FROBENIUS, FIREFLY_LITE)

    ALIASES = {'random': KAIMING, 'firefly': FIREFLY_LITE}

    @staticmethod
    def fromString(name):
        name = str(name).strip().lower()
        name = ExtenderKind.ALIASES.get(name, name)
        if name not in ExtenderKind.ALL:
            raise InputError('unknown extender {!r}'.format(name))
        return name


class ExtenderInputs(object):
    """
    Everything an extender may need besides the network, the layer and the
    neuron count. ``adjust_passes`` counts the forward-backward adjustment
    passes run by the shared-weights extender.
    """

    def __init__(self, loss_kind=LossKind.MSE, lr=1e-3, rng=None, stage=1,
                 adjust_batch=None, adjust_lr=None, train_data=None,
                 batch_size=64, pool_factor=5, candidate_epochs=1,
                 chunk_size=CHUNK_SIZE, outputhandler=None,
                 errorhandler=None):
        self.loss_kind = loss_kind
        self.lr = lr
        self.rng = Utils.toRng(rng)
        self.stage = stage
        self.adjust_batch = adjust_batch
        self.adjust_lr = lr if adjust_lr is None else adjust_lr
        self.train_data = train_data
        self.batch_size = batch_size
        self.pool_factor = pool_factor
        self.candidate_epochs = candidate_epochs
        self.chunk_size = chunk_size
        self.outputhandler = outputhandler
        self.errorhandler = errorhandler
        self.adjust_passes = 0


def insert_neurons(net, layer_index, weights, biases, outgoing, stage):
    """
    Return a copy of ``net`` with new neurons appended to a hidden layer.

    Args:
        weights: Incoming weights of the new neurons, ``m x fan_in``.

        biases: Biases of the new neurons.

        outgoing: Columns appended to the next layer, ``width_next x m``.

        stage: Birth stage written in the tags of the new neurons.
    """
    net.checkHidden(layer_index)
    grown = net.copy()
    layer = grown.layers[layer_index]
    nxt = grown.layers[layer_index + 1]
    m = weights.shape[0]
    grown.layers[layer_index] = DenseLayer(
        np.vstack([layer.weights, weights]),
        np.concatenate([layer.biases, biases]),
        layer.tags + [NeuronTag(stage) for _ in range(m)])
    grown.layers[layer_index + 1] = DenseLayer(
        np.hstack([nxt.weights, outgoing]), nxt.biases, nxt.tags)
    return grown


def _check_request(net, layer_index, m):
    net.checkHidden(layer_index)
    if m < 0:
        raise InputError('cannot insert a negative number of neurons')


class CouplingSet(object):
    """
    Auxiliary coupling parameters of one shared-weights insertion:
    ``w_c[j, i]`` and ``b_c[j, i]`` tie new neuron ``j`` to existing neuron
    ``i``. Created all-zero.
    """

    def __init__(self, n_new, n_old, n_in):
        self.w_c = np.zeros((n_new, n_old, n_in))
        self.b_c = np.zeros((n_new, n_old))

    def effective(self, W_old, b_old, W_new, b_new):
        """
        Effective weights and biases of the grown layer, old rows first.
        """
        W = np.vstack([W_old - self.w_c.sum(axis=0),
                       W_new + self.w_c.sum(axis=1)])
        b = np.concatenate([b_old - self.b_c.sum(axis=0),
                            b_new + self.b_c.sum(axis=1)])
        return W, b

    def gradients(self, dW_eff, db_eff):
        """
        Chain rule from the effective parameters to the couplings:
        ``dL/dw_c[j, i] = dL/dw_new_eff[j] - dL/dw_i_eff[i]``.
        """
        n_old = self.w_c.shape[1]
        g_w = dW_eff[None, n_old:, :].transpose(1, 0, 2) - \
            dW_eff[None, :n_old, :]
        g_b = db_eff[n_old:, None] - db_eff[None, :n_old]
        return g_w, g_b

    def step(self, g_w, g_b, lr):
        self.w_c -= lr * g_w
        self.b_c -= lr * g_b


class SharedWeightsExtension(object):
    """
    State of one shared-weights insertion between the insertion of the new
    neurons and the merge of the couplings.
    """

    def __init__(self, net, layer_index, m, rng, stage=1):
        _check_request(net, layer_index, m)
        if m < 1:
            raise InputError('shared-weights insertion needs m >= 1')
        rng = Utils.toRng(rng)
        self.layer_index = layer_index
        self.stage = stage
        self.base = net.copy()
        layer = self.base.layers[layer_index]
        nxt = self.base.layers[layer_index + 1]
        self.W_old = layer.weights
        self.b_old = layer.biases
        self.W_new = kaiming_init(m, layer.numInputs(), rng)
        self.b_new = np.zeros(m)
        self.W_next = np.hstack([nxt.weights, np.zeros((nxt.numOutputs(), m))])
        self.b_next = nxt.biases.copy()
        self.couplings = CouplingSet(m, layer.numOutputs(), layer.numInputs())

    def numNew(self):
        return self.W_new.shape[0]

    def effectiveNetwork(self):
        """
        Network that uses the effective parameters of the current couplings.
        """
        l = self.layer_index
        W, b = self.couplings.effective(
            self.W_old, self.b_old, self.W_new, self.b_new)
        layer = self.base.layers[l]
        nxt = self.base.layers[l + 1]
        layers = [lay.copy() for lay in self.base.layers]
        layers[l] = DenseLayer(
            W, b, [NeuronTag(t.birth_stage) for t in layer.tags] +
            [NeuronTag(self.stage) for _ in range(self.numNew())])
        layers[l + 1] = DenseLayer(
            self.W_next.copy(), self.b_next.copy(),
            [NeuronTag(t.birth_stage) for t in nxt.tags])
        return Network(layers, self.base.head)

    def adjust(self, X, target, loss_kind, lr, chunk_size=CHUNK_SIZE):
        """
        One forward-backward pass over ``(X, target)`` with the effective
        parameters and one gradient step on the couplings and the next layer.

        Returns:
            The :class:`~neurogrow.GradientSet` of the effective network.
        """
        l = self.layer_index
        grads = accumulate_gradients(
            self.effectiveNetwork(), X, target, loss_kind, chunk_size)
        g_w, g_b = self.couplings.gradients(grads.dW[l], grads.db[l])
        self.couplings.step(g_w, g_b, lr)
        self.W_next -= lr * grads.dW[l + 1]
        self.b_next -= lr * grads.db[l + 1]
        return grads

    def merge(self):
        """
        Write the effective parameters into the base weights and discard the
        couplings.
        """
        merged = self.effectiveNetwork()
        self.couplings = None
        return merged


def swe_extend(net, layer_index, m, adjust_batch, loss_kind, lr, rng,
               stage=1, chunk_size=CHUNK_SIZE, errorhandler=None):
    """
    Grow a hidden layer by ``m`` neurons with the shared-weights extender.

    Args:
        net: Network to grow (not modified).

        layer_index: Hidden layer to grow.

        m: Number of new neurons; ``0`` returns an unchanged copy.

        adjust_batch: Pair ``(X, target)`` for the adjustment pass.

        loss_kind: A :class:`~neurogrow.LossKind` value.

        lr: Step size of the single plain gradient step.

        rng: Seed or Generator for the new base weights.

        stage: Birth stage of the new neurons.

        errorhandler: Receives an :class:`~neurogrow.InactivityWarning` when a
        new neuron never fires on the adjustment data.

    Raises:
        InputError: If ``layer_index`` is not a hidden layer or the
        adjustment batch is empty.
    """
    _check_request(net, layer_index, m)
    if m == 0:
        return net.copy()
    X, target = adjust_batch
    if len(X) == 0:
        raise InputError('adjustment batch is empty')
    extension = SharedWeightsExtension(net, layer_index, m, rng, stage)
    extension.adjust(X, target, loss_kind, lr, chunk_size)
    merged = extension.merge()
    if errorhandler is not None:
        n_old = net.layers[layer_index].numOutputs()
        maxima = max_activations(merged, np.asarray(X), chunk_size)
        silent = int(np.sum(maxima[layer_index][n_old:] <= 0))
        if silent:
            errorhandler.warning(InactivityWarning(
                '{} of {} new neurons in layer {} never fire on the '
                'adjustment data'.format(silent, m, layer_index)))
    return merged


def kaiming_extend(net, layer_index, m, rng, stage=1):
    """
    Grow a hidden layer by ``m`` neurons whose incoming and outgoing weights
    are Kaiming-initialized with the respective fan-ins (the layer's inputs
    and the grown layer's new width); new biases are zero.
    """
    _check_request(net, layer_index, m)
    if m == 0:
        return net.copy()
    rng = Utils.toRng(rng)
    layer = net.layers[layer_index]
    nxt = net.layers[layer_index + 1]
    weights = kaiming_init(m, layer.numInputs(), rng)
    outgoing = kaiming_init(nxt.numOutputs(), m, rng,
                            fan_in=layer.numOutputs() + m)
    return insert_neurons(net, layer_index, weights, np.zeros(m), outgoing,
                          stage)


def frobenius_rescale(matrix, target_norm):
    """
    Scale ``matrix`` so that its Frobenius norm equals ``target_norm``.

    Returns:
        The pair ``(scaled matrix, scale factor)``.

    Raises:
        DegenerateInputError: If ``matrix`` has zero norm.
    """
    norm = np.linalg.norm(matrix)
    if norm == 0:
        raise DegenerateInputError('cannot rescale a zero matrix')
    scale = target_norm / norm
    return matrix * scale, scale


def frobenius_extend(net, layer_index, m, rng, stage=1):
    """
    Kaiming insertion followed by rescaling the grown incoming matrix and the
    grown outgoing matrix of the next layer to their previous Frobenius
    norms.

    Raises:
        DegenerateInputError: If a matrix had zero norm before insertion.
    """
    _check_request(net, layer_index, m)
    if m == 0:
        return net.copy()
    before_in = np.linalg.norm(net.layers[layer_index].weights)
    before_out = np.linalg.norm(net.layers[layer_index + 1].weights)
    if before_in == 0 or before_out == 0:
        raise DegenerateInputError(
            'layer {} has a zero-norm weight matrix'.format(layer_index))
    grown = kaiming_extend(net, layer_index, m, rng, stage)
    layer = grown.layers[layer_index]
    nxt = grown.layers[layer_index + 1]
    layer.weights, _ = frobenius_rescale(layer.weights, before_in)
    nxt.weights, _ = frobenius_rescale(nxt.weights, before_out)
    return grown


class FireflyLiteExtension(object):
    """
    Candidate pool of a simplified firefly-style insertion: ``pool_factor``
    times more candidates than needed are inserted function-preservingly,
    trained alone, scored by the magnitude of their gating gradient and
    reduced to the best ``m``.
    """

    def __init__(self, net, layer_index, m, rng, pool_factor=5, stage=1):
        _check_request(net, layer_index, m)
        pool = int(pool_factor) * int(m)
        if pool < m:
            raise InputError(
                'candidate pool of {} is smaller than m = {}'.format(pool, m))
        self.rng = Utils.toRng(rng)
        self.layer_index = layer_index
        self.m = m
        self.n_old = net.layers[layer_index].numOutputs()
        layer = net.layers[layer_index]
        nxt = net.layers[layer_index + 1]
        self.candidates = insert_neurons(
            net, layer_index, kaiming_init(pool, layer.numInputs(), self.rng),
            np.zeros(pool), np.zeros((nxt.numOutputs(), pool)), stage)
        self.scores = None

    def masks(self):
        """
        Gradient masks that leave only the candidates' incoming and outgoing
        weights trainable. Candidate biases stay at zero.
        """
        l = self.layer_index
        masks = [np.zeros_like(p) for p in self.candidates.parameters()]
        masks[2 * l][self.n_old:, :] = 1.0
        masks[2 * (l + 1)][:, self.n_old:] = 1.0
        return masks

    def trainCandidates(self, train_data, epochs, batch_size, lr, loss_kind,
                        outputhandler=None):
        if epochs > 0:
            train(self.candidates, train_data, epochs, batch_size, lr,
                  self.rng, AdamState.fresh(self.candidates), loss_kind,
                  masks=self.masks(), outputhandler=outputhandler)

    def score(self, eval_batch, loss_kind, chunk_size=CHUNK_SIZE):
        grads = gating_gradients(self.candidates, self.layer_index,
                                 eval_batch, loss_kind, chunk_size)
        self.scores = np.abs(grads[self.n_old:])
        return self.scores

    def selected(self):
        """
        Indices (within the pool) of the ``m`` best candidates, in pool order.
        """
        order = np.argsort(-self.scores, kind='stable')
        return np.sort(order[:self.m])

    def select(self):
        l = self.layer_index
        keep = np.concatenate([np.arange(self.n_old),
                               self.n_old + self.selected()])
        net = self.candidates.copy()
        layer = net.layers[l]
        nxt = net.layers[l + 1]
        net.layers[l] = DenseLayer(layer.weights[keep], layer.biases[keep],
                                   [layer.tags[i] for i in keep])
        net.layers[l + 1] = DenseLayer(nxt.weights[:, keep], nxt.biases,
                                       nxt.tags)
        return net


def firefly_lite_extend(net, layer_index, m, train_batchset, loss_kind, lr,
                        rng, pool_factor=5, candidate_epochs=1,
                        batch_size=64, stage=1, chunk_size=CHUNK_SIZE,
                        outputhandler=None):
    """
    Grow a hidden layer by the ``m`` best of ``pool_factor * m`` trained
    candidates. This is a simplified candidate-pool scheme, not a full
    splitting-based method.

    Raises:
        InputError: If the pool would be smaller than ``m``.
    """
    _check_request(net, layer_index, m)
    if m == 0:
        return net.copy()
    extension = FireflyLiteExtension(net, layer_index, m, rng, pool_factor,
                                     stage)
    extension.trainCandidates(train_batchset, candidate_epochs, batch_size,
                              lr, loss_kind, outputhandler)
    extension.score((train_batchset.X, train_batchset.targets), loss_kind,
                    chunk_size)
    return extension.select()


def extend(kind, net, layer_index, m, inputs):
    """
    Grow one layer with the extender named by ``kind``.
    """
    if kind == ExtenderKind.SWE:
        adjust_batch = inputs.adjust_batch
        if adjust_batch is None and inputs.train_data is not None:
            adjust_batch = (inputs.train_data.X, inputs.train_data.targets)
        if adjust_batch is None:
            raise InputError('the shared-weights extender needs data')
        grown = swe_extend(net, layer_index, m, adjust_batch,
                           inputs.loss_kind, inputs.adjust_lr, inputs.rng,
                           inputs.stage, inputs.chunk_size,
                           inputs.errorhandler)
        inputs.adjust_passes += 1
        return grown
    elif kind == ExtenderKind.KAIMING:
        return kaiming_extend(net, layer_index, m, inputs.rng, inputs.stage)
    elif kind == ExtenderKind.FROBENIUS:
        return frobenius_extend(net, layer_index, m, inputs.rng, inputs.stage)
    elif kind == ExtenderKind.FIREFLY_LITE:
        if inputs.train_data is None:
            raise InputError('the firefly-lite extender needs training data')
        return firefly_lite_extend(
            net, layer_index, m, inputs.train_data, inputs.loss_kind,
            inputs.lr, inputs.rng, inputs.pool_factor,
            inputs.candidate_epochs, inputs.batch_size, inputs.stage,
            inputs.chunk_size, inputs.outputhandler)
    raise InputError('unknown extender {!r}'.format(kind))


def apply_plan(net, plan, extender, inputs):
    """
    Apply an extender to every hidden layer of a plan, from the input side to
    the output side, skipping layers that receive no neurons. Each layer sees
    the network produced by the previous ones.

    Raises:
        ConsistencyError: If the plan does not have one entry per hidden
        layer.
    """
    counts = plan.per_layer_counts
    if len(counts) != net.numHidden():
        raise ConsistencyError(
            'plan has {} entries for {} hidden layers'.format(
                len(counts), net.numHidden()))
    grown = net
    for l, m in enumerate(counts):
        if m == 0:
            continue
        before = grown.layers[l].numOutputs()
        grown = extend(extender, grown, l, int(m), inputs)
        emit(inputs.outputhandler, Kind.EXPAND,
             'stage {}: {} grew layer {} from {} to {}', plan.stage,
             extender, l, before, grown.layers[l].numOutputs())
    if grown is net:
        grown = net.copy()
    return grown
