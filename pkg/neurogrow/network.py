# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted

import numpy as np

from .base import BaseClass
from .exceptions import DimensionError, InputError
from .utils import Utils


class Head(object):
    """
    Output head of a :class:`~neurogrow.Network`.
    """

    IDENTITY = 'identity'
    """
    Linear output, used for reconstruction.
    """

    SOFTMAX = 'softmax'
    """
    Logits fed to a softmax, used for classification. The forward pass
    returns the logits; the softmax is applied by the loss.
    """

    ALL = (IDENTITY, SOFTMAX)


def kaiming_init(n_out, n_in, rng, fan_in=None):
    """
    Draw an ``n_out x n_in`` matrix with i.i.d. normal entries of mean 0 and
    standard deviation ``sqrt(2 / fan_in)``.

    Args:
        n_out: Number of rows.

        n_in: Number of columns.

        rng: Seed or numpy Generator.

        fan_in: Fan-in used for the scale, defaults to ``n_in``.

    Raises:
        DimensionError: If a dimension is smaller than one.
    """
    n_out, n_in = int(n_out), int(n_in)
    if n_out < 1 or n_in < 1:
        raise DimensionError(
            'kaiming_init needs positive dimensions, got {}x{}'.format(
                n_out, n_in))
    if fan_in is None:
        fan_in = n_in
    std = np.sqrt(2.0 / fan_in)
    return Utils.toRng(rng).normal(0.0, std, size=(n_out, n_in))


class NeuronTag(object):
    """
    Provenance of one neuron: the stage at which it was inserted (0 for the
    neurons of the initial network).
    """

    def __init__(self, birth_stage=0):
        if birth_stage < 0:
            raise InputError('birth_stage must be >= 0')
        self.birth_stage = int(birth_stage)

    def __eq__(self, other):
        return (isinstance(other, NeuronTag) and
                other.birth_stage == self.birth_stage)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self.birth_stage)

    def __repr__(self):
        return 'NeuronTag({})'.format(self.birth_stage)


class DenseLayer(BaseClass):
    """
    A fully connected layer: weights (``n_out x n_in``), biases and one
    :class:`~neurogrow.NeuronTag` per output neuron.
    """

    def __init__(self, weights, biases, tags=None):
        weights = np.array(weights, dtype=np.float64, ndmin=2)
        biases = np.array(biases, dtype=np.float64).reshape(-1)
        if weights.ndim != 2:
            raise DimensionError('weights must be a matrix')
        if biases.shape[0] != weights.shape[0]:
            raise DimensionError(
                'got {} biases for {} neurons'.format(
                    biases.shape[0], weights.shape[0]))
        if tags is None:
            tags = [NeuronTag(0) for _ in range(weights.shape[0])]
        tags = list(tags)
        if len(tags) != weights.shape[0]:
            raise DimensionError(
                'got {} tags for {} neurons'.format(
                    len(tags), weights.shape[0]))
        self.weights = weights
        self.biases = biases
        self.tags = tags

    def numOutputs(self):
        """
        Get the number of neurons of this layer.
        """
        return self.weights.shape[0]

    def numInputs(self):
        """
        Get the fan-in of this layer.
        """
        return self.weights.shape[1]

    def birthStages(self):
        """
        Get the birth stage of every neuron as an integer array.
        """
        return np.array([tag.birth_stage for tag in self.tags], dtype=np.int64)

    def copy(self):
        return DenseLayer(
            self.weights.copy(), self.biases.copy(),
            [NeuronTag(tag.birth_stage) for tag in self.tags])

    def toString(self):
        return 'DenseLayer({} -> {})'.format(
            self.numInputs(), self.numOutputs())


class Network(BaseClass):
    """
    A fully connected ReLU network. Every layer but the last is hidden and
    uses the ReLU activation; the last layer is linear and its output is
    interpreted according to the head (see :class:`~neurogrow.Head`).

    Networks are grown by the extenders in :mod:`neurogrow.extenders`, which
    append neurons at the end of a hidden layer and the matching columns at
    the end of the next layer.
    """

    def __init__(self, layers, head=Head.IDENTITY):
        layers = list(layers)
        if len(layers) < 2:
            raise DimensionError('a network needs at least one hidden layer')
        if head not in Head.ALL:
            raise InputError('unknown output head {!r}'.format(head))
        for l in range(1, len(layers)):
            if layers[l].numInputs() != layers[l - 1].numOutputs():
                raise DimensionError(
                    'layer {} expects {} inputs but layer {} has {} '
                    'neurons'.format(
                        l, layers[l].numInputs(), l - 1,
                        layers[l - 1].numOutputs()))
        self.layers = layers
        self.head = head

    @classmethod
    def build(cls, input_dim, hidden_widths, output_dim, rng,
              head=Head.IDENTITY):
        """
        Create a Kaiming-initialized network with zero biases.

        Args:
            input_dim: Number of input features.

            hidden_widths: Width of each hidden layer.

            output_dim: Number of outputs.

            rng: Seed or numpy Generator.

            head: Output head.
        """
        rng = Utils.toRng(rng)
        dims = [int(input_dim)] + [int(w) for w in hidden_widths] + \
            [int(output_dim)]
        if len(dims) < 3:
            raise DimensionError('a network needs at least one hidden layer')
        layers = []
        for n_in, n_out in zip(dims[:-1], dims[1:]):
            layers.append(DenseLayer(
                kaiming_init(n_out, n_in, rng), np.zeros(n_out)))
        return cls(layers, head)

    def numHidden(self):
        """
        Get the number of hidden layers.
        """
        return len(self.layers) - 1

    def hiddenWidths(self):
        """
        Get the width of every hidden layer.
        """
        return [layer.numOutputs() for layer in self.layers[:-1]]

    def inputDim(self):
        return self.layers[0].numInputs()

    def outputDim(self):
        return self.layers[-1].numOutputs()

    def numParameters(self):
        return sum(layer.weights.size + layer.biases.size
                   for layer in self.layers)

    def parameters(self):
        """
        Get the parameter arrays in the order
        ``[W_0, b_0, W_1, b_1, ...]``. The arrays are the live storage of
        the network, so in-place updates modify the network.
        """
        params = []
        for layer in self.layers:
            params.append(layer.weights)
            params.append(layer.biases)
        return params

    def checkHidden(self, layer_index):
        """
        Raise :class:`~neurogrow.InputError` unless ``layer_index`` addresses
        a hidden layer.
        """
        if layer_index < 0 or layer_index >= self.numHidden():
            raise InputError(
                'layer {} is not a hidden layer (network has {} hidden '
                'layers)'.format(layer_index, self.numHidden()))

    def copy(self):
        return Network([layer.copy() for layer in self.layers], self.head)

    def toString(self):
        return 'Network({} -> {} -> {}, head={})'.format(
            self.inputDim(), self.hiddenWidths(), self.outputDim(), self.head)


class ForwardTrace(object):
    """
    Record of a forward pass: the input batch and, for every layer, the
    preactivations ``u_l`` and activations ``h_l`` (``h_l = max(0, u_l)`` for
    hidden layers, ``h_l = u_l`` for the output layer).
    """

    def __init__(self, inputs, preactivations, activations):
        self.inputs = inputs
        self.preactivations = preactivations
        self.activations = activations

    @property
    def output(self):
        return self.activations[-1]

    def layerInput(self, layer_index):
        """
        Get the input seen by layer ``layer_index``.
        """
        if layer_index == 0:
            return self.inputs
        return self.activations[layer_index - 1]

    def probabilities(self):
        """
        Softmax of the output, for classification heads.
        """
        from .losses import softmax
        return softmax(self.output)


def relu(u):
    return np.maximum(u, 0.0)


def forward(net, X):
    """
    Run the network on a batch.

    Args:
        net: The :class:`~neurogrow.Network`.

        X: Batch matrix with ``net.inputDim()`` columns.

    Returns:
        A :class:`~neurogrow.ForwardTrace`.

    Raises:
        DimensionError: If the batch does not match the input dimension.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != net.inputDim():
        raise DimensionError(
            'batch of shape {} does not match input dimension {}'.format(
                X.shape, net.inputDim()))
    preactivations = []
    activations = []
    h = X
    last = len(net.layers) - 1
    for l, layer in enumerate(net.layers):
        u = np.dot(h, layer.weights.T) + layer.biases
        h = u if l == last else relu(u)
        preactivations.append(u)
        activations.append(h)
    return ForwardTrace(X, preactivations, activations)


def predict(net, X):
    """
    Get the network output (logits for classification heads).
    """
    return forward(net, X).output
