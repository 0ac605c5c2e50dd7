# -*- coding: utf-8 -*-
"""
Binary network container.

Layout (all integers little-endian)::

    magic      6 bytes   b'NGROW1'
    version    uint16    1
    head       uint8     0 = identity, 1 = softmax
    n_layers   uint32
    then for every layer:
      n_out    uint32
      n_in     uint32
      weights  n_out * n_in float64, row-major
      biases   n_out float64
      tags     n_out int32 birth stages
"""
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted
import struct

import numpy as np

from .exceptions import FormatError
from .network import DenseLayer, Head, Network, NeuronTag

MAGIC = b'NGROW1'
VERSION = 1
HEAD_CODES = {Head.IDENTITY: 0, Head.SOFTMAX: 1}
_PREAMBLE = struct.Struct('<HBI')
_LAYER = struct.Struct('<II')


def save_network(net, path):
    """
    Write ``net`` to ``path`` in the ``NGROW1`` format.
    """
    parts = [MAGIC, _PREAMBLE.pack(VERSION, HEAD_CODES[net.head],
                                   len(net.layers))]
    for layer in net.layers:
        parts.append(_LAYER.pack(layer.numOutputs(), layer.numInputs()))
        parts.append(np.ascontiguousarray(layer.weights, '<f8').tobytes())
        parts.append(np.ascontiguousarray(layer.biases, '<f8').tobytes())
        parts.append(layer.birthStages().astype('<i4').tobytes())
    with open(path, 'wb') as f:
        f.write(b''.join(parts))


class _Reader(object):
    def __init__(self, raw, path):
        self.raw = raw
        self.path = path
        self.offset = 0

    def take(self, size, what):
        if self.offset + size > len(self.raw):
            raise FormatError('truncated {}'.format(what),
                              sourceName=self.path, offset=len(self.raw))
        chunk = self.raw[self.offset:self.offset + size]
        self.offset += size
        return chunk

    def unpack(self, fmt, what):
        return fmt.unpack(self.take(fmt.size, what))

    def array(self, dtype, count, what):
        dtype = np.dtype(dtype)
        chunk = self.take(dtype.itemsize * count, what)
        return np.frombuffer(chunk, dtype=dtype).astype(dtype.newbyteorder('='))


def load_network(path):
    """
    Read a network written by :func:`save_network`.

    Raises:
        FormatError: On a bad magic string, an unknown version or head, or a
        truncated file.
    """
    with open(path, 'rb') as f:
        raw = f.read()
    reader = _Reader(raw, path)
    if reader.take(len(MAGIC), 'magic') != MAGIC:
        raise FormatError('bad magic string, not an NGROW1 file',
                          sourceName=path, offset=0)
    version, head_code, n_layers = reader.unpack(_PREAMBLE, 'header')
    if version != VERSION:
        raise FormatError('unsupported version {}'.format(version),
                          sourceName=path, offset=len(MAGIC))
    heads = dict((code, head) for head, code in HEAD_CODES.items())
    if head_code not in heads:
        raise FormatError('unknown head code {}'.format(head_code),
                          sourceName=path, offset=len(MAGIC) + 2)
    layers = []
    for l in range(n_layers):
        n_out, n_in = reader.unpack(_LAYER, 'layer {} header'.format(l))
        weights = reader.array('<f8', n_out * n_in,
                               'layer {} weights'.format(l))
        biases = reader.array('<f8', n_out, 'layer {} biases'.format(l))
        tags = reader.array('<i4', n_out, 'layer {} tags'.format(l))
        layers.append(DenseLayer(weights.reshape(n_out, n_in), biases,
                                 [NeuronTag(int(t)) for t in tags]))
    if reader.offset != len(raw):
        raise FormatError('{} trailing bytes'.format(len(raw) - reader.offset),
                          sourceName=path, offset=reader.offset)
    return Network(layers, heads[head_code])
