# -*- coding: utf-8 -*-
"""
Dataset acquisition and preparation.

Image datasets are read from IDX files (the MNIST distribution format):
a big-endian header with the magic number ``0x00000803`` for images or
``0x00000801`` for labels, one 32-bit count per dimension, then the raw
unsigned bytes. Files may be gzip-compressed.
"""
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted
import gzip
import os
import struct

import numpy as np

from .base import BaseClass
from .exceptions import DimensionError, FormatError, InputError, ConfigError
from .utils import Utils

IDX_IMAGES_MAGIC = 0x00000803
IDX_LABELS_MAGIC = 0x00000801

IDX_FILES = {
    'train': ('train-images-idx3-ubyte', 'train-labels-idx1-ubyte'),
    'test': ('t10k-images-idx3-ubyte', 't10k-labels-idx1-ubyte'),
}


class Task(object):
    """
    Learning task attached to a :class:`~neurogrow.Dataset`.
    """

    RECONSTRUCTION = 'reconstruction'
    CLASSIFICATION = 'classification'

    ALL = (RECONSTRUCTION, CLASSIFICATION)


class Dataset(BaseClass):
    """
    An immutable collection of samples: a feature matrix ``X`` (values in
    ``[0, 1]`` unless centered) and targets that are either class indices
    (classification) or a matrix with the shape of ``X`` (reconstruction).
    """

    def __init__(self, X, targets, name='dataset', n_classes=None,
                 labels=None):
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2:
            raise DimensionError('features must be a matrix')
        targets = np.asarray(targets)
        if targets.shape[0] != X.shape[0]:
            raise DimensionError(
                '{} targets for {} samples'.format(
                    targets.shape[0], X.shape[0]))
        if targets.ndim == 1:
            targets = targets.astype(np.int64)
            if n_classes is None:
                n_classes = int(targets.max()) + 1 if targets.size else 0
            if targets.size and (targets.min() < 0 or
                                 targets.max() >= n_classes):
                raise InputError('labels must lie in [0, n_classes)')
            self.task = Task.CLASSIFICATION
        else:
            targets = targets.astype(np.float64)
            self.task = Task.RECONSTRUCTION
        self.X = X
        self.targets = targets
        self.name = name
        self.n_classes = n_classes
        # Class indices kept aside when the targets are the inputs.
        self.labels = labels if labels is not None else (
            targets if self.task == Task.CLASSIFICATION else None)

    def __len__(self):
        return self.X.shape[0]

    def numFeatures(self):
        return self.X.shape[1]

    def outputDim(self):
        """
        Get the number of network outputs this dataset calls for.
        """
        if self.task == Task.CLASSIFICATION:
            return self.n_classes
        return self.targets.shape[1]

    def subset(self, indices, name=None):
        """
        Get the dataset restricted to the rows in ``indices``.
        """
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(
            self.X[indices], self.targets[indices],
            name if name is not None else self.name,
            n_classes=self.n_classes,
            labels=None if self.labels is None else self.labels[indices])

    def toString(self):
        return 'Dataset({!r}, {} x {}, {})'.format(
            self.name, len(self), self.numFeatures(), self.task)


class SplitSpec(object):
    """
    Seeded train/validation partition.
    """

    def __init__(self, val_fraction=0.1, seed=0):
        self.val_fraction = val_fraction
        self.seed = seed


def _open(path, gz):
    if gz is None:
        gz = str(path).endswith('.gz')
    if gz:
        return gzip.open(path, 'rb')
    return open(path, 'rb')


def _read_idx(path, magic, gz):
    if not os.path.exists(str(path)):
        raise FormatError('file not found', sourceName=path, offset=0)
    try:
        with _open(path, gz) as f:
            raw = f.read()
    except (IOError, OSError, EOFError) as e:
        raise FormatError(str(e), sourceName=path, offset=0)
    if len(raw) < 8:
        raise FormatError(
            'truncated header ({} bytes)'.format(len(raw)),
            sourceName=path, offset=len(raw))
    found, = struct.unpack('>I', raw[:4])
    if found != magic:
        raise FormatError(
            'bad magic number 0x{:08x}, expected 0x{:08x}'.format(
                found, magic), sourceName=path, offset=0)
    n_dims = magic & 0xff
    header = 4 + 4 * n_dims
    if len(raw) < header:
        raise FormatError(
            'truncated header ({} bytes, expected {})'.format(
                len(raw), header), sourceName=path, offset=len(raw))
    dims = struct.unpack('>' + 'I' * n_dims, raw[4:header])
    size = int(np.prod(dims)) if dims else 0
    if len(raw) < header + size:
        raise FormatError(
            'truncated data ({} bytes, expected {})'.format(
                len(raw) - header, size),
            sourceName=path, offset=len(raw))
    data = np.frombuffer(raw, dtype=np.uint8, count=size, offset=header)
    return data.reshape(dims)


def load_idx(images_path, labels_path, gz=None, name=None):
    """
    Load an image/label pair of IDX files.

    Args:
        images_path: Path of the ``idx3`` image file.

        labels_path: Path of the ``idx1`` label file.

        gz: Force gzip decompression on or off; by default it is decided by
        the ``.gz`` suffix.

        name: Dataset name.

    Returns:
        A classification :class:`~neurogrow.Dataset` with pixels scaled to
        ``[0, 1]`` and every image flattened to one row.

    Raises:
        FormatError: On bad magic numbers, truncated files or when the label
        count does not match the image count.
    """
    images = _read_idx(images_path, IDX_IMAGES_MAGIC, gz)
    labels = _read_idx(labels_path, IDX_LABELS_MAGIC, gz)
    if images.shape[0] != labels.shape[0]:
        raise FormatError(
            '{} labels for {} images'.format(
                labels.shape[0], images.shape[0]),
            sourceName=labels_path, offset=4)
    X = images.reshape(images.shape[0], -1).astype(np.float64) / 255.0
    y = labels.astype(np.int64)
    n_classes = max(10, int(y.max()) + 1) if y.size else 10
    if name is None:
        name = os.path.basename(str(images_path))
    return Dataset(X, y, name, n_classes=n_classes)


def save_idx(path, array):
    """
    Write a ``uint8`` array as an IDX file: 3-dimensional arrays as images,
    1-dimensional arrays as labels. The file is gzip-compressed when the path
    ends in ``.gz``.
    """
    array = np.asarray(array)
    if array.ndim == 3:
        magic = IDX_IMAGES_MAGIC
    elif array.ndim == 1:
        magic = IDX_LABELS_MAGIC
    else:
        raise DimensionError('IDX writer handles 1-D or 3-D arrays only')
    payload = struct.pack('>I', magic) + \
        struct.pack('>' + 'I' * array.ndim, *array.shape) + \
        array.astype(np.uint8).tobytes()
    opener = gzip.open if str(path).endswith('.gz') else open
    with opener(path, 'wb') as f:
        f.write(payload)


def locate_idx(data_dir, name, split='train'):
    """
    Find the IDX files of a named dataset (``mnist`` or ``fmnist``) below
    ``data_dir/<name>/``, with or without the ``.gz`` suffix.
    """
    if data_dir is None:
        raise ConfigError(
            'no data directory: use --data-dir or set NEUROGROW_DATA')
    paths = []
    for fname in IDX_FILES[split]:
        base = os.path.join(data_dir, name, fname)
        for candidate in (base, base + '.gz'):
            if os.path.exists(candidate):
                paths.append(candidate)
                break
        else:
            raise ConfigError('missing dataset file {}[.gz]'.format(base))
    return paths


def load_named(name, data_dir, split='train'):
    """
    Load the ``train`` or ``test`` split of ``mnist`` or ``fmnist``.
    """
    images_path, labels_path = locate_idx(data_dir, name, split)
    return load_idx(images_path, labels_path,
                    name='{}-{}'.format(name, split))


def make_reconstruction(ds):
    """
    Turn a dataset into a reconstruction task whose targets are its inputs.
    """
    return Dataset(ds.X, ds.X, ds.name, labels=ds.labels)


def center_features(reference, *others):
    """
    Shift features to zero column means on ``reference`` and scale them so
    the largest absolute value on ``reference`` is one. The same transform
    is applied to ``others``.

    Returns:
        A tuple with the transformed ``reference`` followed by ``others``.
    """
    mean = reference.X.mean(axis=0)
    scale = np.abs(reference.X - mean).max() if len(reference) else 0.0
    if scale == 0:
        scale = 1.0
    return tuple(
        Dataset((ds.X - mean) / scale, ds.targets, ds.name,
                n_classes=ds.n_classes, labels=ds.labels)
        for ds in (reference,) + others)



def synthetic_blobs(n_classes, n_per_class, dim, spread, rng):
    """
    Gaussian clusters around seeded random centers, rescaled into
    ``[0, 1]``, labelled by cluster.
    """
    if n_classes < 1 or n_per_class < 1 or dim < 1:
        raise InputError('synthetic_blobs needs positive counts')
    rng = Utils.toRng(rng)
    centers = rng.uniform(-1.0, 1.0, size=(n_classes, dim))
    labels = np.repeat(np.arange(n_classes), n_per_class)
    X = centers[labels] + spread * rng.normal(size=(labels.shape[0], dim))
    lo, hi = X.min(), X.max()
    if hi > lo:
        X = (X - lo) / (hi - lo)
    else:
        X = np.zeros_like(X)
    return Dataset(X, labels, 'blobs', n_classes=n_classes)


def split(ds, spec):
    """
    Partition a dataset into a training and a validation part after a seeded
    permutation.

    Raises:
        InputError: If the fraction is not in ``(0, 1)`` or one side would be
        empty.
    """
    if not 0.0 < spec.val_fraction < 1.0:
        raise InputError('val_fraction must lie in (0, 1)')
    n_rows = len(ds)
    n_val = int(round(spec.val_fraction * n_rows))
    if n_val < 1 or n_val >= n_rows:
        raise InputError(
            'split of {} rows with fraction {} leaves an empty part'.format(
                n_rows, spec.val_fraction))
    perm = np.random.default_rng(spec.seed).permutation(n_rows)
    train_idx = np.sort(perm[n_val:])
    val_idx = np.sort(perm[:n_val])
    return (ds.subset(train_idx, ds.name + '-train'),
            ds.subset(val_idx, ds.name + '-val'))


def batches(ds, batch_size, rng):
    """
    Yield ``(X, target)`` chunks of one epoch in a seeded random order; the
    final short batch is included.
    """
    if batch_size < 1:
        raise InputError('batch_size must be >= 1')
    order = Utils.toRng(rng).permutation(len(ds))
    for start, stop in Utils.chunks(len(ds), batch_size):
        idx = order[start:stop]
        yield ds.X[idx], ds.targets[idx]
