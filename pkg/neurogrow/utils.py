# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted
from past.builtins import basestring
import math

import numpy as np

# Number of rows processed at once when streaming over a dataset.
CHUNK_SIZE = 4096


class Utils(object):
    @staticmethod
    def convToList(value):
        if isinstance(value, list):
            return value
        elif isinstance(value, tuple):
            return list(value)
        elif isinstance(value, basestring) and ',' in value:
            return [item.strip() for item in value.split(',') if item.strip()]
        else:
            return [value]

    @staticmethod
    def toRng(rng):
        """
        Accept a seed, a numpy Generator or None and return a Generator.
        """
        if isinstance(rng, np.random.Generator):
            return rng
        return np.random.default_rng(rng)

    @staticmethod
    def spawnRngs(seed, count):
        """
        Derive ``count`` independent generators from one integer seed.
        """
        children = np.random.SeedSequence(seed).spawn(count)
        return [np.random.default_rng(child) for child in children]

    @staticmethod
    def ceilFraction(fraction, value):
        """
        Ceil of ``fraction * value`` that ignores representation noise such
        as ``0.3 * 10 == 3.0000000000000004``.
        """
        return int(math.ceil(round(fraction * value, 9)))

    @staticmethod
    def chunks(n_rows, chunk_size=CHUNK_SIZE):
        """
        Yield ``(start, stop)`` pairs covering ``range(n_rows)``.
        """
        chunk_size = max(1, int(chunk_size))
        for start in range(0, n_rows, chunk_size):
            yield start, min(start + chunk_size, n_rows)

    @staticmethod
    def relativeError(analytic, numeric, atol=1e-8):
        """
        Elementwise relative error of ``analytic`` against ``numeric``.
        Differences below ``atol`` count as exact agreement.
        """
        analytic = np.asarray(analytic, dtype=np.float64)
        numeric = np.asarray(numeric, dtype=np.float64)
        diff = np.abs(analytic - numeric)
        err = diff / np.maximum(np.abs(numeric), atol)
        err[diff <= atol] = 0.0
        return err
