# -*- coding: utf-8 -*-
"""
Pre-computed embeddings.

An EmbeddedSample is what the learning code sees: the structure-temperature
vector X, the trajectory vector E_p (None when no trajectory was available)
and the log10 target.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from .data import Record, frozen

import numpy as np


class EmbeddedSample(Record):
    """
    args

    - id           | sample id
    - split        | 'train' or 'test'
    - x_vec        | d_xT vector
    - p_vec        | d_p vector or None
    - y_log10      | target, log10 scale
    - temperature  | kelvin
    """

    def __init__(self, id, split, x_vec, p_vec, y_log10, temperature):
        self._id = str(id)
        self._split = str(split)
        self._x_vec = frozen(x_vec, ndim=1, name='x_vec')
        self._p_vec = None if p_vec is None else frozen(p_vec, ndim=1, name='p_vec')
        self._y_log10 = float(y_log10)
        self._temperature = float(temperature)

    @property
    def id(self):
        return self._id

    @property
    def split(self):
        return self._split

    @property
    def x_vec(self):
        return self._x_vec

    @property
    def p_vec(self):
        return self._p_vec

    @property
    def y_log10(self):
        return self._y_log10

    @property
    def temperature(self):
        return self._temperature

    def without_trajectory(self):
        return EmbeddedSample(self._id, self._split, self._x_vec, None,
                              self._y_log10, self._temperature)

    def __repr__(self):
        return 'EmbeddedSample(%r, %s, d_xT=%d, d_p=%s)' % \
            (self._id, self._split, self._x_vec.size,
             None if self._p_vec is None else self._p_vec.size)


class EmbeddedDataset(Record):
    """
    A list of EmbeddedSamples with stacked views.

    Samples keep their order; X(), P() and y() stack rows in that order.
    """

    def __init__(self, samples):
        samples = tuple(samples)
        for s in samples:
            if not isinstance(s, EmbeddedSample): raise TypeError('expecting EmbeddedSamples')
        if len(samples) > 0:
            dims = set(s.x_vec.size for s in samples)
            if len(dims) != 1:
                raise ValueError('x_vec dimensions differ: %s' % sorted(dims))
        self._samples = samples

    @property
    def samples(self):
        return self._samples

    @property
    def d_xT(self):
        return self._samples[0].x_vec.size if self._samples else 0

    @property
    def d_p(self):
        for s in self._samples:
            if s.p_vec is not None: return s.p_vec.size
        return 0

    def split(self, tag):
        """Sub-dataset of one split."""
        return EmbeddedDataset(s for s in self._samples if s.split == tag)

    def train(self):
        return self.split('train')

    def test(self):
        return self.split('test')

    def without_trajectory(self):
        return EmbeddedDataset(s.without_trajectory() for s in self._samples)

    def has_trajectories(self):
        return len(self._samples) > 0 and all(s.p_vec is not None for s in self._samples)

    def X(self):
        return np.array([s.x_vec for s in self._samples]).reshape(len(self), -1)

    def P(self):
        """Stacked p vectors; fails if any sample has none."""
        missing = [s.id for s in self._samples if s.p_vec is None]
        if missing:
            raise ValueError('no trajectory embedding for %s' % missing[0])
        return np.array([s.p_vec for s in self._samples]).reshape(len(self), -1)

    def y(self):
        return np.array([s.y_log10 for s in self._samples])

    def temperatures(self):
        return np.array([s.temperature for s in self._samples])

    def ids(self):
        return [s.id for s in self._samples]

    def __len__(self):
        return len(self._samples)

    def __iter__(self):
        return iter(self._samples)

    def __getitem__(self, i):
        return self._samples[i]

    def __repr__(self):
        return 'EmbeddedDataset(n=%d, d_xT=%d, d_p=%d)' % (len(self), self.d_xT, self.d_p)
