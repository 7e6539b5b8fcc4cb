# -*- coding: utf-8 -*-
"""
LayerNorm, the rectifier MLP and the L1 loss, with hand-written gradients.

Every function accepts a single vector or a batch of row vectors.
Gradients over a batch are summed.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import numpy as np

LN_EPS = 1e-5
TAG_INIT = 41


def init_rng(seed, tag=TAG_INIT):
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(tag)]))


def init_encoder(d_in, d_out, seed, tag=TAG_INIT + 1):
    """Bias-free linear encoder, uniform in +-1/sqrt(d_in)."""
    bound = 1. / np.sqrt(d_in)
    return init_rng(seed, tag).uniform(-bound, bound, size=(d_in, d_out))


# LayerNorm without affine parameters

def layernorm(v):
    v = np.asarray(v, dtype=float)
    if v.shape[-1] < 2:
        raise ValueError('layernorm needs at least 2 features')
    mu = v.mean(axis=-1, keepdims=True)
    var = v.var(axis=-1, keepdims=True)
    return (v - mu) / np.sqrt(var + LN_EPS)


def layernorm_backward(v, dy):
    """Gradient with respect to v given the upstream gradient dy."""
    v = np.asarray(v, dtype=float)
    sigma = np.sqrt(v.var(axis=-1, keepdims=True) + LN_EPS)
    y = (v - v.mean(axis=-1, keepdims=True)) / sigma
    dy = np.asarray(dy, dtype=float)
    return (dy - dy.mean(axis=-1, keepdims=True)
            - y * (dy * y).mean(axis=-1, keepdims=True)) / sigma


# Multilayer perceptron

class Mlp:
    """
    Rectifier MLP with a scalar output.

    args

    - layer_sizes | [d_in, h1, ..., 1]

    kwargs

    - seed        | weights and biases uniform in +-1/sqrt(fan_in)
    - weights     | explicit list of (fan_in x fan_out) arrays
    - biases      | explicit list of fan_out arrays
    """

    def __init__(self, layer_sizes, seed=0, weights=None, biases=None):
        sizes = [int(n) for n in layer_sizes]
        if len(sizes) < 2:
            raise ValueError('need at least an input and an output size')
        if sizes[-1] != 1:
            raise ValueError('output layer must have size 1')
        if any(n < 1 for n in sizes):
            raise ValueError('layer sizes must be positive')
        self._sizes = sizes
        if weights is None:
            rng = init_rng(seed)
            weights, biases = [], []
            for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
                bound = 1. / np.sqrt(fan_in)
                weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
                biases.append(rng.uniform(-bound, bound, size=fan_out))
        self.weights = [np.array(w, dtype=float) for w in weights]
        self.biases = [np.array(b, dtype=float).reshape(-1) for b in biases]
        for i, (fan_in, fan_out) in enumerate(zip(sizes[:-1], sizes[1:])):
            if self.weights[i].shape != (fan_in, fan_out) or self.biases[i].shape != (fan_out,):
                raise ValueError('layer %d parameters do not chain' % i)

    @property
    def layer_sizes(self):
        return list(self._sizes)

    @property
    def n_layers(self):
        return len(self.weights)

    @property
    def d_in(self):
        return self._sizes[0]

    @classmethod
    def zeros(cls, layer_sizes):
        sizes = list(layer_sizes)
        return cls(sizes, weights=[np.zeros((a, b)) for a, b in zip(sizes[:-1], sizes[1:])],
                   biases=[np.zeros(b) for b in sizes[1:]])

    def params(self):
        """Named parameter arrays (views, not copies)."""
        out = {}
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            out['dec.layer%d.w' % i] = w
            out['dec.layer%d.b' % i] = b
        return out

    def set_params(self, params):
        for i in range(self.n_layers):
            self.weights[i][...] = params['dec.layer%d.w' % i]
            self.biases[i][...] = params['dec.layer%d.b' % i]

    def _check(self, v):
        v = np.asarray(v, dtype=float)
        if v.shape[-1] != self._sizes[0]:
            raise ValueError('input has dimension %d, expected %d' % (v.shape[-1], self._sizes[0]))
        return v

    def _activations(self, v):
        a = [v]
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            z = a[-1] @ w + b
            a.append(np.maximum(z, 0.) if i < self.n_layers - 1 else z)
        return a

    def forward(self, v):
        """Scalar prediction, or one per row of a batch."""
        v = self._check(v)
        out = self._activations(v)[-1][..., 0]
        return float(out) if out.ndim == 0 else out

    def backward(self, v, upstream):
        """
        Gradients of upstream * output with respect to every parameter and v.

        Returns (grads, dv) with grads keyed like params(). The forward pass is
        recomputed; rectifier subgradient at 0 is 0.
        """
        v = self._check(v)
        a = self._activations(v)
        batch = v.ndim == 2
        d = np.asarray(upstream, dtype=float).reshape(-1, 1) if batch \
            else np.array([float(upstream)])
        grads = {}
        for i in range(self.n_layers - 1, -1, -1):
            x = a[i]
            if batch:
                grads['dec.layer%d.w' % i] = x.T @ d
                grads['dec.layer%d.b' % i] = d.sum(axis=0)
            else:
                grads['dec.layer%d.w' % i] = np.outer(x, d)
                grads['dec.layer%d.b' % i] = d.copy()
            d = d @ self.weights[i].T
            if i > 0:
                d = d * (a[i] > 0)
        return grads, d

    def __eq__(self, other):
        if self.__class__ != other.__class__: return False
        if self._sizes != other._sizes: return False
        return all(np.array_equal(x, y) for x, y in zip(self.weights + self.biases,
                                                          other.weights + other.biases))

    __hash__ = None

    def __repr__(self):
        return 'Mlp(%s)' % self._sizes


def mlp_forward(m, v):
    return m.forward(v)


def mlp_backward(m, v, upstream):
    return m.backward(v, upstream)


# Loss

def l1_loss(yhat, y):
    """(|yhat - y|, sign(yhat - y)) with sign(0) = 0."""
    r = np.asarray(yhat, dtype=float) - np.asarray(y, dtype=float)
    if r.ndim == 0:
        return float(abs(r)), float(np.sign(r))
    return np.abs(r), np.sign(r)
