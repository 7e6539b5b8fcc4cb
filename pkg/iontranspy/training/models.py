# -*- coding: utf-8 -*-
"""
The dual-modal trainer and the structure-only predictor.

Both encode with bias-free linear maps into d_h, normalise with LayerNorm and
decode with a rectifier MLP. The trainer adds the trajectory and the
structure-temperature encodings; the predictor only sees X.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from ..core import io
from ..numerics import Mlp, layernorm, init_encoder, save_checkpoint, load_checkpoint
from .config import D_H

from collections import OrderedDict

import numpy as np

WIDTHS = (128, 128, 128)

TAG_W_P = 51
TAG_W_XT = 52
TAG_W_TRJ = 53
TAG_W_STR = 54


def decoder_sizes(d_h, widths):
    return [int(d_h)] + [int(w) for w in widths] + [1]


def _matrix(W, name):
    W = np.array(W, dtype=float)
    if W.ndim != 2:
        raise ValueError('%s must be a matrix' % name)
    return W


class DualModalTrainer:
    """
    g = {W_p, W_xT, decoder}

    args

    - W_p      | d_p x d_h trajectory encoder
    - W_xT     | d_xT x d_h structure-temperature encoder
    - decoder  | Mlp with input d_h
    """

    def __init__(self, W_p, W_xT, decoder):
        self.W_p = _matrix(W_p, 'W_p')
        self.W_xT = _matrix(W_xT, 'W_xT')
        if not isinstance(decoder, Mlp): raise TypeError('decoder must be an Mlp')
        self.decoder = decoder
        if not self.W_p.shape[1] == self.W_xT.shape[1] == decoder.d_in:
            raise ValueError('d_h differs between encoders and decoder')

    @classmethod
    def create(cls, d_p, d_xT, d_h=D_H, widths=WIDTHS, seed=0):
        """Randomly initialised trainer."""
        return cls(init_encoder(d_p, d_h, seed, TAG_W_P),
                   init_encoder(d_xT, d_h, seed, TAG_W_XT),
                   Mlp(decoder_sizes(d_h, widths), seed=seed))

    @property
    def d_h(self):
        return self.W_xT.shape[1]

    @property
    def d_p(self):
        return self.W_p.shape[0]

    @property
    def d_xT(self):
        return self.W_xT.shape[0]

    def params(self):
        out = OrderedDict([('W_p', self.W_p), ('W_xT', self.W_xT)])
        out.update(self.decoder.params())
        return out

    def copy(self):
        return io.copy(self)

    def save(self, filename, optimizer=None):
        save_checkpoint(filename, self.params(), optimizer)

    def __eq__(self, other):
        if self.__class__ != other.__class__: return False
        return np.array_equal(self.W_p, other.W_p) and \
            np.array_equal(self.W_xT, other.W_xT) and self.decoder == other.decoder

    __hash__ = None

    def __repr__(self):
        return 'DualModalTrainer(d_p=%d, d_xT=%d, d_h=%d, decoder=%r)' % \
            (self.d_p, self.d_xT, self.d_h, self.decoder)


class Predictor:
    """
    f = {W, decoder}

    args

    - W        | d_xT x d_h encoder
    - decoder  | Mlp with input d_h

    kwargs

    - name     | checkpoint name of the encoder, 'W_trj' or 'W_str'
    """

    def __init__(self, W, decoder, name='W_trj'):
        self.W = _matrix(W, 'W')
        if not isinstance(decoder, Mlp): raise TypeError('decoder must be an Mlp')
        if self.W.shape[1] != decoder.d_in:
            raise ValueError('encoder output %d does not match decoder input %d' %
                             (self.W.shape[1], decoder.d_in))
        self.decoder = decoder
        self.name = str(name)

    @property
    def d_h(self):
        return self.W.shape[1]

    @property
    def d_xT(self):
        return self.W.shape[0]

    def params(self):
        out = OrderedDict([(self.name, self.W)])
        out.update(self.decoder.params())
        return out

    def predict(self, X):
        return predict(self, X)

    def copy(self):
        return io.copy(self)

    def save(self, filename, optimizer=None):
        save_checkpoint(filename, self.params(), optimizer)

    def __eq__(self, other):
        if self.__class__ != other.__class__: return False
        return np.array_equal(self.W, other.W) and self.decoder == other.decoder

    __hash__ = None

    def __repr__(self):
        return 'Predictor(%s, d_xT=%d, d_h=%d, decoder=%r)' % \
            (self.name, self.d_xT, self.d_h, self.decoder)


def _decoder_from(tensors):
    n = len([k for k in tensors if k.startswith('dec.layer') and k.endswith('.w')])
    weights = [tensors['dec.layer%d.w' % i] for i in range(n)]
    biases = [tensors['dec.layer%d.b' % i] for i in range(n)]
    sizes = [weights[0].shape[0]] + [w.shape[1] for w in weights]
    return Mlp(sizes, weights=weights, biases=biases)


def load_model(filename):
    """Trainer or Predictor from a checkpoint written by save()."""
    tensors, _ = load_checkpoint(filename)
    decoder = _decoder_from(tensors)
    if 'W_p' in tensors:
        return DualModalTrainer(tensors['W_p'], tensors['W_xT'], decoder)
    for name in ('W_trj', 'W_str'):
        if name in tensors:
            return Predictor(tensors[name], decoder, name)
    raise ValueError('%s holds no encoder tensor' % filename)


# Forward passes

def _check_dim(v, d, name):
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != d:
        raise ValueError('%s has dimension %d, expected %d' % (name, v.shape[-1], d))
    return v


def trainer_forward(g, E_p, X):
    """
    Returns (yhat, yhat_xT, H, H_xT) with H = E_p W_p + X W_xT taken before
    LayerNorm. Both predictions go through the same decoder.
    """
    E_p = _check_dim(E_p, g.d_p, 'E_p')
    X = _check_dim(X, g.d_xT, 'X')
    H_xT = X @ g.W_xT
    H = E_p @ g.W_p + H_xT
    return g.decoder.forward(layernorm(H)), g.decoder.forward(layernorm(H_xT)), H, H_xT


def encode(f, X):
    """Pre-LayerNorm representation X W."""
    return _check_dim(X, f.d_xT, 'X') @ f.W


def predict(f, X):
    """decoder(layernorm(X W)) for one vector or a batch of rows."""
    return f.decoder.forward(layernorm(encode(f, X)))
