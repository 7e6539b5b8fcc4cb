# -*- coding: utf-8 -*-
"""
Adam with per-group learning rates and a per-epoch decay factor.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import numpy as np

GROUPS = ('encoder', 'decoder_early', 'decoder_late')
EARLY_LAYERS = 2


def default_group(name):
    """
    Parameter group of a named tensor: encoders, the first two decoder
    layers, and the remaining decoder layers.
    """
    if name.startswith('dec.layer'):
        layer = int(name[len('dec.layer'):].split('.')[0])
        return 'decoder_early' if layer < EARLY_LAYERS else 'decoder_late'
    return 'encoder'


class AdamState:
    """
    Moments and schedule of one optimisation run.

    args

    - params   | dict name -> array, only the shapes are read
    - lr       | float, or dict group -> float

    kwargs

    - decay    | fraction removed from every rate by each call to decay()
    - betas    | (beta1, beta2)
    - eps      | denominator guard
    - group_of | callable name -> group
    """

    def __init__(self, params, lr, decay=0., betas=(0.9, 0.999), eps=1e-8,
                 group_of=default_group):
        if isinstance(lr, dict):
            self.lr = {g: float(lr[g]) for g in lr}
        else:
            self.lr = {g: float(lr) for g in GROUPS}
        if any(r < 0 for r in self.lr.values()):
            raise ValueError('learning rates must be non-negative')
        if not 0 <= decay < 1:
            raise ValueError('decay must be in [0, 1)')
        self.decay_rate = float(decay)
        self.beta1, self.beta2 = float(betas[0]), float(betas[1])
        self.eps = float(eps)
        self.group_of = group_of
        self.t = 0
        self.factor = 1.
        self.m = {k: np.zeros(np.shape(p)) for k, p in params.items()}
        self.v = {k: np.zeros(np.shape(p)) for k, p in params.items()}

    def rate(self, name):
        """Current learning rate of a named tensor."""
        return self.lr[self.group_of(name)] * self.factor

    def step(self, params, grads):
        """Bias-corrected Adam update of *params* in place."""
        for name, g in grads.items():
            if name not in self.m:
                raise ValueError('no optimiser state for %s' % name)
            if np.shape(g) != self.m[name].shape or np.shape(params[name]) != self.m[name].shape:
                raise ValueError('shape mismatch for %s' % name)
        self.t += 1
        c1 = 1. - self.beta1 ** self.t
        c2 = 1. - self.beta2 ** self.t
        for name, g in grads.items():
            m = self.m[name]
            v = self.v[name]
            m *= self.beta1
            m += (1. - self.beta1) * g
            v *= self.beta2
            v += (1. - self.beta2) * np.square(g)
            params[name] -= self.rate(name) * (m / c1) / (np.sqrt(v / c2) + self.eps)
        return params

    def decay(self):
        """End-of-epoch decay of every group's rate."""
        self.factor *= 1. - self.decay_rate
        return self.factor

    def state(self):
        return {'t': self.t, 'factor': self.factor, 'lr': dict(self.lr),
                'decay': self.decay_rate, 'betas': [self.beta1, self.beta2], 'eps': self.eps,
                'm': self.m, 'v': self.v}

    def load_state(self, state):
        self.t = int(state['t'])
        self.factor = float(state['factor'])
        self.lr = {g: float(r) for g, r in state['lr'].items()}
        self.decay_rate = float(state['decay'])
        self.beta1, self.beta2 = [float(b) for b in state['betas']]
        self.eps = float(state['eps'])
        for name in self.m:
            self.m[name][...] = state['m'][name]
            self.v[name][...] = state['v'][name]


def adam_step(state, params, grads):
    return state.step(params, grads)
