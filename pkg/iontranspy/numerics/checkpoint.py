# -*- coding: utf-8 -*-
"""
Named-tensor checkpoints.

A checkpoint is a JSON document
{"tensors": [{"name", "shape", "values"}], "optimizer": {...} or null}
with row-major values.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from collections import OrderedDict
import json

import numpy as np


def _pack(tensors):
    return [OrderedDict([('name', name),
                         ('shape', list(np.shape(a))),
                         ('values', np.asarray(a, dtype=float).ravel().tolist())])
            for name, a in tensors.items()]


def _unpack(entries):
    out = OrderedDict()
    for e in entries:
        out[e['name']] = np.array(e['values'], dtype=float).reshape(e['shape'])
    return out


def save_checkpoint(filename, tensors, optimizer=None):
    """
    args

    - filename   | path
    - tensors    | mapping name -> array, order kept
    - optimizer  | AdamState or None
    """
    doc = OrderedDict([('tensors', _pack(tensors)), ('optimizer', None)])
    if optimizer is not None:
        st = optimizer.state()
        doc['optimizer'] = OrderedDict([('t', st['t']), ('factor', st['factor']),
                                        ('lr', st['lr']), ('decay', st['decay']),
                                        ('betas', st['betas']), ('eps', st['eps']),
                                        ('m', _pack(st['m'])), ('v', _pack(st['v']))])
    with open(filename, 'w') as f:
        json.dump(doc, f)


def load_checkpoint(filename):
    """Return (tensors, optimizer_state or None)."""
    with open(filename, 'r') as f:
        doc = json.load(f)
    tensors = _unpack(doc['tensors'])
    opt = doc.get('optimizer')
    if opt is not None:
        opt = dict(opt)
        opt['m'] = _unpack(opt['m'])
        opt['v'] = _unpack(opt['v'])
    return tensors, opt
