# -*- coding: utf-8 -*-
"""
Adam training loops.

Each loop works on a deep copy of its input model, visits the train samples
in a seeded shuffled order (batch_size samples per update) and returns the
trained model with a per-epoch log {epoch, train_l1, aux_l1}. Row 0 of the
log is evaluated before any update.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from ..core.embedded import EmbeddedDataset
from ..numerics import AdamState, layernorm, layernorm_backward, l1_loss
from .config import trainer_config, finetune_config, structure_config
from .models import DualModalTrainer, Predictor, trainer_forward, predict, encode

import numpy as np
import pandas as pd
import matplotlib.pyplot as plt
import logging

logger = logging.getLogger(__name__)

TAG_ORDER = 61
LOG_COLUMNS = ['epoch', 'train_l1', 'aux_l1']


def order_rng(seed):
    return np.random.default_rng(np.random.SeedSequence([int(seed), TAG_ORDER]))


def _batches(n, batch_size, rng):
    perm = rng.permutation(n)
    return [perm[i:i + batch_size] for i in range(0, n, batch_size)]


def _train_split(eds):
    if not isinstance(eds, EmbeddedDataset):
        raise TypeError('expecting an EmbeddedDataset')
    train = eds.train()
    if len(train) == 0:
        raise ValueError('no train samples')
    return train


# Dual-modal trainer

def trainer_losses(g, P, X, y, lambda_b):
    """Per-sample |yhat - y| + lambda_b |yhat_xT - y| and its two parts."""
    yhat, yhat_xT, _, _ = trainer_forward(g, P, X)
    l, _ = l1_loss(yhat, y)
    lx, _ = l1_loss(yhat_xT, y)
    return l + lambda_b * lx, l, lx


def trainer_gradients(g, P, X, y, lambda_b):
    """Summed loss and gradients over a batch of rows."""
    H_xT = X @ g.W_xT
    H = P @ g.W_p + H_xT
    Z, Z_xT = layernorm(H), layernorm(H_xT)
    l, s = l1_loss(g.decoder.forward(Z), y)
    lx, sx = l1_loss(g.decoder.forward(Z_xT), y)
    grads, dZ = g.decoder.backward(Z, s)
    aux, dZ_xT = g.decoder.backward(Z_xT, lambda_b * sx)
    for k in grads:
        grads[k] = grads[k] + aux[k]
    dH = layernorm_backward(H, dZ)
    dH_xT = layernorm_backward(H_xT, dZ_xT) + dH
    grads['W_p'] = P.T @ dH
    grads['W_xT'] = X.T @ dH_xT
    return float(np.sum(l + lambda_b * lx)), grads


def _trainer_row(epoch, g, P, X, y):
    _, l, lx = trainer_losses(g, P, X, y, 0.)
    return {'epoch': epoch, 'train_l1': float(np.mean(l)), 'aux_l1': float(np.mean(lx))}


def train_dual_modal(eds, cfg=None, g=None, d_h=None, widths=None):
    """
    Train the dual-modal trainer on the train split of *eds*.

    Either pass a trainer *g* to start from, or let one be created with
    DualModalTrainer.create(d_p, d_xT, d_h, widths, cfg.seed).
    Returns (g, log).
    """
    cfg = (cfg or trainer_config()).check()
    train = _train_split(eds)
    P, X, y = train.P(), train.X(), train.y()
    if g is None:
        kwargs = {}
        if d_h is not None: kwargs['d_h'] = d_h
        if widths is not None: kwargs['widths'] = widths
        g = DualModalTrainer.create(P.shape[1], X.shape[1], seed=cfg.seed, **kwargs)
    else:
        if not isinstance(g, DualModalTrainer): raise TypeError('g must be a DualModalTrainer')
        g = g.copy()

    params = g.params()
    opt = AdamState(params, cfg.learning_rates(), decay=cfg.lr_decay)
    rng = order_rng(cfg.seed)
    log = [_trainer_row(0, g, P, X, y)]
    for epoch in range(1, cfg.epochs + 1):
        for b in _batches(len(y), cfg.batch_size, rng):
            _, grads = trainer_gradients(g, P[b], X[b], y[b], cfg.lambda_b)
            opt.step(params, grads)
        opt.decay()
        log.append(_trainer_row(epoch, g, P, X, y))
        logger.debug('trainer epoch %d: train_l1=%.4f aux_l1=%.4f', epoch,
                     log[-1]['train_l1'], log[-1]['aux_l1'])
    logger.info('trained dual-modal trainer: train_l1 %.4f -> %.4f',
                log[0]['train_l1'], log[-1]['train_l1'])
    return g, pd.DataFrame(log, columns=LOG_COLUMNS)


# Predictors

def predictor_gradients(f, X, y):
    H = encode(f, X)
    Z = layernorm(H)
    l, s = l1_loss(f.decoder.forward(Z), y)
    grads, dZ = f.decoder.backward(Z, s)
    grads[f.name] = X.T @ layernorm_backward(H, dZ)
    return float(np.sum(l)), grads


def _predictor_row(epoch, f, X, y):
    l, _ = l1_loss(predict(f, X), y)
    return {'epoch': epoch, 'train_l1': float(np.mean(l)), 'aux_l1': np.nan}


def train_predictor(f, eds, cfg):
    """
    Minimise sum |f(X) - y| over the train split of *eds* with Adam.
    Trajectory embeddings are ignored. Returns (f, log).
    """
    if not isinstance(f, Predictor): raise TypeError('f must be a Predictor')
    cfg = cfg.check()
    train = _train_split(eds)
    X, y = train.X(), train.y()
    f = f.copy()
    params = f.params()
    opt = AdamState(params, cfg.learning_rates(), decay=cfg.lr_decay)
    rng = order_rng(cfg.seed)
    log = [_predictor_row(0, f, X, y)]
    for epoch in range(1, cfg.epochs + 1):
        for b in _batches(len(y), cfg.batch_size, rng):
            _, grads = predictor_gradients(f, X[b], y[b])
            opt.step(params, grads)
        opt.decay()
        log.append(_predictor_row(epoch, f, X, y))
        logger.debug('%s epoch %d: train_l1=%.4f', f.name, epoch, log[-1]['train_l1'])
    logger.info('trained predictor %s: train_l1 %.4f -> %.4f',
                f.name, log[0]['train_l1'], log[-1]['train_l1'])
    return f, pd.DataFrame(log, columns=LOG_COLUMNS)


def finetune_predictor(f1, eds, cfg=None):
    """Fine-tune f1 on the trajectory dataset without E_p (1e-5, 50 epochs)."""
    return train_predictor(f1, eds.without_trajectory(), cfg or finetune_config())


def train_structure_predictor(f2, eds, cfg=None):
    """Train f2 on the structure dataset with grouped rates and per-epoch decay."""
    return train_predictor(f2, eds, cfg or structure_config())


# Plotting

def plot_loss_log(log, ax=None, **kwargs):
    """Train (and auxiliary) L1 against epoch."""
    show = ax is None
    if ax is None:
        fig, ax = plt.subplots()
    log = pd.DataFrame(log)
    ax.plot(log['epoch'], log['train_l1'], label='train_l1', **kwargs)
    if log['aux_l1'].notna().any():
        ax.plot(log['epoch'], log['aux_l1'], label='aux_l1', **kwargs)
    ax.set_xlabel('epoch')
    ax.set_ylabel('L1 (log10)')
    ax.legend()
    if show:
        plt.show()
    return ax
