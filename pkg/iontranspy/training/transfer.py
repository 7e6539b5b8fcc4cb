# -*- coding: utf-8 -*-
"""
Knowledge transfer from the dual-modal trainer to structure-only predictors.

closed_form_init fits W^trj so that X W^trj reproduces the trainer's hidden
representation H (before LayerNorm) by ridge regression. data_level_init
starts a structure-dataset predictor from the trained components.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from ..core.embedded import EmbeddedDataset
from ..numerics import ridge_solve, ridge_objective, ridge_gradient, AdamState, \
    Mlp, init_encoder
from .config import D_H
from .models import DualModalTrainer, Predictor, trainer_forward, decoder_sizes, \
    WIDTHS, TAG_W_TRJ, TAG_W_STR

import copy
import logging

logger = logging.getLogger(__name__)

LAMBDA_R = 1e-5


def ridge_problem(g, eds):
    """Stacked (X, H) of the train split; H is the pre-LayerNorm trainer output."""
    if not isinstance(g, DualModalTrainer): raise TypeError('g must be a DualModalTrainer')
    if not isinstance(eds, EmbeddedDataset): raise TypeError('expecting an EmbeddedDataset')
    train = eds.train()
    if len(train) == 0:
        raise ValueError('no train samples')
    X = train.X()
    _, _, H, _ = trainer_forward(g, train.P(), X)
    return X, H


def closed_form_init(g, eds, lambda_r=LAMBDA_R):
    """
    f1 = {W^trj = ridge_solve(X, H, lambda_r), copy of g's decoder}
    """
    X, H = ridge_problem(g, eds)
    W = ridge_solve(X, H, lambda_r)
    logger.info('closed-form init: objective %.6g, |W|_F %.4g',
                ridge_objective(X, H, W, lambda_r), (W ** 2).sum() ** .5)
    return Predictor(W, copy.deepcopy(g.decoder), 'W_trj')


def random_predictor(d_xT, d_h=D_H, widths=WIDTHS, seed=0, name='W_trj'):
    """Randomly initialised predictor."""
    tag = TAG_W_TRJ if name == 'W_trj' else TAG_W_STR
    return Predictor(init_encoder(d_xT, d_h, seed, tag),
                     Mlp(decoder_sizes(d_h, widths), seed=seed), name)


def gradient_distill_init(g, eds, steps, lr=1e-3, lambda_r=LAMBDA_R, seed=0):
    """
    Fit W^trj by full-batch Adam on the ridge objective, starting from the
    random encoder of random_predictor(seed=seed). The decoder is copied from g.
    """
    if steps < 0:
        raise ValueError('steps must be non-negative')
    X, H = ridge_problem(g, eds)
    W = init_encoder(X.shape[1], g.d_h, seed, TAG_W_TRJ)
    params = {'W_trj': W}
    opt = AdamState(params, lr)
    for _ in range(int(steps)):
        opt.step(params, {'W_trj': ridge_gradient(X, H, W, lambda_r)})
    logger.info('gradient distillation, %d steps: objective %.6g',
                steps, ridge_objective(X, H, W, lambda_r))
    return Predictor(W, copy.deepcopy(g.decoder), 'W_trj')


def data_level_init(g, f1, encoder_from='W_xT', d_xT=None):
    """
    f2 = {W^str, copy of f1's decoder}.

    W^str copies g.W_xT by default, or f1.W with encoder_from='W_trj'.
    d_xT, when given, is the structure dataset's embedding size and must
    match the trainer's.
    """
    if not isinstance(g, DualModalTrainer): raise TypeError('g must be a DualModalTrainer')
    if not isinstance(f1, Predictor): raise TypeError('f1 must be a Predictor')
    if encoder_from == 'W_xT':
        W = g.W_xT
    elif encoder_from == 'W_trj':
        W = f1.W
    else:
        raise ValueError('encoder_from must be W_xT or W_trj')
    if d_xT is not None and int(d_xT) != W.shape[0]:
        raise ValueError('structure embedding has d_xT=%d, trajectory model expects %d' %
                         (d_xT, W.shape[0]))
    return Predictor(W.copy(), copy.deepcopy(f1.decoder), 'W_str')
