# -*- coding: utf-8 -*-
"""
The end-to-end pipeline as file-based stages.

Every stage reads its inputs from and writes its outputs to one experiment
directory, so stages can be run one at a time from the command line:

    generate         trj_dataset.jsonl, str_dataset.jsonl
    embed            trj_embedded.jsonl, str_embedded.jsonl
    train-trainer    trainer.ckpt.json, trainer_log.csv
    init-predictor   f1_init.ckpt.json
    finetune         f1.ckpt.json, f1_log.csv
    transfer         f2_init.ckpt.json
    train-structure  f2.ckpt.json, f2_log.csv
    evaluate         report.json, predictions_{trj,str}.csv, eval_{trj,str}.csv

Wall-clock timings go to the timings.json sidecar.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from ..core import io
from ..core.data import DatasetKind
from ..synth import make_dataset
from ..embed import embed_dataset, embed_sample
from ..training import train_dual_modal, finetune_predictor, train_structure_predictor, \
    closed_form_init, gradient_distill_init, data_level_init, random_predictor, \
    predict, load_model, DualModalTrainer
from ..training.transfer import ridge_problem
from ..numerics import ridge_objective
from . import metrics
from .config import save_config

from collections import OrderedDict
import json
import os
import time
import logging

import numpy as np

logger = logging.getLogger(__name__)

STAGES = ['generate', 'embed', 'train-trainer', 'init-predictor', 'finetune', 'transfer',
          'train-structure', 'evaluate']


class StageError(Exception):
    """A pipeline stage failed; carries the stage name and the cause."""

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        Exception.__init__(self, 'stage %s failed: %s' % (stage, cause))


def path(cfg, name):
    return os.path.join(cfg.output_dir, name)


# Shared model-building steps

def build_dataset(dc, progress=False):
    return make_dataset(dc.kind, dc.n_materials, dc.spec_template(), dc.temperatures,
                        dc.n_frames, dc.dt, dc.seed, target_kind=dc.target_kind,
                        barrier_jitter=dc.barrier_jitter, stride=dc.stride,
                        mobile_species=dc.mobile_species,
                        held_out_species=dc.held_out_species, progress=progress)


def embed(cfg, ds, progress=False):
    return embed_dataset(ds, cfg.embed.n_bands, cfg.embed.include_msd_scalar,
                         cfg.embed.polynomial, progress=progress)


def fit_trainer(cfg, trj):
    return train_dual_modal(trj, cfg.trainer, d_h=cfg.model.d_h, widths=cfg.model.widths())


def init_f1(cfg, g, trj):
    """f1 by the configured method: closed-form, gradient or random."""
    method = cfg.transfer.method
    if method == 'closed-form':
        return closed_form_init(g, trj, cfg.trainer.lambda_r)
    if method == 'gradient':
        return gradient_distill_init(g, trj, cfg.transfer.distill_steps,
                                     cfg.transfer.distill_lr, cfg.trainer.lambda_r,
                                     seed=cfg.seed)
    if method == 'random':
        return random_predictor(g.d_xT, cfg.model.d_h, cfg.model.widths(), cfg.seed)
    raise ValueError('unknown transfer.method %r' % method)


def distill_objective(cfg, g, trj, f1):
    """Ridge objective of f1's encoder on the trainer's representations."""
    X, H = ridge_problem(g, trj)
    return ridge_objective(X, H, f1.W, cfg.trainer.lambda_r)


def init_f2(cfg, g, f1, str_eds):
    source = cfg.transfer.str_encoder_from
    if source == 'random':
        return random_predictor(str_eds.d_xT, cfg.model.d_h, cfg.model.widths(), cfg.seed,
                                name='W_str')
    return data_level_init(g, f1, source, d_xT=str_eds.d_xT)


def evaluate(f, eds, name):
    """Predictions frame of the test split; fails if the split is empty."""
    test = eds.test()
    if len(test) == 0:
        raise ValueError('%s test split has no samples' % name)
    return metrics.predictions_frame(test, predict(f, test.X()))


# Stages

def _load_embedded(cfg):
    return io.load_embedded(path(cfg, 'trj_embedded.jsonl')), \
        io.load_embedded(path(cfg, 'str_embedded.jsonl'))


def stage_generate(cfg, progress=False):
    trj = build_dataset(cfg.trj_data, progress)
    st = build_dataset(cfg.str_data, progress)
    io.save_dataset(trj, path(cfg, 'trj_dataset.jsonl'))
    io.save_dataset(st, path(cfg, 'str_dataset.jsonl'))


def stage_embed(cfg, progress=False):
    for name, kind in (('trj', DatasetKind.TRAJECTORY), ('str', DatasetKind.STRUCTURE)):
        ds = io.load_dataset(path(cfg, '%s_dataset.jsonl' % name), kind)
        io.save_embedded(embed(cfg, ds, progress), path(cfg, '%s_embedded.jsonl' % name))


def stage_train_trainer(cfg, progress=False):
    trj, _ = _load_embedded(cfg)
    g, log = fit_trainer(cfg, trj)
    g.save(path(cfg, 'trainer.ckpt.json'))
    metrics.write_csv(log, path(cfg, 'trainer_log.csv'))


def stage_init_predictor(cfg, progress=False):
    trj, _ = _load_embedded(cfg)
    g = load_model(path(cfg, 'trainer.ckpt.json'))
    f1 = init_f1(cfg, g, trj)
    logger.info('f1 (%s) ridge objective %.6g', cfg.transfer.method,
                distill_objective(cfg, g, trj, f1))
    f1.save(path(cfg, 'f1_init.ckpt.json'))


def stage_finetune(cfg, progress=False):
    trj, _ = _load_embedded(cfg)
    f1, log = finetune_predictor(load_model(path(cfg, 'f1_init.ckpt.json')), trj, cfg.finetune)
    f1.save(path(cfg, 'f1.ckpt.json'))
    metrics.write_csv(log, path(cfg, 'f1_log.csv'))


def stage_transfer(cfg, progress=False):
    _, st = _load_embedded(cfg)
    g = load_model(path(cfg, 'trainer.ckpt.json'))
    f1 = load_model(path(cfg, 'f1.ckpt.json'))
    init_f2(cfg, g, f1, st).save(path(cfg, 'f2_init.ckpt.json'))


def stage_train_structure(cfg, progress=False):
    _, st = _load_embedded(cfg)
    f2, log = train_structure_predictor(load_model(path(cfg, 'f2_init.ckpt.json')), st,
                                        cfg.structure)
    f2.save(path(cfg, 'f2.ckpt.json'))
    metrics.write_csv(log, path(cfg, 'f2_log.csv'))


def inference_seconds(cfg, ds, f):
    """Embedding plus forward pass of every test sample, seconds per sample."""
    tests = [(s, split) for s, split in ds if split == 'test']
    start = time.perf_counter()
    for sample, split in tests:
        e = embed_sample(sample.without_trajectory(), split, ds.t_norm, cfg.embed.n_bands,
                         cfg.embed.include_msd_scalar, cfg.embed.polynomial)
        predict(f, e.x_vec)
    return (time.perf_counter() - start) / max(1, len(tests))


def stage_evaluate(cfg, progress=False):
    trj, st = _load_embedded(cfg)
    tables = OrderedDict()
    timings = OrderedDict()
    for name, eds, ckpt in (('trj', trj, 'f1.ckpt.json'), ('str', st, 'f2.ckpt.json')):
        f = load_model(path(cfg, ckpt))
        preds = evaluate(f, eds, name)
        metrics.write_csv(preds, path(cfg, 'predictions_%s.csv' % name))
        tables[name] = metrics.per_temperature(preds)
        metrics.write_csv(tables[name], path(cfg, 'eval_%s.csv' % name))
        ds = io.load_dataset(path(cfg, '%s_dataset.jsonl' % name))
        timings['inference_%s_s_per_sample' % name] = inference_seconds(cfg, ds, f)
    report = metrics.EvalReport(tables, {'name': cfg.name, 'seed': cfg.seed,
                                         'f1_init': cfg.transfer.method,
                                         'f2_init': cfg.transfer.str_encoder_from})
    report.save(path(cfg, 'report.json'))
    _update_timings(cfg, timings)
    logger.info('%r', report)
    return report


STAGE_FUNCTIONS = OrderedDict([
    ('generate', stage_generate),
    ('embed', stage_embed),
    ('train-trainer', stage_train_trainer),
    ('init-predictor', stage_init_predictor),
    ('finetune', stage_finetune),
    ('transfer', stage_transfer),
    ('train-structure', stage_train_structure),
    ('evaluate', stage_evaluate),
])


def _update_timings(cfg, values):
    fname = path(cfg, 'timings.json')
    timings = OrderedDict()
    if os.path.exists(fname):
        with open(fname, 'r') as f:
            timings = json.load(f, object_pairs_hook=OrderedDict)
    timings.update(values)
    with open(fname, 'w') as f:
        json.dump(timings, f, indent=1)


def run_stage(cfg, name, progress=False):
    """Run one stage; any failure is raised as StageError."""
    if name not in STAGE_FUNCTIONS:
        raise ValueError('unknown stage %r' % name)
    os.makedirs(cfg.output_dir, exist_ok=True)
    logger.info('stage %s started', name)
    start = time.perf_counter()
    try:
        result = STAGE_FUNCTIONS[name](cfg, progress)
    except StageError:
        raise
    except Exception as e:
        logger.error('stage %s failed: %s', name, e)
        raise StageError(name, e)
    _update_timings(cfg, {'stage_%s_s' % name: time.perf_counter() - start})
    logger.info('stage %s finished', name)
    return result


def run_pipeline(cfg, progress=False):
    """
    Generate, embed, train, transfer and evaluate; returns the EvalReport.
    """
    os.makedirs(cfg.output_dir, exist_ok=True)
    save_config(cfg, path(cfg, 'config.yaml'))
    report = None
    for name in STAGES:
        report = run_stage(cfg, name, progress)
    return report


# In-memory run used by ablations and sweeps

def fit_all(cfg, trj, st, g=None):
    """
    Train every model of one run in memory.

    Returns a dict with g, f1_init, f1, f2, the ridge objective of f1_init and
    the test prediction frames.
    """
    if g is None:
        g, _ = fit_trainer(cfg, trj)
    elif not isinstance(g, DualModalTrainer):
        raise TypeError('g must be a DualModalTrainer')
    f1_init = init_f1(cfg, g, trj)
    objective = distill_objective(cfg, g, trj, f1_init)
    f1, _ = finetune_predictor(f1_init, trj, cfg.finetune)
    f2, _ = train_structure_predictor(init_f2(cfg, g, f1, st), st, cfg.structure)
    pred_trj = evaluate(f1, trj, 'trj')
    pred_str = evaluate(f2, st, 'str')
    return {'g': g, 'f1_init': f1_init, 'f1': f1, 'f2': f2, 'objective': objective,
            'w_trj_norm': float(np.linalg.norm(f1_init.W)),
            'predictions_trj': pred_trj, 'predictions_str': pred_str,
            'mae_trj': metrics.frame_mae(pred_trj), 'mae_str': metrics.frame_mae(pred_str)}
