# -*- coding: utf-8 -*-
"""
Seed-sweep ablations and the lambda_r sweep.

Every ablation arm is the full configuration with a few dotted overrides, so
config_diff(full, arm) shows exactly what an arm changes. Datasets are built
once with their fixed seeds; the ablation seeds vary model initialisation
and sample order.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from . import metrics
from .config import override, with_seed, config_diff, save_config
from .pipeline import build_dataset, embed, fit_all, fit_trainer, path

from collections import OrderedDict
from dataclasses import replace
import os
import logging

import numpy as np
import pandas as pd
from tqdm import tqdm

logger = logging.getLogger(__name__)

ARM_OVERRIDES = OrderedDict([
    ('full', []),
    ('random-init-f1', ['transfer.method=random']),
    ('gradient-distill', ['transfer.method=gradient']),
    ('lambda_b-0', ['trainer.lambda_b=0.0']),
    ('no-polynomial', ['embed.polynomial=false']),
    ('random-init-f2', ['transfer.str_encoder_from=random']),
    ('f2-from-W_trj', ['transfer.str_encoder_from=W_trj']),
    ('no-msd-scalar', ['embed.include_msd_scalar=false']),
])


def arm_config(cfg, arm):
    if arm not in ARM_OVERRIDES:
        raise ValueError('unknown ablation arm %r' % arm)
    return override(cfg, ARM_OVERRIDES[arm])


def arm_diffs(cfg, arms):
    """Frame {arm, key, full, value} of every setting an arm changes."""
    rows = []
    for arm in arms:
        for key, a, b in config_diff(cfg, arm_config(cfg, arm)):
            rows.append({'arm': arm, 'key': key, 'full': a, 'value': b})
    return pd.DataFrame(rows, columns=['arm', 'key', 'full', 'value'])


class _Embeddings:
    """Embedded datasets, cached per embedding setting."""

    def __init__(self, trj_ds, str_ds):
        self.trj_ds = trj_ds
        self.str_ds = str_ds
        self._cache = {}

    def get(self, cfg):
        key = (cfg.embed.n_bands, cfg.embed.include_msd_scalar, cfg.embed.polynomial)
        if key not in self._cache:
            self._cache[key] = (embed(cfg, self.trj_ds), embed(cfg, self.str_ds))
        return self._cache[key]


def summarise(per_seed, arms):
    """Mean, std and paired tests of every arm against 'full', per metric."""
    rows = []
    full = per_seed[per_seed['arm'] == 'full'].set_index('seed')
    for arm in arms:
        cur = per_seed[per_seed['arm'] == arm].set_index('seed')
        for metric in ('mae_trj', 'mae_str', 'objective'):
            row = {'arm': arm, 'metric': metric, 'n': len(cur),
                   'mean': float(cur[metric].mean()), 'std': float(cur[metric].std(ddof=0)),
                   'sign_p': np.nan, 'ttest_p': np.nan, 'rel_change': np.nan}
            if arm != 'full' and len(full):
                seeds = full.index.intersection(cur.index)
                a = full.loc[seeds, metric].values
                b = cur.loc[seeds, metric].values
                row['sign_p'] = metrics.sign_test(a, b)
                row['ttest_p'] = metrics.paired_ttest(a, b)
                row['rel_change'] = float((b.mean() - a.mean()) / a.mean()) if a.mean() else np.nan
            rows.append(row)
    return pd.DataFrame(rows, columns=['arm', 'metric', 'n', 'mean', 'std', 'sign_p',
                                       'ttest_p', 'rel_change'])


def run_ablations(cfg, progress=False, write=True):
    """
    Run every configured arm for every seed.

    Returns an EvalReport with one table per arm and dataset (full/trj, ...),
    a per_seed frame {seed, arm, mae_trj, mae_str, objective} and the summary. With write
    the experiment directory receives ablation_per_seed.csv,
    ablation_summary.csv and ablation_config_diff.csv.
    """
    arms = list(cfg.ablation.arms)
    if 'full' not in arms:
        arms.insert(0, 'full')
    logger.info('ablations: %d arms x %d seeds', len(arms), len(cfg.ablation.seeds))
    data = _Embeddings(build_dataset(cfg.trj_data), build_dataset(cfg.str_data))

    rows = []
    preds = OrderedDict()
    for seed in tqdm(cfg.ablation.seeds, desc='seeds', disable=not progress):
        base = with_seed(cfg, seed)
        trainers = {}
        for arm in arms:
            acfg = arm_config(base, arm)
            trj, st = data.get(acfg)
            # arms sharing the trainer's inputs and loss reuse one trained trainer
            key = (acfg.embed.n_bands, acfg.embed.include_msd_scalar, acfg.embed.polynomial,
                   acfg.trainer.lambda_b)
            if key not in trainers:
                trainers[key], _ = fit_trainer(acfg, trj)
            out = fit_all(acfg, trj, st, g=trainers[key])
            rows.append({'seed': seed, 'arm': arm, 'mae_trj': out['mae_trj'],
                         'mae_str': out['mae_str'], 'objective': out['objective']})
            for name in ('trj', 'str'):
                preds.setdefault('%s/%s' % (arm, name), []).append(out['predictions_%s' % name])
            logger.debug('seed %d arm %s: trj %.4f str %.4f', seed, arm,
                         out['mae_trj'], out['mae_str'])
    per_seed = pd.DataFrame(rows, columns=['seed', 'arm', 'mae_trj', 'mae_str', 'objective'])
    summary = summarise(per_seed, arms)

    # per-temperature tables pool the test predictions of all seeds
    tables = OrderedDict((key, metrics.per_temperature(pd.concat(frames, ignore_index=True)))
                         for key, frames in preds.items())
    report = metrics.EvalReport(tables, {'name': cfg.name, 'arms': arms,
                                         'seeds': list(cfg.ablation.seeds)},
                                per_seed, summary)

    if write:
        os.makedirs(cfg.output_dir, exist_ok=True)
        save_config(cfg, path(cfg, 'config.yaml'))
        metrics.write_csv(per_seed, path(cfg, 'ablation_per_seed.csv'))
        metrics.write_csv(summary, path(cfg, 'ablation_summary.csv'))
        metrics.write_csv(arm_diffs(cfg, arms), path(cfg, 'ablation_config_diff.csv'))
    return report


def run_lambda_sweep(cfg, lambda_values=None, write=True):
    """
    Repeat closed-form transfer, fine-tuning and data-level transfer for each
    lambda_r with one trained trainer. Returns a frame
    {lambda_r, mae_trj, mae_str, w_trj_norm}; its attrs hold the relative
    spread of mae_trj.
    """
    lambda_values = list(cfg.ablation.lambda_values if lambda_values is None else lambda_values)
    if any(not lam > 0 for lam in lambda_values):
        raise ValueError('lambda values must be positive')
    cfg = replace(cfg, transfer=replace(cfg.transfer, method='closed-form'))
    trj = embed(cfg, build_dataset(cfg.trj_data))
    st = embed(cfg, build_dataset(cfg.str_data))
    g, _ = fit_trainer(cfg, trj)
    rows = []
    for lam in lambda_values:
        lcfg = replace(cfg, trainer=replace(cfg.trainer, lambda_r=float(lam)))
        out = fit_all(lcfg, trj, st, g=g)
        rows.append({'lambda_r': float(lam), 'mae_trj': out['mae_trj'],
                     'mae_str': out['mae_str'], 'w_trj_norm': out['w_trj_norm']})
        logger.info('lambda_r %g: mae_trj %.4f |W_trj|_F %.4g', lam, out['mae_trj'],
                    out['w_trj_norm'])
    table = pd.DataFrame(rows, columns=['lambda_r', 'mae_trj', 'mae_str', 'w_trj_norm'])
    mae = table['mae_trj']
    table.attrs['spread'] = float((mae.max() - mae.min()) / mae.mean())
    logger.info('lambda_r sweep: relative MAE spread %.3f', table.attrs['spread'])
    if write:
        os.makedirs(cfg.output_dir, exist_ok=True)
        metrics.write_csv(table, path(cfg, 'lambda_sweep.csv'))
    return table
