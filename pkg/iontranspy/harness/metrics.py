# -*- coding: utf-8 -*-
"""
Evaluation metrics, per-temperature tables and paired statistics.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from collections import OrderedDict
import json

import numpy as np
import pandas as pd
from scipy import stats

PREDICTION_COLUMNS = ['id', 'temperature', 'y_log10', 'yhat_log10']
FLOAT_FORMAT = '%.17g'


def mae(preds):
    """
    Mean |yhat - y| of a list of (yhat, y) pairs, log10 scale.
    """
    preds = list(preds)
    if not preds:
        raise ValueError('cannot take the MAE of no predictions')
    a = np.array(preds, dtype=float).reshape(-1, 2)
    return float(np.mean(np.abs(a[:, 0] - a[:, 1])))


def frame_mae(df):
    return mae(zip(df['yhat_log10'], df['y_log10']))


def predictions_frame(eds, yhat):
    """Per-sample predictions of an EmbeddedDataset."""
    return pd.DataFrame({'id': eds.ids(),
                         'temperature': eds.temperatures(),
                         'y_log10': eds.y(),
                         'yhat_log10': np.asarray(yhat, dtype=float).reshape(-1)},
                        columns=PREDICTION_COLUMNS)


def per_temperature(df):
    """MAE and sample count per temperature plus an 'all' row."""
    rows = []
    for T, cell in df.groupby('temperature', sort=True):
        rows.append({'temperature': '%g' % T, 'n': len(cell), 'mae': frame_mae(cell)})
    rows.append({'temperature': 'all', 'n': len(df), 'mae': frame_mae(df)})
    return pd.DataFrame(rows, columns=['temperature', 'n', 'mae'])


def write_csv(df, filename):
    df.to_csv(filename, index=False, float_format=FLOAT_FORMAT)


def read_predictions(filename):
    return pd.read_csv(filename, dtype={'id': str}, float_precision='round_trip')


def records(df):
    """JSON-ready list of row dicts with native Python scalars."""
    return [OrderedDict((k, v.item() if hasattr(v, 'item') else v) for k, v in row.items())
            for row in df.to_dict(orient='records')]


# Paired statistics

def sign_test(full, ablated):
    """
    One-sided sign test that the ablated arm has the larger error.
    Ties are dropped; returns 1 when every pair is tied.
    """
    d = np.asarray(ablated, dtype=float) - np.asarray(full, dtype=float)
    wins = int(np.sum(d > 0))
    n = int(np.sum(d != 0))
    if n == 0:
        return 1.
    return float(stats.binomtest(wins, n, 0.5, alternative='greater').pvalue)


def paired_ttest(full, ablated):
    """Two-tailed paired t-test p-value, NaN with fewer than 2 pairs or no variance."""
    full = np.asarray(full, dtype=float)
    ablated = np.asarray(ablated, dtype=float)
    if full.size < 2 or np.all(ablated - full == (ablated - full)[0]):
        return float('nan')
    return float(stats.ttest_rel(ablated, full).pvalue)


class EvalReport:
    """
    Evaluation of one run.

    - tables  | name -> per-temperature DataFrame {temperature, n, mae}
    - labels  | free-form labels (arm names, seeds)
    - per_seed| optional DataFrame of per-seed results
    - summary | optional DataFrame of paired statistics
    """

    def __init__(self, tables=None, labels=None, per_seed=None, summary=None):
        self.tables = OrderedDict(tables or {})
        self.labels = OrderedDict(labels or {})
        self.per_seed = per_seed
        self.summary = summary

    def mae(self, name):
        t = self.tables[name]
        return float(t.loc[t['temperature'] == 'all', 'mae'].iloc[0])

    def to_dict(self):
        out = OrderedDict()
        out['labels'] = self.labels
        out['mae'] = OrderedDict((k, self.mae(k)) for k in self.tables)
        out['tables'] = OrderedDict((k, records(t)) for k, t in self.tables.items())
        if self.per_seed is not None:
            out['per_seed'] = records(self.per_seed)
        if self.summary is not None:
            out['summary'] = records(self.summary)
        return out

    def save(self, filename):
        with open(filename, 'w') as f:
            json.dump(self.to_dict(), f, indent=1)

    @classmethod
    def load(cls, filename):
        with open(filename, 'r') as f:
            doc = json.load(f, object_pairs_hook=OrderedDict)
        tables = OrderedDict((k, pd.DataFrame(v, columns=['temperature', 'n', 'mae']))
                             for k, v in doc['tables'].items())
        per_seed = pd.DataFrame(doc['per_seed']) if 'per_seed' in doc else None
        summary = pd.DataFrame(doc['summary']) if 'summary' in doc else None
        return cls(tables, doc['labels'], per_seed, summary)

    def __eq__(self, other):
        if self.__class__ != other.__class__: return False
        return json.dumps(self.to_dict()) == json.dumps(other.to_dict())

    __hash__ = None

    def __repr__(self):
        return 'EvalReport(%s)' % ', '.join('%s=%.4f' % (k, self.mae(k)) for k in self.tables)
