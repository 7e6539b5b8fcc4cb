# -*- coding: utf-8 -*-
"""
Save and load things.

Datasets live in JSON-lines files, one Sample per line, keys in a fixed order:
id, split, temperature, t_norm, target, structure, trajectory.
Floats are written with repr precision so a round trip is exact.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from .data import Structure, Trajectory, TransportTarget, Sample, DatasetKind
from .dataset import Dataset
from .embedded import EmbeddedSample, EmbeddedDataset

from collections import OrderedDict
import copy
import json
import numpy as np
import logging

logger = logging.getLogger(__name__)


# Generic JSON lines

def write_jsonl(records, filename):
    """Write an iterable of dicts, one compact JSON document per line."""
    n = 0
    with open(filename, 'w') as f:
        for rec in records:
            f.write(json.dumps(rec, separators=(',', ':')))
            f.write('\n')
            n += 1
    logger.debug('wrote %d records to %s', n, filename)
    return n


def read_jsonl(filename):
    """Read a JSON-lines file into a list of (ordered) dicts."""
    with open(filename, 'r') as f:
        return [json.loads(line, object_pairs_hook=OrderedDict)
                for line in f if line.strip()]


# Sample <-> record

def sample_to_record(sample, split, t_norm):
    st = sample.structure
    edges = [OrderedDict([('k', int(k)), ('l', int(l)), ('features', feat.tolist())])
             for (k, l), feat in zip(st.edges, st.edge_features)]
    tr = sample.trajectory
    rec = OrderedDict()
    rec['id'] = sample.id
    rec['split'] = split
    rec['temperature'] = sample.temperature
    rec['t_norm'] = t_norm
    rec['target'] = OrderedDict([('kind', sample.target.kind.value),
                                 ('species', sample.target.species),
                                 ('value_log10', sample.target.value_log10)])
    rec['structure'] = OrderedDict([('positions', st.positions.tolist()),
                                    ('species', st.species.tolist()),
                                    ('node_features', st.node_features.tolist()),
                                    ('edges', edges)])
    if tr is None:
        rec['trajectory'] = None
    else:
        rec['trajectory'] = OrderedDict([('dt', tr.dt), ('frames', tr.frames.tolist())])
    return rec


def record_to_sample(rec):
    s = rec['structure']
    edges = [(e['k'], e['l']) for e in s['edges']]
    d_e = len(s['edges'][0]['features']) if s['edges'] else 0
    edge_features = np.array([e['features'] for e in s['edges']],
                             dtype=float).reshape(len(edges), d_e)
    structure = Structure(s['positions'], s['species'], s['node_features'],
                          edges, edge_features)
    t = rec['trajectory']
    trajectory = None if t is None else Trajectory(t['frames'], t['dt'])
    target = TransportTarget(rec['target']['kind'], rec['target']['species'],
                             rec['target']['value_log10'])
    return Sample(rec['id'], structure, trajectory, rec['temperature'], target)


# Saving

def save_dataset(ds, filename):
    """
    Save a Dataset as JSON lines.
    """
    if not isinstance(ds, Dataset):
        raise TypeError('expecting a Dataset')
    return write_jsonl((sample_to_record(s, split, ds.t_norm) for s, split in ds), filename)


# Loading

def load_dataset(filename, kind=None):
    """
    Load a Dataset written by save_dataset.

    The file does not store the dataset kind; unless *kind* is given it is
    TrajectoryBased when any train sample has a trajectory, else StructureBased.
    """
    records = read_jsonl(filename)
    if not records:
        raise ValueError('%s holds no samples' % filename)
    samples = [record_to_sample(r) for r in records]
    splits = [r['split'] for r in records]
    t_norms = set(r['t_norm'] for r in records)
    if len(t_norms) != 1:
        raise ValueError('inconsistent t_norm values in %s' % filename)
    if kind is None:
        has_traj = any(s.trajectory is not None
                       for s, split in zip(samples, splits) if split == 'train')
        kind = DatasetKind.TRAJECTORY if has_traj else DatasetKind.STRUCTURE
    return Dataset(kind, samples, splits, t_norms.pop())


# Embedded datasets

def save_embedded(eds, filename):
    """
    Cache an EmbeddedDataset as JSON lines
    {id, split, x_vec, p_vec (nullable), y_log10, temperature}.
    """
    if not isinstance(eds, EmbeddedDataset):
        raise TypeError('expecting an EmbeddedDataset')

    def record(s):
        return OrderedDict([('id', s.id),
                            ('split', s.split),
                            ('x_vec', s.x_vec.tolist()),
                            ('p_vec', None if s.p_vec is None else s.p_vec.tolist()),
                            ('y_log10', s.y_log10),
                            ('temperature', s.temperature)])

    return write_jsonl((record(s) for s in eds), filename)


def load_embedded(filename):
    return EmbeddedDataset(EmbeddedSample(r['id'], r['split'], r['x_vec'], r['p_vec'],
                                          r['y_log10'], r['temperature'])
                           for r in read_jsonl(filename))


# Copying

copy = copy.deepcopy
