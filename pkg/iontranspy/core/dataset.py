# -*- coding: utf-8 -*-
"""
The Dataset class and its invariant checks.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from .data import Record, Sample, DatasetKind

import numpy as np

SPLITS = ('train', 'test')


class Dataset(Record):
    """
    A collection of Samples with a train/test tag per sample.

    args

    - kind     | DatasetKind (TrajectoryBased or StructureBased)
    - samples  | list of Sample
    - splits   | list of 'train' / 'test', one per sample
    - t_norm   | temperature normalisation constant T_m (kelvin)
    """

    def __init__(self, kind, samples, splits, t_norm):
        samples = tuple(samples)
        splits = tuple(str(s) for s in splits)
        if len(samples) != len(splits):
            raise ValueError('need one split tag per sample')
        for s in samples:
            if not isinstance(s, Sample): raise TypeError('expecting Samples')
        for s in splits:
            if s not in SPLITS: raise ValueError('split must be train or test, got %r' % s)
        self._kind = DatasetKind(kind)
        self._samples = samples
        self._splits = splits
        self._t_norm = float(t_norm)

    @property
    def kind(self):
        return self._kind

    @property
    def samples(self):
        return self._samples

    @property
    def splits(self):
        return self._splits

    @property
    def t_norm(self):
        return self._t_norm

    @property
    def target_kind(self):
        if len(self._samples) == 0: return None
        return self._samples[0].target.kind

    def train(self):
        return [s for s, tag in zip(self._samples, self._splits) if tag == 'train']

    def test(self):
        return [s for s, tag in zip(self._samples, self._splits) if tag == 'test']

    def temperatures(self):
        return sorted(set(s.temperature for s in self._samples))

    def __len__(self):
        return len(self._samples)

    def __iter__(self):
        return iter(zip(self._samples, self._splits))

    def __repr__(self):
        return 'Dataset(%s, train=%d, test=%d, t_norm=%g)' % \
            (self._kind.value, len(self.train()), len(self.test()), self._t_norm)


# Validation

def _structure_violations(st):
    out = []
    n = st.n_atoms
    if st.positions.shape[1:] != (3,):
        out.append('positions must be N x 3')
    if st.species.shape[0] != n:
        out.append('species has %d entries for %d atoms' % (st.species.shape[0], n))
    if st.node_features.shape[0] != n:
        out.append('node_features has %d rows for %d atoms' % (st.node_features.shape[0], n))
    if st.edge_features.shape[0] != st.edges.shape[0]:
        out.append('edge_features rows do not match edges')
    if st.edges.size:
        if st.edges.min() < 0 or st.edges.max() >= n:
            out.append('edge index out of range')
        if np.any(st.edges[:, 0] == st.edges[:, 1]):
            out.append('self-edge found')
    if st.edges.size == 0 or np.any(st.neighbour_counts() == 0):
        out.append('isolated atom (no neighbours)')
    if not np.all(np.isfinite(st.positions)):
        out.append('positions must be finite')
    return out


def _sample_violations(sample, kind, split, target_kind):
    out = []
    if not sample.temperature > 0:
        out.append('temperature must be positive')
    if not np.isfinite(sample.target.value_log10):
        out.append('target value_log10 must be finite')
    if sample.target.kind != target_kind:
        out.append('target kind %s differs from dataset kind %s' %
                   (sample.target.kind.value, target_kind.value))
    out.extend(_structure_violations(sample.structure))
    tr = sample.trajectory
    if kind == DatasetKind.STRUCTURE and tr is not None:
        out.append('structure-based dataset sample carries a trajectory')
    elif split == 'test' and tr is not None:
        out.append('test sample carries a trajectory')
    if kind == DatasetKind.TRAJECTORY and split == 'train' and tr is None:
        out.append('train sample of a trajectory-based dataset has no trajectory')
    if tr is not None:
        if tr.n_frames < 2:
            out.append('trajectory needs at least 2 frames')
        if tr.n_atoms != sample.structure.n_atoms:
            out.append('trajectory has %d atoms, structure has %d' %
                       (tr.n_atoms, sample.structure.n_atoms))
        if not tr.dt > 0:
            out.append('trajectory dt must be positive')
    return out


def validate_dataset(ds):
    """
    Return a list of invariant violations, empty if the dataset is well formed.

    Every entry names the sample id (or 'dataset') and the broken invariant.
    Nothing is raised and nothing is modified.
    """
    if not isinstance(ds, Dataset):
        raise TypeError('expecting a Dataset')
    violations = []
    if not ds.t_norm > 0:
        violations.append('dataset: t_norm must be positive')
    ids = [s.id for s in ds.samples]
    if len(set(ids)) != len(ids):
        violations.append('dataset: sample ids must be unique')
    train_ids = set(s.id for s in ds.train())
    test_ids = set(s.id for s in ds.test())
    if not train_ids:
        violations.append('dataset: train split is empty')
    if not test_ids:
        violations.append('dataset: test split is empty')
    if train_ids & test_ids:
        violations.append('dataset: train and test splits overlap')
    target_kind = ds.target_kind
    for sample, split in ds:
        for v in _sample_violations(sample, ds.kind, split, target_kind):
            violations.append('%s: %s' % (sample.id, v))
    return violations
