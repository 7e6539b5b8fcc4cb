#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Test saving and loading datasets, embeddings and checkpoints
"""

import os
import json
from collections import OrderedDict
import shutil
import tempfile
import unittest, pytest
import numpy as np
import numpy.testing as npt

import iontranspy as it
from iontranspy.core import io
from iontranspy.numerics import save_checkpoint, load_checkpoint, AdamState


def small_dataset(kind='TrajectoryBased'):
    spec = it.MaterialSpec(n_atoms=8, n_target_ions=4, barrier_base=500., barrier_spread=200.)
    return it.make_dataset(kind, 4, spec, [600., 900.], 33, 1., seed=3)


class IoTestCases(unittest.TestCase):

    def setUp(self):
        self.dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dir, ignore_errors=True)

    def fname(self, name):
        return os.path.join(self.dir, name)

    def test_dataset_io(self):
        a = small_dataset()
        it.save_dataset(a, self.fname('trj.jsonl'))
        b = it.load_dataset(self.fname('trj.jsonl'))
        assert a == b
        self.assertEqual(b.kind, it.DatasetKind.TRAJECTORY)

    def test_structure_dataset_kind_inferred(self):
        a = small_dataset('StructureBased')
        it.save_dataset(a, self.fname('str.jsonl'))
        self.assertEqual(it.load_dataset(self.fname('str.jsonl')).kind,
                         it.DatasetKind.STRUCTURE)

    def test_field_order(self):
        it.save_dataset(small_dataset(), self.fname('trj.jsonl'))
        with open(self.fname('trj.jsonl')) as f:
            first = f.readline()
        self.assertEqual(list(json.loads(first, object_pairs_hook=OrderedDict).keys()),
                         ['id', 'split', 'temperature', 't_norm', 'target', 'structure',
                          'trajectory'])

    def test_save_is_deterministic(self):
        it.save_dataset(small_dataset(), self.fname('a.jsonl'))
        it.save_dataset(small_dataset(), self.fname('b.jsonl'))
        with open(self.fname('a.jsonl')) as fa, open(self.fname('b.jsonl')) as fb:
            self.assertEqual(fa.read(), fb.read())

    def test_empty_file(self):
        open(self.fname('empty.jsonl'), 'w').close()
        with self.assertRaises(ValueError):
            it.load_dataset(self.fname('empty.jsonl'))

    def test_embedded_io(self):
        a = it.embed_dataset(small_dataset())
        it.save_embedded(a, self.fname('emb.jsonl'))
        b = it.load_embedded(self.fname('emb.jsonl'))
        assert a == b
        self.assertIsNone(b.test()[0].p_vec)

    def test_copy_is_deep(self):
        a = small_dataset()
        b = io.copy(a)
        assert a == b
        self.assertIsNot(a.samples[0].structure, b.samples[0].structure)

    def test_checkpoint_io(self):
        tensors = OrderedDict([('W', np.arange(6.).reshape(2, 3) / 7.),
                         ('b', np.array([0.1]))])
        opt = AdamState(tensors, 1e-3)
        opt.step(tensors, {'W': np.ones((2, 3)), 'b': np.ones(1)})
        save_checkpoint(self.fname('m.ckpt.json'), tensors, opt)
        loaded, state = load_checkpoint(self.fname('m.ckpt.json'))
        self.assertEqual(list(loaded.keys()), ['W', 'b'])
        npt.assert_array_equal(loaded['W'], tensors['W'])
        self.assertEqual(state['t'], 1)


def suite():
    return unittest.defaultTestLoader.loadTestsFromTestCase(IoTestCases)


if __name__ == '__main__':
    unittest.main(defaultTest='suite')
