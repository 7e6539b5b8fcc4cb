#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Test the configuration, metrics, pipeline, ablations and command line
"""

import io
import os
import shutil
import tempfile
import contextlib
import unittest, pytest
import numpy as np
import numpy.testing as npt
import pandas as pd

import iontranspy as it
from iontranspy.harness import metrics, pipeline, ablation, cli
from iontranspy.harness.config import load_config, save_config, config_diff, override, \
    with_seed, apply_preset, embedding_dims, ExperimentConfig

TINY = ['trj_data.n_materials=6', 'trj_data.n_atoms=8', 'trj_data.n_target_ions=4',
        'trj_data.barrier_base=500', 'trj_data.barrier_spread=200',
        'trj_data.temperatures=[600,900]', 'trj_data.n_frames=33', 'trj_data.stride=1',
        'str_data.n_materials=6', 'str_data.n_atoms=8', 'str_data.n_target_ions=4',
        'str_data.barrier_base=800', 'str_data.barrier_spread=200',
        'str_data.temperatures=[1000,1500]', 'str_data.n_frames=33', 'str_data.stride=1',
        'model.decoder_width=16', 'model.decoder_depth=2',
        'trainer.epochs=2', 'finetune.epochs=2', 'structure.epochs=2',
        'transfer.distill_steps=20', 'ablation.seeds=[0,1]']


def tiny_config(out, extra=()):
    return load_config(overrides=TINY + ['output_dir=%s' % out] + list(extra))


def read_all(directory, skip=('timings.json',)):
    out = {}
    for name in sorted(os.listdir(directory)):
        if name in skip: continue
        with open(os.path.join(directory, name), 'rb') as f:
            out[name] = f.read()
    return out


class TempDirTestCase(unittest.TestCase):

    def setUp(self):
        self.dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dir, ignore_errors=True)


class MetricsTestCases(unittest.TestCase):

    def test_mae(self):
        self.assertEqual(metrics.mae([(0.5, 0.5), (-1., -1.)]), 0.)
        self.assertEqual(metrics.mae([(1., 0.), (0., 1.)]), 1.)
        self.assertEqual(metrics.mae([(2., 0.)]), 2.)
        with self.assertRaises(ValueError):
            metrics.mae([])

    def test_per_temperature(self):
        df = pd.DataFrame({'id': ['a', 'b', 'c'], 'temperature': [600., 600., 900.],
                           'y_log10': [0., 1., 2.], 'yhat_log10': [1., 1., 0.]})
        table = metrics.per_temperature(df)
        self.assertEqual(list(table['temperature']), ['600', '900', 'all'])
        self.assertEqual(list(table['n']), [2, 1, 3])
        npt.assert_allclose(table['mae'], [0.5, 2., 1.])

    def test_sign_test(self):
        self.assertAlmostEqual(metrics.sign_test([1.] * 5, [2.] * 5), 0.5 ** 5)
        self.assertEqual(metrics.sign_test([1., 2.], [1., 2.]), 1.)
        self.assertGreater(metrics.sign_test([2.] * 5, [1.] * 5), 0.9)

    def test_paired_ttest(self):
        self.assertTrue(np.isnan(metrics.paired_ttest([1., 2.], [1., 2.])))
        self.assertTrue(np.isnan(metrics.paired_ttest([1.], [2.])))
        p = metrics.paired_ttest([1., 2., 3., 4.], [1.5, 2.7, 3.4, 4.9])
        self.assertTrue(0. < p < 0.05)

    def test_report_io(self):
        tmp = tempfile.mkdtemp()
        try:
            df = pd.DataFrame({'id': ['a', 'b'], 'temperature': [600., 900.],
                               'y_log10': [0., 1.], 'yhat_log10': [0.25, 1.5]})
            report = metrics.EvalReport({'trj': metrics.per_temperature(df)}, {'seed': 0},
                                        pd.DataFrame({'seed': [0, 1], 'mae_trj': [0.1, 0.2]}))
            fname = os.path.join(tmp, 'report.json')
            report.save(fname)
            back = metrics.EvalReport.load(fname)
            assert back == report
            self.assertEqual(back.mae('trj'), 0.375)
        finally:
            shutil.rmtree(tmp)


class ConfigTestCases(TempDirTestCase):

    def test_defaults(self):
        cfg = load_config()
        self.assertIsInstance(cfg, ExperimentConfig)
        self.assertEqual(cfg.trainer.epochs, 50)
        self.assertEqual(cfg.finetune.lr_encoder, 1e-5)
        self.assertEqual(cfg.structure.lr_decoder_late, 1e-6)
        self.assertEqual(cfg.ablation.lambda_values, [1e-3, 1e-4, 1e-5, 1e-6, 1e-7])
        self.assertEqual(embedding_dims(cfg), (17, 40))

    def test_file_and_overrides(self):
        fname = os.path.join(self.dir, 'exp.yaml')
        with open(fname, 'w') as f:
            f.write('trj_data:\n  n_materials: 64\nmodel:\n  decoder_width: 32\n')
        cfg = load_config(fname, ['model.decoder_width=64'])
        self.assertEqual(cfg.trj_data.n_materials, 64)
        self.assertEqual(cfg.model.decoder_width, 64)

    def test_snapshot_round_trip(self):
        cfg = tiny_config(self.dir)
        fname = os.path.join(self.dir, 'config.yaml')
        save_config(cfg, fname)
        self.assertEqual(load_config(fname), cfg)

    def test_unknown_key(self):
        with self.assertRaises(Exception):
            load_config(overrides=['trainer.momentum=0.9'])

    def test_invalid_values(self):
        with self.assertRaises(ValueError):
            load_config(overrides=['trj_data.n_materials=3'])
        with self.assertRaises(ValueError):
            load_config(overrides=['transfer.method=lbfgs'])
        with self.assertRaises(ValueError):
            load_config(overrides=['ablation.seeds=[]'])
        with self.assertRaises(ValueError):
            load_config(overrides=['ablation.lambda_values=[1e-3,0.0]'])

    def test_presets(self):
        cfg = load_config(presets=['wide', 'dataset3_like'])
        self.assertEqual(cfg.model.decoder_width, 4000)
        self.assertEqual(cfg.structure.epochs, 1000)
        self.assertEqual(cfg.structure.lr_decay, 0.001)
        with self.assertRaises(ValueError):
            apply_preset(cfg, 'huge')

    def test_with_seed(self):
        cfg = with_seed(load_config(), 7)
        self.assertEqual((cfg.trainer.seed, cfg.finetune.seed, cfg.structure.seed), (7, 7, 7))
        self.assertEqual(cfg.trj_data.seed, 0)

    def test_diff(self):
        cfg = load_config()
        self.assertEqual(config_diff(cfg, cfg), [])
        self.assertEqual(config_diff(cfg, override(cfg, ['trainer.lambda_b=0.0'])),
                         [('trainer.lambda_b', 1.0, 0.0)])


class PipelineTestCases(TempDirTestCase):

    def test_run(self):
        cfg = tiny_config(self.dir)
        report = it.run_pipeline(cfg)
        self.assertEqual(list(report.tables), ['trj', 'str'])
        for name in ('trj', 'str'):
            self.assertGreaterEqual(report.mae(name), 0.)
            table = report.tables[name]
            self.assertEqual(list(table['temperature'])[-1], 'all')
        for name in ('config.yaml', 'trj_dataset.jsonl', 'str_embedded.jsonl', 'trainer.ckpt.json',
                     'f1_init.ckpt.json', 'f1.ckpt.json', 'f2.ckpt.json', 'trainer_log.csv',
                     'report.json', 'eval_str.csv', 'timings.json'):
            self.assertTrue(os.path.exists(os.path.join(self.dir, name)), name)

        # the MAEs recompute from the prediction files
        for name in ('trj', 'str'):
            preds = metrics.read_predictions(os.path.join(self.dir, 'predictions_%s.csv' % name))
            self.assertEqual(list(preds.columns), ['id', 'temperature', 'y_log10', 'yhat_log10'])
            self.assertEqual(metrics.frame_mae(preds), report.mae(name))

        # a rerun writes the same bytes
        first = read_all(self.dir)
        second_report = it.run_pipeline(cfg)
        self.assertEqual(read_all(self.dir), first)
        assert second_report == report

    def test_stage_error(self):
        cfg = tiny_config(self.dir)
        with self.assertRaises(pipeline.StageError) as cm:
            pipeline.run_stage(cfg, 'finetune')
        self.assertEqual(cm.exception.stage, 'finetune')
        self.assertTrue(str(cm.exception).startswith('stage finetune failed: '))

    def test_empty_test_split(self):
        eds = it.EmbeddedDataset([it.core.EmbeddedSample('a', 'train', [1., 2.], None, 0., 1.)])
        f = it.training.random_predictor(2, 2, [4])
        with self.assertRaises(ValueError) as cm:
            pipeline.evaluate(f, eds, 'str')
        self.assertIn('str test split', str(cm.exception))

    def test_in_memory_matches_files(self):
        cfg = tiny_config(self.dir)
        report = it.run_pipeline(cfg)
        trj = it.load_embedded(os.path.join(self.dir, 'trj_embedded.jsonl'))
        st = it.load_embedded(os.path.join(self.dir, 'str_embedded.jsonl'))
        out = pipeline.fit_all(cfg, trj, st)
        self.assertEqual(out['mae_trj'], report.mae('trj'))
        self.assertEqual(out['mae_str'], report.mae('str'))


class AblationTestCases(TempDirTestCase):

    def test_lambda_b_arm_changes_only_the_loss(self):
        cfg = tiny_config(self.dir)
        diffs = ablation.arm_diffs(cfg, ['lambda_b-0'])
        self.assertEqual(list(diffs['key']), ['trainer.lambda_b'])
        self.assertEqual(list(diffs['value']), [0.0])

    def test_zero_step_distillation_is_random_init(self):
        cfg = tiny_config(self.dir, ['transfer.distill_steps=0'])
        trj = pipeline.embed(cfg, pipeline.build_dataset(cfg.trj_data))
        g, _ = pipeline.fit_trainer(cfg, trj)
        a = pipeline.init_f1(ablation.arm_config(cfg, 'gradient-distill'), g, trj)
        b = pipeline.init_f1(ablation.arm_config(cfg, 'random-init-f1'), g, trj)
        npt.assert_array_equal(a.W, b.W)

    def test_unknown_arm(self):
        with self.assertRaises(ValueError):
            ablation.arm_config(load_config(), 'no-decoder')

    @pytest.mark.slow
    def test_run_ablations(self):
        cfg = tiny_config(self.dir, ['ablation.arms=[full,random-init-f1,lambda_b-0]'])
        report = it.run_ablations(cfg)
        self.assertEqual(len(report.per_seed), 6)
        self.assertEqual(set(report.per_seed['arm']), {'full', 'random-init-f1', 'lambda_b-0'})
        s = report.summary
        self.assertTrue(s.loc[s['arm'] == 'full', 'sign_p'].isna().all())
        p = s.loc[s['arm'] != 'full', 'sign_p']
        self.assertTrue(((p >= 0) & (p <= 1)).all())
        self.assertIn('random-init-f1/trj', report.tables)
        for name in ('ablation_per_seed.csv', 'ablation_summary.csv', 'ablation_config_diff.csv'):
            self.assertTrue(os.path.exists(os.path.join(self.dir, name)), name)
        # the full arm of each seed is an ordinary run with that seed
        out = pipeline.fit_all(with_seed(cfg, 1),
                               pipeline.embed(cfg, pipeline.build_dataset(cfg.trj_data)),
                               pipeline.embed(cfg, pipeline.build_dataset(cfg.str_data)))
        row = report.per_seed[(report.per_seed['arm'] == 'full') & (report.per_seed['seed'] == 1)]
        self.assertEqual(row['mae_trj'].iloc[0], out['mae_trj'])

    @pytest.mark.slow
    def test_transfer_beats_random_over_seeds(self):
        cfg = tiny_config(self.dir, ['trj_data.n_materials=16', 'str_data.n_materials=16',
                                     'trainer.epochs=60', 'finetune.epochs=20',
                                     'structure.epochs=40', 'transfer.distill_steps=200',
                                     'ablation.seeds=[%s]' % ','.join(map(str, range(20))),
                                     'ablation.arms=[full,random-init-f1,gradient-distill,'
                                     'random-init-f2]'])
        report = it.run_ablations(cfg, write=False)
        s = report.summary.set_index(['arm', 'metric'])
        for arm, metric in (('random-init-f1', 'mae_trj'), ('random-init-f2', 'mae_str')):
            self.assertEqual(s.loc[(arm, metric), 'n'], 20)
            self.assertLess(s.loc[(arm, metric), 'sign_p'], 0.05, arm)
            self.assertGreater(s.loc[(arm, metric), 'rel_change'], 0.05, arm)
        # the closed-form encoder minimises the ridge objective the distillation descends
        ps = report.per_seed.set_index(['arm', 'seed'])['objective']
        for seed in range(20):
            self.assertLess(ps[('full', seed)], ps[('gradient-distill', seed)], seed)

    @pytest.mark.slow
    def test_lambda_sweep(self):
        cfg = tiny_config(self.dir)
        table = it.run_lambda_sweep(cfg)
        self.assertEqual(len(table), 5)
        order = table.sort_values('lambda_r')
        self.assertTrue(np.all(np.diff(order['w_trj_norm'].values) <= 1e-12))
        self.assertTrue(np.isfinite(table['mae_trj']).all())
        self.assertTrue(os.path.exists(os.path.join(self.dir, 'lambda_sweep.csv')))

    def test_bad_lambda(self):
        with self.assertRaises(ValueError):
            it.run_lambda_sweep(tiny_config(self.dir), [1e-3, -1.])


class CliTestCases(TempDirTestCase):

    def args(self, command, *extra):
        out = [command, '--out', self.dir]
        for item in TINY:
            out += ['--set', item]
        return out + list(extra)

    def test_stages(self):
        for stage in ('generate', 'embed', 'train-trainer'):
            self.assertEqual(cli.main(self.args(stage)), 0)
        self.assertEqual(cli.main(self.args('init-predictor', '--method', 'gradient')), 0)
        for stage in ('finetune', 'transfer', 'train-structure', 'evaluate'):
            self.assertEqual(cli.main(self.args(stage)), 0)
        report = metrics.EvalReport.load(os.path.join(self.dir, 'report.json'))
        self.assertEqual(report.labels['f1_init'], 'closed-form')
        self.assertEqual(list(report.tables), ['trj', 'str'])

    def test_failure_names_stage(self):
        err = io.StringIO()
        with contextlib.redirect_stderr(err):
            status = cli.main(self.args('train-trainer'))
        self.assertEqual(status, 1)
        self.assertIn('stage train-trainer failed:', err.getvalue())

    def test_bad_override(self):
        err = io.StringIO()
        with contextlib.redirect_stderr(err):
            status = cli.main(self.args('generate', '--set', 'trj_data.n_materials=2'))
        self.assertEqual(status, 1)
        self.assertIn('n_materials', err.getvalue())

    def test_parser(self):
        args = cli.build_parser().parse_args(['sweep-lambda', '--lambdas', '1e-3', '1e-5'])
        self.assertEqual(args.lambdas, [1e-3, 1e-5])
        with self.assertRaises(SystemExit):
            with contextlib.redirect_stderr(io.StringIO()):
                cli.build_parser().parse_args(['init-predictor', '--method', 'newton'])


def suite():
    asuit = unittest.TestSuite()
    for case in (MetricsTestCases, ConfigTestCases, PipelineTestCases, AblationTestCases,
                 CliTestCases):
        asuit.addTests(unittest.defaultTestLoader.loadTestsFromTestCase(case))
    return asuit


if __name__ == '__main__':
    unittest.main(defaultTest='suite')
