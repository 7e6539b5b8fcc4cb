# -*- coding: utf-8 -*-
"""
Command line interface.

    iontranspy run --out runs/demo --set trj_data.n_materials=16
    iontranspy generate --config exp.yaml
    iontranspy init-predictor --method gradient
    iontranspy ablate --preset wide --progress

Every command loads the config (defaults, --preset, --config, --set in that
order) and works on one experiment directory.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from .config import load_config, F1_METHODS
from .pipeline import STAGES, StageError, run_stage, run_pipeline, path
from .ablation import run_ablations, run_lambda_sweep

from dataclasses import replace
import argparse
import logging
import sys

logger = logging.getLogger(__name__)

COMMANDS = STAGES + ['run', 'ablate', 'sweep-lambda']


def build_parser():
    parser = argparse.ArgumentParser(prog='iontranspy',
                                     description='Ionic transport prediction experiments.')
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', default=None, help='YAML experiment config')
    common.add_argument('--out', default=None, help='experiment directory')
    common.add_argument('--set', dest='overrides', action='append', default=[],
                        metavar='KEY=VALUE', help='dotted config override, repeatable')
    common.add_argument('--preset', dest='presets', action='append', default=[],
                        help='training or model preset, repeatable')
    common.add_argument('--verbose', action='store_true', help='log at DEBUG level')
    common.add_argument('--progress', action='store_true', help='show progress bars')

    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == 'init-predictor':
            p.add_argument('--method', choices=F1_METHODS, default=None,
                           help='f1 encoder initialisation (default from config)')
        if name == 'sweep-lambda':
            p.add_argument('--lambdas', type=float, nargs='+', default=None,
                           help='lambda_r values (default from config)')
    return parser


def configure_logging(verbose=False):
    root = logging.getLogger('iontranspy')
    for h in list(root.handlers):
        root.removeHandler(h)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter('%(asctime)s %(levelname)s %(name)s: %(message)s'))
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.INFO)


def make_config(args):
    overrides = list(args.overrides)
    if args.out is not None:
        overrides.append('output_dir=%s' % args.out)
    cfg = load_config(args.config, overrides, args.presets)
    if getattr(args, 'method', None) is not None:
        cfg = replace(cfg, transfer=replace(cfg.transfer, method=args.method))
    return cfg


def run_command(args):
    cfg = make_config(args)
    if args.command == 'run':
        return run_pipeline(cfg, args.progress)
    if args.command in ('ablate', 'sweep-lambda'):
        try:
            if args.command == 'sweep-lambda':
                return run_lambda_sweep(cfg, args.lambdas)
            report = run_ablations(cfg, args.progress)
            report.save(path(cfg, 'ablation_report.json'))
            return report
        except Exception as e:
            raise StageError(args.command, e)
    return run_stage(cfg, args.command, args.progress)


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        run_command(args)
    except StageError as e:
        print(str(e), file=sys.stderr)
        return 1
    except Exception as e:
        # bad config or overrides
        print('error: %s' % e, file=sys.stderr)
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
