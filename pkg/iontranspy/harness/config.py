# -*- coding: utf-8 -*-
"""
Experiment configuration.

Structured OmegaConf configs built from dataclasses. A YAML file and dotted
overrides (trj_data.n_materials=64) are merged onto the defaults; the result
is snapshotted as config.yaml in the experiment directory.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from ..core.data import DatasetKind, TargetKind
from ..synth import MaterialSpec
from ..embed.structure import x_dim
from ..training.config import TrainConfig, D_H, trainer_config, finetune_config, \
    structure_config, PRESETS

from dataclasses import dataclass, field, replace
from typing import List, Optional

from omegaconf import OmegaConf
import logging

logger = logging.getLogger(__name__)

LAMBDA_GRID = [1e-3, 1e-4, 1e-5, 1e-6, 1e-7]
ARMS = ['full', 'random-init-f1', 'gradient-distill', 'lambda_b-0', 'no-polynomial',
        'random-init-f2', 'f2-from-W_trj', 'no-msd-scalar']
F1_METHODS = ('closed-form', 'gradient', 'random')
F2_SOURCES = ('W_xT', 'W_trj', 'random')


@dataclass
class DatasetConfig:
    kind: str = DatasetKind.TRAJECTORY.value
    n_materials: int = 32
    n_atoms: int = 27
    n_target_ions: int = 8
    barrier_base: float = 2000.0
    barrier_spread: float = 800.0
    attempt_rate: float = 1.0
    lattice_spacing: float = 1.0
    target_species: int = 1
    n_species: int = 3
    temperatures: List[float] = field(default_factory=lambda: [600.0, 800.0, 1000.0, 1200.0])
    n_frames: int = 101
    dt: float = 1.0
    stride: int = 4
    seed: int = 0
    target_kind: str = TargetKind.MSD_FINAL.value
    barrier_jitter: float = 0.3
    mobile_species: Optional[List[int]] = None
    held_out_species: Optional[int] = None

    def spec_template(self):
        return MaterialSpec(self.n_atoms, self.n_target_ions, self.barrier_base,
                            self.barrier_spread, self.attempt_rate, self.lattice_spacing,
                            seed=0, target_species=self.target_species,
                            n_species=self.n_species)


def structure_dataset_config():
    return DatasetConfig(kind=DatasetKind.STRUCTURE.value, barrier_base=3000.0,
                         temperatures=[1000.0, 1500.0, 2000.0, 2500.0], seed=1)


@dataclass
class EmbedConfig:
    n_bands: int = 16
    include_msd_scalar: bool = True
    polynomial: bool = True


@dataclass
class ModelConfig:
    d_h: int = D_H
    decoder_width: int = 128
    decoder_depth: int = 3

    def widths(self):
        return [self.decoder_width] * self.decoder_depth


@dataclass
class TransferConfig:
    method: str = 'closed-form'
    distill_steps: int = 200
    distill_lr: float = 1e-3
    str_encoder_from: str = 'W_xT'


@dataclass
class AblationConfig:
    seeds: List[int] = field(default_factory=lambda: list(range(20)))
    arms: List[str] = field(default_factory=lambda: list(ARMS))
    lambda_values: List[float] = field(default_factory=lambda: list(LAMBDA_GRID))


@dataclass
class ExperimentConfig:
    name: str = 'default'
    output_dir: str = 'runs/default'
    seed: int = 0
    trj_data: DatasetConfig = field(default_factory=DatasetConfig)
    str_data: DatasetConfig = field(default_factory=structure_dataset_config)
    embed: EmbedConfig = field(default_factory=EmbedConfig)
    model: ModelConfig = field(default_factory=ModelConfig)
    trainer: TrainConfig = field(default_factory=trainer_config)
    finetune: TrainConfig = field(default_factory=finetune_config)
    structure: TrainConfig = field(default_factory=structure_config)
    transfer: TransferConfig = field(default_factory=TransferConfig)
    ablation: AblationConfig = field(default_factory=AblationConfig)


# Model presets

MODEL_PRESETS = {
    'desk': {'decoder_width': 128},
    'wide': {'decoder_width': 4000},
}


def apply_preset(cfg, name):
    """Apply a training preset (dataset1_like, ...) or a model preset (desk, wide)."""
    if name in MODEL_PRESETS:
        return replace(cfg, model=replace(cfg.model, **MODEL_PRESETS[name]))
    if name not in PRESETS:
        raise ValueError('unknown preset %r' % name)
    changes = {k: replace(v, seed=getattr(cfg, k).seed) for k, v in PRESETS[name].items()}
    return replace(cfg, **changes)


# Loading and saving

def load_config(path=None, overrides=(), presets=()):
    """
    Defaults, then presets, then the YAML file, then dotted overrides.
    Returns an ExperimentConfig.
    """
    base = ExperimentConfig()
    for name in presets:
        base = apply_preset(base, name)
    conf = OmegaConf.structured(base)
    if path is not None:
        conf = OmegaConf.merge(conf, OmegaConf.load(path))
    if overrides:
        conf = OmegaConf.merge(conf, OmegaConf.from_dotlist(list(overrides)))
    cfg = OmegaConf.to_object(conf)
    check_config(cfg)
    return cfg


def to_yaml(cfg):
    return OmegaConf.to_yaml(OmegaConf.structured(cfg))


def save_config(cfg, filename):
    with open(filename, 'w') as f:
        f.write(to_yaml(cfg))


def flatten(cfg):
    """Dotted key -> value of every leaf."""
    out = {}

    def walk(node, prefix):
        for k, v in node.items():
            key = '%s.%s' % (prefix, k) if prefix else k
            if isinstance(v, dict):
                walk(v, key)
            else:
                out[key] = v

    walk(OmegaConf.to_container(OmegaConf.structured(cfg)), '')
    return out


def config_diff(a, b):
    """List of (key, a value, b value) for every leaf that differs."""
    fa, fb = flatten(a), flatten(b)
    return [(k, fa.get(k), fb.get(k)) for k in sorted(set(fa) | set(fb)) if fa.get(k) != fb.get(k)]


def override(cfg, dotlist):
    """Copy of cfg with dotted overrides applied."""
    conf = OmegaConf.merge(OmegaConf.structured(cfg), OmegaConf.from_dotlist(list(dotlist)))
    return OmegaConf.to_object(conf)


def with_seed(cfg, seed):
    """Training seed applied to model initialisation and sample order; data seeds are kept."""
    return replace(cfg, seed=int(seed),
                   trainer=replace(cfg.trainer, seed=int(seed)),
                   finetune=replace(cfg.finetune, seed=int(seed)),
                   structure=replace(cfg.structure, seed=int(seed)))


# Checks

def embedding_dims(cfg):
    """(d_p, d_xT) implied by the config."""
    d_n = cfg.trj_data.n_species + 2
    d_e = 2
    d_p = cfg.embed.n_bands + (1 if cfg.embed.include_msd_scalar else 0)
    return d_p, x_dim(d_n, d_e, cfg.embed.polynomial)


def check_config(cfg):
    for name in ('trj_data', 'str_data'):
        d = getattr(cfg, name)
        DatasetKind(d.kind)
        TargetKind(d.target_kind)
        if d.n_materials < 4:
            raise ValueError('%s.n_materials must be at least 4' % name)
        if not d.temperatures:
            raise ValueError('%s.temperatures must be nonempty' % name)
        d.spec_template().replace(seed=0).check()
    if DatasetKind(cfg.trj_data.kind) != DatasetKind.TRAJECTORY:
        raise ValueError('trj_data must be trajectory-based')
    if cfg.trj_data.n_species != cfg.str_data.n_species:
        raise ValueError('trj_data and str_data need the same species vocabulary')
    if cfg.trj_data.n_frames < 2 * cfg.embed.n_bands:
        raise ValueError('trj_data.n_frames must be at least 2 * embed.n_bands')
    if cfg.model.d_h < 2:
        raise ValueError('model.d_h must be at least 2')
    if cfg.model.decoder_width < 1 or cfg.model.decoder_depth < 1:
        raise ValueError('decoder needs at least one hidden layer')
    if cfg.transfer.method not in F1_METHODS:
        raise ValueError('transfer.method must be one of %s' % (F1_METHODS,))
    if cfg.transfer.str_encoder_from not in F2_SOURCES:
        raise ValueError('transfer.str_encoder_from must be one of %s' % (F2_SOURCES,))
    if not cfg.ablation.seeds:
        raise ValueError('need at least one seed')
    for arm in cfg.ablation.arms:
        if arm not in ARMS:
            raise ValueError('unknown ablation arm %r' % arm)
    if any(not lam > 0 for lam in cfg.ablation.lambda_values):
        raise ValueError('lambda values must be positive')
    for name in ('trainer', 'finetune', 'structure'):
        getattr(cfg, name).check()
    return cfg
