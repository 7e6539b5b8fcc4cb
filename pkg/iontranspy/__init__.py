# -*- coding: utf-8 -*-
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from .core.data import Structure, Trajectory, TransportTarget, Sample, TargetKind, DatasetKind
from .core.dataset import Dataset, validate_dataset
from .core.embedded import EmbeddedDataset
from .core.io import load_dataset, save_dataset, load_embedded, save_embedded
from .synth.material import MaterialSpec
from .synth.generate import make_dataset
from .embed.dataset import embed_dataset
from .physics.transport import MsdCurve, msd
from .training.models import DualModalTrainer, Predictor, load_model, predict
from .harness.config import ExperimentConfig, load_config
from .harness.metrics import EvalReport, mae
from .harness.pipeline import run_pipeline
from .harness.ablation import run_ablations, run_lambda_sweep
