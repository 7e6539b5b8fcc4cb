from __future__ import absolute_import

from .config import ExperimentConfig, DatasetConfig, EmbedConfig, ModelConfig, \
    TransferConfig, AblationConfig, load_config, save_config, config_diff, override, with_seed
from .metrics import mae, EvalReport, per_temperature, sign_test, paired_ttest
from .pipeline import StageError, run_stage, run_pipeline, fit_all, STAGES
from .ablation import run_ablations, run_lambda_sweep, ARM_OVERRIDES
