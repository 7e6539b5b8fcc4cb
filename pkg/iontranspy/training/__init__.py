from __future__ import absolute_import

from .config import TrainConfig, PRESETS, D_H, trainer_config, finetune_config, structure_config
from .models import DualModalTrainer, Predictor, trainer_forward, predict, encode, load_model
from .loops import train_dual_modal, train_predictor, finetune_predictor, \
    train_structure_predictor, plot_loss_log
from .transfer import closed_form_init, gradient_distill_init, data_level_init, \
    random_predictor, ridge_problem
