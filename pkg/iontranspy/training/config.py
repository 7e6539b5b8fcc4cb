# -*- coding: utf-8 -*-
"""
Optimisation settings and their named presets.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from dataclasses import dataclass, replace

D_H = 8


@dataclass
class TrainConfig:
    lambda_b: float = 1.0
    lambda_r: float = 1e-5
    epochs: int = 50
    lr_encoder: float = 1e-3
    lr_decoder_early: float = 1e-3
    lr_decoder_late: float = 1e-3
    lr_decay: float = 0.0
    batch_size: int = 1
    seed: int = 0

    def check(self):
        if not self.lambda_r > 0:
            raise ValueError('lambda_r must be positive')
        if self.lambda_b < 0:
            raise ValueError('lambda_b must be non-negative')
        if self.epochs < 1:
            raise ValueError('epochs must be at least 1')
        if self.batch_size < 1:
            raise ValueError('batch_size must be at least 1')
        if not 0 <= self.lr_decay < 1:
            raise ValueError('lr_decay must be in [0, 1)')
        return self

    def learning_rates(self):
        return {'encoder': self.lr_encoder,
                'decoder_early': self.lr_decoder_early,
                'decoder_late': self.lr_decoder_late}

    def with_lr(self, lr):
        """Same settings with every group at rate *lr*."""
        return replace(self, lr_encoder=lr, lr_decoder_early=lr, lr_decoder_late=lr)


def trainer_config(seed=0):
    """Dual-modal trainer: 1e-3 for 50 epochs."""
    return TrainConfig(epochs=50, seed=seed).with_lr(1e-3)


def finetune_config(seed=0):
    """Predictor fine-tuning: 1e-5 for 50 epochs."""
    return TrainConfig(epochs=50, seed=seed).with_lr(1e-5)


def structure_config(seed=0, epochs=100, lr_decay=0.01):
    """Structure predictor: encoder 1e-2, first two decoder layers 1e-4, rest 1e-6."""
    return TrainConfig(epochs=epochs, lr_encoder=1e-2, lr_decoder_early=1e-4,
                       lr_decoder_late=1e-6, lr_decay=lr_decay, seed=seed)


PRESETS = {
    'dataset1_like': {'trainer': trainer_config(), 'finetune': finetune_config()},
    'dataset2_like': {'structure': structure_config()},
    'dataset3_like': {'structure': structure_config(epochs=1000, lr_decay=0.001)},
}
