from __future__ import absolute_import

from .linalg import ridge_solve, ridge_objective, ridge_gradient, normal_residual
from .layers import layernorm, layernorm_backward, Mlp, mlp_forward, mlp_backward, \
    l1_loss, init_encoder
from .adam import AdamState, adam_step, default_group
from .checkpoint import save_checkpoint, load_checkpoint
