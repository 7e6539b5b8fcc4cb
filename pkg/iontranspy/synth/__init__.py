from __future__ import absolute_import

from .material import MaterialSpec, gen_material, ion_barriers
from .hopping import hop_probability, simulate_trajectory, analytic_diffusivity
from .generate import make_dataset
