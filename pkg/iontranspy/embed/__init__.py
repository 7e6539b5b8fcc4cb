from __future__ import absolute_import

from .trajectory import trajectory_embedding, band_edges
from .structure import atom_embedding, select_species, polynomial_expand, \
    temperature_embedding, build_x, x_dim
from .dataset import embed_dataset, embed_sample
