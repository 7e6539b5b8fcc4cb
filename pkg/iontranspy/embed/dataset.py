# -*- coding: utf-8 -*-
"""
Pre-compute the embeddings of a whole dataset.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from ..core.dataset import Dataset
from ..core.embedded import EmbeddedSample, EmbeddedDataset
from .trajectory import trajectory_embedding, N_BANDS
from .structure import build_x

from tqdm import tqdm
import logging

logger = logging.getLogger(__name__)


def embed_sample(sample, split, t_norm, n_bands=N_BANDS, include_msd_scalar=True,
                 polynomial=True):
    s = sample.target.species
    x = build_x(sample.structure, sample.temperature, t_norm, s, polynomial)
    p = None
    if sample.trajectory is not None:
        p = trajectory_embedding(sample.trajectory, sample.structure, s, n_bands,
                                 include_msd_scalar)
    return EmbeddedSample(sample.id, split, x, p, sample.target.value_log10,
                          sample.temperature)


def embed_dataset(ds, n_bands=N_BANDS, include_msd_scalar=True, polynomial=True,
                  progress=False):
    """
    Embed every sample of *ds* with the dataset's t_norm.

    Samples without a trajectory get p_vec None.
    """
    if not isinstance(ds, Dataset):
        raise TypeError('expecting a Dataset')
    out = [embed_sample(sample, split, ds.t_norm, n_bands, include_msd_scalar, polynomial)
           for sample, split in tqdm(ds, total=len(ds), desc='embed', disable=not progress)]
    eds = EmbeddedDataset(out)
    logger.info('embedded %d samples, d_xT=%d d_p=%d', len(eds), eds.d_xT, eds.d_p)
    return eds
