# -*- coding: utf-8 -*-
"""
Build trajectory-based and structure-based datasets of synthetic materials.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from ..core.data import DatasetKind, TargetKind, Sample, TransportTarget
from ..core.dataset import Dataset
from ..physics import transport
from .material import MaterialSpec, gen_material, stage_rng, TAG_DATASET
from .hopping import simulate_trajectory

import numpy as np
from tqdm import tqdm
import logging

logger = logging.getLogger(__name__)

TEST_FRACTION = 0.2
MSD_POINTS = 64


def material_id(m):
    return 'm%03d' % m


def sample_id(material, T):
    return '%s@%g' % (material, T)


def transport_value(tr, st, spec, T, target_kind, fit_window=0.5, sid=None):
    """
    Physical target value of one simulated sample (not yet log10).

    A Diffusivity or Conductivity target whose fitted diffusivity is not
    positive (ions that never hop) raises ValueError naming the sample.
    """
    s = spec.target_species
    if target_kind == TargetKind.MSD_FINAL:
        return transport.final_msd(tr, st, s)
    curve = transport.msd(tr, st, s, min(MSD_POINTS, tr.n_frames), multi_origin=True)
    D = transport.einstein_diffusivity(curve, fit_window)
    if not D > 0:
        where = 'T=%g' % T if sid is None else 'sample %s' % sid
        raise ValueError('%s: fitted diffusivity %.3g is not positive; lower the barrier, '
                         'raise T or lengthen the trajectory' % (where, D))
    if target_kind == TargetKind.DIFFUSIVITY:
        return D
    params = transport.NernstEinsteinParams(spec.n_target_ions / spec.volume(), 1., T)
    return transport.nernst_einstein(D, params)


def _split(n_materials, rng, held_out, mobile):
    if held_out is not None:
        test = set(np.flatnonzero(mobile == held_out).tolist())
    else:
        n_test = max(1, int(round(TEST_FRACTION * n_materials)))
        test = set(rng.permutation(n_materials)[:n_test].tolist())
    if not test:
        raise ValueError('test split is empty')
    if len(test) == n_materials:
        raise ValueError('train split is empty')
    return test


def make_dataset(kind, n_materials, spec_template, temperatures, L, dt, seed,
                 target_kind=TargetKind.MSD_FINAL, barrier_jitter=0.3, stride=1,
                 mobile_species=None, held_out_species=None, material_seeds=None,
                 progress=False):
    """
    Generate n_materials x len(temperatures) samples.

    args

    - kind           | DatasetKind
    - n_materials    | at least 4
    - spec_template  | MaterialSpec; seed and barrier_base vary per material
    - temperatures   | list of kelvin
    - L, dt          | frames per trajectory and simulation step
    - seed           | dataset seed

    kwargs

    - target_kind       | MsdFinal, Diffusivity or Conductivity
    - barrier_jitter    | barrier_base of each material is scaled by U[1-j, 1+j]
    - stride            | simulation steps per recorded frame
    - mobile_species    | codes to draw each material's mobile species from
    - held_out_species  | materials with this mobile species form the test split
    - material_seeds    | explicit per-material seeds (must be distinct)
    - progress          | tqdm bar over materials

    Targets are computed from the simulated trajectory. Structure-based
    datasets and test samples keep no trajectory. The split is by material.
    """
    kind = DatasetKind(kind)
    target_kind = TargetKind(target_kind)
    if not isinstance(spec_template, MaterialSpec):
        raise TypeError('spec_template must be a MaterialSpec')
    if n_materials < 4:
        raise ValueError('need at least 4 materials')
    temperatures = [float(T) for T in temperatures]
    if not temperatures:
        raise ValueError('temperatures must be nonempty')
    if any(not T > 0 for T in temperatures):
        raise ValueError('temperatures must be positive')
    if not 0 <= barrier_jitter < 1:
        raise ValueError('barrier_jitter must be in [0, 1)')
    if held_out_species is not None and mobile_species is None:
        raise ValueError('held_out_species needs mobile_species')

    rng = stage_rng(seed, TAG_DATASET)
    if material_seeds is None:
        material_seeds = rng.integers(0, 2 ** 62, size=n_materials)
    material_seeds = [int(s) for s in material_seeds]
    if len(material_seeds) != n_materials:
        raise ValueError('need one seed per material')
    if len(set(material_seeds)) != n_materials:
        raise ValueError('duplicate material seeds')
    scale = rng.uniform(1. - barrier_jitter, 1. + barrier_jitter, size=n_materials)
    if mobile_species is None:
        mobile = np.full(n_materials, spec_template.target_species)
    else:
        mobile = rng.choice(np.asarray(mobile_species, dtype=int), size=n_materials)
    test_materials = _split(n_materials, rng, held_out_species, mobile)

    samples, splits = [], []
    for m in tqdm(range(n_materials), desc='materials', disable=not progress):
        spec = spec_template.replace(seed=material_seeds[m],
                                     barrier_base=spec_template.barrier_base * scale[m],
                                     target_species=int(mobile[m]))
        st = gen_material(spec)
        split = 'test' if m in test_materials else 'train'
        for j, T in enumerate(temperatures):
            sid = sample_id(material_id(m), T)
            tr = simulate_trajectory(st, spec, T, L, dt, seed=material_seeds[m] + j + 1,
                                     stride=stride)
            value = transport_value(tr, st, spec, T, target_kind, sid=sid)
            target = TransportTarget(target_kind, spec.target_species,
                                     transport.to_log10(value, sid))
            keep = kind == DatasetKind.TRAJECTORY and split == 'train'
            samples.append(Sample(sid, st, tr if keep else None, T, target))
            splits.append(split)

    t_norm = max(temperatures)
    ds = Dataset(kind, samples, splits, t_norm)
    logger.info('generated %r', ds)
    return ds
