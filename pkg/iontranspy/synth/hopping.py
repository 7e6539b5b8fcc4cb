# -*- coding: utf-8 -*-
"""
Lattice hopping dynamics.

Mobile ions hop +-a along each axis independently with probability
p = min(0.5, nu exp(-E_a / T) dt) per direction per step. Framework atoms
vibrate around their sites with Gaussian noise of std 0.05 a and never hop.

Per-axis step variance is 2 p a^2, so after n = t / dt steps the per-axis
variance is 2 (p a^2 / dt) t and the 3D MSD is 6 D t with D = p a^2 / dt.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from ..core.data import Structure, Trajectory
from .material import MaterialSpec, ion_barriers, stage_rng, TAG_HOP, TAG_VIBRATION

import numpy as np
import logging

logger = logging.getLogger(__name__)

VIBRATION = 0.05
CHUNK = 4096


def hop_probability(barrier, T, attempt_rate, dt):
    """Per-direction hop probability of one step, capped at 0.5."""
    if not T > 0:
        raise ValueError('temperature must be positive')
    if not dt > 0:
        raise ValueError('dt must be positive')
    try:
        with np.errstate(over='raise'):
            rate = attempt_rate * np.exp(-np.asarray(barrier, dtype=float) / T) * dt
    except FloatingPointError:
        raise ValueError('hop probability overflows at T=%g' % T)
    return np.minimum(0.5, rate)


def analytic_diffusivity(spec, barrier, T, dt):
    """
    Einstein diffusivity of the hop process, D = p a^2 / dt.
    """
    p = hop_probability(barrier, T, spec.attempt_rate, dt)
    return float(p * spec.lattice_spacing ** 2 / dt)


def simulate_trajectory(st, spec, T, L, dt, seed, stride=1):
    """
    Simulate L frames of unwrapped coordinates.

    args

    - st      | Structure from gen_material(spec)
    - spec    | MaterialSpec
    - T       | temperature
    - L       | number of recorded frames
    - dt      | simulation step
    - seed    | trajectory seed

    kwargs

    - stride  | simulation steps per recorded frame; the Trajectory dt is stride * dt
    """
    if not isinstance(st, Structure): raise TypeError('expecting a Structure')
    if not isinstance(spec, MaterialSpec): raise TypeError('expecting a MaterialSpec')
    if L < 2: raise ValueError('L must be at least 2')
    if stride < 1: raise ValueError('stride must be a positive integer')
    if st.n_atoms != spec.n_atoms:
        raise ValueError('structure has %d atoms, spec has %d' % (st.n_atoms, spec.n_atoms))
    if spec.attempt_rate < 0:
        raise ValueError('attempt_rate must be non-negative')

    target = np.flatnonzero(st.species == spec.target_species)
    framework = np.flatnonzero(st.species != spec.target_species)
    barriers = ion_barriers(spec, st.species)
    p = hop_probability(barriers[target], T, spec.attempt_rate, dt)[:, None]
    a = spec.lattice_spacing

    frames = np.repeat(st.positions[None, :, :], L, axis=0).astype(float)

    # hops, drawn in fixed-size chunks so the stream does not depend on L
    hop_rng = stage_rng(seed, TAG_HOP)
    n_steps = (L - 1) * stride
    position = np.zeros((target.size, 3))
    recorded = 1
    done = 0
    while done < n_steps:
        n = min(CHUNK, n_steps - done)
        u = hop_rng.random((n, target.size, 3))
        steps = a * ((u < p).astype(float) - (u >= 1. - p).astype(float))
        path = position + np.cumsum(steps, axis=0)
        # step numbers (1-based) that land on a recorded frame
        stepno = np.arange(done + 1, done + n + 1)
        keep = np.flatnonzero(stepno % stride == 0)
        frames[recorded:recorded + keep.size, target, :] += path[keep]
        recorded += keep.size
        position = path[-1]
        done += n

    vib_rng = stage_rng(seed, TAG_VIBRATION)
    frames[:, framework, :] += vib_rng.normal(0., VIBRATION * a, size=(L, framework.size, 3))

    logger.debug('simulated %d frames at T=%g for %d ions', L, T, target.size)
    return Trajectory(frames, stride * dt)
