# -*- coding: utf-8 -*-
"""
Trajectory embedding: band-pooled Fourier magnitudes of ion displacements.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from ..core.data import Trajectory, Structure

import numpy as np
from scipy import fft

N_BANDS = 16


def band_edges(n_freq, n_bands):
    """
    Log-spaced band edges over shifted bin numbers 1..n_freq.

    Band b holds the frequency bins k with edges[b] <= k + 1 < edges[b+1].
    Every band holds at least one bin.
    """
    if n_freq < n_bands:
        raise ValueError('%d frequency bins cannot fill %d bands' % (n_freq, n_bands))
    edges = np.floor(np.geomspace(1, n_freq + 1, n_bands + 1)).astype(int)
    edges[0] = 1
    for i in range(1, n_bands + 1):
        edges[i] = max(edges[i], edges[i - 1] + 1)
    edges[-1] = n_freq + 1
    for i in range(n_bands - 1, -1, -1):
        edges[i] = min(edges[i], edges[i + 1] - 1)
    return edges


def displacement_spectrum(tr, idx):
    """|DFT| / L of p_i(t) - p_i(0) along time, shape n_freq x M x 3."""
    p = tr.frames[:, idx, :]
    return np.abs(fft.rfft(p - p[0], axis=0)) / tr.n_frames


def trajectory_embedding(tr, st, species, n_bands=N_BANDS, include_msd_scalar=True):
    """
    Fixed-size embedding of the motion of species-s ions.

    Magnitude spectra of the centred displacement series are mean-pooled into
    n_bands log-spaced bands, averaged over axes and ions, and followed by
    log10(1 + final-frame MSD) unless include_msd_scalar is False.
    """
    if not isinstance(tr, Trajectory): raise TypeError('expecting a Trajectory')
    if not isinstance(st, Structure): raise TypeError('expecting a Structure')
    if tr.n_frames < 2 * n_bands:
        raise ValueError('trajectory of %d frames is too short for %d bands' %
                         (tr.n_frames, n_bands))
    idx = np.flatnonzero(st.species == species)
    if idx.size == 0:
        raise ValueError('species %d absent from structure' % species)

    spectrum = displacement_spectrum(tr, idx).mean(axis=(1, 2))
    edges = band_edges(spectrum.size, n_bands)
    bands = np.array([spectrum[edges[b] - 1:edges[b + 1] - 1].mean() for b in range(n_bands)])
    if not include_msd_scalar:
        return bands

    p = tr.frames[:, idx, :]
    final = np.mean(np.sum((p[-1] - p[0]) ** 2, axis=-1))
    return np.append(bands, np.log10(1. + final))
