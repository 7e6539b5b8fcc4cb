# -*- coding: utf-8 -*-
"""
Transport quantities: mean squared displacement, Einstein diffusivity,
Nernst-Einstein conductivity and the log10 target scale.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from ..core.data import Trajectory, Structure, frozen

import numpy as np
import pandas as pd
from scipy import stats
import matplotlib.pyplot as plt


class MsdCurve:
    """
    MSD_s(t) sampled at K lag times.

    args

    - times   | length K, strictly increasing, times[0] == 0
    - values  | length K, values[0] == 0, values >= 0
    """

    def __init__(self, times, values):
        times = frozen(times, ndim=1, name='times')
        values = frozen(values, ndim=1, name='values')
        if times.size != values.size:
            raise ValueError('times and values must have the same length')
        if times.size == 0 or times[0] != 0:
            raise ValueError('times must start at 0')
        if np.any(np.diff(times) <= 0):
            raise ValueError('times must be strictly increasing')
        if values[0] != 0:
            raise ValueError('MSD at t=0 must be 0')
        if np.any(values < 0):
            raise ValueError('MSD values must be non-negative')
        self._times = times
        self._values = values

    @property
    def times(self):
        return self._times

    @property
    def values(self):
        return self._values

    def scaled(self, c):
        """Curve with values multiplied by c >= 0."""
        return MsdCurve(self._times, c * self._values)

    def to_frame(self):
        return pd.DataFrame({'t': self._times, 'msd': self._values})

    def to_csv(self, filename):
        """Write {t, msd} columns."""
        self.to_frame().to_csv(filename, index=False, float_format='%.17g')

    def plot(self, ax=None, fit_window=None, **kwargs):
        """
        Plot MSD against t, optionally with the Einstein fit over the window.
        """
        show = ax is None
        if ax is None:
            fig, ax = plt.subplots()
        ax.plot(self._times, self._values, **kwargs)
        if fit_window is not None:
            t, v = _window(self, fit_window)
            fit = stats.linregress(t, v)
            ax.plot(t, fit.intercept + fit.slope * t, 'k--')
        ax.set_xlabel('t')
        ax.set_ylabel('MSD')
        if show:
            plt.show()
        return ax

    def __len__(self):
        return self._times.size

    def __eq__(self, other):
        if self.__class__ != other.__class__: return False
        return np.array_equal(self._times, other._times) and \
            np.array_equal(self._values, other._values)

    __hash__ = None


class NernstEinsteinParams:
    """
    args

    - n_s  | number density of mobile ions
    - q_s  | ionic charge
    - T    | temperature
    - k_B  | Boltzmann constant, 1 in lattice units
    """

    def __init__(self, n_s, q_s, T, k_B=1.):
        for name, val in (('n_s', n_s), ('q_s', q_s), ('T', T), ('k_B', k_B)):
            if not val > 0:
                raise ValueError('%s must be positive' % name)
        self.n_s = float(n_s)
        self.q_s = float(q_s)
        self.T = float(T)
        self.k_B = float(k_B)

    def __eq__(self, other):
        if self.__class__ != other.__class__: return False
        return self.__dict__ == other.__dict__

    __hash__ = None


def _species_index(st, species):
    idx = np.flatnonzero(st.species == species)
    if idx.size == 0:
        raise ValueError('species %d absent from structure' % species)
    return idx


def lag_indices(n_frames, k_points):
    """k_points evenly spaced frame lags from 0 to n_frames-1."""
    if k_points < 2:
        raise ValueError('need at least 2 MSD points')
    if k_points > n_frames:
        raise ValueError('k_points=%d exceeds trajectory length %d' % (k_points, n_frames))
    return np.unique(np.rint(np.linspace(0, n_frames - 1, k_points)).astype(int))


def msd(tr, st, species, k_points, multi_origin=False):
    """
    Mean squared displacement of species *species*.

    With multi_origin=False the origin is frame 0. With multi_origin=True every
    frame serves as an origin and the squared displacements are averaged over
    origins as well as ions.
    """
    if not isinstance(tr, Trajectory): raise TypeError('expecting a Trajectory')
    if not isinstance(st, Structure): raise TypeError('expecting a Structure')
    idx = _species_index(st, species)
    p = tr.frames[:, idx, :]
    lags = lag_indices(tr.n_frames, k_points)
    if multi_origin:
        values = np.array([np.mean(np.sum((p[m:] - p[:p.shape[0] - m]) ** 2, axis=-1))
                           for m in lags])
    else:
        values = np.mean(np.sum((p[lags] - p[0]) ** 2, axis=-1), axis=-1)
    return MsdCurve(lags * tr.dt, values)


def final_msd(tr, st, species):
    """Mean over species-s ions of the squared displacement at the last frame."""
    idx = _species_index(st, species)
    p = tr.frames[:, idx, :]
    return float(np.mean(np.sum((p[-1] - p[0]) ** 2, axis=-1)))


def _window(curve, fit_window):
    if not 0 < fit_window <= 1:
        raise ValueError('fit_window must be in (0, 1]')
    n = len(curve)
    start = int(np.floor(n * (1. - fit_window)))
    t = curve.times[start:]
    if t.size < 2:
        raise ValueError('fit window holds %d point(s), need 2' % t.size)
    return t, curve.values[start:]


def einstein_diffusivity(curve, fit_window=0.5):
    """
    D = slope / 6, least-squares slope over the last fit_window of the curve.
    """
    t, v = _window(curve, fit_window)
    return float(stats.linregress(t, v).slope / 6.)


def nernst_einstein(D, p):
    """sigma = n q^2 D / (k_B T)"""
    if D < 0:
        raise ValueError('diffusivity must be non-negative')
    return p.n_s * p.q_s ** 2 * D / (p.k_B * p.T)


def diffusivity_from_conductivity(sigma, p):
    """D = sigma k_B T / (n q^2)"""
    if sigma < 0:
        raise ValueError('conductivity must be non-negative')
    return sigma * p.k_B * p.T / (p.n_s * p.q_s ** 2)


def to_log10(value, sample_id=None):
    if not value > 0:
        where = '' if sample_id is None else 'sample %s: ' % sample_id
        raise ValueError('%scannot take log10 of non-positive value %r' % (where, value))
    return float(np.log10(value))


def from_log10(v):
    return float(10. ** v)
