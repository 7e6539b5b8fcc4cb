# -*- coding: utf-8 -*-
"""
The material data classes.

Structure, Trajectory, TransportTarget and Sample hold one material record.
They only coerce shapes and types on construction; the physical invariants
are checked by core.dataset.validate_dataset so that a broken record can
still be loaded, inspected and reported.

All arrays are stored read-only, the objects have no setters.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from enum import Enum

import numpy as np


class TargetKind(str, Enum):
    MSD_FINAL = 'MsdFinal'
    DIFFUSIVITY = 'Diffusivity'
    CONDUCTIVITY = 'Conductivity'


class DatasetKind(str, Enum):
    TRAJECTORY = 'TrajectoryBased'
    STRUCTURE = 'StructureBased'


def frozen(a, dtype=float, ndim=None, name='array'):
    """Return a read-only copy of *a* as a numpy array."""
    arr = np.array(a, dtype=dtype)
    if ndim is not None and arr.ndim != ndim:
        raise ValueError('%s must be %d dimensional' % (name, ndim))
    arr.flags.writeable = False
    return arr


def same(a, b):
    """Value equality that works for arrays, records and None."""
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.array_equal(a, b)
    return a == b


class Record:
    """
    Base record class: equality by value, copies are deep.
    """

    def __eq__(self, other):
        # check same class
        if self.__class__ != other.__class__: return False
        # check same keys
        if set(self.__dict__) != set(other.__dict__): return False
        # check same values
        for key in self.__dict__.keys():
            if not same(self.__dict__[key], other.__dict__[key]): return False
        return True

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None


class Structure(Record):
    """
    Equilibrium atomic structure.

    args

    - positions      | N x 3 lattice coordinates
    - species        | length N integer species codes
    - node_features  | N x d_n per-atom feature vectors
    - edges          | E x 2 directed (k, l) neighbour pairs
    - edge_features  | E x d_e per-edge feature vectors

    An undirected bond is stored as two directed edges. The neighbour set of
    atom k is the set of l over edges (k, l).
    """

    def __init__(self, positions, species, node_features, edges, edge_features):
        self._positions = frozen(positions, ndim=2, name='positions')
        self._species = frozen(species, dtype=int, ndim=1, name='species')
        self._node_features = frozen(node_features, ndim=2, name='node_features')
        edges = np.array(edges, dtype=int).reshape(-1, 2)
        edges.flags.writeable = False
        self._edges = edges
        edge_features = np.array(edge_features, dtype=float)
        if edge_features.ndim != 2:
            edge_features = edge_features.reshape(edges.shape[0], -1)
        edge_features.flags.writeable = False
        self._edge_features = edge_features

    @property
    def positions(self):
        return self._positions

    @property
    def species(self):
        return self._species

    @property
    def node_features(self):
        return self._node_features

    @property
    def edges(self):
        return self._edges

    @property
    def edge_features(self):
        return self._edge_features

    @property
    def n_atoms(self):
        return self._positions.shape[0]

    @property
    def d_n(self):
        return self._node_features.shape[1]

    @property
    def d_e(self):
        return self._edge_features.shape[1]

    def neighbour_counts(self):
        """Number of outgoing edges of every atom."""
        return np.bincount(self._edges[:, 0], minlength=self.n_atoms) \
            if self._edges.size else np.zeros(self.n_atoms, dtype=int)

    def count(self, species):
        """Number of atoms of *species*."""
        return int(np.sum(self._species == species))

    def __repr__(self):
        return 'Structure(n_atoms=%d, n_edges=%d, d_n=%d, d_e=%d)' % \
            (self.n_atoms, self._edges.shape[0], self.d_n, self.d_e)


class Trajectory(Record):
    """
    Unwrapped atomic coordinates sampled every *dt*.

    args

    - frames  | L x N x 3 unwrapped coordinates
    - dt      | time between frames
    """

    def __init__(self, frames, dt):
        self._frames = frozen(frames, ndim=3, name='frames')
        self._dt = float(dt)

    @property
    def frames(self):
        return self._frames

    @property
    def dt(self):
        return self._dt

    @property
    def n_frames(self):
        return self._frames.shape[0]

    @property
    def n_atoms(self):
        return self._frames.shape[1]

    def t(self):
        return np.arange(self.n_frames) * self._dt

    def __repr__(self):
        return 'Trajectory(L=%d, N=%d, dt=%g)' % (self.n_frames, self.n_atoms, self._dt)


class TransportTarget(Record):
    """
    A transport quantity of one species stored as log10 of its value.
    """

    def __init__(self, kind, species, value_log10):
        self._kind = TargetKind(kind)
        self._species = int(species)
        self._value_log10 = float(value_log10)

    @property
    def kind(self):
        return self._kind

    @property
    def species(self):
        return self._species

    @property
    def value_log10(self):
        return self._value_log10

    def value(self):
        """The physical quantity, 10**value_log10."""
        return 10. ** self._value_log10

    def __repr__(self):
        return 'TransportTarget(%s, species=%d, log10=%.4f)' % \
            (self._kind.value, self._species, self._value_log10)


class Sample(Record):
    """
    One material at one temperature.

    args

    - id          | unique string, '<material>@<temperature>' by convention
    - structure   | Structure
    - trajectory  | Trajectory or None
    - temperature | kelvin
    - target      | TransportTarget
    """

    def __init__(self, id, structure, trajectory, temperature, target):
        if not isinstance(structure, Structure):
            raise TypeError('expecting a Structure')
        if trajectory is not None and not isinstance(trajectory, Trajectory):
            raise TypeError('trajectory must be a Trajectory or None')
        if not isinstance(target, TransportTarget):
            raise TypeError('expecting a TransportTarget')
        self._id = str(id)
        self._structure = structure
        self._trajectory = trajectory
        self._temperature = float(temperature)
        self._target = target

    @property
    def id(self):
        return self._id

    @property
    def material_id(self):
        return self._id.split('@')[0]

    @property
    def structure(self):
        return self._structure

    @property
    def trajectory(self):
        return self._trajectory

    @property
    def temperature(self):
        return self._temperature

    @property
    def target(self):
        return self._target

    def without_trajectory(self):
        """Same sample with the trajectory dropped."""
        return Sample(self._id, self._structure, None, self._temperature, self._target)

    def __repr__(self):
        return 'Sample(%r, T=%g, trajectory=%s)' % \
            (self._id, self._temperature, self._trajectory is not None)
