# -*- coding: utf-8 -*-
"""
Synthetic materials on a cubic lattice.

Energies are in kelvin (k_B = 1). Node and edge features are reported in
scaled units, barriers divided by BARRIER_SCALE.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from ..core.data import Structure

import numpy as np

BARRIER_SCALE = 1000.
MAX_COORDINATION = 6.

# SeedSequence stage tags
TAG_LAYOUT = 11
TAG_BARRIER = 12
TAG_HOP = 21
TAG_VIBRATION = 22
TAG_DATASET = 31

_OFFSETS = np.array([[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]])


def stage_rng(seed, tag, *extra):
    """Independent seeded generator per (seed, stage, ...)."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(tag)] + [int(e) for e in extra]))


class MaterialSpec:
    """
    Recipe for one synthetic material.

    args

    - n_atoms          | N
    - n_target_ions    | number of mobile ions
    - barrier_base     | E_a0 (kelvin)
    - barrier_spread   | width of the uniform per-ion barrier offset
    - attempt_rate     | nu (1/time)
    - lattice_spacing  | a
    - seed             | integer

    kwargs

    - target_species   | species code of the mobile ions, default 1
    - n_species        | size of the species vocabulary, default 3

    The constructor only coerces types; check() enforces the invariants and is
    called by gen_material.
    """

    def __init__(self, n_atoms=27, n_target_ions=8, barrier_base=2000., barrier_spread=800.,
                 attempt_rate=1., lattice_spacing=1., seed=0, target_species=1, n_species=3):
        self._n_atoms = int(n_atoms)
        self._n_target_ions = int(n_target_ions)
        self._barrier_base = float(barrier_base)
        self._barrier_spread = float(barrier_spread)
        self._attempt_rate = float(attempt_rate)
        self._lattice_spacing = float(lattice_spacing)
        self._seed = int(seed)
        self._target_species = int(target_species)
        self._n_species = int(n_species)

    @property
    def n_atoms(self):
        return self._n_atoms

    @property
    def n_target_ions(self):
        return self._n_target_ions

    @property
    def barrier_base(self):
        return self._barrier_base

    @property
    def barrier_spread(self):
        return self._barrier_spread

    @property
    def attempt_rate(self):
        return self._attempt_rate

    @property
    def lattice_spacing(self):
        return self._lattice_spacing

    @property
    def seed(self):
        return self._seed

    @property
    def target_species(self):
        return self._target_species

    @property
    def n_species(self):
        return self._n_species

    def side(self):
        """Edge length (in sites) of the smallest cube holding n_atoms."""
        side = int(np.ceil(self._n_atoms ** (1. / 3.)))
        while side ** 3 < self._n_atoms: side += 1
        while side > 1 and (side - 1) ** 3 >= self._n_atoms: side -= 1
        return side

    def volume(self):
        return (self.side() * self._lattice_spacing) ** 3

    def check(self):
        if self._n_atoms < 2:
            raise ValueError('n_atoms must be at least 2')
        if not 1 <= self._n_target_ions <= self._n_atoms:
            raise ValueError('n_target_ions must be in [1, n_atoms]')
        if not self._barrier_base > 0:
            raise ValueError('barrier_base must be positive')
        if self._barrier_spread < 0:
            raise ValueError('barrier_spread must be non-negative')
        if not self._attempt_rate > 0:
            raise ValueError('attempt_rate must be positive')
        if not self._lattice_spacing > 0:
            raise ValueError('lattice_spacing must be positive')
        if not 0 <= self._target_species < self._n_species:
            raise ValueError('target_species must be in [0, n_species)')
        if self._n_target_ions < self._n_atoms and self._n_species < 2:
            raise ValueError('need a second species for the framework atoms')

    def replace(self, **kwargs):
        """Copy with some fields changed."""
        fields = dict(n_atoms=self._n_atoms, n_target_ions=self._n_target_ions,
                      barrier_base=self._barrier_base, barrier_spread=self._barrier_spread,
                      attempt_rate=self._attempt_rate, lattice_spacing=self._lattice_spacing,
                      seed=self._seed, target_species=self._target_species,
                      n_species=self._n_species)
        for k in kwargs:
            if k not in fields: raise TypeError('unknown MaterialSpec field %r' % k)
        fields.update(kwargs)
        return MaterialSpec(**fields)

    def __eq__(self, other):
        if self.__class__ != other.__class__: return False
        return self.__dict__ == other.__dict__

    __hash__ = None

    def __repr__(self):
        return 'MaterialSpec(N=%d, ions=%d, E_a0=%.1f, spread=%.1f, nu=%g, a=%g, seed=%d)' % \
            (self._n_atoms, self._n_target_ions, self._barrier_base, self._barrier_spread,
             self._attempt_rate, self._lattice_spacing, self._seed)


def lattice_sites(spec):
    """Integer grid coordinates of the first n_atoms sites in raster order."""
    side = spec.side()
    i = np.arange(spec.n_atoms)
    return np.stack([i // side ** 2, (i // side) % side, i % side], axis=1)


def species_codes(spec):
    rng = stage_rng(spec.seed, TAG_LAYOUT)
    species = np.empty(spec.n_atoms, dtype=int)
    framework = [c for c in range(spec.n_species) if c != spec.target_species]
    if framework:
        species[:] = rng.choice(framework, size=spec.n_atoms)
    target = rng.choice(spec.n_atoms, size=spec.n_target_ions, replace=False)
    species[target] = spec.target_species
    return species


def ion_barriers(spec, species=None):
    """
    Per-atom activation barrier; 0 for atoms that never hop.
    """
    if species is None:
        species = species_codes(spec)
    rng = stage_rng(spec.seed, TAG_BARRIER)
    target = np.flatnonzero(species == spec.target_species)
    half = spec.barrier_spread / 2.
    barriers = np.zeros(spec.n_atoms)
    barriers[target] = spec.barrier_base + rng.uniform(-half, half, size=target.size)
    return barriers


def neighbour_edges(sites):
    """Directed 6-neighbour edges between occupied sites, no wrapping."""
    index = {tuple(s): k for k, s in enumerate(sites)}
    edges = []
    for k, s in enumerate(sites):
        for off in _OFFSETS:
            l = index.get(tuple(s + off))
            if l is not None:
                edges.append((k, l))
    return np.array(edges, dtype=int).reshape(-1, 2)


def gen_material(spec):
    """
    Build the equilibrium Structure of a material.

    node features: [barrier / BARRIER_SCALE, species one-hot, coordination / 6]
    edge features: [distance / a, (barrier_l - barrier_k) / BARRIER_SCALE]
    """
    if not isinstance(spec, MaterialSpec):
        raise TypeError('expecting a MaterialSpec')
    spec.check()
    sites = lattice_sites(spec)
    species = species_codes(spec)
    barriers = ion_barriers(spec, species)
    edges = neighbour_edges(sites)
    coordination = np.bincount(edges[:, 0], minlength=spec.n_atoms)

    onehot = np.zeros((spec.n_atoms, spec.n_species))
    onehot[np.arange(spec.n_atoms), species] = 1.
    node_features = np.column_stack([barriers / BARRIER_SCALE, onehot,
                                     coordination / MAX_COORDINATION])

    a = spec.lattice_spacing
    positions = sites * a
    k, l = edges[:, 0], edges[:, 1]
    distance = np.linalg.norm(positions[l] - positions[k], axis=1) / a
    edge_features = np.column_stack([distance, (barriers[l] - barriers[k]) / BARRIER_SCALE])

    return Structure(positions, species, node_features, edges, edge_features)
