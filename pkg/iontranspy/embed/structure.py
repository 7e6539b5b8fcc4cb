# -*- coding: utf-8 -*-
"""
Structure and temperature embeddings.

atom_embedding averages [n_k; m_kl; n_l] over the neighbours l of atom k.
The rows of the mobile species are polynomially expanded, mean-pooled and
joined with the polynomial temperature block to give X.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from ..core.data import Structure

import numpy as np

ORDER = 3


def atom_embedding(st):
    """N x (2 d_n + d_e) neighbour-averaged atom embeddings."""
    if not isinstance(st, Structure): raise TypeError('expecting a Structure')
    counts = st.neighbour_counts()
    if np.any(counts == 0):
        raise ValueError('atom %d has no neighbours' % np.flatnonzero(counts == 0)[0])
    k, l = st.edges[:, 0], st.edges[:, 1]
    nf = st.node_features
    rows = np.concatenate([nf[k], st.edge_features, nf[l]], axis=1)
    out = np.zeros((st.n_atoms, rows.shape[1]))
    np.add.at(out, k, rows)
    return out / counts[:, None]


def select_species(ea, st, species):
    """Rows of atoms of *species*, in atom order."""
    idx = np.flatnonzero(st.species == species)
    if idx.size == 0:
        raise ValueError('species %d absent from structure' % species)
    return np.asarray(ea)[idx]


def polynomial_expand(m, order=ORDER):
    """[v; v^2; ...; v^order] per row."""
    m = np.atleast_2d(np.asarray(m, dtype=float))
    return np.concatenate([m ** p for p in range(1, order + 1)], axis=1)


def temperature_embedding(T, T_m, order=ORDER):
    """[1, T/T_m, (T/T_m)^2, ..., (T/T_m)^order]"""
    if not T > 0 or not T_m > 0:
        raise ValueError('temperatures must be positive')
    return (T / T_m) ** np.arange(order + 1)


def build_x(st, T, T_m, species, polynomial=True):
    """
    Structure-temperature embedding X of one sample.

    With polynomial=False the structure block is not expanded and the
    temperature block is [1, T/T_m].
    """
    order = ORDER if polynomial else 1
    ex = polynomial_expand(select_species(atom_embedding(st), st, species), order)
    return np.concatenate([ex.mean(axis=0), temperature_embedding(T, T_m, order)])


def x_dim(d_n, d_e, polynomial=True):
    """d_xT for node and edge feature sizes d_n, d_e."""
    order = ORDER if polynomial else 1
    return order * (2 * d_n + d_e) + order + 1
