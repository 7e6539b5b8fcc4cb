# -*- coding: utf-8 -*-
"""
Ridge regression by Cholesky factorisation of the Gram matrix.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import numpy as np
from scipy import linalg


def _as_matrix(a, name):
    a = np.asarray(a, dtype=float)
    if a.ndim == 1: a = a[:, None]
    if a.ndim != 2:
        raise ValueError('%s must be a matrix' % name)
    if not np.all(np.isfinite(a)):
        raise ValueError('%s has non-finite entries' % name)
    return a


def ridge_solve(X, H, lam):
    """
    W = (X'X + lam I)^-1 X'H

    The Gram matrix is factorised as L L' and each column of X'H is solved with
    a forward and a backward triangular solve, followed by one step of
    iterative refinement on the residual.

    Raises numpy.linalg.LinAlgError if the factorisation meets a non-positive
    pivot.
    """
    if not lam > 0:
        raise ValueError('lambda must be positive')
    X = _as_matrix(X, 'X')
    H = _as_matrix(H, 'H')
    if X.shape[0] != H.shape[0]:
        raise ValueError('X has %d rows, H has %d' % (X.shape[0], H.shape[0]))
    G = X.T @ X + lam * np.eye(X.shape[1])
    B = X.T @ H
    try:
        c = linalg.cholesky(G, lower=True)
    except linalg.LinAlgError as e:
        raise np.linalg.LinAlgError('Gram matrix is not positive definite: %s' % e)

    def solve(rhs):
        z = linalg.solve_triangular(c, rhs, lower=True)
        return linalg.solve_triangular(c.T, z, lower=False)

    W = solve(B)
    W += solve(B - G @ W)
    return W


def ridge_objective(X, H, W, lam):
    """||XW - H||_F^2 + lam ||W||_F^2"""
    X = _as_matrix(X, 'X')
    H = _as_matrix(H, 'H')
    R = X @ W - H
    return float(np.sum(R ** 2) + lam * np.sum(np.asarray(W) ** 2))


def ridge_gradient(X, H, W, lam):
    """Gradient of ridge_objective with respect to W."""
    return 2. * (X.T @ (X @ W - H)) + 2. * lam * W


def normal_residual(X, H, W, lam):
    """||(X'X + lam I) W - X'H||_F / ||X'H||_F"""
    X = _as_matrix(X, 'X')
    H = _as_matrix(H, 'H')
    B = X.T @ H
    G = X.T @ X + lam * np.eye(X.shape[1])
    return float(np.linalg.norm(G @ W - B) / np.linalg.norm(B))
