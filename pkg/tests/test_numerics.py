#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Test ridge regression, LayerNorm, the MLP, the L1 loss and Adam
"""

import unittest, pytest
import numpy as np
import numpy.testing as npt

from iontranspy.numerics import ridge_solve, ridge_objective, ridge_gradient, normal_residual, \
    layernorm, layernorm_backward, Mlp, mlp_forward, mlp_backward, l1_loss, AdamState, \
    adam_step, default_group


def unit_net():
    """One hidden rectifier unit, all weights 1, all biases 0."""
    return Mlp([1, 1, 1], weights=[[[1.]], [[1.]]], biases=[[0.], [0.]])


class RidgeTestCases(unittest.TestCase):

    def setUp(self):
        rng = np.random.default_rng(0)
        self.X = rng.normal(size=(50, 8))
        self.H = rng.normal(size=(50, 8))

    def test_identity(self):
        npt.assert_allclose(ridge_solve(np.eye(2), np.eye(2), 1.), 0.5 * np.eye(2), rtol=1e-14)

    def test_small_lambda(self):
        npt.assert_allclose(ridge_solve(np.eye(2), np.eye(2), 1e-12), np.eye(2), atol=1e-9)

    def test_matches_gradient_descent(self):
        lam = 1e-5
        W = np.zeros((8, 8))
        step = 1. / (2. * (np.linalg.eigvalsh(self.X.T @ self.X).max() + lam))
        for _ in range(50000):
            W -= step * ridge_gradient(self.X, self.H, W, lam)
        npt.assert_allclose(ridge_solve(self.X, self.H, lam), W, atol=1e-4)

    def test_random_instances(self):
        rng = np.random.default_rng(10)
        for _ in range(50):
            n, d = rng.integers(10, 201), rng.integers(4, 65)
            lam = 10. ** rng.uniform(-7., -3.)
            X = rng.normal(size=(n, d))
            H = rng.normal(size=(n, 8))
            W = ridge_solve(X, H, lam)
            self.assertLessEqual(normal_residual(X, H, W, lam), 1e-8, (n, d, lam))
            # 5000 gradient steps from zero on the same objective
            G, B = X.T @ X + lam * np.eye(d), X.T @ H
            step = 0.5 / np.linalg.eigvalsh(G).max()
            V = np.zeros((d, 8))
            for _ in range(5000):
                V -= step * (G @ V - B)
            best, iterated = ridge_objective(X, H, W, lam), ridge_objective(X, H, V, lam)
            self.assertLessEqual(best, iterated + 1e-12 * abs(iterated), (n, d, lam))

    def test_normal_equations(self):
        W = ridge_solve(self.X, self.H, 1e-5)
        self.assertLess(normal_residual(self.X, self.H, W, 1e-5), 1e-10)
        grad = ridge_gradient(self.X, self.H, W, 1e-5)
        self.assertLess(np.abs(grad).max(), 1e-8)

    def test_exact_minimum(self):
        lam = 1e-3
        W = ridge_solve(self.X, self.H, lam)
        best = ridge_objective(self.X, self.H, W, lam)
        rng = np.random.default_rng(1)
        for _ in range(5):
            self.assertGreater(ridge_objective(self.X, self.H, W + 1e-3 * rng.normal(size=W.shape),
                                               lam), best)

    def test_shrinkage(self):
        norms = [np.linalg.norm(ridge_solve(self.X, self.H, lam))
                 for lam in (1e-7, 1e-5, 1e-3, 1e-1, 10., 1e3)]
        self.assertTrue(np.all(np.diff(norms) <= 0))

    def test_errors(self):
        with self.assertRaises(ValueError):
            ridge_solve(self.X, self.H, 0.)
        with self.assertRaises(ValueError):
            ridge_solve(self.X, self.H[:10], 1.)
        X = self.X.copy()
        X[0, 0] = np.nan
        with self.assertRaises(ValueError):
            ridge_solve(X, self.H, 1.)


class LayerNormTestCases(unittest.TestCase):

    def test_constant(self):
        npt.assert_array_equal(layernorm([3., 3., 3.]), [0., 0., 0.])

    def test_pair(self):
        npt.assert_allclose(layernorm([1., -1.]), [1., -1.] / np.sqrt(1. + 1e-5), rtol=1e-14)

    def test_statistics(self):
        v = np.random.default_rng(2).normal(3., 5., size=64)
        y = layernorm(v)
        self.assertLessEqual(abs(y.mean()), 1e-12)
        self.assertTrue(1. - 1e-4 <= y.var() <= 1.)

    def test_batch_rows(self):
        V = np.random.default_rng(3).normal(size=(4, 6))
        npt.assert_allclose(layernorm(V), np.array([layernorm(v) for v in V]), rtol=1e-14)

    def test_gradient(self):
        rng = np.random.default_rng(4)
        v = rng.normal(size=6)
        dy = rng.normal(size=6)
        h = 1e-6
        numeric = np.array([(np.dot(dy, layernorm(v + h * e)) - np.dot(dy, layernorm(v - h * e)))
                            / (2 * h) for e in np.eye(6)])
        npt.assert_allclose(layernorm_backward(v, dy), numeric, rtol=1e-5, atol=1e-8)

    def test_too_short(self):
        with self.assertRaises(ValueError):
            layernorm([1.])


class MlpTestCases(unittest.TestCase):

    def test_zero_net(self):
        self.assertEqual(mlp_forward(Mlp.zeros([4, 3, 3, 1]), np.ones(4)), 0.)

    def test_rectified(self):
        self.assertEqual(mlp_forward(unit_net(), [-3.]), 0.)
        self.assertEqual(mlp_forward(unit_net(), [3.]), 3.)

    def test_batch_matches_single(self):
        m = Mlp([5, 7, 7, 1], seed=3)
        V = np.random.default_rng(5).normal(size=(6, 5))
        npt.assert_allclose(m.forward(V), [m.forward(v) for v in V], rtol=1e-13)

    def test_seeded_init(self):
        self.assertEqual(Mlp([5, 7, 1], seed=3), Mlp([5, 7, 1], seed=3))
        self.assertNotEqual(Mlp([5, 7, 1], seed=3), Mlp([5, 7, 1], seed=4))

    def test_bad_sizes(self):
        with self.assertRaises(ValueError):
            Mlp([4, 3, 2])
        with self.assertRaises(ValueError):
            Mlp([4, 3, 1], weights=[np.zeros((4, 3)), np.zeros((2, 1))],
                biases=[np.zeros(3), np.zeros(1)])
        with self.assertRaises(ValueError):
            Mlp([4, 3, 1]).forward(np.ones(5))

    def test_zero_upstream(self):
        m = Mlp([3, 4, 1], seed=1)
        grads, dv = mlp_backward(m, np.ones(3), 0.)
        for g in grads.values():
            npt.assert_array_equal(g, 0.)
        npt.assert_array_equal(dv, 0.)

    def test_hand_chain_rule(self):
        grads, dv = mlp_backward(unit_net(), [3.], 1.)
        npt.assert_array_equal(grads['dec.layer0.w'], [[3.]])
        npt.assert_array_equal(grads['dec.layer1.w'], [[3.]])
        npt.assert_array_equal(dv.ravel(), [1.])

    def test_finite_differences(self):
        rng = np.random.default_rng(6)
        m = Mlp([8, 32, 32, 32, 1], seed=7)
        v = rng.normal(size=8)
        h = 1e-6
        grads, dv = m.backward(v, 1.)
        params = m.params()
        coords = [(name, idx) for name, p in params.items() for idx in np.ndindex(p.shape)]
        for k in rng.choice(len(coords), size=100, replace=False):
            name, idx = coords[k]
            p = params[name]
            keep = p[idx]
            p[idx] = keep + h
            up = m.forward(v)
            p[idx] = keep - h
            down = m.forward(v)
            p[idx] = keep
            npt.assert_allclose(grads[name][idx], (up - down) / (2 * h), rtol=1e-4, atol=1e-8,
                                err_msg='%s%s' % (name, idx))
        numeric = np.array([(m.forward(v + h * e) - m.forward(v - h * e)) / (2 * h)
                            for e in np.eye(8)])
        npt.assert_allclose(dv.ravel(), numeric.ravel(), rtol=1e-4, atol=1e-8)

    def test_batch_gradients_are_summed(self):
        m = Mlp([3, 4, 1], seed=2)
        V = np.random.default_rng(8).normal(size=(5, 3))
        up = np.linspace(-1., 1., 5)
        grads, dv = m.backward(V, up)
        for name in grads:
            total = sum(m.backward(v, u)[0][name] for v, u in zip(V, up))
            npt.assert_allclose(grads[name], total, rtol=1e-12, atol=1e-14)
        self.assertEqual(dv.shape, (5, 3))


class L1TestCases(unittest.TestCase):

    def test_values(self):
        self.assertEqual(l1_loss(2., 2.), (0., 0.))
        self.assertEqual(l1_loss(3., 1.), (2., 1.))
        self.assertEqual(l1_loss(0., 5.), (5., -1.))

    def test_arrays(self):
        loss, grad = l1_loss([1., 2.], [2., 2.])
        npt.assert_array_equal(loss, [1., 0.])
        npt.assert_array_equal(grad, [-1., 0.])


class AdamTestCases(unittest.TestCase):

    def test_zero_gradient(self):
        params = {'w': np.array([1., 2.])}
        state = AdamState(params, 0.1)
        adam_step(state, params, {'w': np.zeros(2)})
        npt.assert_array_equal(params['w'], [1., 2.])

    def test_quadratic(self):
        params = {'w': np.zeros(1)}
        state = AdamState(params, 0.1)
        for _ in range(2000):
            adam_step(state, params, {'w': 2. * (params['w'] - 3.)})
        self.assertLessEqual(abs(params['w'][0] - 3.), 1e-3)

    def test_constant_gradient_steps(self):
        params = {'w': np.zeros(1)}
        state = AdamState(params, 0.01)
        for _ in range(2):
            adam_step(state, params, {'w': np.array([0.5])})
        npt.assert_allclose(params['w'], [-0.02], rtol=1e-6)

    def test_groups(self):
        self.assertEqual(default_group('W_p'), 'encoder')
        self.assertEqual(default_group('dec.layer1.w'), 'decoder_early')
        self.assertEqual(default_group('dec.layer2.b'), 'decoder_late')
        params = {'W': np.zeros(1), 'dec.layer0.w': np.zeros(1), 'dec.layer3.w': np.zeros(1)}
        state = AdamState(params, {'encoder': 1e-2, 'decoder_early': 1e-4, 'decoder_late': 0.})
        adam_step(state, params, {k: np.ones(1) for k in params})
        npt.assert_allclose(params['W'], [-1e-2], rtol=1e-6)
        npt.assert_allclose(params['dec.layer0.w'], [-1e-4], rtol=1e-6)
        npt.assert_array_equal(params['dec.layer3.w'], [0.])

    def test_decay(self):
        state = AdamState({'w': np.zeros(1)}, 1e-2, decay=0.01)
        for _ in range(100):
            state.decay()
        npt.assert_allclose(state.factor, 0.99 ** 100, rtol=1e-12)
        npt.assert_allclose(state.rate('w'), 1e-2 * 0.366, rtol=1e-3)

    def test_shape_mismatch(self):
        params = {'w': np.zeros(2)}
        state = AdamState(params, 0.1)
        with self.assertRaises(ValueError):
            state.step(params, {'w': np.zeros(3)})

    def test_state_round_trip(self):
        params = {'w': np.zeros(2)}
        a = AdamState(params, 0.1)
        a.step(params, {'w': np.ones(2)})
        b = AdamState(params, 0.5)
        b.load_state(a.state())
        p1, p2 = {'w': params['w'].copy()}, {'w': params['w'].copy()}
        a.step(p1, {'w': np.array([1., -2.])})
        b.step(p2, {'w': np.array([1., -2.])})
        npt.assert_array_equal(p1['w'], p2['w'])


def suite():
    asuit = unittest.TestSuite()
    for case in (RidgeTestCases, LayerNormTestCases, MlpTestCases, L1TestCases, AdamTestCases):
        asuit.addTests(unittest.defaultTestLoader.loadTestsFromTestCase(case))
    return asuit


if __name__ == '__main__':
    unittest.main(defaultTest='suite')
