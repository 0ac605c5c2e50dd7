#!/usr/bin/env python
# -*- coding: utf-8 -*-
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted

from . import TestBase
import unittest
from neurogrow import (ConsistencyError, DistributorKind, ExpansionPlan,
                       Head, InputError, LossKind, Utils, compute_loss,
                       distribute, forward, gating_gradients, insert_neurons,
                       kaiming_init, largest_remainder, probe_gradients,
                       ras_allocate, single_layer_allocate, svod_allocate,
                       virtual_probe_gradients)

import numpy as np


def _loss(net, X, target, loss_kind):
    return compute_loss(loss_kind, forward(net, X).output, target)


class TestDistributors(TestBase.TestBase):
    """Test probes, voting and allocation."""

    def randomProblem(self, rng, loss_kind, n_rows=7):
        n_in = int(rng.integers(2, 5))
        n_out = int(rng.integers(2, 4))
        widths = rng.integers(2, 6, size=int(rng.integers(1, 4)))
        head = Head.SOFTMAX if loss_kind == LossKind.SOFTMAX_CE \
            else Head.IDENTITY
        net = self.randomNet(rng, n_in, widths, n_out, head)
        X = rng.uniform(size=(n_rows, n_in))
        if loss_kind == LossKind.SOFTMAX_CE:
            target = rng.integers(0, n_out, size=n_rows)
        else:
            target = rng.uniform(size=(n_rows, n_out))
        return net, X, target

    def testLargestRemainder(self):
        self.assertEqual(list(largest_remainder(4, [3, 1])), [3, 1])
        self.assertEqual(list(largest_remainder(5, [0, 0])), [3, 2])
        self.assertEqual(list(largest_remainder(2, [1, 1, 1])), [1, 1, 0])
        self.assertEqual(list(largest_remainder(10, [1, 2, 3, 4])),
                         [1, 2, 3, 4])
        self.assertEqual(list(largest_remainder(7, [5])), [7])
        with self.assertRaises(InputError):
            largest_remainder(3, [])
        with self.assertRaises(InputError):
            largest_remainder(3, [1, -1])

    def testLargestRemainderConservation(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            total = int(rng.integers(0, 200))
            weights = rng.integers(0, 20, size=int(rng.integers(1, 6)))
            counts = largest_remainder(total, weights)
            self.assertEqual(int(counts.sum()), total)
            self.assertTrue(np.all(counts >= 0))
            if weights.sum() > 0:
                share = total * weights / weights.sum()
                self.assertTrue(np.all(np.abs(counts - share) < 1.0))

    def testProbeWithZeroOutgoingHasZeroGradient(self):
        rng = np.random.default_rng(1)
        net, X, target = self.randomProblem(rng, LossKind.MSE)
        n_in = net.layers[0].numInputs()
        n_next = net.layers[1].numOutputs()
        g = virtual_probe_gradients(
            net, 0, kaiming_init(3, n_in, rng), np.zeros(3),
            np.zeros((3, n_next)), (X, target), LossKind.MSE)
        self.assertTrue(np.all(g == 0.0))

    def testDeadProbeHasZeroGradient(self):
        rng = np.random.default_rng(2)
        net, X, target = self.randomProblem(rng, LossKind.SOFTMAX_CE)
        n_in = net.layers[0].numInputs()
        n_next = net.layers[1].numOutputs()
        # Inputs are non-negative, so negative weights never fire.
        weights = -np.abs(kaiming_init(2, n_in, rng))
        g = virtual_probe_gradients(
            net, 0, weights, np.full(2, -0.1),
            kaiming_init(2, n_next, rng), (X, target), LossKind.SOFTMAX_CE)
        self.assertTrue(np.all(g == 0.0))

    def testProbeGradientMatchesPhysicalInsertion(self):
        rng = np.random.default_rng(3)
        step = 1e-5
        for trial in range(100):
            loss_kind = LossKind.ALL[trial % 2]
            net, X, target = self.randomProblem(rng, loss_kind)
            layer = int(rng.integers(0, net.numHidden()))
            n_in = net.layers[layer].numInputs()
            n_next = net.layers[layer + 1].numOutputs()
            w = kaiming_init(1, n_in, rng)
            b = rng.normal(0.0, 0.1, size=1)
            v = kaiming_init(1, n_next, rng)
            g = virtual_probe_gradients(net, layer, w, b, v, (X, target),
                                        loss_kind, chunk_size=3)
            # relu((1 + z) u) = (1 + z) relu(u): the gate scales the
            # outgoing weights, centred on the closed probe.
            plus = insert_neurons(net, layer, w, b, step * v.T, 1)
            minus = insert_neurons(net, layer, w, b, -step * v.T, 1)
            numeric = (_loss(plus, X, target, loss_kind) -
                       _loss(minus, X, target, loss_kind)) / (2.0 * step)
            err = Utils.relativeError(g, [numeric], atol=1e-8)
            self.assertLess(float(err.max()), 1e-4)

    def testGatingGradientMatchesScaling(self):
        rng = np.random.default_rng(4)
        step = 1e-6
        for loss_kind in LossKind.ALL:
            net, X, target = self.randomProblem(rng, loss_kind)
            g = gating_gradients(net, 0, (X, target), loss_kind)
            for i in range(net.layers[0].numOutputs()):
                losses = []
                for sign in (1.0, -1.0):
                    probe = net.copy()
                    probe.layers[0].weights[i] *= 1.0 + sign * step
                    probe.layers[0].biases[i] *= 1.0 + sign * step
                    losses.append(_loss(probe, X, target, loss_kind))
                numeric = (losses[0] - losses[1]) / (2.0 * step)
                err = Utils.relativeError([g[i]], [numeric], atol=1e-8)
                self.assertLess(float(err.max()), 1e-4)

    def testProbeGradients(self):
        rng = np.random.default_rng(5)
        net, X, target = self.randomProblem(rng, LossKind.MSE)
        stats = probe_gradients(net, 0, 12, (X, target), LossKind.MSE, 9)
        again = probe_gradients(net, 0, 12, (X, target), LossKind.MSE, 9)
        self.assertEqual(stats.gradients.shape, (12,))
        self.assertTrue(np.all(np.isfinite(stats.gradients)))
        self.assertTrue(np.array_equal(stats.gradients, again.gradients))
        self.assertTrue(np.all(stats.biases == 0))
        self.assertEqual(stats.votes(), int(np.sum(stats.gradients < 0)))
        with self.assertRaises(InputError):
            probe_gradients(net, net.numHidden(), 4, (X, target),
                            LossKind.MSE, 9)

    def testSvodSingleLayer(self):
        rng = np.random.default_rng(6)
        net = self.randomNet(rng, 3, (5,), 2)
        X = rng.uniform(size=(6, 3))
        plan = svod_allocate(net, 7, 8, (X, rng.uniform(size=(6, 2))),
                             LossKind.MSE, rng, stage=2)
        self.assertEqual(plan.toList(), [7])
        self.assertEqual(plan.stage, 2)
        self.assertEqual(len(plan.votes), 1)

    def testSvodUniformFallback(self):
        rng = np.random.default_rng(7)
        net = self.randomNet(rng, 3, (5, 4), 2)
        X = rng.uniform(size=(6, 3))
        # A perfect fit makes every gradient exactly zero.
        target = forward(net, X).output
        plan = svod_allocate(net, 5, None, (X, target), LossKind.MSE, rng)
        self.assertEqual(plan.votes, [0, 0])
        self.assertEqual(plan.toList(), [3, 2])

    def testSvodConservation(self):
        rng = np.random.default_rng(8)
        for trial in range(200):
            loss_kind = LossKind.ALL[trial % 2]
            net, X, target = self.randomProblem(rng, loss_kind, n_rows=4)
            total = int(rng.integers(1, 30))
            plan = svod_allocate(net, total, int(rng.integers(0, 6)),
                                 (X, target), loss_kind, rng)
            self.assertEqual(plan.total(), total)
            self.assertEqual(len(plan.toList()), net.numHidden())
            self.assertTrue(all(c >= 0 for c in plan.toList()))

    def testRas(self):
        rng = np.random.default_rng(9)
        self.assertEqual(ras_allocate(9, 1, rng).toList(), [9])
        for _ in range(1000):
            total = int(rng.integers(1, 100))
            layers = int(rng.integers(1, 6))
            plan = ras_allocate(total, layers, rng)
            self.assertEqual(plan.total(), total)
            self.assertEqual(len(plan.toList()), layers)
        counts = ras_allocate(100000, 3, rng).toList()
        for c in counts:
            self.assertLess(abs(c - 100000 / 3.0), 0.02 * 100000 / 3.0)
        self.assertEqual(ras_allocate(20, 3, 4).toList(),
                         ras_allocate(20, 3, 4).toList())

    def testSingleLayer(self):
        self.assertEqual(single_layer_allocate(4, 1).toList(), [4])
        with self.assertRaises(ConsistencyError):
            single_layer_allocate(4, 2)

    def testDistribute(self):
        rng = np.random.default_rng(10)
        net = self.randomNet(rng, 3, (5, 5), 2)
        batch = (rng.uniform(size=(4, 3)), rng.uniform(size=(4, 2)))
        for kind in (DistributorKind.SVOD, DistributorKind.RAS):
            plan = distribute(kind, net, 6, batch, LossKind.MSE, rng, 1)
            self.assertEqual(plan.total(), 6)
        with self.assertRaises(InputError):
            distribute('nope', net, 6, batch, LossKind.MSE, rng)

    def testDistributorNames(self):
        for name in ('single', 'single_layer', 'singlelayer', 'SingleLayer',
                     'SINGLE-LAYER'):
            self.assertEqual(DistributorKind.fromString(name),
                             DistributorKind.SINGLE_LAYER)
        self.assertEqual(DistributorKind.fromString(' RAS '),
                         DistributorKind.RAS)
        with self.assertRaises(InputError):
            DistributorKind.fromString('single layer')
        rng = np.random.default_rng(11)
        net = self.randomNet(rng, 3, (5,), 2)
        batch = (rng.uniform(size=(4, 3)), rng.uniform(size=(4, 2)))
        plan = distribute('single_layer', net, 3, batch, LossKind.MSE, rng)
        self.assertEqual(plan.toList(), [3])

    def testExpansionPlan(self):
        plan = ExpansionPlan(3, [2, 0, 1])
        self.assertEqual(plan.total(), 3)
        self.assertEqual(str(plan), 'ExpansionPlan(stage=3, counts=[2, 0, 1])')
        with self.assertRaises(InputError):
            ExpansionPlan(1, [1, -1])


if __name__ == '__main__':
    unittest.main()
