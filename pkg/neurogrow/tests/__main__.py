#!/usr/bin/env python
# -*- coding: utf-8 -*-
from __future__ import absolute_import

import unittest
from .test_network import TestNetwork
from .test_losses import TestLosses
from .test_backprop import TestBackprop
from .test_optimizer import TestOptimizer
from .test_dataset import TestDataset
from .test_diagnostics import TestDiagnostics
from .test_distributors import TestDistributors
from .test_extenders import TestExtenders
from .test_config import TestConfig
from .test_serialization import TestSerialization
from .test_experiment import TestExperiment
from .test_reports import TestReports
from .test_cli import TestCli
from .test_environment import TestEnvironment


if __name__ == '__main__':
    unittest.main()
