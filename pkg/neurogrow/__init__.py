# -*- coding: utf-8 -*-
"""
Growing ReLU multilayer perceptrons in width during training.

New neurons are initialized by an extender (shared-weights coupling,
Kaiming, Frobenius-preserving or a candidate-pool selection) and the
neuron budget of every stage is split over the hidden layers by a
distributor (steepest voting with virtual probe neurons, or random).
"""
from __future__ import absolute_import
from .outputhandler import OutputHandler, NullOutputHandler, Kind
from .errorhandler import ErrorHandler, CollectingErrorHandler
from .exceptions import (NeuroGrowException, DimensionError, InputError,
                         ConsistencyError, NumericalError, FormatError,
                         DegenerateInputError, SizeError, ConfigError,
                         InactivityWarning, ConvergenceWarning)
from .utils import Utils
from .network import (Head, NeuronTag, DenseLayer, Network, ForwardTrace,
                      kaiming_init, forward, predict, relu)
from .losses import (LossKind, loss_mse, loss_softmax_ce, compute_loss,
                     softmax)
from .backprop import GradientSet, backward, accumulate_gradients
from .dataset import (Task, Dataset, SplitSpec, load_idx, save_idx,
                      load_named, make_reconstruction, center_features,
                      synthetic_blobs, split, batches)
from .optimizer import AdamState, adam_step, train, EarlyStopping
from .diagnostics import (LayerInactivity, InactivityReport, EvalResult,
                          measure_inactivity, evaluate, grad_check,
                          grad_check_suite)
from .distributors import (DistributorKind, ExpansionPlan, ProbeStats,
                           largest_remainder, virtual_probe_gradients,
                           gating_gradients, probe_gradients, svod_allocate,
                           ras_allocate, single_layer_allocate, distribute)
from .extenders import (ExtenderKind, ExtenderInputs, CouplingSet,
                        SharedWeightsExtension, FireflyLiteExtension,
                        insert_neurons, swe_extend, kaiming_extend,
                        frobenius_extend, frobenius_rescale,
                        firefly_lite_extend, extend, apply_plan)
from .environment import Environment
from .config import ExperimentConfig, schedule_widths
from .serialization import save_network, load_network
from .experiment import (StageRecord, InactivityRecord, RunReport,
                         Experiment, run_growth_experiment,
                         run_inactivity_study, static_baseline)
from .reports import emit_reports, summarize, text_summary
__version__ = '0.1.0'
