# -*- coding: utf-8 -*-
"""
Command line interface.

Subcommands: ``grow``, ``inactivity``, ``eval``, ``audit`` and
``gradcheck``. Exit status is 0 on success, 1 on configuration or usage
errors and 2 on runtime errors.
"""
from __future__ import print_function, absolute_import, division
from builtins import map, range, object, zip, sorted
import argparse
import sys

from .config import ExperimentConfig
from .diagnostics import grad_check_suite, evaluate, measure_inactivity
from .environment import Environment
from .exceptions import ConfigError, NeuroGrowException
from .experiment import Experiment
from .outputhandler import Kind, OutputHandler, emit
from .reports import emit_reports, text_summary
from .serialization import load_network

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2

GRADCHECK_TOLERANCE = 1e-5


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, '{}: error: {}\n'.format(self.prog, message))


def _add_global_options(psr, default):
    psr.add_argument(
        '--config', default=default,
        help='TOML file with experiment settings.', type=str)
    psr.add_argument(
        '--seed', default=default,
        help='Run a single seed instead of the configured ones.', type=int)
    psr.add_argument(
        '--out', default=default,
        help='Directory for report files and networks.', type=str)
    psr.add_argument(
        '--data-dir', default=default,
        help='Dataset directory (overrides NEUROGROW_DATA).', type=str)


def build_parser():
    psr = ArgumentParser(
        prog='neurogrow',
        description='Grow ReLU networks in width during training.')
    _add_global_options(psr, None)
    sub = psr.add_subparsers(dest='command', parser_class=ArgumentParser)

    def add(name, help):
        cmd = sub.add_parser(name, help=help)
        _add_global_options(cmd, argparse.SUPPRESS)
        return cmd

    add('grow', 'Run a growth experiment and write the reports.')
    add('inactivity',
        'Double trained networks and count new neurons that never fire.')
    cmd = add('eval', 'Evaluate a saved network on a dataset split.')
    cmd.add_argument('network', help='NGROW1 network file.', type=str)
    cmd.add_argument('--split', default='test',
                     choices=['train', 'val', 'test'], type=str)
    cmd = add('audit', 'Count inactive neurons of a saved network.')
    cmd.add_argument('network', help='NGROW1 network file.', type=str)
    cmd.add_argument('--split', default='train',
                     choices=['train', 'val', 'test'], type=str)
    cmd.add_argument('--stage', default=None,
                     help='Birth stage counted as new (default: any > 0).',
                     type=int)
    cmd = add('gradcheck',
              'Compare backpropagation with finite differences.')
    cmd.add_argument('--nets', default=50,
                     help='Random networks per loss.', type=int)
    return psr


def _load_config(args):
    if args.config is not None:
        config = ExperimentConfig.fromFile(args.config)
    else:
        config = ExperimentConfig()
    config = config.withOverrides(
        seeds=None if args.seed is None else [args.seed],
        out_dir=args.out)
    return config.validate()


def _split(experiment, config, name):
    train_ds, val_ds, test_ds = experiment.loadData(config)
    return {'train': train_ds, 'val': val_ds, 'test': test_ds}[name]


def _run(args, experiment):
    out = experiment.getOutputHandler()
    if args.command == 'gradcheck':
        seed = 0 if args.seed is None else args.seed
        worst = grad_check_suite(args.nets, seed, outputhandler=out)
        err = max(worst.values())
        emit(out, Kind.GRADCHECK, 'max relative error {:.3e}', err)
        return EXIT_OK if err < GRADCHECK_TOLERANCE else EXIT_RUNTIME
    config = _load_config(args)
    if args.command == 'grow':
        report = experiment.runGrowth(config)
    elif args.command == 'inactivity':
        report = experiment.runInactivity(config)
    elif args.command == 'eval':
        net = load_network(args.network)
        ds = _split(experiment, config, args.split)
        emit(out, Kind.EVAL, '{}: {}', ds.name, evaluate(net, ds))
        return EXIT_OK
    else:
        net = load_network(args.network)
        ds = _split(experiment, config, args.split)
        report = measure_inactivity(net, ds, stage_filter=args.stage)
        emit(out, Kind.REPORT, '{}\n{} of {} new neurons inactive',
             report.toString(), report.inactiveNew(), report.newTotal())
        return EXIT_OK
    emit_reports(report, config.out_dir, out)
    emit(out, Kind.REPORT, '{}', text_summary(report))
    return EXIT_OK


def _print_error(exception):
    msg = '\t' + str(exception).replace('\n', '\n\t')
    print('Error:\n{:s}'.format(msg), file=sys.stderr)


def main(argv=None, outputhandler=None, errorhandler=None, environment=None):
    """
    Run the command line interface and return the exit status.
    """
    psr = build_parser()
    try:
        args = psr.parse_args(argv)
    except SystemExit as e:
        return e.code if e.code is not None else EXIT_OK
    if args.command is None:
        psr.print_usage(sys.stderr)
        return EXIT_CONFIG
    if environment is None:
        environment = Environment()
    if args.data_dir is not None:
        environment.setDataDir(args.data_dir)
    experiment = Experiment(environment)
    experiment.setOutputHandler(
        outputhandler if outputhandler is not None else OutputHandler())
    if errorhandler is not None:
        experiment.setErrorHandler(errorhandler)
    try:
        return _run(args, experiment)
    except ConfigError as e:
        _print_error(e)
        return EXIT_CONFIG
    except (NeuroGrowException, IOError, OSError) as e:
        _print_error(e)
        return EXIT_RUNTIME


if __name__ == '__main__':
    sys.exit(main())
