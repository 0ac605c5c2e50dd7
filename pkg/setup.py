# -*- coding: utf-8 -*-
"""
NEUROGROW
---------

NeuroGrow grows fully connected ReLU networks in width while they train.
Training proceeds in stages; after every stage a distributor decides how
many new neurons each hidden layer receives and an extender initializes
them. The shared-weights extender lets every new neuron borrow a learnable
share of the weights of the existing neurons of its layer, adjusts the
shares with a single gradient pass and merges them, so that new neurons
start active instead of dead. The steepest voting distributor scores
virtual probe neurons by the gradient of the loss with respect to a gate
and sends the budget to the layers whose probes promise the steepest
descent.

The package also ships the baselines used for comparison (Kaiming and
Frobenius-preserving insertion, a candidate-pool selector, random
allocation), an inactive-neuron audit, a finite-difference gradient
checker, IDX dataset readers and a command line harness writing CSV and
JSON reports.

Documentation:
``````````````

* docs/source (sphinx)
"""
from setuptools import setup

setup(
    name='neurogrow',
    version='0.1.0',
    description='Width growth of ReLU networks with shared-weights extension',
    long_description=__doc__,
    license='BSD-3',
    platforms='any',
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Topic :: Scientific/Engineering',
        'Topic :: Scientific/Engineering :: Artificial Intelligence',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: Implementation :: CPython',
    ],
    packages=['neurogrow', 'neurogrow.tests'],
    install_requires=[
        'future >= 0.15.0',
        'numpy >= 1.17',
        'pandas >= 1.0',
        'toml >= 0.10',
    ],
    entry_points={
        'console_scripts': ['neurogrow = neurogrow.cli:main'],
    },
)
