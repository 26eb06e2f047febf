#! /usr/bin/env python
# -*- coding: utf-8 -*-
"""
Parity Bell - cli.py

GNU Public License
http://www.gnu.org/licenses/

Parity Bell is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

Command-line front end. Exit codes: 0 every check passed, 1 a check
failed, 2 usage error.
"""

import argparse
import logging
import sys

from . import paritybell
from .fock import BudgetError
from .geometry import PLANES
from .optimizer import OptimizerConfig
from .pseudospin import ParityProfile
from .results import FORMATS, emit
from .states import GHZ_DIM, NOPA_DIM

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

_TRUE = ('1', 'true', 'yes', 'on')
_FALSE = ('0', 'false', 'no', 'off')

# Default --modes per subcommand
_DEFAULT_MODES = {'algebra-check': None, 'ghz-eigen': 3, 'paradox': 3,
                  'mermin-gap': 8, 'chsh': 3, 'sweep': 2, 'spectral': 3,
                  'square-identity': 3}


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--dim', type=int, default=None,
                        help=('Per-mode truncation dimension (even). '
                              'Default: {0} for GHZ, {1} for NOPA.'.format(
                                  GHZ_DIM, NOPA_DIM)))
    common.add_argument('--modes', type=int, default=None,
                        help='Number of modes N')
    common.add_argument('--seed', type=int, default=0,
                        help='Random seed (default: 0)')
    common.add_argument('--format', choices=FORMATS, default=None,
                        help='Output format (default: json, csv for sweep)')
    common.add_argument('--out', default=None,
                        help='Output file (default: stdout)')
    common.add_argument('--config', default=None,
                        help='key=value file of defaults for these flags')
    common.add_argument('--profile', default='fock0',
                        help='Parity profile: fock0, geometric:q or '
                        'uniform:M (default: fock0)')
    common.add_argument('--restarts', type=int, default=16,
                        help='Optimizer restarts (default: 16)')
    common.add_argument('--max-iters', type=int, default=2000,
                        help='Simplex iterations per descent '
                        '(default: 2000)')
    common.add_argument('--tol', type=float, default=1e-9,
                        help='Optimizer tolerance (default: 1e-9)')
    common.add_argument('--num-cpus', type=int, default=1,
                        help=('Number of CPUs for optimizer restarts. If 1, '
                              'no multiprocessing. If < 1, use all '
                              'available CPUs. (default: 1)'))
    common.add_argument('-v', '--verbose', action='store_true',
                        help='Log progress to stderr')
    return common


def build_parser():
    """
    The top-level parser with one subparser per subcommand.
    """
    parser = argparse.ArgumentParser(
        prog='paritybell',
        description=('Parity Bell: parity-pseudospin Bell, GHZ and '
                     'Mermin checks on truncated Fock spaces'))
    parser.add_argument('--version', action='version',
                        version='%(prog)s {0}'.format(
                            paritybell.__version__))
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True
    common = _common_parser()
    parser.subcommands = {}

    def add(name, help_text):
        sub = subparsers.add_parser(name, parents=[common], help=help_text,
                                    description=help_text)
        parser.subcommands[name] = sub
        return sub

    add('algebra-check', 'Check the pseudospin algebra at --dim')
    sub = add('ghz-eigen', 'Three-mode GHZ eigenvalue equations')
    sub.add_argument('--random-profiles', type=int, default=0,
                     help='Also check this many random profiles')
    add('paradox', 'LHV assignments against the GHZ constraints')
    add('mermin-gap', 'Quantum vs LHV Mermin values for N = 2..--modes')
    sub = add('chsh', 'Bell-CHSH value on a GHZ or NOPA state')
    sub.add_argument('--state', choices=('ghz', 'nopa'), default='ghz')
    sub.add_argument('--r', type=float, default=None,
                     help='NOPA squeezing parameter')
    sub.add_argument('--plane', choices=PLANES + ('none',), default='none',
                     help='Plane constraint for settings (default: none)')
    sub.add_argument('--optimize', action='store_true',
                     help='Maximize over settings')
    sub.add_argument('--grid', type=float, default=None, metavar='DEGREES',
                     help='Exhaustive planar grid at this resolution')
    sub.add_argument('--settings-file', default=None,
                     help='JSON list of 2N unit vectors a_1, a\'_1, ...')
    sub = add('sweep', 'NOPA CHSH value over a range of r')
    sub.add_argument('--state', choices=('nopa',), default='nopa')
    sub.add_argument('--r-min', type=float, default=0.1)
    sub.add_argument('--r-max', type=float, default=1.2)
    sub.add_argument('--steps', type=int, default=23)
    sub.add_argument('--plane', choices=PLANES + ('none',), default='xz',
                     help='Plane constraint for settings (default: xz)')
    sub = add('spectral', 'Spectral radius of B_N for random settings')
    sub.add_argument('--trials', type=int, default=50)
    sub = add('square-identity', 'B_N^2 decomposition residual')
    sub.add_argument('--trials', type=int, default=20)
    return parser


def _config_value(action, value, parser):
    if isinstance(action, argparse._StoreTrueAction):
        if value.lower() in _TRUE:
            return True
        if value.lower() in _FALSE:
            return False
        parser.error("config value for {0} must be a boolean, got {1!r}".
                     format(action.dest, value))
    if action.type is not None:
        try:
            value = action.type(value)
        except ValueError:
            parser.error("invalid config value for {0}: {1!r}".format(
                action.dest, value))
    if action.choices is not None and value not in action.choices:
        parser.error("config value for {0} must be one of {1}, got {2!r}".
                     format(action.dest, list(action.choices), value))
    return value


def parse_args(argv):
    """
    Parse argv. Values from --config become subcommand defaults,
    so explicit flags override them.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config is None:
        return parser, args
    subparser = parser.subcommands[args.command]
    try:
        config = paritybell.read_config_file(args.config)
    except (OSError, ValueError) as err:
        subparser.error(str(err))
    actions = {action.dest: action for action in subparser._actions}
    defaults = {}
    for key, value in config.items():
        if key in ('config', 'help') or key not in actions:
            subparser.error("unknown config key {0!r} in {1}".format(
                key, args.config))
        defaults[key] = _config_value(actions[key], value, subparser)
    subparser.set_defaults(**defaults)
    return parser, parser.parse_args(argv)


def _setup_logging(verbose):
    logging.basicConfig(stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    logging.getLogger().setLevel(logging.INFO if verbose
                                 else logging.WARNING)


def _optimizer_config(args, plane):
    return OptimizerConfig(restarts=args.restarts,
                           max_iters=args.max_iters, tol=args.tol,
                           seed=args.seed, plane_constraint=plane,
                           num_cpus=args.num_cpus)


def dispatch(args, parser):
    """
    Run the driver selected by args.command.

    Returns: document
      document :: dictionary
    """
    command = args.command
    modes = args.modes
    state = getattr(args, 'state', 'ghz')
    if modes is None:
        modes = 2 if state == 'nopa' else _DEFAULT_MODES[command]
    dim = args.dim
    if dim is None:
        dim = NOPA_DIM if state == 'nopa' else GHZ_DIM
    if command == 'algebra-check':
        return paritybell.timed(paritybell.algebra_check, dim)
    if command == 'ghz-eigen':
        if modes != 3:
            raise ValueError("ghz-eigen is defined for --modes 3, got {0}.".
                             format(modes))
        return paritybell.timed(
            paritybell.ghz_eigen, dim,
            profile=ParityProfile.parse(args.profile, dim),
            random_profiles=args.random_profiles, seed=args.seed)
    if command == 'paradox':
        return paritybell.timed(paritybell.paradox, modes)
    if command == 'mermin-gap':
        return paritybell.timed(paritybell.mermin_gap, modes, dim)
    if command == 'chsh':
        chosen = (args.optimize + (args.grid is not None) +
                  (args.settings_file is not None))
        if chosen != 1:
            parser.error("chsh needs exactly one of --optimize, --grid and "
                         "--settings-file")
        settings = None
        if args.settings_file is not None:
            settings = paritybell.read_settings_file(args.settings_file,
                                                     modes)
        profile = None
        if state == 'ghz':
            profile = ParityProfile.parse(args.profile, dim)
        return paritybell.timed(
            paritybell.chsh, state, modes, dim, profile=profile, r=args.r,
            cfg=_optimizer_config(args, args.plane),
            grid_degrees=args.grid, settings=settings)
    if command == 'sweep':
        if modes != 2:
            raise ValueError("The NOPA sweep has 2 modes, got --modes {0}.".
                             format(modes))
        return paritybell.timed(
            paritybell.sweep, args.r_min, args.r_max, args.steps, dim,
            cfg=_optimizer_config(args, args.plane))
    if command == 'spectral':
        return paritybell.timed(paritybell.spectral, modes, dim,
                                args.trials, seed=args.seed)
    if command == 'square-identity':
        return paritybell.timed(paritybell.square_identity, modes, dim,
                                args.trials, seed=args.seed)
    parser.error("unknown command {0!r}".format(command))


def run(argv=None):
    """
    Parse argv, run one subcommand and emit its result document.

    Inputs:
      argv :: list of strings or None
        Default: sys.argv[1:]

    Returns: code
      code :: integer
        0 pass, 1 failed check, 2 usage error
    """
    try:
        parser, args = parse_args(argv)
    except SystemExit as err:
        return EXIT_USAGE if err.code is None else err.code
    _setup_logging(args.verbose)
    try:
        document = dispatch(args, parser)
    except SystemExit as err:
        return EXIT_USAGE if err.code is None else err.code
    except BudgetError as err:
        sys.stderr.write("paritybell: error: {0}\n".format(err.explain))
        return EXIT_USAGE
    except (ValueError, OSError) as err:
        sys.stderr.write("paritybell: error: {0}\n".format(err))
        return EXIT_USAGE
    fmt = args.format
    if fmt is None:
        fmt = 'csv' if args.command == 'sweep' else 'json'
    try:
        emit(document, fmt=fmt, out=args.out,
             title=args.command.replace('-', ' ').title())
    except OSError as err:
        sys.stderr.write("paritybell: error: {0}\n".format(err))
        return EXIT_USAGE
    if not document['pass']:
        logger.warning("{0}: check failed".format(args.command))
        return EXIT_FAIL
    return EXIT_PASS


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
