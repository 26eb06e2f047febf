#! /usr/bin/env python
# -*- coding: utf-8 -*-
"""
Parity Bell - paritybell.py

GNU Public License
http://www.gnu.org/licenses/

Parity Bell is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

Experiment drivers. Each returns a result document (a dict with
snake_case keys and a boolean 'pass') for results.emit().
"""

import json
import logging
import time

import numpy as np

from .bell import (GHZ_EIGEN_EQUATIONS, MeasurementSettings,
                   bell_operator, bell_report, bell_square_identity_check,
                   bell_value, correlation_tensor, ghz_eigen_check,
                   quantum_bound, random_settings)
from .fock import SIZE_BUDGET, spectral_radius
from .lhv import (GHZ_CONSTRAINTS, drop_constraint,
                  ghz_constraints_satisfiable, quantum_vs_lhv_gap)
from .optimizer import (OptimizerConfig, closed_form_nopa_chsh,
                        grid_search_planar, optimize_settings)
from .pseudospin import ParityProfile, algebra_residuals, build_pseudospin
from .states import GhzSpec, NopaParams, ghz_state, nopa_state

__version__ = '1.0'

logger = logging.getLogger(__name__)

# Pass thresholds
ALGEBRA_TOL = 1e-12
EIGEN_TOL = 1e-10
SQUARE_TOL = 1e-10
GHZ_OPTIMUM_TOL = 1e-6
NOPA_OPTIMUM_TOL = 1e-4
BOUND_SLACK = 1e-9
MONOTONE_SLACK = 1e-12


def read_config_file(filename):
    """
    Read a key=value configuration file.

    Inputs:
      filename :: string
        Lines are key=value; '#' starts a comment; blank lines are
        skipped. Keys may use '-' or '_'.

    Returns: config
      config :: dictionary
        key (with '_') -> value string, in file order
    """
    config = {}
    with open(filename, 'r') as fin:
        for lineno, line in enumerate(fin, start=1):
            line = line.split('#')[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise ValueError(
                    "Config file {0} line {1} is not key=value: {2!r}".
                    format(filename, lineno, line))
            key, value = line.split('=', 1)
            key = key.strip().lstrip('-').replace('-', '_')
            if not key:
                raise ValueError("Config file {0} line {1} has an empty "
                                 "key.".format(filename, lineno))
            config[key] = value.strip()
    return config


def read_settings_file(filename, num_modes):
    """
    Read measurement settings from a JSON file holding a list of 2N
    3-vectors ordered a_1, a'_1, a_2, a'_2, ...

    Inputs:
      filename :: string
      num_modes :: integer
        The expected N

    Returns: settings
      settings :: bell.MeasurementSettings object
    """
    with open(filename, 'r') as fin:
        try:
            vectors = json.load(fin)
        except json.JSONDecodeError as err:
            raise ValueError("Settings file {0} is not valid JSON: {1}".
                             format(filename, err))
    if not isinstance(vectors, list) or len(vectors) != 2*num_modes:
        raise ValueError(
            "Settings file {0} must hold a list of {1} vectors for {2} "
            "modes.".format(filename, 2*num_modes, num_modes))
    for vec in vectors:
        if not isinstance(vec, list) or len(vec) != 3:
            raise ValueError("Settings file {0}: {1!r} is not a "
                             "3-vector.".format(filename, vec))
    return MeasurementSettings.from_vectors(vectors)


def algebra_check(dim):
    """
    Check the spin-1/2 algebra of the truncated pseudospins.
    """
    residuals = algebra_residuals(build_pseudospin(dim))
    max_residual = max(residuals.values())
    document = {'dim': dim}
    for name, value in residuals.items():
        document['residual_' + name] = value
    document['max_residual'] = max_residual
    document['pass'] = bool(max_residual < ALGEBRA_TOL)
    return document


def ghz_eigen(dim, profile=None, random_profiles=0, seed=0,
              budget=SIZE_BUDGET):
    """
    Residuals of the three-mode GHZ eigenvalue equations for the given
    profile and for random_profiles random ones.

    Inputs:
      dim :: integer
        Per-mode truncation dimension
      profile :: pseudospin.ParityProfile object
        Default: fock0
      random_profiles :: integer
        Number of extra random profiles (length dim/2)
      seed :: integer
      budget :: integer

    Returns: document
      document :: dictionary
    """
    if profile is None:
        profile = ParityProfile.fock0()
    rng = np.random.default_rng(seed)
    profiles = [('given', profile)]
    profiles += [('random_{0}'.format(i),
                  ParityProfile.random(rng, dim//2))
                 for i in range(random_profiles)]
    rows = []
    for name, prof in profiles:
        state = ghz_state(GhzSpec(3, dim, prof), budget=budget)
        residuals = ghz_eigen_check(state, dim)
        row = {'profile': name}
        for axes, _ in GHZ_EIGEN_EQUATIONS:
            row['residual_' + axes] = getattr(residuals, axes)
        rows.append(row)
    max_residual = max(max(row['residual_' + axes]
                           for axes, _ in GHZ_EIGEN_EQUATIONS)
                       for row in rows)
    return {'n_modes': 3, 'dim': dim, 'profiles_checked': len(rows),
            'max_residual': max_residual,
            'pass': bool(max_residual < EIGEN_TOL), 'rows': rows}


def paradox(num_modes=3):
    """
    The GHZ contradiction: no LHV assignment satisfies all four
    constraints, while dropping any one of them leaves witnesses.
    """
    result = ghz_constraints_satisfiable(num_modes)
    rows = []
    for index in range(len(GHZ_CONSTRAINTS)):
        dropped = ghz_constraints_satisfiable(
            num_modes, drop_constraint(index))
        pattern = ''.join(comp for _, comp in GHZ_CONSTRAINTS[index][0])
        rows.append({'dropped_constraint': pattern,
                     'satisfiable': dropped.satisfiable,
                     'satisfying_assignments': dropped.count,
                     'witness_p_x': (list(dropped.witness.p_x)
                                     if dropped.witness else None),
                     'witness_p_y': (list(dropped.witness.p_y)
                                     if dropped.witness else None)})
    passed = (not result.satisfiable and
              all(row['satisfiable'] for row in rows))
    return {'n_modes': num_modes, 'satisfiable': result.satisfiable,
            'assignments_checked': result.checked,
            'satisfying_assignments': result.count,
            'pass': bool(passed), 'rows': rows}


def mermin_gap(max_modes, dim, budget=SIZE_BUDGET):
    """
    Quantum Mermin value against the enumerated LHV maximum for
    N = 2..max_modes. The GHZ eigenvector relation is verified where
    dim^N fits the budget.
    """
    if max_modes < 2:
        raise ValueError("mermin-gap needs --modes >= 2, got {0}.".format(
            max_modes))
    rows = []
    passed = True
    for num_modes in range(2, max_modes+1):
        verify_dim = dim if dim**num_modes <= budget else None
        gap = quantum_vs_lhv_gap(num_modes, verify_dim=verify_dim,
                                 budget=budget)
        rows.append({'n_modes': num_modes, 'quantum': gap.quantum,
                     'lhv': gap.lhv, 'ratio': gap.ratio,
                     'lhv_bound': gap.lhv_bound,
                     'bound_ratio': gap.bound_ratio,
                     'eigen_residual': gap.eigen_residual})
        passed &= gap.lhv <= gap.lhv_bound
        passed &= gap.quantum >= gap.lhv
        if gap.eigen_residual is not None:
            passed &= gap.eigen_residual < EIGEN_TOL
    return {'max_modes': max_modes, 'dim': dim, 'pass': bool(passed),
            'rows': rows}


def _build_state(kind, num_modes, dim, profile, r, budget):
    if kind == 'ghz':
        return ghz_state(GhzSpec(num_modes, dim, profile),
                         budget=budget), None
    if kind == 'nopa':
        if num_modes != 2:
            raise ValueError("The NOPA state has 2 modes, got --modes "
                             "{0}.".format(num_modes))
        if r is None:
            raise ValueError("The NOPA state needs --r.")
        return nopa_state(NopaParams(r), dim, budget=budget)
    raise ValueError("Unknown state {0!r}; expected ghz or nopa.".format(
        kind))


def chsh(kind, num_modes, dim, profile=None, r=None, cfg=None,
         grid_degrees=None, settings=None, budget=SIZE_BUDGET):
    """
    <B_N> on a GHZ or NOPA state, with settings from the optimizer,
    the planar grid or a settings file (exactly one).

    Inputs:
      kind :: string
        'ghz' or 'nopa'
      num_modes :: integer
      dim :: integer
      profile :: pseudospin.ParityProfile object (GHZ only)
      r :: scalar (NOPA only)
      cfg :: optimizer.OptimizerConfig object
        Used by the optimizer; its plane_constraint selects the grid
        plane (default xy)
      grid_degrees :: scalar or None
        Grid resolution in degrees
      settings :: bell.MeasurementSettings object or None

    Returns: document
      document :: dictionary
    """
    chosen = [grid_degrees is not None, settings is not None]
    if sum(chosen) > 1:
        raise ValueError("Choose one of --optimize, --grid and "
                         "--settings-file.")
    if cfg is None:
        cfg = OptimizerConfig()
    state, deficit = _build_state(kind, num_modes, dim, profile, r, budget)
    tensor = correlation_tensor(state)
    if settings is not None:
        method = 'settings'
        if settings.num_modes != num_modes:
            raise ValueError("Settings for {0} modes, state has {1}.".
                             format(settings.num_modes, num_modes))
        report = bell_report(bell_value(tensor, settings), settings)
    elif grid_degrees is not None:
        method = 'grid'
        plane = cfg.plane_constraint or 'xy'
        report = grid_search_planar(state, num_modes, dim,
                                    np.deg2rad(grid_degrees), plane=plane,
                                    tensor=tensor)
    else:
        method = 'optimize'
        report = optimize_settings(state, num_modes, dim, cfg,
                                   tensor=tensor)
    document = {'state': kind, 'n_modes': num_modes, 'dim': dim,
                'method': method}
    if kind == 'nopa':
        expected = float(closed_form_nopa_chsh(r))
        tol = NOPA_OPTIMUM_TOL
        document['r'] = float(r)
        document['truncation_deficit'] = deficit
        document['closed_form'] = expected
    else:
        expected = report.quantum_bound
        tol = GHZ_OPTIMUM_TOL
    document.update({'value': report.value, 'abs_value': report.abs_value,
                     'local_bound': report.local_bound,
                     'quantum_bound': report.quantum_bound,
                     'violation_factor': report.violation_factor,
                     'violates_local': report.violates_local})
    passed = report.abs_value <= report.quantum_bound*(1. + BOUND_SLACK)
    if method == 'optimize':
        passed &= abs(report.abs_value - expected) < tol
    document['pass'] = bool(passed)
    document['settings'] = report.settings.to_list()
    return document


def is_non_decreasing(values, slack=MONOTONE_SLACK):
    """
    True if no value drops below its predecessor by more than slack.
    """
    return bool(np.all(np.diff(values) >= -slack))


def sweep(r_min, r_max, steps, dim, cfg=None, budget=SIZE_BUDGET):
    """
    Optimized NOPA CHSH value against the closed form over an
    increasing grid of squeezing parameters.

    Returns: document
      document :: dictionary
        rows of r, chsh_value, closed_form, abs_error,
        truncation_deficit
    """
    if not 0. < r_min < r_max:
        raise ValueError("Sweep needs 0 < r_min < r_max, got {0}, {1}.".
                         format(r_min, r_max))
    if int(steps) != steps or steps < 2:
        raise ValueError("Sweep needs at least 2 steps, got {0}.".format(
            steps))
    if cfg is None:
        cfg = OptimizerConfig(plane_constraint='xz')
    rows = []
    for r in np.linspace(r_min, r_max, int(steps)):
        state, deficit = nopa_state(NopaParams(float(r)), dim,
                                    budget=budget)
        report = optimize_settings(state, 2, dim, cfg)
        closed_form = float(closed_form_nopa_chsh(r))
        rows.append({'r': float(r), 'chsh_value': report.abs_value,
                     'closed_form': closed_form,
                     'abs_error': abs(report.abs_value - closed_form),
                     'truncation_deficit': deficit})
        logger.info("r = {0:.4f}: <B_2> = {1:.10f}".format(
            r, report.abs_value))
    values = [row['chsh_value'] for row in rows]
    passed = (all(row['abs_error'] < NOPA_OPTIMUM_TOL for row in rows) and
              all(value > 2. for value in values) and
              is_non_decreasing(values))
    return {'state': 'nopa', 'dim': dim, 'steps': int(steps),
            'max_abs_error': max(row['abs_error'] for row in rows),
            'max_truncation_deficit': max(row['truncation_deficit']
                                          for row in rows),
            'pass': bool(passed), 'rows': rows}


def _check_trials(trials):
    if int(trials) != trials or trials < 1:
        raise ValueError("Need at least 1 trial, got {0}.".format(trials))


def spectral(num_modes, dim, trials, seed=0, budget=SIZE_BUDGET):
    """
    Spectral radius of B_N for random settings against 2^((N+1)/2).
    """
    _check_trials(trials)
    rng = np.random.default_rng(seed)
    bound = quantum_bound(num_modes)
    rows = []
    for trial in range(trials):
        op = bell_operator(random_settings(rng, num_modes), dim,
                           budget=budget)
        result = spectral_radius(op, seed=seed+trial)
        rows.append({'trial': trial, 'spectral_radius': result.value,
                     'squared': result.value**2,
                     'iterations': result.iterations,
                     'converged': result.converged})
    max_radius = max(row['spectral_radius'] for row in rows)
    return {'n_modes': num_modes, 'dim': dim, 'trials': trials,
            'quantum_bound': bound, 'max_spectral_radius': max_radius,
            'pass': bool(max_radius <= bound*(1. + BOUND_SLACK)),
            'rows': rows}


def square_identity(num_modes, dim, trials, seed=0, budget=SIZE_BUDGET):
    """
    Residual of the B_N^2 decomposition for random settings.
    """
    _check_trials(trials)
    rng = np.random.default_rng(seed)
    rows = []
    for trial in range(trials):
        residual = bell_square_identity_check(
            random_settings(rng, num_modes), dim, budget=budget)
        rows.append({'trial': trial, 'residual': residual})
    max_residual = max(row['residual'] for row in rows)
    return {'n_modes': num_modes, 'dim': dim, 'trials': trials,
            'max_residual': max_residual,
            'pass': bool(max_residual < SQUARE_TOL), 'rows': rows}


def timed(driver, *args, **kwargs):
    """
    Run a driver and log its runtime.
    """
    start_time = time.time()
    document = driver(*args, **kwargs)
    logger.info("Total {0} runtime: {1:.1f} seconds".format(
        driver.__name__, time.time()-start_time))
    return document
