#! /usr/bin/env python
# -*- coding: utf-8 -*-
"""
Parity Bell - optimizer.py

GNU Public License
http://www.gnu.org/licenses/

Parity Bell is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

Maximization of |<B_N>| over measurement settings: multi-start
Nelder-Mead simplex over polar/azimuth angles, and an exhaustive
planar grid used as its oracle.

Angle layout, per mode m:
    unconstrained  [theta_a, phi_a, theta_a', phi_a']  (4N angles)
    planar         [angle_a, angle_a']                 (2N angles)
"""

import logging
import multiprocessing as mp
import time
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .bell import (MeasurementSettings, bell_report, bell_values,
                   correlation_tensor)
from .fock import BudgetError
from .geometry import (angles_to_array, check_plane, planar_angle,
                       planar_array, planar_grid, random_unit_vectors,
                       vector_to_angles)

logger = logging.getLogger(__name__)

# Simplex tolerance on the angles
_XATOL = 1e-10

# Fresh-simplex restarts from the current optimum
_POLISH_ROUNDS = 10

# Largest number of grid points evaluated by grid_search_planar
GRID_BUDGET = 10**8

# Grid points evaluated per vectorized chunk
_GRID_CHUNK = 2**12


@dataclass(frozen=True)
class OptimizerConfig:
    """
    Settings of the multi-start simplex search.
    """
    restarts: int = 16
    max_iters: int = 2000
    tol: float = 1e-9
    seed: int = 0
    plane_constraint: str = None
    num_cpus: int = 1

    def __post_init__(self):
        if int(self.restarts) != self.restarts or self.restarts < 1:
            raise ValueError("restarts must be an integer >= 1, got {0}.".
                             format(self.restarts))
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise ValueError("max_iters must be an integer >= 1, got {0}.".
                             format(self.max_iters))
        if not self.tol > 0.:
            raise ValueError("tol must be > 0, got {0}.".format(self.tol))
        object.__setattr__(self, 'plane_constraint',
                           check_plane(self.plane_constraint))


def closed_form_nopa_chsh(r):
    """
    Largest <B_2> on the NOPA state: 2 sqrt(1 + tanh^2(2r)).
    """
    return 2.*np.sqrt(1. + np.tanh(2.*np.asarray(r, dtype=float))**2)


def angles_to_settings_array(angles, num_modes, plane=None):
    """
    Convert the flat angle vector to an (N, 2, 3) settings array.

    Inputs:
      angles :: 1-D array of scalars
        4N angles (plane None) or 2N angles (planar)
      num_modes :: integer
      plane :: string or None
        'xy', 'xz' or None

    Returns: vectors
      vectors :: (N, 2, 3) array of scalars
    """
    angles = np.asarray(angles, dtype=float)
    if plane is None:
        if angles.size != 4*num_modes:
            raise ValueError("Expected {0} angles, got {1}.".format(
                4*num_modes, angles.size))
        pairs = angles.reshape(num_modes, 2, 2)
        return angles_to_array(pairs[..., 0], pairs[..., 1])
    if angles.size != 2*num_modes:
        raise ValueError("Expected {0} planar angles, got {1}.".format(
            2*num_modes, angles.size))
    return planar_array(angles.reshape(num_modes, 2), plane)


def settings_to_angles(settings, plane=None):
    """
    Inverse of angles_to_settings_array for a MeasurementSettings.
    """
    angles = []
    for pair in settings.pairs:
        for vec in pair:
            if plane is None:
                angles.extend(vector_to_angles(vec))
            else:
                angles.append(planar_angle(vec, plane))
    return np.array(angles)


class BellObjective:
    """
    -|<B_N>| as a function of the flat angle vector. Evaluated by
    contracting the precomputed correlation tensor.
    """

    def __init__(self, tensor, num_modes, plane=None):
        self.tensor = tensor
        self.num_modes = num_modes
        self.plane = plane

    def signed_value(self, angles):
        vectors = angles_to_settings_array(angles, self.num_modes,
                                           self.plane)
        return float(bell_values(self.tensor, vectors[None])[0])

    def __call__(self, angles):
        return -abs(self.signed_value(angles))


@dataclass(frozen=True)
class RestartResult:
    index: int
    value: float
    angles: np.ndarray
    evaluations: int


class Restarter:
    """
    One simplex descent per restart index, from a reproducible
    random start.
    """

    def __init__(self, objective, cfg):
        self.objective = objective
        self.cfg = cfg
        self.seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)

    def start(self, rng):
        num_modes = self.objective.num_modes
        if self.cfg.plane_constraint is None:
            # uniform on the sphere, not uniform in the angles
            vectors = random_unit_vectors(rng, 2*num_modes)
            return np.concatenate([vector_to_angles(vec)
                                   for vec in vectors])
        return rng.uniform(0., 2.*np.pi, size=2*num_modes)

    def _descend(self, angles):
        result = minimize(self.objective, angles, method='Nelder-Mead',
                          options={'maxiter': self.cfg.max_iters,
                                   'xatol': _XATOL,
                                   'fatol': 1e-3*self.cfg.tol,
                                   'adaptive': True})
        return result.x, float(result.fun), int(result.nfev)

    def run(self, index):
        """
        Descend from the start of restart index, then restart the
        simplex at the optimum until the objective stops improving
        by more than tol.

        Inputs:
          index :: integer
            The restart index

        Returns: result
          result :: optimizer.RestartResult object
        """
        rng = np.random.default_rng(self.seeds[index])
        angles, fun, evaluations = self._descend(self.start(rng))
        for _ in range(_POLISH_ROUNDS):
            new_angles, new_fun, nfev = self._descend(angles)
            evaluations += nfev
            improvement = fun - new_fun
            if new_fun < fun:
                angles, fun = new_angles, new_fun
            if improvement <= self.cfg.tol:
                break
        return RestartResult(index=index,
                             value=self.objective.signed_value(angles),
                             angles=angles, evaluations=evaluations)


def _check_state(state, num_modes, dim):
    if state.num_modes != num_modes or state.dim != dim:
        raise ValueError(
            "State has {0} modes of dimension {1}, expected {2} modes of "
            "dimension {3}.".format(state.num_modes, state.dim, num_modes,
                                    dim))


def optimize_settings(state, num_modes, dim, cfg=None, tensor=None):
    """
    Maximize |<B_N>| over the measurement settings.

    Inputs:
      state :: fock.StateVector object
        An N-mode state of per-mode dimension dim
      num_modes :: integer
      dim :: integer
      cfg :: optimizer.OptimizerConfig object
        Default: OptimizerConfig()
      tensor :: array of scalars or None
        A precomputed correlation_tensor(state)

    Returns: report
      report :: bell.BellReport object
        The best value over all restarts (largest |value|, then
        lowest restart index) with its settings.
    """
    if cfg is None:
        cfg = OptimizerConfig()
    _check_state(state, num_modes, dim)
    if tensor is None:
        tensor = correlation_tensor(state)
    objective = BellObjective(tensor, num_modes, cfg.plane_constraint)
    restarter = Restarter(objective, cfg)
    num_cpus = cfg.num_cpus
    start_time = time.time()
    if num_cpus == 1:
        logger.info("Starting optimization with 1 CPU.")
        results = [restarter.run(i) for i in range(cfg.restarts)]
    else:
        if num_cpus < 1:
            num_cpus = mp.cpu_count()
        logger.info("Starting optimization with {0} CPUs.".format(
            num_cpus))
        with mp.Pool(num_cpus) as pool:
            results = pool.map(restarter.run, range(cfg.restarts))
    logger.info("Optimization runtime: {0:.1f} seconds.".format(
        time.time()-start_time))
    best = sorted(results,
                  key=lambda result: (-abs(result.value),  # max
                                      result.index))       # min
    best = best[0]
    logger.info("Best of {0} restarts: restart {1}, <B_{2}> = {3:.12g} "
                "({4} evaluations)".format(cfg.restarts, best.index,
                                           num_modes, best.value,
                                           best.evaluations))
    settings = MeasurementSettings.from_array(
        angles_to_settings_array(best.angles, num_modes,
                                 cfg.plane_constraint))
    return bell_report(best.value, settings)


def grid_search_planar(state, num_modes, dim, resolution, plane='xy',
                       budget=GRID_BUDGET, tensor=None):
    """
    Exhaustive maximum of |<B_N>| over planar settings on the angle
    grid k*resolution. Modes 2..N are enumerated; for each of their
    grid points <B_N> = a_1.U + a'_1.W is linear in the first pair,
    which is then maximized over the same grid directly.

    Inputs:
      state :: fock.StateVector object
      num_modes :: integer
      dim :: integer
      resolution :: scalar
        Grid spacing (radians), > 0
      plane :: string
        'xy' or 'xz'
      budget :: integer
        Largest number of enumerated grid points
      tensor :: array of scalars or None
        A precomputed correlation_tensor(state)

    Returns: report
      report :: bell.BellReport object
        The grid maximum (first in enumeration order on ties)
    """
    _check_state(state, num_modes, dim)
    if check_plane(plane) is None:
        raise ValueError("grid_search_planar needs a plane, got {0!r}.".
                         format(plane))
    grid = planar_grid(resolution)
    num_grid = grid.size
    rest_points = num_grid**(2*(num_modes-1))
    if rest_points*num_grid > budget:
        raise BudgetError(
            "Planar grid of {0} points per angle over {1} modes exceeds "
            "the grid budget {2}.".format(num_grid, num_modes, budget))
    if tensor is None:
        tensor = correlation_tensor(state)
    grid_vectors = planar_array(grid, plane)
    basis = np.eye(3)
    best = (-1., 0., None)
    start_time = time.time()
    for start in range(0, rest_points, _GRID_CHUNK):
        flat_index = np.arange(start, min(start + _GRID_CHUNK, rest_points))
        digits = np.unravel_index(flat_index,
                                  (num_grid,)*(2*(num_modes-1)))
        rest = grid_vectors[np.stack(digits, axis=-1)]
        rest = rest.reshape(flat_index.size, num_modes-1, 2, 3)
        coeffs = np.zeros((2, 3, flat_index.size))
        for slot in range(2):
            for axis in range(3):
                first = np.zeros((flat_index.size, 1, 2, 3))
                first[:, 0, slot, :] = basis[axis]
                coeffs[slot, axis] = bell_values(
                    tensor, np.concatenate((first, rest), axis=1))
        # values of a_1.U and a'_1.W for every grid angle of the first pair
        proj_a = grid_vectors @ coeffs[0]
        proj_ap = grid_vectors @ coeffs[1]
        high = proj_a.max(axis=0) + proj_ap.max(axis=0)
        low = proj_a.min(axis=0) + proj_ap.min(axis=0)
        magnitude = np.maximum(high, -low)
        pos = int(np.argmax(magnitude))
        if magnitude[pos] > best[0]:
            if high[pos] >= -low[pos]:
                first_a = int(np.argmax(proj_a[:, pos]))
                first_ap = int(np.argmax(proj_ap[:, pos]))
                value = high[pos]
            else:
                first_a = int(np.argmin(proj_a[:, pos]))
                first_ap = int(np.argmin(proj_ap[:, pos]))
                value = low[pos]
            vectors = np.concatenate(
                (grid_vectors[[first_a, first_ap]][None], rest[pos]))
            best = (float(magnitude[pos]), float(value), vectors)
    logger.info("Planar grid of {0} points per angle searched in {1:.1f} "
                "seconds.".format(num_grid, time.time()-start_time))
    settings = MeasurementSettings.from_array(best[2])
    return bell_report(best[1], settings)


def finite_difference_gradient(objective, angles, step=1e-5):
    """
    Central-difference gradient of a scalar objective.

    Inputs:
      objective :: callable
        Maps a 1-D angle array to a scalar
      angles :: 1-D array of scalars
      step :: scalar
        Difference step, > 0

    Returns: gradient
      gradient :: 1-D array of scalars
    """
    if not step > 0.:
        raise ValueError("Finite difference step must be > 0, got {0}.".
                         format(step))
    angles = np.asarray(angles, dtype=float)
    gradient = np.zeros(angles.size)
    for i in range(angles.size):
        shift = np.zeros(angles.size)
        shift[i] = step
        gradient[i] = (objective(angles + shift) -
                       objective(angles - shift))/(2.*step)
    return gradient
