#! /usr/bin/env python
# -*- coding: utf-8 -*-
"""
Parity Bell - states.py

GNU Public License
http://www.gnu.org/licenses/

Parity Bell is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

Entangled states of the light field: N-mode parity-entangled GHZ
states and the two-mode squeezed vacuum (NOPA) state.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .fock import SIZE_BUDGET, ModeSpace, StateVector
from .pseudospin import ParityProfile, parity_state

logger = logging.getLogger(__name__)

# Default truncation dimensions
GHZ_DIM = 16
NOPA_DIM = 32


@dataclass(frozen=True)
class NopaParams:
    """
    Squeezing parameter r > 0 of the two-mode squeezed vacuum.
    """
    r: float

    def __post_init__(self):
        if not (np.isfinite(self.r) and self.r > 0.):
            raise ValueError("Squeezing parameter must be > 0, got {0}.".
                             format(self.r))

    def deficit(self, dim):
        """
        Probability weight of the photon numbers n >= dim:
        1 - sum_{n<dim} tanh(r)^(2n)/cosh(r)^2 = tanh(r)^(2 dim).
        """
        return float(np.tanh(self.r)**(2*dim))


def nopa_state(params, dim=NOPA_DIM, budget=SIZE_BUDGET):
    """
    |NOPA> = (1/cosh r) sum_n tanh(r)^n |n,n>, truncated to n < dim
    and renormalized.

    Inputs:
      params :: states.NopaParams object
      dim :: integer
        Per-mode truncation dimension
      budget :: integer
        Size budget for the two-mode space

    Returns: state, deficit
      state :: fock.StateVector object
        The renormalized truncated state
      deficit :: scalar
        The discarded probability weight tanh(r)^(2 dim)
    """
    space = ModeSpace(2, dim, budget=budget)
    levels = np.arange(dim)
    amplitudes = np.zeros(space.total_dim, dtype=complex)
    amplitudes[levels*dim + levels] = \
        np.tanh(params.r)**levels/np.cosh(params.r)
    state = StateVector(space, amplitudes).normalize()
    deficit = params.deficit(dim)
    logger.info("NOPA state r={0} dim={1}: truncation deficit {2:.3e}".
                format(params.r, dim, deficit))
    return state, deficit


class GhzSpec:
    """
    An N-mode parity-entangled GHZ state request.
    """

    def __init__(self, num_modes, dim=GHZ_DIM, profiles=None):
        """
        Inputs:
          num_modes :: integer
            Number of modes N >= 2
          dim :: integer
            Per-mode truncation dimension (even)
          profiles :: list of pseudospin.ParityProfile objects
            One shared profile or one per mode. Default: fock0.

        Returns: spec
          spec :: states.GhzSpec object
        """
        if int(num_modes) != num_modes or num_modes < 2:
            raise ValueError("GHZ states need at least 2 modes, got {0}.".
                             format(num_modes))
        if profiles is None:
            profiles = [ParityProfile.fock0()]
        if isinstance(profiles, ParityProfile):
            profiles = [profiles]
        profiles = list(profiles)
        if len(profiles) not in (1, num_modes):
            raise ValueError(
                "Expected 1 or {0} parity profiles, got {1}.".format(
                    num_modes, len(profiles)))
        self.num_modes = int(num_modes)
        self.dim = int(dim)
        self.profiles = profiles

    def profile(self, mode):
        if len(self.profiles) == 1:
            return self.profiles[0]
        return self.profiles[mode]


def ghz_state(spec, budget=SIZE_BUDGET):
    """
    |GHZ>_N = (|+>|+>...|+> - |->|->...|->)/sqrt(2)

    Inputs:
      spec :: states.GhzSpec object
      budget :: integer
        Size budget for the N-mode space

    Returns: state
      state :: fock.StateVector object
    """
    space = ModeSpace(spec.num_modes, spec.dim, budget=budget)
    even = np.ones(1, dtype=complex)
    odd = np.ones(1, dtype=complex)
    for mode in range(spec.num_modes):
        profile = spec.profile(mode)
        even = np.kron(even, parity_state(profile, '+',
                                          spec.dim).amplitudes)
        odd = np.kron(odd, parity_state(profile, '-',
                                        spec.dim).amplitudes)
    return StateVector(space, (even - odd)/np.sqrt(2.))


def all_even_state(spec, budget=SIZE_BUDGET):
    """
    The product state |+>|+>...|+>.
    """
    space = ModeSpace(spec.num_modes, spec.dim, budget=budget)
    even = np.ones(1, dtype=complex)
    for mode in range(spec.num_modes):
        even = np.kron(even, parity_state(spec.profile(mode), '+',
                                          spec.dim).amplitudes)
    return StateVector(space, even)
