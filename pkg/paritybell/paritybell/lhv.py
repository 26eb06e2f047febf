#! /usr/bin/env python
# -*- coding: utf-8 -*-
"""
Parity Bell - lhv.py

GNU Public License
http://www.gnu.org/licenses/

Parity Bell is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

Brute-force local hidden variable (LHV) engine. An assignment fixes
p_x[m], p_y[m] = +/-1 for every mode m. Assignments are indexed by
an integer whose bit 2m encodes p_x[m] and bit 2m+1 encodes p_y[m]
(bit 0 -> +1, bit 1 -> -1); ties between witnesses go to the lowest
index.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .bell import mermin_eigen_residual
from .fock import SIZE_BUDGET

logger = logging.getLogger(__name__)

# Largest N for exhaustive Mermin enumeration (2^(2N) assignments)
MAX_ENUM_MODES = 14

# High-half rows evaluated per vectorized block
_ROW_BLOCK = 256

# The three-mode GHZ constraints: ((mode, component) factors, product)
GHZ_CONSTRAINTS = (
    (((0, 'x'), (1, 'x'), (2, 'x')), -1),
    (((0, 'x'), (1, 'y'), (2, 'y')), +1),
    (((0, 'y'), (1, 'x'), (2, 'y')), +1),
    (((0, 'y'), (1, 'y'), (2, 'x')), +1),
)


class LhvAssignment:
    """
    Predetermined +/-1 values of s_x and s_y for every mode.
    """

    def __init__(self, p_x, p_y):
        p_x = tuple(int(p) for p in p_x)
        p_y = tuple(int(p) for p in p_y)
        if len(p_x) != len(p_y):
            raise ValueError("p_x and p_y must have the same length.")
        if any(p not in (-1, 1) for p in p_x + p_y):
            raise ValueError("LHV values must be +1 or -1, got {0}, {1}.".
                             format(p_x, p_y))
        self.p_x = p_x
        self.p_y = p_y

    @classmethod
    def from_index(cls, index, num_modes):
        bits = [(index >> k) & 1 for k in range(2*num_modes)]
        signs = [1 - 2*bit for bit in bits]
        return cls(signs[0::2], signs[1::2])

    @property
    def num_modes(self):
        return len(self.p_x)

    @property
    def index(self):
        index = 0
        for mode in range(self.num_modes):
            index |= (self.p_x[mode] < 0) << (2*mode)
            index |= (self.p_y[mode] < 0) << (2*mode + 1)
        return index

    def value(self, mode, component):
        if component == 'x':
            return self.p_x[mode]
        if component == 'y':
            return self.p_y[mode]
        raise ValueError("Unknown component {0!r}.".format(component))

    def to_dict(self):
        return {'p_x': list(self.p_x), 'p_y': list(self.p_y)}

    def __eq__(self, other):
        return (isinstance(other, LhvAssignment) and
                other.p_x == self.p_x and other.p_y == self.p_y)

    def __repr__(self):
        return "LhvAssignment(p_x={0}, p_y={1})".format(self.p_x, self.p_y)


def enumerate_assignments(num_modes):
    """
    Yield every LhvAssignment of num_modes modes in index order.
    """
    for index in range(4**num_modes):
        yield LhvAssignment.from_index(index, num_modes)


@dataclass(frozen=True)
class ParadoxResult:
    satisfiable: bool
    witness: object
    count: int
    checked: int


def ghz_constraints_satisfiable(num_modes=3, constraints=GHZ_CONSTRAINTS):
    """
    Search all assignments for one satisfying every constraint.

    Inputs:
      num_modes :: integer
        Must be 3
      constraints :: list of (factors, product) tuples
        factors are (mode, component) pairs whose values must
        multiply to product. Default: the four GHZ relations.

    Returns: result
      result :: lhv.ParadoxResult object
        satisfiable, the lowest-index witness (or None), the number
        of satisfying assignments and the number checked (64).
    """
    if num_modes != 3:
        raise ValueError("The GHZ constraint system is stated for 3 modes, "
                         "got {0}.".format(num_modes))
    witness = None
    count = 0
    checked = 0
    for assignment in enumerate_assignments(num_modes):
        checked += 1
        if all(np.prod([assignment.value(mode, comp)
                        for mode, comp in factors]) == product
               for factors, product in constraints):
            count += 1
            if witness is None:
                witness = assignment
    logger.info("GHZ constraints: {0} of {1} assignments satisfy all {2} "
                "relations.".format(count, checked, len(constraints)))
    return ParadoxResult(satisfiable=count > 0, witness=witness,
                         count=count, checked=checked)


def drop_constraint(index, constraints=GHZ_CONSTRAINTS):
    return tuple(c for i, c in enumerate(constraints) if i != index)


def flip_constraint(index, constraints=GHZ_CONSTRAINTS):
    return tuple((factors, -product) if i == index else (factors, product)
                 for i, (factors, product) in enumerate(constraints))


def mermin_bound(num_modes):
    """
    |prod_m (+/-1 +/- i)| = 2^(N/2), the LHV upper bound on |Re prod|.
    """
    return 2.**(num_modes/2.)


@dataclass(frozen=True)
class MerminMaximum:
    max_value: float
    argmax: LhvAssignment
    lhv_bound: float
    checked: int


def _check_enum_range(num_modes):
    if int(num_modes) != num_modes or not 2 <= num_modes <= MAX_ENUM_MODES:
        raise ValueError(
            "Mermin enumeration needs 2 <= N <= {0}, got {1}.".format(
                MAX_ENUM_MODES, num_modes))


def _gaussian_products(num_modes):
    """
    Real and imaginary parts of prod_m (p_x[m] + i p_y[m]) for every
    assignment of num_modes modes, in index order.

    Inputs:
      num_modes :: integer
        Number of modes in this half of the system

    Returns: real, imag
      real, imag :: 4^num_modes arrays of int16
    """
    index = np.arange(4**num_modes, dtype=np.int32)
    real = np.ones(index.size, dtype=np.int16)
    imag = np.zeros(index.size, dtype=np.int16)
    for mode in range(num_modes):
        p_x = (1 - 2*((index >> (2*mode)) & 1)).astype(np.int16)
        p_y = (1 - 2*((index >> (2*mode + 1)) & 1)).astype(np.int16)
        real, imag = real*p_x - imag*p_y, real*p_y + imag*p_x
    return real, imag


def lhv_max_mermin(num_modes):
    """
    Exact maximum of |Re prod_m (p_x[m] + i p_y[m])| over all
    2^(2N) assignments. The products are Gaussian integers, so the
    enumeration is carried out in exact integer arithmetic.

    The modes are split into a low half (the least significant index
    bits) and a high half. The products of each half are tabulated
    once and Re(u v) = u_r v_r - u_i v_i is evaluated for blocks of
    high-half rows against the whole low-half table.

    Inputs:
      num_modes :: integer
        2 <= N <= 14

    Returns: result
      result :: lhv.MerminMaximum object
        The maximum, the lowest-index maximizing assignment, the
        bound 2^(N/2) and the number of assignments checked.
    """
    _check_enum_range(num_modes)
    low_modes = (num_modes + 1)//2
    low_real, low_imag = _gaussian_products(low_modes)
    high_real, high_imag = _gaussian_products(num_modes - low_modes)
    num_low = low_real.size
    best_value = -1
    best_index = 0
    # blocks ascend in the high index and the flattened block is
    # row-major, so the first maximum is the lowest assignment index
    for start in range(0, high_real.size, _ROW_BLOCK):
        stop = min(start + _ROW_BLOCK, high_real.size)
        magnitude = np.abs(
            high_real[start:stop, np.newaxis]*low_real[np.newaxis, :] -
            high_imag[start:stop, np.newaxis]*low_imag[np.newaxis, :])
        pos = int(np.argmax(magnitude))
        row, col = divmod(pos, num_low)
        if magnitude[row, col] > best_value:
            best_value = int(magnitude[row, col])
            best_index = ((start + row) << (2*low_modes)) | col
    total = 4**num_modes
    bound = mermin_bound(num_modes)
    if best_value < bound:
        logger.info("N={0}: LHV maximum {1} is below the bound {2:.6g}.".
                    format(num_modes, best_value, bound))
    return MerminMaximum(max_value=float(best_value),
                         argmax=LhvAssignment.from_index(best_index,
                                                         num_modes),
                         lhv_bound=bound, checked=total)


@dataclass(frozen=True)
class MerminGap:
    quantum: float
    lhv: float
    ratio: float
    lhv_bound: float
    bound_ratio: float
    eigen_residual: object


def quantum_vs_lhv_gap(num_modes, verify_dim=None, budget=SIZE_BUDGET):
    """
    Compare the quantum GHZ value 2^(N-1) of the Mermin operator with
    the enumerated LHV maximum.

    Inputs:
      num_modes :: integer
        2 <= N <= 14
      verify_dim :: integer or None
        If set and D^N fits the budget, check that |GHZ>_N is an
        eigenvector of the Mermin operator with eigenvalue -2^(N-1)
      budget :: integer
        Size budget for the verification

    Returns: gap
      gap :: lhv.MerminGap object
        quantum, lhv, their ratio, the bound 2^(N/2), the ratio
        2^(N/2-1) against that bound and the eigenvector residual
        (None if not verified).
    """
    _check_enum_range(num_modes)
    quantum = 2.**(num_modes-1)
    residual = None
    if verify_dim is not None:
        if verify_dim**num_modes <= budget:
            residual = mermin_eigen_residual(num_modes, verify_dim,
                                             budget=budget)
        else:
            logger.warning("Skipping Mermin eigenvector check: D^N = {0} "
                           "exceeds the size budget.".format(
                               verify_dim**num_modes))
    lhv = lhv_max_mermin(num_modes)
    bound = lhv.lhv_bound
    return MerminGap(quantum=quantum, lhv=lhv.max_value,
                     ratio=quantum/lhv.max_value, lhv_bound=bound,
                     bound_ratio=quantum/bound, eigen_residual=residual)
