#! /usr/bin/env python
# -*- coding: utf-8 -*-
"""
Parity Bell - bell.py

GNU Public License
http://www.gnu.org/licenses/

Parity Bell is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

Bell-CHSH and Mermin operators built from parity pseudospins.

Two modes:
    B_2 = (a_1.s) x [(a_2.s) + (a'_2.s)] + (a'_1.s) x [(a_2.s) - (a'_2.s)]
N modes:
    B_N = B_{N-1} x (a_N.s + a'_N.s)/2 + B'_{N-1} x (a_N.s - a'_N.s)/2
with B'_N the same expression under a_m <-> a'_m. Local realism
bounds |<B_N>| by 2, quantum mechanics by 2^((N+1)/2).

Mermin operator:
    A = [prod_m (s_mx + i s_my) + prod_m (s_mx - i s_my)]/2
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from .fock import (SIZE_BUDGET, SparseOperator, apply, check_budget,
                   identity, kron, operator_residual)
from .geometry import as_unit_vector, random_unit_vectors
from .pseudospin import build_pseudospin, dot_spin, dot_vector
from .states import GhzSpec, ghz_state

logger = logging.getLogger(__name__)

LOCAL_BOUND = 2.

# Relative slack allowed on the quantum bound
_BOUND_SLACK = 1e-9

_AXES = ('x', 'y', 'z')


def quantum_bound(num_modes):
    """
    Largest quantum value of |<B_N>|, 2^((N+1)/2).
    """
    return 2.**((num_modes+1)/2.)


class MeasurementSettings:
    """
    The pair of unit vectors (a_m, a'_m) for every mode m.
    """

    def __init__(self, pairs):
        """
        Inputs:
          pairs :: N-length list of (a, a') tuples
            Each a UnitVector3 or 3-sequence of unit norm. N >= 2.

        Returns: settings
          settings :: bell.MeasurementSettings object
        """
        pairs = [(as_unit_vector(a), as_unit_vector(ap))
                 for a, ap in pairs]
        if len(pairs) < 2:
            raise ValueError("Bell settings need at least 2 modes, got "
                             "{0}.".format(len(pairs)))
        self._pairs = tuple(pairs)

    @classmethod
    def from_array(cls, array):
        """
        Build settings from an (N, 2, 3) array.
        """
        array = np.asarray(array, dtype=float)
        if array.ndim != 3 or array.shape[1:] != (2, 3):
            raise ValueError("Settings array must have shape (N, 2, 3), "
                             "got {0}.".format(array.shape))
        return cls([(pair[0], pair[1]) for pair in array])

    @classmethod
    def from_vectors(cls, vectors):
        """
        Build settings from the flat list a_1, a'_1, a_2, a'_2, ...
        """
        vectors = list(vectors)
        if len(vectors) % 2:
            raise ValueError("Expected an even number of setting vectors, "
                             "got {0}.".format(len(vectors)))
        return cls(list(zip(vectors[0::2], vectors[1::2])))

    @property
    def pairs(self):
        return self._pairs

    @property
    def num_modes(self):
        return len(self._pairs)

    def swapped(self):
        """
        The settings with a_m <-> a'_m for every m.
        """
        return MeasurementSettings([(ap, a) for a, ap in self._pairs])

    def truncated(self, num_modes):
        return MeasurementSettings(self._pairs[:num_modes])

    def as_array(self):
        return np.array([[a.as_array(), ap.as_array()]
                         for a, ap in self._pairs])

    def to_list(self):
        """
        The flat list a_1, a'_1, a_2, ... of [x, y, z] lists.
        """
        return [list(vec) for pair in self._pairs for vec in pair]

    def __eq__(self, other):
        return (isinstance(other, MeasurementSettings) and
                other.pairs == self._pairs)

    def __repr__(self):
        return "MeasurementSettings(num_modes={0})".format(self.num_modes)


@dataclass(frozen=True)
class BellReport:
    n_modes: int
    value: float
    abs_value: float
    local_bound: float
    quantum_bound: float
    violation_factor: float
    violates_local: bool
    settings: MeasurementSettings = field(compare=False)


def bell_report(value, settings):
    """
    Package a Bell value with its bounds.

    Inputs:
      value :: scalar
        The signed value <B_N>
      settings :: bell.MeasurementSettings object

    Returns: report
      report :: bell.BellReport object
    """
    num_modes = settings.num_modes
    bound = quantum_bound(num_modes)
    if abs(value) > bound*(1. + _BOUND_SLACK):
        raise ValueError(
            "Bell value {0} exceeds the quantum bound {1} for N={2}.".
            format(value, bound, num_modes))
    return BellReport(n_modes=num_modes, value=float(value),
                      abs_value=float(abs(value)),
                      local_bound=LOCAL_BOUND, quantum_bound=bound,
                      violation_factor=float(value/LOCAL_BOUND),
                      violates_local=bool(abs(value) > LOCAL_BOUND),
                      settings=settings)


def _mode_operators(settings, spin):
    return [(dot_spin(a, spin), dot_spin(ap, spin))
            for a, ap in settings.pairs]


def _two_mode(first, first_p, second, second_p):
    return (kron([first, second + second_p]) +
            kron([first_p, second - second_p]))


def _extend(prev, prev_p, op, op_p, budget):
    return (kron([prev, 0.5*(op + op_p)], budget=budget) +
            kron([prev_p, 0.5*(op - op_p)], budget=budget))


def _bell_pair(settings, dim, budget):
    """
    Build B_N and B'_N together. B'_N is computed by the same
    arithmetic as B_N with every pair swapped, so swapping the
    settings swaps the two operators entry by entry.
    """
    check_budget(dim**settings.num_modes, budget, what='Bell operator')
    spin = build_pseudospin(dim)
    ops = _mode_operators(settings, spin)
    (a1, a1p), (a2, a2p) = ops[0], ops[1]
    bell = _two_mode(a1, a1p, a2, a2p)
    bell_p = _two_mode(a1p, a1, a2p, a2)
    for op, op_p in ops[2:]:
        bell, bell_p = (_extend(bell, bell_p, op, op_p, budget),
                        _extend(bell_p, bell, op_p, op, budget))
    return bell, bell_p


def bell_operator(settings, dim, budget=SIZE_BUDGET):
    """
    The N-mode Bell-CHSH operator B_N.

    Inputs:
      settings :: bell.MeasurementSettings object
      dim :: integer
        Per-mode truncation dimension (even)
      budget :: integer
        Size budget for D^N

    Returns: op
      op :: fock.SparseOperator object (Hermitian)
    """
    return _bell_pair(settings, dim, budget)[0]


def bell_operator_prime(settings, dim, budget=SIZE_BUDGET):
    """
    B'_N: B_N with a_m <-> a'_m for all m.
    """
    return _bell_pair(settings, dim, budget)[1]


def mermin_operator(num_modes, dim, budget=SIZE_BUDGET):
    """
    A = (K + K^+)/2 with K = (s_x + i s_y) x ... x (s_x + i s_y).

    Inputs:
      num_modes :: integer
        Number of modes N >= 2
      dim :: integer
        Per-mode truncation dimension (even)
      budget :: integer
        Size budget for D^N

    Returns: op
      op :: fock.SparseOperator object (Hermitian)
    """
    if int(num_modes) != num_modes or num_modes < 2:
        raise ValueError("The Mermin operator needs N >= 2, got {0}.".
                         format(num_modes))
    check_budget(dim**num_modes, budget, what='Mermin operator')
    spin = build_pseudospin(dim)
    raising = spin.sx + 1j*spin.sy
    product = kron([raising]*num_modes, budget=budget)
    return SparseOperator(0.5*(product.matrix + product.matrix.conj().T),
                          hermitian=True,
                          label='A{0}'.format(num_modes))


def mermin_eigen_residual(num_modes, dim, profile=None,
                          budget=SIZE_BUDGET):
    """
    ||A|GHZ>_N + 2^(N-1)|GHZ>_N||
    """
    state = ghz_state(GhzSpec(num_modes, dim, profile), budget=budget)
    image = apply(mermin_operator(num_modes, dim, budget=budget), state)
    return float(np.linalg.norm(image.amplitudes +
                                2.**(num_modes-1)*state.amplitudes))


@dataclass(frozen=True)
class GhzEigenResiduals:
    """
    Residuals of the four three-mode GHZ eigenvalue equations
    xxx = -1, xyy = yxy = yyx = +1.
    """
    xxx: float
    xyy: float
    yxy: float
    yyx: float

    @property
    def max(self):
        return max(self.xxx, self.xyy, self.yxy, self.yyx)


# (components, eigenvalue) of the three-mode perfect correlations
GHZ_EIGEN_EQUATIONS = (('xxx', -1), ('xyy', +1), ('yxy', +1), ('yyx', +1))


def ghz_eigen_check(state, dim):
    """
    Residual norms of s_1a s_2b s_3c |psi> - lambda |psi> for the
    four GHZ eigenvalue equations.

    Inputs:
      state :: fock.StateVector object
        A three-mode state
      dim :: integer
        Per-mode truncation dimension of the state

    Returns: residuals
      residuals :: bell.GhzEigenResiduals object
    """
    if state.num_modes != 3:
        raise ValueError("The GHZ eigenvalue check needs a 3-mode state, "
                         "got {0} modes.".format(state.num_modes))
    if state.dim != dim:
        raise ValueError("State dimension {0} does not match {1}.".format(
            state.dim, dim))
    spin = build_pseudospin(dim)
    residuals = {}
    for axes, eigenvalue in GHZ_EIGEN_EQUATIONS:
        op = kron([spin.component(axis) for axis in axes])
        image = apply(op, state)
        residuals[axes] = float(np.linalg.norm(
            image.amplitudes - eigenvalue*state.amplitudes))
    return GhzEigenResiduals(**residuals)


def bell_square_identity_check(settings, dim, budget=SIZE_BUDGET):
    """
    Frobenius residual between B_N^2 and its decomposition

      B_{N-1}^2 x (1 + a_N.a'_N)/2 + B'_{N-1}^2 x (1 - a_N.a'_N)/2
      + [B'_{N-1}, B_{N-1}] x (i/2) (a_N x a'_N).s_N

    The commutator ordering follows from (a.s)(b.s) = a.b + i(a x b).s.

    Inputs:
      settings :: bell.MeasurementSettings object
        N >= 3 modes
      dim :: integer
        Per-mode truncation dimension (even)

    Returns: residual
      residual :: scalar
    """
    num_modes = settings.num_modes
    if num_modes < 3:
        raise ValueError("The square identity relates N to N-1 and needs "
                         "N >= 3, got {0}.".format(num_modes))
    bell_n = bell_operator(settings, dim, budget=budget)
    prev, prev_p = _bell_pair(settings.truncated(num_modes-1), dim,
                              budget)
    spin = build_pseudospin(dim)
    a_last, ap_last = (vec.as_array() for vec in settings.pairs[-1])
    cosine = float(np.dot(a_last, ap_last))
    cross = np.cross(a_last, ap_last)
    one = identity(dim)
    rhs = (kron([prev @ prev, (0.5*(1. + cosine))*one], budget=budget) +
           kron([prev_p @ prev_p, (0.5*(1. - cosine))*one],
                budget=budget) +
           kron([prev_p @ prev - prev @ prev_p,
                 0.5j*dot_vector(cross, spin)], budget=budget))
    return operator_residual(bell_n @ bell_n, rhs)


def correlation_tensor(state):
    """
    T[mu_1, ..., mu_N] = <psi| s_mu1 x ... x s_muN |psi>, mu in x,y,z.
    Every correlation of pseudospin components, and <B_N>, is a
    multilinear contraction of T.

    Inputs:
      state :: fock.StateVector object
        A normalized N-mode state

    Returns: tensor
      tensor :: real array of shape (3,)*N
    """
    num_modes = state.num_modes
    dim = state.dim
    spin = build_pseudospin(dim)
    mats = [spin.component(axis).toarray() for axis in _AXES]
    psi = state.amplitudes.reshape((dim,)*num_modes)
    tensor = np.zeros((3,)*num_modes, dtype=complex)

    def descend(vec, mode, index):
        if mode == num_modes:
            tensor[index] = np.vdot(psi, vec)
            return
        for mu, mat in enumerate(mats):
            image = np.moveaxis(np.tensordot(mat, vec, axes=([1], [mode])),
                                0, mode)
            descend(image, mode+1, index + (mu,))

    descend(psi, 0, ())
    imag = np.max(np.abs(tensor.imag))
    if imag >= 1e-10:
        raise ValueError("Correlation tensor has imaginary part {0}; is "
                         "the state normalized?".format(imag))
    return tensor.real


def correlation(tensor, vectors):
    """
    E(a_1, ..., a_N) = <(a_1.s) x ... x (a_N.s)> from the tensor.
    """
    value = tensor
    for vec in vectors:
        value = np.tensordot(value, np.asarray(list(vec), dtype=float),
                             axes=([0], [0]))
    return float(value)


def bell_values(tensor, vectors):
    """
    <B_N> for a batch of settings.

    Inputs:
      tensor :: real array of shape (3,)*N
        From correlation_tensor()
      vectors :: (B, N, 2, 3) array of scalars
        Batched settings; need not be unit vectors (the value is
        linear in every a_m and every a'_m)

    Returns: values
      values :: B-length array of scalars
    """
    vectors = np.asarray(vectors, dtype=float)
    batch, num_modes = vectors.shape[:2]
    if tensor.ndim != num_modes:
        raise ValueError("Settings for {0} modes, tensor for {1}.".format(
            num_modes, tensor.ndim))
    flat = vectors[:, 0, 0, :]
    flat_p = vectors[:, 0, 1, :]
    for mode in range(1, num_modes):
        plus = 0.5*(vectors[:, mode, 0, :] + vectors[:, mode, 1, :])
        minus = 0.5*(vectors[:, mode, 0, :] - vectors[:, mode, 1, :])
        flat, flat_p = (
            (flat[:, :, None]*plus[:, None, :] +
             flat_p[:, :, None]*minus[:, None, :]).reshape(batch, -1),
            (flat_p[:, :, None]*plus[:, None, :] -
             flat[:, :, None]*minus[:, None, :]).reshape(batch, -1))
    # the two-mode operator is twice the recursion seeded at one mode
    return 2.*(flat @ tensor.ravel())


def bell_value(tensor, settings):
    return float(bell_values(tensor, settings.as_array()[None])[0])


def random_settings(rng, num_modes):
    """
    Settings with every a_m, a'_m drawn uniformly on the sphere.
    """
    vectors = random_unit_vectors(rng, 2*num_modes)
    return MeasurementSettings.from_array(vectors.reshape(num_modes, 2, 3))
