#! /usr/bin/env python
# -*- coding: utf-8 -*-
"""
Parity Bell - fock.py

GNU Public License
http://www.gnu.org/licenses/

Parity Bell is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

Minimal complex linear algebra over truncated multi-mode Fock
spaces: state vectors, sparse operators, Kronecker products,
operator application, expectation values and spectral radius.

Basis ordering: mode 1 is the most significant digit, i.e. the
index of |n_1, n_2, ..., n_N> is n_1*D^(N-1) + ... + n_N.
"""

import logging
from dataclasses import dataclass
from functools import reduce

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as splinalg

logger = logging.getLogger(__name__)

# Largest accepted state vector length D^N
SIZE_BUDGET = 2**20

# Tolerances for expectation values
_NORM_TOL = 1e-9
_IMAG_TOL = 1e-10


class BudgetError(Exception):
    """
    Exception raised when a space, operator or grid exceeds the
    configured size budget.
    """

    def __init__(self, message):
        super(BudgetError, self).__init__(message)
        self.explain = message


class ConvergenceError(Exception):
    """
    Exception in case of failure to converge
    """

    def __init__(self, message):
        super(ConvergenceError, self).__init__(message)
        self.explain = message


def check_budget(size, budget=SIZE_BUDGET, what='State vector'):
    """
    Raise BudgetError if size exceeds budget.

    Inputs:
      size :: integer
        The requested number of entries
      budget :: integer
        The largest allowed number of entries
      what :: string
        A description used in the error message

    Returns: Nothing
    """
    if size > budget:
        raise BudgetError(
            "{0} size {1} exceeds the size budget {2}.".format(
                what, size, budget))


class ModeSpace:
    """
    An N-mode Fock space with every mode truncated to D levels.
    """

    def __init__(self, num_modes, dim, budget=SIZE_BUDGET):
        """
        Create a new ModeSpace.

        Inputs:
          num_modes :: integer
            The number of modes N (>= 1)
          dim :: integer
            The per-mode truncation dimension D (even, >= 2)
          budget :: integer
            The largest allowed total dimension D^N

        Returns: space
          space :: fock.ModeSpace object
        """
        if int(num_modes) != num_modes or num_modes < 1:
            raise ValueError(
                "Number of modes must be a positive integer, got {0}.".
                format(num_modes))
        if int(dim) != dim or dim < 2 or dim % 2:
            raise ValueError(
                "Truncation dimension must be an even integer >= 2, "
                "got {0}.".format(dim))
        self._num_modes = int(num_modes)
        self._dim = int(dim)
        self._budget = int(budget)
        check_budget(self.total_dim, self._budget)

    @property
    def num_modes(self):
        return self._num_modes

    @property
    def dim(self):
        return self._dim

    @property
    def budget(self):
        return self._budget

    @property
    def total_dim(self):
        return self._dim**self._num_modes

    def __eq__(self, other):
        return (isinstance(other, ModeSpace) and
                other.num_modes == self.num_modes and
                other.dim == self.dim)

    def __hash__(self):
        return hash((self._num_modes, self._dim))

    def __repr__(self):
        return "ModeSpace(num_modes={0}, dim={1})".format(
            self._num_modes, self._dim)


class StateVector:
    """
    A complex amplitude vector over a ModeSpace. Immutable.
    """

    def __init__(self, space, amplitudes):
        """
        Inputs:
          space :: fock.ModeSpace object
          amplitudes :: D^N-length array of complex scalars

        Returns: state
          state :: fock.StateVector object
        """
        amplitudes = np.array(amplitudes, dtype=complex)
        if amplitudes.ndim != 1 or amplitudes.size != space.total_dim:
            raise ValueError(
                "Amplitude vector has shape {0}, expected ({1},) for {2}.".
                format(amplitudes.shape, space.total_dim, space))
        amplitudes.flags.writeable = False
        self._space = space
        self._amplitudes = amplitudes

    @property
    def space(self):
        return self._space

    @property
    def amplitudes(self):
        return self._amplitudes

    @property
    def num_modes(self):
        return self._space.num_modes

    @property
    def dim(self):
        return self._space.dim

    def norm(self):
        return float(np.linalg.norm(self._amplitudes))

    def normalize(self):
        """
        Return a unit-norm copy of this state.
        """
        nrm = self.norm()
        if nrm == 0.:
            raise ValueError("Cannot normalize the zero vector.")
        return StateVector(self._space, self._amplitudes/nrm)

    def inner(self, other):
        """
        Return <self|other>.
        """
        if other.space != self._space:
            raise ValueError(
                "Inner product between {0} and {1}.".format(
                    self._space, other.space))
        return complex(np.vdot(self._amplitudes, other.amplitudes))

    def tensor(self, other):
        """
        Return self (x) other. The modes of self come first.
        """
        if other.dim != self.dim:
            raise ValueError(
                "Tensor product of spaces with dimensions {0} and {1}.".
                format(self.dim, other.dim))
        space = ModeSpace(self.num_modes + other.num_modes, self.dim,
                          budget=self._space.budget)
        return StateVector(space, np.kron(self._amplitudes,
                                          other.amplitudes))

    def __repr__(self):
        return "StateVector({0}, norm={1:.6g})".format(
            self._space, self.norm())


def basis_state(space, levels):
    """
    The Fock basis state |n_1, ..., n_N>.

    Inputs:
      space :: fock.ModeSpace object
      levels :: N-length list of integers
        The photon number of each mode, mode 1 first

    Returns: state
      state :: fock.StateVector object
    """
    if len(levels) != space.num_modes:
        raise ValueError("Expected {0} levels, got {1}.".format(
            space.num_modes, len(levels)))
    index = 0
    for level in levels:
        if not 0 <= level < space.dim:
            raise ValueError("Level {0} outside [0, {1}).".format(
                level, space.dim))
        index = index*space.dim + level
    amplitudes = np.zeros(space.total_dim, dtype=complex)
    amplitudes[index] = 1.
    return StateVector(space, amplitudes)


def product_state(vectors):
    """
    Tensor product of single- or multi-mode states, first factor
    most significant.
    """
    if not vectors:
        raise ValueError("product_state needs at least one factor.")
    return reduce(lambda u, v: u.tensor(v), vectors)


def _is_exactly_hermitian(matrix):
    diff = matrix - matrix.conj().T
    diff.eliminate_zeros()
    return diff.nnz == 0


class SparseOperator:
    """
    A square sparse complex matrix in canonical CSR form, with a
    Hermitian flag and a free-text provenance label. Operators are
    immutable: the arithmetic below always returns new objects.
    """

    # numpy scalars defer to __rmul__
    __array_ufunc__ = None

    def __init__(self, matrix, hermitian=False, label=''):
        """
        Inputs:
          matrix :: scipy.sparse matrix or 2D array
            The (dim, dim) matrix. It is copied.
          hermitian :: boolean
            If True, entry(c,r) must equal conj(entry(r,c)) exactly
          label :: string
            Where this operator came from

        Returns: op
          op :: fock.SparseOperator object
        """
        matrix = sparse.csr_matrix(matrix, dtype=complex, copy=True)
        if matrix.shape[0] != matrix.shape[1]:
            raise ValueError("Operator {0} is not square: {1}".format(
                label, matrix.shape))
        matrix.sum_duplicates()
        matrix.eliminate_zeros()
        matrix.sort_indices()
        if hermitian and not _is_exactly_hermitian(matrix):
            raise ValueError(
                "Operator {0} is flagged Hermitian but is not.".format(
                    label))
        self._matrix = matrix
        self._hermitian = bool(hermitian)
        self._label = label

    @classmethod
    def from_entries(cls, dim, entries, hermitian=False, label=''):
        """
        Build an operator from (row, col, value) triplets. Duplicate
        coordinates are summed.
        """
        if entries:
            rows, cols, vals = zip(*entries)
        else:
            rows, cols, vals = (), (), ()
        rows = np.asarray(rows, dtype=int)
        cols = np.asarray(cols, dtype=int)
        if np.any(rows < 0) or np.any(rows >= dim) or \
                np.any(cols < 0) or np.any(cols >= dim):
            raise ValueError(
                "Entry coordinates outside [0, {0}) for {1}.".format(
                    dim, label))
        matrix = sparse.coo_matrix(
            (np.asarray(vals, dtype=complex), (rows, cols)),
            shape=(dim, dim))
        return cls(matrix, hermitian=hermitian, label=label)

    @property
    def dim(self):
        return self._matrix.shape[0]

    @property
    def matrix(self):
        """
        The underlying CSR matrix. Do not modify it in place.
        """
        return self._matrix

    @property
    def hermitian(self):
        return self._hermitian

    @property
    def label(self):
        return self._label

    @property
    def nnz(self):
        return self._matrix.nnz

    def entries(self):
        """
        Return the canonical (row, col, value) triplets, row-major.
        """
        coo = self._matrix.tocoo()
        return [(int(r), int(c), complex(v))
                for r, c, v in zip(coo.row, coo.col, coo.data)]

    def toarray(self):
        return self._matrix.toarray()

    def adjoint(self):
        return SparseOperator(self._matrix.conj().T,
                              hermitian=self._hermitian,
                              label="({0})^+".format(self._label))

    def _check_dim(self, other):
        if other.dim != self.dim:
            raise ValueError(
                "Operator dimension mismatch: {0} vs {1}.".format(
                    self.dim, other.dim))

    def __add__(self, other):
        self._check_dim(other)
        return SparseOperator(self._matrix + other.matrix,
                              hermitian=self._hermitian and other.hermitian,
                              label="{0} + {1}".format(self._label,
                                                       other.label))

    def __sub__(self, other):
        self._check_dim(other)
        return SparseOperator(self._matrix - other.matrix,
                              hermitian=self._hermitian and other.hermitian,
                              label="{0} - {1}".format(self._label,
                                                       other.label))

    def __neg__(self):
        return SparseOperator(-self._matrix, hermitian=self._hermitian,
                              label="-{0}".format(self._label))

    def __mul__(self, scalar):
        scalar = complex(scalar)
        hermitian = self._hermitian and scalar.imag == 0.
        if hermitian:
            scalar = scalar.real
        return SparseOperator(scalar*self._matrix, hermitian=hermitian,
                              label="{0}*{1}".format(scalar, self._label))

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._check_dim(other)
        return SparseOperator(self._matrix @ other.matrix,
                              label="{0} {1}".format(self._label,
                                                     other.label))

    def __repr__(self):
        return "SparseOperator(dim={0}, nnz={1}, hermitian={2}, " \
            "label={3!r})".format(self.dim, self.nnz, self._hermitian,
                                  self._label)


def identity(dim, label='I'):
    return SparseOperator(sparse.identity(dim, dtype=complex,
                                          format='csr'),
                          hermitian=True, label=label)


def zero_operator(dim):
    return SparseOperator(sparse.csr_matrix((dim, dim), dtype=complex),
                          hermitian=True, label='0')


def kron(factors, budget=SIZE_BUDGET):
    """
    Kronecker product of operators, first factor most significant
    (matching the StateVector basis ordering).

    Inputs:
      factors :: list of fock.SparseOperator objects
        At least one square operator
      budget :: integer
        The largest allowed product dimension

    Returns: op
      op :: fock.SparseOperator object
        Hermitian flag is the AND of the factor flags.
    """
    if not factors:
        raise ValueError("kron needs at least one factor.")
    check_budget(int(np.prod([f.dim for f in factors])), budget,
                 what='Kronecker product')
    matrix = factors[0].matrix
    for factor in factors[1:]:
        matrix = sparse.kron(matrix, factor.matrix, format='csr')
    return SparseOperator(matrix,
                          hermitian=all(f.hermitian for f in factors),
                          label=' ⊗ '.join(f.label for f in factors))


def apply(op, state):
    """
    Return op|state>. The input state is unchanged.
    """
    if op.dim != state.space.total_dim:
        raise ValueError(
            "Operator dimension {0} does not match state length {1}.".
            format(op.dim, state.space.total_dim))
    return StateVector(state.space, op.matrix @ state.amplitudes)


def expectation(op, state):
    """
    Compute <state|op|state> for a Hermitian operator and a
    normalized state.

    Inputs:
      op :: fock.SparseOperator object
        Must be flagged Hermitian
      state :: fock.StateVector object
        Norm must be within 1e-9 of one

    Returns: value
      value :: scalar
        The real expectation value. The imaginary residue of the
        raw inner product (< 1e-10) is discarded.
    """
    if not op.hermitian:
        raise ValueError(
            "Expectation requires a Hermitian operator, got {0!r}.".
            format(op.label))
    nrm = state.norm()
    if abs(nrm - 1.) > _NORM_TOL:
        raise ValueError(
            "Expectation requires a normalized state, norm is {0}.".
            format(nrm))
    if op.dim != state.space.total_dim:
        raise ValueError(
            "Operator dimension {0} does not match state length {1}.".
            format(op.dim, state.space.total_dim))
    amps = state.amplitudes
    raw = np.vdot(amps, op.matrix @ amps)
    if abs(raw.imag) >= _IMAG_TOL:
        raise ValueError(
            "Expectation of {0!r} has imaginary part {1}.".format(
                op.label, raw.imag))
    return float(raw.real)


@dataclass(frozen=True)
class SpectralRadius:
    value: float
    iterations: int
    converged: bool


def spectral_radius(op, tol=1e-12, max_iter=10000, seed=0, strict=False):
    """
    Largest |eigenvalue| of a Hermitian operator via power
    iteration. The estimate ||A v|| (with ||v|| = 1) is non-decreasing
    and bounded by the spectral radius, so even an unconverged
    estimate never overshoots.

    Inputs:
      op :: fock.SparseOperator object
        Must be flagged Hermitian
      tol :: scalar
        Relative change between iterates required to stop
      max_iter :: integer
        Maximum number of iterations
      seed :: integer
        Seed of the random complex starting vector
      strict :: boolean
        If True, raise ConvergenceError instead of returning an
        unconverged result

    Returns: result
      result :: fock.SpectralRadius object
        The last estimate, the iteration count and whether the
        tolerance was reached.
    """
    if not op.hermitian:
        raise ValueError(
            "Spectral radius requires a Hermitian operator, got {0!r}.".
            format(op.label))
    rng = np.random.default_rng(seed)
    vec = rng.normal(size=op.dim) + 1j*rng.normal(size=op.dim)
    vec /= np.linalg.norm(vec)
    estimate = 0.
    for iteration in range(1, max_iter+1):
        image = op.matrix @ vec
        new_estimate = float(np.linalg.norm(image))
        if new_estimate == 0.:
            return SpectralRadius(0., iteration, True)
        vec = image/new_estimate
        if abs(new_estimate - estimate) <= tol*new_estimate:
            return SpectralRadius(new_estimate, iteration, True)
        estimate = new_estimate
    message = ("Power iteration on {0!r} did not converge in {1} "
               "iterations (last estimate {2}).".format(
                   op.label, max_iter, estimate))
    if strict:
        raise ConvergenceError(message)
    logger.warning(message)
    return SpectralRadius(estimate, max_iter, False)


def operator_residual(op1, op2):
    """
    Frobenius norm of op1 - op2.
    """
    op1._check_dim(op2)
    diff = op1.matrix - op2.matrix
    if diff.nnz == 0:
        return 0.
    return float(splinalg.norm(diff))


def entrywise_residual(op1, op2):
    """
    Largest |entry| of op1 - op2.
    """
    op1._check_dim(op2)
    diff = op1.matrix - op2.matrix
    diff.eliminate_zeros()
    if diff.nnz == 0:
        return 0.
    return float(np.max(np.abs(diff.data)))
