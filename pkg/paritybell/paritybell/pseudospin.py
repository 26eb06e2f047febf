#! /usr/bin/env python
# -*- coding: utf-8 -*-
"""
Parity Bell - pseudospin.py

GNU Public License
http://www.gnu.org/licenses/

Parity Bell is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

Parity pseudospin operators of a single light mode, their
rotations, and states of definite parity.

    s_z = sum_n |2n><2n| - |2n+1><2n+1|
    s_+ = sum_n |2n><2n+1| = (s_-)^+
    s_x = s_+ + s_-,    s_y = -i (s_+ - s_-)

At even truncation dimension the sums close, so the truncated
operators obey the Pauli algebra exactly.
"""

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .fock import (ModeSpace, SparseOperator, StateVector, apply,
                   entrywise_residual, identity, zero_operator)
from .geometry import (UNIT_TOL, UnitVector3, as_unit_vector,
                       vector_to_angles)

# Taylor terms used to cross-check the closed-form rotation
_SERIES_TERMS = 30

_X_AXIS = UnitVector3(1., 0., 0.)
_Y_AXIS = UnitVector3(0., 1., 0.)
_Z_AXIS = UnitVector3(0., 0., 1.)


class PseudospinSet:
    """
    The five pseudospin operators of one mode truncated to D levels.
    """

    def __init__(self, dim, sx, sy, sz, s_plus, s_minus):
        self.dim = dim
        self.sx = sx
        self.sy = sy
        self.sz = sz
        self.s_plus = s_plus
        self.s_minus = s_minus

    def component(self, axis):
        """
        Return s_x, s_y or s_z for axis 'x', 'y' or 'z'.
        """
        try:
            return {'x': self.sx, 'y': self.sy, 'z': self.sz}[axis]
        except KeyError:
            raise ValueError("Unknown pseudospin component {0!r}.".format(
                axis))

    def identity(self):
        return identity(self.dim, label='I{0}'.format(self.dim))


def build_pseudospin(dim):
    """
    Construct the parity pseudospin operators.

    Inputs:
      dim :: integer
        The truncation dimension D (even, >= 2). Odd D is rejected:
        the truncated algebra would not close.

    Returns: spin
      spin :: pseudospin.PseudospinSet object
    """
    if int(dim) != dim or dim < 2 or dim % 2:
        raise ValueError(
            "Pseudospin truncation dimension must be an even integer "
            ">= 2, got {0}.".format(dim))
    dim = int(dim)
    even = 2*np.arange(dim//2)
    s_plus = SparseOperator.from_entries(
        dim, [(n, n+1, 1.) for n in even], label='s+')
    s_minus = SparseOperator(s_plus.matrix.conj().T, label='s-')
    sx = SparseOperator(s_plus.matrix + s_minus.matrix, hermitian=True,
                        label='sx')
    sy = SparseOperator(-1j*(s_plus.matrix - s_minus.matrix),
                        hermitian=True, label='sy')
    parity = np.where(np.arange(dim) % 2 == 0, 1., -1.)
    sz = SparseOperator(sparse.diags(parity), hermitian=True, label='sz')
    return PseudospinSet(dim, sx, sy, sz, s_plus, s_minus)


def dot_vector(vec, spin):
    """
    v . s for any real 3-vector v. Hermitian.
    """
    vec = np.asarray(list(vec), dtype=float)
    if vec.shape != (3,):
        raise ValueError("Expected a 3-vector, got shape {0}.".format(
            vec.shape))
    matrix = (vec[0]*spin.sx.matrix + vec[1]*spin.sy.matrix +
              vec[2]*spin.sz.matrix)
    return SparseOperator(matrix, hermitian=True,
                          label='({0:.6g},{1:.6g},{2:.6g}).s'.format(*vec))


def dot_spin(vec, spin):
    """
    Compute a . s for a unit vector a. Its square is the identity,
    so its eigenvalues are +1 and -1.

    Inputs:
      vec :: UnitVector3 or 3-sequence
        Must have unit norm within 1e-9
      spin :: pseudospin.PseudospinSet object

    Returns: op
      op :: fock.SparseOperator object
    """
    if not isinstance(vec, UnitVector3):
        nrm = np.linalg.norm(np.asarray(list(vec), dtype=float))
        if abs(nrm - 1.) > UNIT_TOL:
            raise ValueError(
                "dot_spin needs a unit vector, got norm {0}.".format(nrm))
        vec = as_unit_vector(vec)
    return dot_vector(vec, spin)


@dataclass(frozen=True)
class RotationParams:
    """
    Rotation angle zeta (radians) about a unit axis.
    """
    zeta: float
    axis: UnitVector3

    def __post_init__(self):
        if not np.isfinite(self.zeta):
            raise ValueError("Rotation angle must be finite, got {0}.".
                             format(self.zeta))
        object.__setattr__(self, 'axis', as_unit_vector(self.axis))


def rotation(params, spin):
    """
    U = exp(-i zeta/2 n.s) = cos(zeta/2) I - i sin(zeta/2) n.s
    """
    half = 0.5*params.zeta
    n_dot_s = dot_spin(params.axis, spin)
    matrix = (np.cos(half)*spin.identity().matrix -
              1j*np.sin(half)*n_dot_s.matrix)
    return SparseOperator(matrix, label='U({0:.6g})'.format(params.zeta))


def rotation_series(params, spin, terms=_SERIES_TERMS):
    """
    exp(-i zeta/2 n.s) summed as a truncated Taylor series.
    """
    generator = (-0.5j*params.zeta)*dot_spin(params.axis, spin).matrix
    term = spin.identity().matrix
    total = term.copy()
    for k in range(1, terms):
        term = (term @ generator)/k
        total = total + term
    return SparseOperator(total, label='exp series')


class ParityProfile:
    """
    The coefficients {A_n} of a parity state. Normalized to unit
    norm on construction.
    """

    def __init__(self, coefficients):
        coefficients = np.array(coefficients, dtype=complex).ravel()
        if coefficients.size == 0:
            raise ValueError("A parity profile needs at least one "
                             "coefficient.")
        if not np.all(np.isfinite(coefficients)):
            raise ValueError("Parity profile has non-finite "
                             "coefficients.")
        nrm = np.linalg.norm(coefficients)
        if nrm == 0.:
            raise ValueError("Parity profile coefficients are all zero.")
        coefficients = coefficients/nrm
        coefficients.flags.writeable = False
        self._coefficients = coefficients

    @property
    def coefficients(self):
        return self._coefficients

    def __len__(self):
        return self._coefficients.size

    @classmethod
    def fock0(cls):
        return cls([1.])

    @classmethod
    def geometric(cls, q, length):
        """
        A_n proportional to q^n for n < length.
        """
        if length < 1:
            raise ValueError("Profile length must be >= 1.")
        return cls(float(q)**np.arange(length))

    @classmethod
    def uniform(cls, num):
        if num < 1:
            raise ValueError("Profile length must be >= 1.")
        return cls(np.ones(num))

    @classmethod
    def random(cls, rng, length):
        """
        Random complex Gaussian coefficients.
        """
        return cls(rng.normal(size=length) + 1j*rng.normal(size=length))

    @classmethod
    def parse(cls, text, dim):
        """
        Parse 'fock0', 'geometric:q' or 'uniform:M'. Geometric
        profiles fill all dim/2 levels of each parity.
        """
        name, _, arg = text.strip().partition(':')
        try:
            if name == 'fock0' and not arg:
                return cls.fock0()
            if name == 'geometric':
                return cls.geometric(float(arg), dim//2)
            if name == 'uniform':
                return cls.uniform(int(arg))
        except ValueError:
            pass
        raise ValueError(
            "Unknown parity profile {0!r}; expected fock0, geometric:q or "
            "uniform:M.".format(text))

    def __repr__(self):
        return "ParityProfile(length={0})".format(len(self))


def _parity_sign(parity):
    if parity in ('+', 1, +1):
        return 1
    if parity in ('-', -1):
        return -1
    raise ValueError("Parity must be '+' or '-', got {0!r}.".format(parity))


def parity_state(profile, parity, dim):
    """
    |+> = sum_n A_n |2n>,  |-> = sum_n A_n |2n+1>

    Inputs:
      profile :: pseudospin.ParityProfile object
        At most dim/2 coefficients
      parity :: '+' or '-'
      dim :: integer
        The truncation dimension (even)

    Returns: state
      state :: fock.StateVector object
        A single-mode state
    """
    space = ModeSpace(1, dim)
    if len(profile) > dim//2:
        raise ValueError(
            "Parity profile of length {0} does not fit dimension {1}.".
            format(len(profile), dim))
    offset = 0 if _parity_sign(parity) > 0 else 1
    amplitudes = np.zeros(dim, dtype=complex)
    amplitudes[offset:2*len(profile):2] = profile.coefficients
    return StateVector(space, amplitudes)


def spin_eigenstate(axis, sign, profile, spin):
    """
    Eigenstate of n.s with eigenvalue sign, obtained by rotating the
    parity state |+> (sign +1) or |-> (sign -1):
    U_z(phi) U_y(theta) |+/->, with (theta, phi) the angles of n.
    """
    theta, phi = vector_to_angles(axis)
    u_y = rotation(RotationParams(theta, _Y_AXIS), spin)
    u_z = rotation(RotationParams(phi, _Z_AXIS), spin)
    state = parity_state(profile, '+' if _parity_sign(sign) > 0 else '-',
                         spin.dim)
    return apply(u_z @ u_y, state)


def algebra_residuals(spin):
    """
    Largest entrywise deviation of each spin-1/2 algebra relation.

    Inputs:
      spin :: pseudospin.PseudospinSet object

    Returns: residuals
      residuals :: dictionary
        relation name -> max |entry| of (left side - right side)
    """
    sx, sy, sz = spin.sx, spin.sy, spin.sz
    s_plus, s_minus = spin.s_plus, spin.s_minus
    one = spin.identity()
    zero = zero_operator(spin.dim)
    relations = {
        'sx_squared': (sx @ sx, one),
        'sy_squared': (sy @ sy, one),
        'sz_squared': (sz @ sz, one),
        'anticommutator_xy': (sx @ sy + sy @ sx, zero),
        'anticommutator_yz': (sy @ sz + sz @ sy, zero),
        'anticommutator_zx': (sz @ sx + sx @ sz, zero),
        'commutator_xy': (sx @ sy - sy @ sx, 2j*sz),
        'commutator_yz': (sy @ sz - sz @ sy, 2j*sx),
        'commutator_zx': (sz @ sx - sx @ sz, 2j*sy),
        'commutator_z_plus': (sz @ s_plus - s_plus @ sz, 2.*s_plus),
        'commutator_z_minus': (sz @ s_minus - s_minus @ sz, -2.*s_minus),
        'commutator_plus_minus': (s_plus @ s_minus - s_minus @ s_plus, sz),
        'minus_is_adjoint': (s_minus, s_plus.adjoint()),
    }
    return {name: entrywise_residual(left, right)
            for name, (left, right) in relations.items()}
