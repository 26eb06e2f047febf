#! /usr/bin/env python
# -*- coding: utf-8 -*-
"""
Parity Bell - geometry.py

GNU Public License
http://www.gnu.org/licenses/

Parity Bell is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

Unit vectors on the sphere: construction, polar/azimuth angle
parameterization, planar parameterization and uniform sampling.
"""

from dataclasses import dataclass

import numpy as np

# Accepted deviation of |v| from one before renormalization
UNIT_TOL = 1e-9

# Supported planes for planar settings
PLANES = ('xy', 'xz')


@dataclass(frozen=True)
class UnitVector3:
    """
    A direction in three dimensions. Components passed in are
    checked against UNIT_TOL and then normalized to rounding.
    """
    x: float
    y: float
    z: float

    def __post_init__(self):
        vec = np.array([self.x, self.y, self.z], dtype=float)
        if not np.all(np.isfinite(vec)):
            raise ValueError("Unit vector has non-finite components: "
                             "{0}".format(vec))
        nrm = np.linalg.norm(vec)
        if abs(nrm - 1.) > UNIT_TOL:
            raise ValueError("Vector {0} is not a unit vector (norm {1}).".
                             format(vec, nrm))
        # idempotent: vectors already normalized to rounding are kept
        if abs(nrm - 1.) > 4.*np.finfo(float).eps:
            vec = vec/nrm
        object.__setattr__(self, 'x', float(vec[0]))
        object.__setattr__(self, 'y', float(vec[1]))
        object.__setattr__(self, 'z', float(vec[2]))

    @classmethod
    def normalized(cls, vec):
        """
        Build a unit vector pointing along any non-zero 3-vector.
        """
        vec = np.asarray(vec, dtype=float)
        nrm = np.linalg.norm(vec)
        if nrm == 0.:
            raise ValueError("Cannot normalize the zero vector.")
        return cls(*(vec/nrm))

    def as_array(self):
        return np.array([self.x, self.y, self.z])

    def __iter__(self):
        return iter((self.x, self.y, self.z))


def as_unit_vector(vec):
    """
    Convert a UnitVector3 or a 3-sequence to UnitVector3.
    """
    if isinstance(vec, UnitVector3):
        return vec
    vec = np.asarray(vec, dtype=float)
    if vec.shape != (3,):
        raise ValueError("Expected a 3-vector, got shape {0}.".format(
            vec.shape))
    return UnitVector3(*vec)


def angles_to_array(theta, phi):
    """
    Convert polar and azimuth angles to unit vectors.

    Inputs:
      theta :: array of scalars
        Polar angles (radians)
      phi :: array of scalars
        Azimuth angles (radians), same shape as theta

    Returns: vectors
      vectors :: array of scalars, shape theta.shape + (3,)
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    sin_theta = np.sin(theta)
    return np.stack((sin_theta*np.cos(phi), sin_theta*np.sin(phi),
                     np.cos(theta)), axis=-1)


def angles_to_vector(theta, phi):
    return UnitVector3(*angles_to_array(theta, phi))


def vector_to_angles(vec):
    """
    Inverse of angles_to_vector.

    Inputs:
      vec :: UnitVector3 or 3-sequence

    Returns: theta, phi
      theta :: scalar
        Polar angle in [0, pi]
      phi :: scalar
        Azimuth angle in [0, 2pi)
    """
    x, y, z = as_unit_vector(vec)
    theta = float(np.arccos(np.clip(z, -1., 1.)))
    phi = float(np.mod(np.arctan2(y, x), 2.*np.pi))
    return theta, phi


def check_plane(plane):
    """
    Normalize a plane name: None or 'none' means unconstrained.
    """
    if plane is None or plane == 'none':
        return None
    if plane not in PLANES:
        raise ValueError("Unknown plane {0!r}; expected one of {1} or "
                         "'none'.".format(plane, PLANES))
    return plane


def planar_array(angle, plane):
    """
    Unit vectors in a coordinate plane. In the xy plane the angle is
    the azimuth from x toward y; in the xz plane it is measured from
    z toward x.

    Inputs:
      angle :: array of scalars (radians)
      plane :: string
        'xy' or 'xz'

    Returns: vectors
      vectors :: array of scalars, shape angle.shape + (3,)
    """
    angle = np.asarray(angle, dtype=float)
    zero = np.zeros_like(angle)
    if check_plane(plane) == 'xy':
        return np.stack((np.cos(angle), np.sin(angle), zero), axis=-1)
    if plane == 'xz':
        return np.stack((np.sin(angle), zero, np.cos(angle)), axis=-1)
    raise ValueError("A planar vector needs a plane, got {0!r}.".format(
        plane))


def planar_vector(angle, plane):
    return UnitVector3(*planar_array(angle, plane))


def planar_angle(vec, plane):
    """
    Inverse of planar_vector. The out-of-plane component is ignored.
    """
    x, y, z = as_unit_vector(vec)
    if check_plane(plane) == 'xy':
        return float(np.mod(np.arctan2(y, x), 2.*np.pi))
    if plane == 'xz':
        return float(np.mod(np.arctan2(x, z), 2.*np.pi))
    raise ValueError("A planar angle needs a plane, got {0!r}.".format(
        plane))


def random_unit_vectors(rng, num):
    """
    Draw unit vectors uniformly on the sphere (normalized Gaussian
    triplets, so there is no clustering at the poles).

    Inputs:
      rng :: numpy.random.Generator object
      num :: integer
        Number of vectors

    Returns: vectors
      vectors :: (num, 3) array of scalars
    """
    vectors = rng.normal(size=(num, 3))
    norms = np.linalg.norm(vectors, axis=1)
    # a zero-length draw has probability zero
    return vectors/norms[:, np.newaxis]


def rotate_about_z(vec, alpha):
    """
    Rotate a unit vector by alpha (radians) about the z axis.
    """
    x, y, z = as_unit_vector(vec)
    cos_alpha = np.cos(alpha)
    sin_alpha = np.sin(alpha)
    return UnitVector3(cos_alpha*x - sin_alpha*y,
                       sin_alpha*x + cos_alpha*y, z)


def planar_grid(resolution):
    """
    Equally spaced angles k*resolution covering [0, 2pi).

    Inputs:
      resolution :: scalar
        The grid spacing (radians), > 0

    Returns: angles
      angles :: array of scalars
    """
    if not resolution > 0.:
        raise ValueError("Grid resolution must be positive, got {0}.".
                         format(resolution))
    num = int(np.floor(2.*np.pi/resolution + 1e-9))
    num = max(num, 1)
    return resolution*np.arange(num)
