import numpy as np
import pytest
from hypothesis import given, strategies as st

from paritybell.geometry import (UnitVector3, angles_to_vector, as_unit_vector,
                                 check_plane, planar_angle, planar_array,
                                 planar_grid, planar_vector,
                                 random_unit_vectors, rotate_about_z,
                                 vector_to_angles)

st_theta = st.floats(min_value=0.01, max_value=np.pi - 0.01)
st_phi = st.floats(min_value=0., max_value=2.*np.pi - 0.01)
st_angle = st.floats(min_value=0., max_value=2.*np.pi - 0.01)


def test_unit_vector_validation():
    with pytest.raises(ValueError):
        UnitVector3(1., 1., 0.)
    with pytest.raises(ValueError):
        UnitVector3(np.nan, 0., 0.)
    vec = UnitVector3(1. + 1e-10, 0., 0.)
    assert vec.x == 1.
    assert UnitVector3.normalized([0., 3., 4.]) == UnitVector3(0., 0.6, 0.8)
    with pytest.raises(ValueError):
        UnitVector3.normalized([0., 0., 0.])
    with pytest.raises(ValueError):
        as_unit_vector([1., 0.])


@given(theta=st_theta, phi=st_phi)
def test_angle_round_trip(theta, phi):
    vec = angles_to_vector(theta, phi)
    back_theta, back_phi = vector_to_angles(vec)
    assert back_theta == pytest.approx(theta, abs=1e-9)
    assert back_phi == pytest.approx(phi, abs=1e-9)
    again = angles_to_vector(back_theta, back_phi)
    assert np.allclose(again.as_array(), vec.as_array(), atol=1e-12)


@given(angle=st_angle, plane=st.sampled_from(['xy', 'xz']))
def test_planar_round_trip(angle, plane):
    vec = planar_vector(angle, plane)
    assert planar_angle(vec, plane) == pytest.approx(angle, abs=1e-9)


def test_planar_conventions():
    assert np.allclose(planar_array(0., 'xy'), [1., 0., 0.])
    assert np.allclose(planar_array(np.pi/2, 'xy'), [0., 1., 0.])
    assert np.allclose(planar_array(0., 'xz'), [0., 0., 1.])
    assert np.allclose(planar_array(np.pi/2, 'xz'), [1., 0., 0.])
    assert planar_array(np.zeros((3, 2)), 'xy').shape == (3, 2, 3)
    with pytest.raises(ValueError):
        planar_array(0., None)


def test_check_plane():
    assert check_plane(None) is None
    assert check_plane('none') is None
    assert check_plane('xz') == 'xz'
    with pytest.raises(ValueError):
        check_plane('yz')


def test_planar_grid():
    assert np.allclose(planar_grid(np.pi/2), [0., np.pi/2, np.pi,
                                              1.5*np.pi])
    assert planar_grid(np.deg2rad(1.)).size == 360
    assert planar_grid(10.).size == 1
    with pytest.raises(ValueError):
        planar_grid(0.)


def test_random_unit_vectors(rng):
    vectors = random_unit_vectors(rng, 500)
    assert vectors.shape == (500, 3)
    assert np.allclose(np.linalg.norm(vectors, axis=1), 1.)
    # no clustering at the poles: |z| is uniform on [0, 1]
    assert abs(np.mean(np.abs(vectors[:, 2])) - 0.5) < 0.05


def test_rotate_about_z():
    vec = rotate_about_z((1., 0., 0.), np.pi/2)
    assert np.allclose(vec.as_array(), [0., 1., 0.])
    tilted = angles_to_vector(0.3, 1.1)
    turned = rotate_about_z(tilted, 0.4)
    assert vector_to_angles(turned)[1] == pytest.approx(1.5)
    assert turned.z == pytest.approx(tilted.z)


def test_unit_vector_round_trip_is_exact(rng):
    for row in random_unit_vectors(rng, 50):
        vec = as_unit_vector(row)
        assert as_unit_vector(list(vec)) == vec
