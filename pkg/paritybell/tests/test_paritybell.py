import json
import logging

import numpy as np
import pytest

from paritybell import paritybell
from paritybell.optimizer import OptimizerConfig, closed_form_nopa_chsh


def test_algebra_check():
    document = paritybell.algebra_check(8)
    assert document['pass']
    assert document['dim'] == 8
    assert document['max_residual'] < paritybell.ALGEBRA_TOL
    assert 'residual_commutator_plus_minus' in document


def test_ghz_eigen():
    document = paritybell.ghz_eigen(4, random_profiles=3, seed=1)
    assert document['pass']
    assert document['profiles_checked'] == 4
    assert [row['profile'] for row in document['rows']] == \
        ['given', 'random_0', 'random_1', 'random_2']
    assert set(document['rows'][0]) == {'profile', 'residual_xxx',
                                        'residual_xyy', 'residual_yxy',
                                        'residual_yyx'}


def test_paradox():
    document = paritybell.paradox()
    assert document['pass']
    assert not document['satisfiable']
    assert document['assignments_checked'] == 64
    assert document['satisfying_assignments'] == 0
    rows = document['rows']
    assert [row['dropped_constraint'] for row in rows] == \
        ['xxx', 'xyy', 'yxy', 'yyx']
    assert all(row['satisfying_assignments'] == 8 for row in rows)
    assert rows[0]['witness_p_x'] == [1, 1, 1]
    assert rows[0]['witness_p_y'] == [1, 1, 1]


def test_mermin_gap():
    document = paritybell.mermin_gap(5, 4)
    assert document['pass']
    assert [row['ratio'] for row in document['rows']] == [1., 2., 2., 4.]
    assert [row['lhv'] for row in document['rows']] == [2., 2., 4., 4.]
    assert all(row['eigen_residual'] < paritybell.EIGEN_TOL
               for row in document['rows'])
    with pytest.raises(ValueError):
        paritybell.mermin_gap(1, 4)


def test_mermin_gap_skips_large_verification():
    document = paritybell.mermin_gap(6, 16)
    assert document['pass']
    assert document['rows'][-1]['eigen_residual'] is None
    assert document['rows'][-1]['ratio'] == 4.


def test_chsh_with_settings(chsh_settings):
    document = paritybell.chsh('ghz', 2, 4, settings=chsh_settings)
    assert document['method'] == 'settings'
    assert document['value'] == pytest.approx(2.*np.sqrt(2.), abs=1e-12)
    assert document['violates_local']
    assert document['pass']
    assert document['settings'] == chsh_settings.to_list()


def test_chsh_optimize_ghz():
    document = paritybell.chsh('ghz', 3, 4,
                               cfg=OptimizerConfig(restarts=4))
    assert document['method'] == 'optimize'
    assert document['pass']
    assert document['abs_value'] == pytest.approx(4., abs=1e-6)
    assert len(document['settings']) == 6


def test_chsh_grid():
    cfg = OptimizerConfig(plane_constraint='xz')
    document = paritybell.chsh('ghz', 2, 4, cfg=cfg, grid_degrees=45.)
    assert document['method'] == 'grid'
    assert document['abs_value'] == pytest.approx(2.*np.sqrt(2.),
                                                  abs=1e-12)
    assert document['pass']


def test_chsh_nopa():
    cfg = OptimizerConfig(restarts=4, plane_constraint='xz')
    document = paritybell.chsh('nopa', 2, 32, r=1., cfg=cfg)
    assert document['pass']
    assert document['closed_form'] == pytest.approx(closed_form_nopa_chsh(1.))
    assert 2e-8 < document['truncation_deficit'] < 3e-8
    assert list(document)[:4] == ['state', 'n_modes', 'dim', 'method']
    assert list(document)[-2:] == ['pass', 'settings']


def test_chsh_errors(chsh_settings):
    with pytest.raises(ValueError):
        paritybell.chsh('nopa', 3, 4, r=1.)
    with pytest.raises(ValueError):
        paritybell.chsh('nopa', 2, 4)
    with pytest.raises(ValueError):
        paritybell.chsh('w', 2, 4)
    with pytest.raises(ValueError):
        paritybell.chsh('ghz', 2, 4, grid_degrees=45.,
                        settings=chsh_settings)
    with pytest.raises(ValueError):
        paritybell.chsh('ghz', 3, 4, settings=chsh_settings)


def test_sweep():
    cfg = OptimizerConfig(restarts=2, plane_constraint='xz')
    document = paritybell.sweep(0.2, 0.8, 3, 32, cfg=cfg)
    assert document['pass']
    rows = document['rows']
    assert [row['r'] for row in rows] == pytest.approx([0.2, 0.5, 0.8])
    assert all(row['abs_error'] < paritybell.NOPA_OPTIMUM_TOL
               for row in rows)
    assert document['max_truncation_deficit'] == rows[-1][
        'truncation_deficit']


def test_sweep_errors():
    with pytest.raises(ValueError):
        paritybell.sweep(0.8, 0.2, 3, 32)
    with pytest.raises(ValueError):
        paritybell.sweep(0., 0.5, 3, 32)
    with pytest.raises(ValueError):
        paritybell.sweep(0.2, 0.8, 1, 32)


def test_sweep_monotonicity_slack():
    values = [2.1, 2.5, 2.7]
    assert paritybell.is_non_decreasing(values)
    assert paritybell.is_non_decreasing([2.5, 2.5 - 1e-14])
    assert not paritybell.is_non_decreasing([2.5, 2.5 - 1e-6, 2.7])
    assert paritybell.is_non_decreasing([2.5, 2.5 - 1e-6], slack=1e-4)


def test_spectral():
    document = paritybell.spectral(2, 4, 3, seed=5)
    assert document['pass']
    assert len(document['rows']) == 3
    assert document['max_spectral_radius'] <= 2.*np.sqrt(2.)*(1. + 1e-9)
    assert all(row['squared'] == pytest.approx(row['spectral_radius']**2)
               for row in document['rows'])


def test_square_identity():
    document = paritybell.square_identity(3, 4, 2)
    assert document['pass']
    assert document['max_residual'] < paritybell.SQUARE_TOL
    with pytest.raises(ValueError):
        paritybell.square_identity(3, 4, 0)


def test_read_config_file(tmp_path):
    config = tmp_path / 'run.cfg'
    config.write_text('# defaults\n\n--restarts = 4\nnum-cpus=2  # all\n')
    assert paritybell.read_config_file(str(config)) == {'restarts': '4',
                                                        'num_cpus': '2'}
    config.write_text('restarts 4\n')
    with pytest.raises(ValueError):
        paritybell.read_config_file(str(config))
    config.write_text('=4\n')
    with pytest.raises(ValueError):
        paritybell.read_config_file(str(config))


def test_read_settings_file(tmp_path, chsh_settings):
    path = tmp_path / 'settings.json'
    path.write_text(json.dumps(chsh_settings.to_list()))
    assert paritybell.read_settings_file(str(path), 2) == chsh_settings
    with pytest.raises(ValueError):
        paritybell.read_settings_file(str(path), 3)
    path.write_text('[[0, 0, 1], [1, 0]')
    with pytest.raises(ValueError):
        paritybell.read_settings_file(str(path), 1)
    path.write_text(json.dumps([[0, 0, 1], [1, 0], [0, 0, 1], [1, 0, 0]]))
    with pytest.raises(ValueError):
        paritybell.read_settings_file(str(path), 2)
    path.write_text(json.dumps([[0, 0, 2], [1, 0, 0], [0, 0, 1],
                                [1, 0, 0]]))
    with pytest.raises(ValueError):
        paritybell.read_settings_file(str(path), 2)


def test_timed_logs_runtime(caplog):
    with caplog.at_level(logging.INFO):
        document = paritybell.timed(paritybell.algebra_check, 2)
    assert document['pass']
    assert 'Total algebra_check runtime' in caplog.text
