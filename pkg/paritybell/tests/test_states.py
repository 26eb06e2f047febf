import numpy as np
import pytest

from paritybell.bell import correlation_tensor
from paritybell.fock import BudgetError, expectation, kron
from paritybell.pseudospin import ParityProfile, build_pseudospin
from paritybell.states import (GhzSpec, NopaParams, all_even_state,
                               ghz_state, nopa_state)


@pytest.mark.parametrize('r', [0., -1., np.nan])
def test_nopa_params_validation(r):
    with pytest.raises(ValueError):
        NopaParams(r)


def test_nopa_deficit():
    deficit = NopaParams(1.).deficit(32)
    assert deficit == pytest.approx(np.tanh(1.)**64, rel=1e-12)
    assert 2e-8 < deficit < 3e-8
    assert NopaParams(1.2).deficit(32) > 1e-8
    assert NopaParams(1.2).deficit(64) < 1e-8


def test_nopa_state_shape():
    state, deficit = nopa_state(NopaParams(1.), 32)
    assert deficit == NopaParams(1.).deficit(32)
    assert abs(state.norm() - 1.) < 1e-15
    amplitudes = state.amplitudes.reshape(32, 32)
    diagonal = np.diag(amplitudes).real
    assert np.all(diagonal > 0.)
    assert np.all(np.diff(diagonal) < 0.)
    assert np.count_nonzero(amplitudes) == 32


def test_nopa_small_r_is_vacuum():
    state, _ = nopa_state(NopaParams(1e-9), 4)
    assert abs(state.amplitudes[0]) == pytest.approx(1.)


def test_nopa_correlations():
    r = 1.
    state, _ = nopa_state(NopaParams(r), 32)
    spin = build_pseudospin(32)
    assert expectation(kron([spin.sz, spin.sz]), state) == \
        pytest.approx(1., abs=1e-12)
    assert expectation(kron([spin.sx, spin.sx]), state) == \
        pytest.approx(np.tanh(2.*r), abs=1e-12)
    assert expectation(kron([spin.sy, spin.sy]), state) == \
        pytest.approx(-np.tanh(2.*r), abs=1e-12)


def test_nopa_rejects_odd_dim():
    with pytest.raises(ValueError):
        nopa_state(NopaParams(0.5), 31)


def test_ghz2_fock0():
    state = ghz_state(GhzSpec(2, 4))
    expected = np.zeros(16)
    expected[0] = np.sqrt(0.5)
    expected[5] = -np.sqrt(0.5)
    assert np.allclose(state.amplitudes, expected)
    assert state.norm() == pytest.approx(1.)


def test_ghz_spec_validation():
    with pytest.raises(ValueError):
        GhzSpec(1, 4)
    with pytest.raises(ValueError):
        GhzSpec(3, 4, [ParityProfile.fock0()]*2)
    spec = GhzSpec(3, 4, [ParityProfile.fock0(), ParityProfile.uniform(2),
                          ParityProfile.fock0()])
    assert len(spec.profile(1)) == 2
    with pytest.raises(BudgetError):
        ghz_state(GhzSpec(6, 16))


def test_ghz_observables_profile_independent(rng):
    reference = correlation_tensor(ghz_state(GhzSpec(3, 4)))
    for _ in range(20):
        profiles = [ParityProfile.random(rng, 2) for _ in range(3)]
        tensor = correlation_tensor(ghz_state(GhzSpec(3, 4, profiles)))
        assert np.allclose(tensor, reference, atol=1e-12)


def test_all_even_state():
    state = all_even_state(GhzSpec(3, 2))
    assert state.amplitudes[0] == 1.
    assert state.norm() == 1.
