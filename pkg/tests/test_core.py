import numpy as np
import pytest

from vacmirror import (
    ETA,
    FrequencyGrid,
    PhysicsContext,
    SingularFrequencyError,
    Spectrum,
    dagger,
    max_entry,
)


def test_eta_squares_to_identity():
    assert np.array_equal(ETA @ ETA, np.eye(2))
    assert np.array_equal(ETA, np.diag([1.0, -1.0]))


def test_physics_context_validates_hbar():
    assert PhysicsContext().hbar == 1.0
    assert PhysicsContext(hbar=2.5).hbar == 2.5
    with pytest.raises(ValueError):
        PhysicsContext(hbar=0.0)
    with pytest.raises(ValueError):
        PhysicsContext(hbar=-1.0)


def test_symmetric_grid_is_bitwise_symmetric():
    grid = FrequencyGrid.symmetric(5.0, 101)
    om = grid.omega
    assert om.size == 101
    assert om[50] == 0.0
    assert np.array_equal(om, -om[::-1])
    assert np.isclose(grid.spacing, 0.1)


def test_symmetric_grid_rejects_bad_counts():
    with pytest.raises(ValueError):
        FrequencyGrid.symmetric(5.0, 100)
    with pytest.raises(ValueError):
        FrequencyGrid.symmetric(-1.0, 11)


def test_linear_grid_dispatches_to_symmetric():
    grid = FrequencyGrid.linear(-3.0, 3.0, 7)
    assert np.array_equal(grid.omega, -grid.omega[::-1])
    plain = FrequencyGrid.linear(0.0, 1.0, 5)
    assert np.allclose(plain.omega, [0.0, 0.25, 0.5, 0.75, 1.0])


def test_grid_rejects_nonuniform_or_unsorted():
    with pytest.raises(ValueError):
        FrequencyGrid(np.array([0.0, 1.0, 3.0]))
    with pytest.raises(ValueError):
        FrequencyGrid(np.array([1.0, 1.0, 2.0]))
    with pytest.raises(ValueError):
        FrequencyGrid(np.array([2.0]))


def test_spectrum_shape_and_meta():
    grid = FrequencyGrid.symmetric(1.0, 5)
    with pytest.raises(ValueError):
        Spectrum(grid, np.zeros(4))
    spec = Spectrum(grid, np.ones(5))
    assert spec.values.dtype == complex
    assert np.array_equal(spec.omega, grid.omega)
    updated = spec.with_values(2.0 * spec.values, note="doubled")
    assert updated.meta["note"] == "doubled"
    assert np.allclose(updated.values, 2.0)


def test_dagger_and_max_entry():
    m = np.array([[1.0 + 2.0j, 3.0j], [4.0, 5.0 - 1.0j]])
    assert np.array_equal(dagger(m), m.conj().T)
    assert np.isclose(max_entry(m), np.sqrt(26.0))


def test_singular_frequency_error_is_value_error():
    assert issubclass(SingularFrequencyError, ValueError)
