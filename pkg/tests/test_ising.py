"""Tests for the Ising core: labels, energy, flip deltas and problem files."""

from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from app.errors import ContractViolationError, MissingInputError
from app.generators import GeneratorSeed, ProblemFamily, registry
from app.ising import (
    IsingModel,
    as_spins,
    decode_state,
    delta_energy,
    encode_state,
    energy,
    flip,
    initial_temperature,
    load_model,
    save_model,
)
from app.oracle import iter_energies


class TestLabels:
    def test_all_down_is_zero_and_all_up_is_top(self) -> None:
        assert encode_state(as_spins([-1, -1, -1, -1])) == 0
        assert encode_state(as_spins([1, 1, 1, 1])) == 15

    def test_spin_zero_is_most_significant(self) -> None:
        assert encode_state(as_spins([1, -1, -1, -1])) == 8
        assert encode_state(as_spins([-1, -1, -1, 1])) == 1

    def test_decode_inverts_encode(self) -> None:
        for label in range(64):
            assert encode_state(decode_state(label, 6)) == label
        np.testing.assert_array_equal(decode_state(5, 4), [-1, 1, -1, 1])

    def test_decode_out_of_range(self) -> None:
        with pytest.raises(ContractViolationError):
            decode_state(16, 4)
        with pytest.raises(ContractViolationError):
            decode_state(-1, 4)

    def test_as_spins_rejects_bad_values(self) -> None:
        with pytest.raises(ContractViolationError):
            as_spins([1, 0, -1])
        with pytest.raises(ContractViolationError):
            as_spins([1, -1], n=3)

    def test_flip_returns_copy(self) -> None:
        s = as_spins([1, 1, -1])
        flipped = flip(s, [0, 2])
        np.testing.assert_array_equal(flipped, [-1, 1, 1])
        np.testing.assert_array_equal(s, [1, 1, -1])


class TestModel:
    def test_energy_counts_each_bond_twice(self, tiny_model: IsingModel) -> None:
        expected = [-1.0, 3.0, 1.0, -3.0]
        for label, value in enumerate(expected):
            assert energy(tiny_model, decode_state(label, 2)) == value

    def test_coupling_matrix_is_symmetric(self, false_minimum_8: IsingModel) -> None:
        matrix = false_minimum_8.coupling_matrix()
        np.testing.assert_array_equal(matrix, matrix.T)
        assert np.all(np.diag(matrix) == 0)

    def test_rejects_wrong_field_length(self) -> None:
        with pytest.raises(ValidationError):
            IsingModel(n=3, h=(0.0, 0.0))

    def test_rejects_lower_triangular_and_duplicate_couplings(self) -> None:
        with pytest.raises(ValidationError):
            IsingModel(n=3, h=(0.0,) * 3, J=((1, 0, 1.0),))
        with pytest.raises(ValidationError):
            IsingModel(n=3, h=(0.0,) * 3, J=((0, 1, 1.0), (0, 1, -1.0)))

    def test_energy_rejects_wrong_length(self, tiny_model: IsingModel) -> None:
        with pytest.raises(ContractViolationError):
            energy(tiny_model, as_spins([1, 1, 1]))

    def test_initial_temperature(self) -> None:
        # n=4, epsilon=0.1: fields 0.9, 0.9, -1, -1 and four unit bonds
        model = registry.generate(ProblemFamily.FALSE_MINIMUM, 4, epsilon=0.1)
        assert initial_temperature(model) == pytest.approx(3.8 + 8.0)

    @pytest.mark.parametrize("family", list(ProblemFamily))
    def test_initial_temperature_bounds_every_energy(self, family: ProblemFamily) -> None:
        model = registry.generate(family, 8, GeneratorSeed(master_seed=3))
        t0 = initial_temperature(model)
        for _, energies in iter_energies(model):
            assert np.all(np.abs(energies) <= t0 + 1e-9)

    def test_is_integer(self, tiny_model: IsingModel) -> None:
        assert tiny_model.is_integer
        glass = registry.generate(ProblemFamily.GAUSSIAN_GLASS, 4)
        assert not glass.is_integer


class TestDeltaEnergy:
    @pytest.mark.parametrize("family", list(ProblemFamily))
    def test_matches_full_recomputation(
        self, family: ProblemFamily, rng: np.random.Generator
    ) -> None:
        trials = 0
        for n in (4, 8, 12):
            for realization in range(5):
                model = registry.generate(family, n, GeneratorSeed(realization_index=realization))
                for _ in range(167):
                    s = as_spins(2 * rng.integers(0, 2, size=n) - 1)
                    m = int(rng.integers(1, n + 1))
                    flips = rng.choice(n, size=m, replace=False).tolist()
                    delta = delta_energy(model, s, flips)
                    direct = energy(model, flip(s, flips)) - energy(model, s)
                    if model.is_integer:
                        assert delta == direct
                    else:
                        assert delta == pytest.approx(direct, abs=1e-9)
                    trials += 1
        assert trials >= 2500

    def test_rejects_invalid_flip_sets(self, tiny_model: IsingModel) -> None:
        s = as_spins([1, -1])
        with pytest.raises(ContractViolationError):
            delta_energy(tiny_model, s, [])
        with pytest.raises(ContractViolationError):
            delta_energy(tiny_model, s, [0, 0])
        with pytest.raises(ContractViolationError):
            delta_energy(tiny_model, s, [2])


class TestProblemFiles:
    def test_save_is_byte_stable(self, tmp_path: Path, false_minimum_8: IsingModel) -> None:
        first = save_model(false_minimum_8, tmp_path / "a" / "p.json").read_bytes()
        second = save_model(false_minimum_8, tmp_path / "b" / "p.json").read_bytes()
        assert first == second

    def test_load_returns_equal_model(self, tmp_path: Path) -> None:
        model = registry.generate(ProblemFamily.GAUSSIAN_GLASS, 6, GeneratorSeed(master_seed=11))
        path = save_model(model, tmp_path / "glass.json")
        assert load_model(path) == model

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(MissingInputError):
            load_model(tmp_path / "nope.json")
