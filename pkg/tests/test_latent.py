import numpy as np
import pytest

from camp_locomotion import (
    AblationConfig,
    CampTrainer,
    ConfigError,
    DataError,
    EmptySelectionError,
    preload_transitions,
)
from camp_locomotion.analysis.latent import LatentSequence, latent_sequence_from_features, standardize_sequences
from camp_locomotion.analysis.skill_model import fit_skill_model, load_skill_model


class TestLatentSequence:
    values = np.arange(20.0).reshape(10, 2)
    label = 2
    dt = 0.02

    def test_expected_values(self):
        sequence = LatentSequence(self.values, self.label, self.dt)

        assert len(sequence) == 10
        assert sequence.name == 'pace_2Hz'

    def test_downsample(self):
        sequence = LatentSequence(self.values, self.label, self.dt).downsample(10.0)

        assert sequence.values.tolist() == self.values[::5].tolist()
        assert sequence.dt == pytest.approx(0.1)
        assert sequence.label == self.label

    def test_downsample_above_rate(self):
        sequence = LatentSequence(self.values, self.label, self.dt).downsample(100.0)

        assert np.array_equal(sequence.values, self.values)

    def test_standardize(self):
        rng = np.random.default_rng(0)
        sequences = [LatentSequence(3.0 + 2.0 * rng.normal(size=(n, 3)), 0, self.dt) for n in (30, 50)]
        sequences.append(LatentSequence(np.ones((5, 3)), 4, self.dt))

        standardized = standardize_sequences(sequences)
        pooled = np.concatenate([seq.values for seq in standardized])

        assert [len(seq) for seq in standardized] == [30, 50, 5]
        assert pooled.mean(axis=0) == pytest.approx(np.zeros(3), abs=1e-12)
        assert pooled.std(axis=0) == pytest.approx(np.ones(3))

    def test_standardize_constant_dimension(self):
        sequences = [LatentSequence(np.stack([np.arange(4.0), np.full(4, 7.0)], axis=1), 0, self.dt)]

        standardized = standardize_sequences(sequences)

        assert standardized[0].values[:, 1].tolist() == [0.0] * 4

    def test_standardize_empty(self):
        with pytest.raises(EmptySelectionError):
            standardize_sequences([])


class TestSkillModel:
    labels = [0, 4]
    epochs = 300
    min_accuracy = 0.75

    @pytest.fixture(scope='class')
    def clips(self, clip_factory):
        return [clip_factory.get(label) for label in self.labels]

    @pytest.fixture(scope='class')
    def model(self, clips, tiny_config):
        return fit_skill_model(clips, tiny_config, epochs=self.epochs)

    def test_accuracy(self, model, clips, tiny_config):
        batch = preload_transitions(clips, tiny_config.dataset.transitions_per_clip, rng=7).pairs

        assert model.accuracy(batch) >= self.min_accuracy
        assert set(model.classify(batch).tolist()) <= set(self.labels)

    def test_latents(self, model, clips, tiny_config):
        sequences = model.latents(clips)

        assert [seq.label for seq in sequences] == self.labels
        for sequence, clip in zip(sequences, clips):
            assert sequence.values.shape == (len(clip) - 1, tiny_config.trainer.adversarial.latent_dim)
            assert sequence.dt == clip.dt

    def test_deterministic(self, model, clips, tiny_config):
        again = fit_skill_model(clips, tiny_config, epochs=self.epochs)

        assert np.array_equal(again.skill_disc.net.params, model.skill_disc.net.params)

    def test_no_clips(self, tiny_config):
        with pytest.raises(EmptySelectionError):
            fit_skill_model([], tiny_config)

    def test_single_frame(self, model):
        with pytest.raises(DataError):
            latent_sequence_from_features(np.zeros((1, 43)), 0, 0.02, model.skill_disc, model.normalizer)

    def test_load_from_run(self, trained_run, tiny_config, clip_factory):
        model = load_skill_model(trained_run)
        sequences = model.latents([clip_factory.get(0)])

        assert model.table.labels == [0, 2]
        assert sequences[0].values.shape[1] == tiny_config.trainer.adversarial.latent_dim

    def test_load_without_skill_disc(self, tiny_config, tiny_expert, tmp_path):
        config = tiny_config.replace(ablation=AblationConfig.for_variant('baseline'))
        trainer = CampTrainer(config, tiny_expert, str(tmp_path))
        try:
            trainer.train(0)
        finally:
            trainer.close()

        with pytest.raises(ConfigError):
            load_skill_model(str(tmp_path))
