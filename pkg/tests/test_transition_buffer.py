import numpy as np
import pytest

from camp_locomotion import (
    DataError,
    EmptySelectionError,
    TransitionBatch,
    TransitionPair,
    clip_amp_features,
    preload_transitions,
)
from camp_locomotion.motion.transition_buffer import sample_expert, sample_expert_for_labels


class TestTransitionBuffer:
    per_clip = 500
    skill_count = 8
    transition_dim = 86

    def test_expected_values(self, expert_buffer):
        assert len(expert_buffer) == self.per_clip * self.skill_count
        assert expert_buffer.labels == list(range(self.skill_count))
        assert expert_buffer.label_counts() == {label: self.per_clip for label in range(self.skill_count)}

    def test_single_clip(self, trot_clip):
        buffer = preload_transitions([trot_clip], 100, rng=1)

        assert len(buffer) == 100
        assert buffer.labels == [0]

    def test_pairs_are_consecutive_frames(self, trot_clip):
        buffer = preload_transitions([trot_clip], 50, rng=2)
        features = clip_amp_features(trot_clip)

        for s_t, s_next in zip(buffer.pairs.s_t, buffer.pairs.s_next):
            starts = np.flatnonzero((features[:-1] == s_t).all(axis=1))
            assert any(np.array_equal(features[start + 1], s_next) for start in starts)

    def test_deterministic(self, expert_clips, expert_buffer):
        again = preload_transitions(expert_clips, self.per_clip, rng=0)

        assert np.array_equal(again.pairs.s_t, expert_buffer.pairs.s_t)
        assert np.array_equal(again.pairs.labels, expert_buffer.pairs.labels)

    def test_empty_clips(self):
        with pytest.raises(EmptySelectionError):
            preload_transitions([], 10)

    def test_invalid_count(self, trot_clip):
        with pytest.raises(DataError):
            preload_transitions([trot_clip], 0)

    def test_pair(self, expert_buffer):
        pair = expert_buffer.pairs.pair(3)

        assert isinstance(pair, TransitionPair)
        assert np.array_equal(pair.s_next.flatten(), expert_buffer.pairs.s_next[3])
        assert pair.label == int(expert_buffer.pairs.labels[3])

    def test_transitions(self, expert_buffer):
        batch = expert_buffer.pairs.take(np.arange(10))

        assert batch.transitions().shape == (10, self.transition_dim)
        assert len(TransitionBatch.concat([batch, batch])) == 20

    def test_sample_expert(self, expert_buffer):
        rng = np.random.default_rng(0)

        assert len(sample_expert(expert_buffer, 64, rng=rng)) == 64
        assert np.all(sample_expert(expert_buffer, 32, label_filter=3, rng=rng).labels == 3)

    def test_sample_expert_missing_label(self, trot_clip):
        buffer = preload_transitions([trot_clip], 10, rng=0)

        with pytest.raises(EmptySelectionError):
            sample_expert(buffer, 8, label_filter=5)
        with pytest.raises(EmptySelectionError):
            sample_expert_for_labels(buffer, np.array([0, 5]))

    def test_sample_expert_for_labels(self, expert_buffer):
        labels = np.array([2, 0, 2, 7, 4, 0])
        batch = sample_expert_for_labels(expert_buffer, labels, rng=np.random.default_rng(3))

        assert np.array_equal(batch.labels, labels)
