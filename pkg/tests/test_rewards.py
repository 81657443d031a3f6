import logging

import numpy as np
import pytest

from camp_locomotion import SkillEmbeddingTable, nearest_skill, skill_reward
from camp_locomotion.adversarial.rewards import style_reward_from_output


class TestStyleReward:
    outputs = [-2.0, -1.0, 0.0, 0.5, 1.0, 2.0]
    rewards = [0.0, 0.0, 0.75, 0.9375, 1.0, 0.75]

    def test_expected_values(self):
        assert style_reward_from_output(np.array(self.outputs)) == pytest.approx(self.rewards)

    def test_bounded(self):
        rewards = style_reward_from_output(np.linspace(-10.0, 10.0, 201))

        assert rewards.min() == 0.0
        assert rewards.max() == 1.0


class TestSkillReward:
    def test_expected_values(self):
        z = np.array([1.0, 2.0, -1.0])

        assert skill_reward(z, 3.0 * z) == pytest.approx(1.0)
        assert skill_reward(z, -z) == pytest.approx(-1.0)
        assert skill_reward(np.array([1.0, 0.0]), np.array([0.0, 2.0])) == pytest.approx(0.0)

    def test_batch(self):
        z_hat = np.array([[1.0, 0.0], [1.0, 1.0]])
        z = np.array([[1.0, 0.0], [1.0, 0.0]])

        assert skill_reward(z_hat, z) == pytest.approx([1.0, 2**-0.5])

    def test_zero_norm(self, caplog):
        with caplog.at_level(logging.WARNING):
            reward = skill_reward(np.array([[0.0, 0.0], [1.0, 0.0]]), np.array([[1.0, 0.0], [1.0, 0.0]]))

        assert reward == pytest.approx([0.0, 1.0])
        assert 'Zero-norm latent' in caplog.text


class TestNearestSkill:
    labels = [2, 5, 7]

    @pytest.fixture
    def table(self):
        table = SkillEmbeddingTable(self.labels, 2, rng=0)
        table.params[...] = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]]).ravel()
        return table

    def test_expected_values(self, table):
        z_hat = np.array([[2.0, 0.1], [0.1, 3.0], [-0.5, 0.0]])

        assert nearest_skill(z_hat, table).tolist() == [2, 5, 7]

    def test_scale_invariant(self, table):
        small = nearest_skill(np.array([0.3, 0.2]), table)

        assert small.tolist() == nearest_skill(np.array([30.0, 20.0]), table).tolist()

    def test_tie_picks_smaller_label(self, table):
        assert nearest_skill(np.array([1.0, 1.0]), table).tolist() == [2]
