import math

import numpy as np
import pytest

from camp_locomotion import Command, DataError, RobotModel, build_observation, build_privileged_observation, task_reward
from camp_locomotion.sim.env import standing_state


class TestTaskReward:
    perfect = 2.25
    sigma = 0.15

    @pytest.fixture
    def state(self):
        return standing_state(RobotModel(), RobotModel().nominal)

    def test_expected_values(self, state):
        command = Command.one_hot(np.zeros(3), [0], 1)

        assert task_reward(state, command) == pytest.approx([self.perfect])

    def test_tracking_error(self, state):
        command = Command.one_hot(np.array([0.3, 0.4, 0.15]), [0], 1)
        expected = 1.5 * math.exp(-0.5 / self.sigma) + 0.75 * math.exp(-1.0)

        assert task_reward(state, command) == pytest.approx([expected])

    def test_observation_layout(self, state):
        command = Command.one_hot(np.array([0.5, 0.0, 0.0]), [1], 3)
        observation = build_observation(state, command, np.ones((1, 12)))

        assert observation.shape == (1, 48)
        assert observation[0, 3:6] == pytest.approx([0.0, 0.0, -1.0])
        assert observation[0, 6:9] == pytest.approx([0.5, 0.0, 0.0])
        assert observation[0, 9:12] == pytest.approx([0.0, 1.0, 0.0])
        assert observation[0, 12:24] == pytest.approx(np.zeros(12))
        assert observation[0, 36:] == pytest.approx(np.ones(12))

    def test_privileged_observation(self, state):
        privileged = build_privileged_observation(state)

        assert privileged.shape == (1, 9)
        assert privileged[0, 3:7] == pytest.approx([1.0, 1.0, 1.0, 1.0])
        assert privileged[0, 7] == 1.0

    def test_invalid_command(self):
        with pytest.raises(DataError):
            Command.one_hot(np.zeros(3), [3], 3)
        with pytest.raises(DataError):
            Command(velocity=np.zeros((1, 3)), skill=np.array([[2.0]]))
