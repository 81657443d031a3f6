import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from camp_locomotion import Command, EnvState, RobotModel
from camp_locomotion.sim.env import standing_state
from camp_locomotion.sim.observation import (
    OBSERVATION_BASE_DIM,
    PRIVILEGED_DIM,
    amp_feature_from_state,
    build_observation,
    build_privileged_observation,
    observation_dim,
)
from camp_locomotion.utils.rotations import euler_quaternion, gravity_projection


class TestObservation:
    skill_count = 3
    velocity = [0.5, 0.0, 0.2]

    @pytest.fixture
    def robot(self):
        return RobotModel()

    @pytest.fixture
    def state(self, robot):
        return EnvState.concat([standing_state(robot, robot.nominal) for _ in range(2)])

    @pytest.fixture
    def command(self):
        return Command.one_hot(np.array(self.velocity), [1, 2], self.skill_count)

    def test_layout(self, state, command, robot):
        prev_action = np.arange(24, dtype=np.float64).reshape(2, 12) / 24
        state.joint_velocities[:] = 1.0

        observations = build_observation(state, command, prev_action, robot, joint_velocity_scale=0.05)

        assert observations.shape == (2, observation_dim(self.skill_count)) == (2, 48)
        assert observations[:, 0:3] == pytest.approx(np.zeros((2, 3)))
        assert observations[:, 3:6] == pytest.approx(np.tile([0.0, 0.0, -1.0], (2, 1)))
        assert observations[:, 6:9] == pytest.approx(np.tile(self.velocity, (2, 1)))
        assert observations[:, 9:12].tolist() == [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        assert observations[:, 12:24] == pytest.approx(np.zeros((2, 12)))
        assert observations[:, 24:36] == pytest.approx(np.full((2, 12), 0.05))
        assert np.array_equal(observations[:, 36:], prev_action)

    def test_joint_positions_relative_to_nominal(self, state, command, robot):
        state.joint_positions[0, 4] += 0.1

        observations = build_observation(state, command, np.zeros((2, 12)), robot)

        assert observations[0, 12 + 4] == pytest.approx(0.1)
        assert np.count_nonzero(observations[:, 12:24]) == 1

    def test_angular_velocity_scale(self, state, command, robot):
        state.base_angular_velocity[:] = [4.0, 0.0, -2.0]

        observations = build_observation(state, command, np.zeros((2, 12)), robot, angular_velocity_scale=0.25)

        assert observations[:, 0:3] == pytest.approx(np.tile([1.0, 0.0, -0.5], (2, 1)))

    def test_disable_skill_obs(self, state, command, robot):
        hidden = build_observation(state, command, np.zeros((2, 12)), robot, disable_skill_obs=True)
        shown = build_observation(state, command, np.zeros((2, 12)), robot)

        assert hidden.shape == shown.shape
        assert np.all(hidden[:, 9:12] == 0.0)
        assert np.array_equal(np.delete(hidden, np.s_[9:12], axis=1), np.delete(shown, np.s_[9:12], axis=1))

    def test_privileged(self, state):
        state.base_linear_velocity[:] = [0.3, -0.1, 0.0]
        state.friction[:] = [0.5, 1.2]
        state.payload_mass[:] = [0.0, 2.5]

        privileged = build_privileged_observation(state)

        assert privileged.shape == (2, PRIVILEGED_DIM)
        assert privileged[:, 0:3] == pytest.approx(np.tile([0.3, -0.1, 0.0], (2, 1)))
        assert np.all(privileged[:, 3:7] == 1.0)
        assert privileged[:, 7].tolist() == [0.5, 1.2]
        assert privileged[:, 8].tolist() == [0.0, 2.5]

    def test_amp_feature(self, state, robot):
        features = amp_feature_from_state(state, robot)

        assert features.shape == (2, 43)
        assert np.array_equal(features[:, :12], state.joint_positions)
        assert features[:, 30] == pytest.approx(state.base_position[:, 2])

    def test_base_dim(self):
        assert OBSERVATION_BASE_DIM == 45
        assert observation_dim(0) == OBSERVATION_BASE_DIM


class TestGravityProjection:
    def test_identity(self):
        assert gravity_projection(euler_quaternion(0.0, 0.0, 0.0)) == pytest.approx([0.0, 0.0, -1.0])

    def test_roll(self):
        assert gravity_projection(euler_quaternion(np.pi / 2, 0.0, 0.0)) == pytest.approx([0.0, -1.0, 0.0], abs=1e-12)

    def test_yaw_does_not_change_projection(self):
        assert gravity_projection(euler_quaternion(0.0, 0.0, 1.3)) == pytest.approx([0.0, 0.0, -1.0], abs=1e-12)

    def test_unit_norm(self):
        quats = Rotation.random(100, random_state=0).as_quat()

        norms = np.linalg.norm(gravity_projection(quats), axis=1)

        assert norms == pytest.approx(np.ones(100), abs=1e-9)
