import numpy as np
import pytest

from camp_locomotion import ConfigError, PdParams, RobotModel
from camp_locomotion.sim.pd_params import apply_action, pd_torque


class TestPdParams:
    thigh = 1
    calf = 2
    error = 0.1

    @pytest.fixture
    def pd(self):
        return PdParams()

    @pytest.fixture
    def robot(self):
        return RobotModel()

    def test_defaults(self, pd):
        assert pd.kp_array[[self.thigh, self.calf]].tolist() == [30.0, 40.0]
        assert pd.action_scale == 0.25

    def test_torque_at_target(self, pd, robot):
        theta = robot.nominal

        assert (pd_torque(theta, theta, np.zeros(12), pd) == 0).all()

    @pytest.mark.parametrize('joint, expected', [(thigh, 3.0), (calf, 4.0)])
    def test_torque_from_joint_error(self, pd, joint, expected):
        target = np.zeros(12)
        target[joint] = self.error

        torque = pd_torque(target, np.zeros(12), np.zeros(12), pd)

        assert torque[joint] == pytest.approx(expected)
        assert np.count_nonzero(torque) == 1

    def test_damping(self, pd):
        theta_dot = np.full(12, 2.0)

        assert pd_torque(np.zeros(12), np.zeros(12), theta_dot, pd) == pytest.approx(-2.0 * pd.kd_array)

    def test_torque_limits(self, pd, robot):
        target = np.full(12, 10.0)
        limits = robot.torque_limit_array

        assert pd_torque(target, np.zeros(12), np.zeros(12), pd, limits) == pytest.approx(limits)
        assert pd_torque(-target, np.zeros(12), np.zeros(12), pd, limits, 0.5) == pytest.approx(-0.5 * limits)

    def test_batched_motor_strength(self, pd, robot):
        target = np.full((2, 12), 10.0)
        strength = np.array([1.0, 0.8])

        torque = pd_torque(target, np.zeros((2, 12)), np.zeros((2, 12)), pd, robot.torque_limit_array, strength)

        assert torque[1] == pytest.approx(0.8 * torque[0])

    def test_apply_action(self, pd, robot):
        nominal = robot.nominal
        action = np.zeros(12)
        action[5] = 1.0

        assert (apply_action(np.zeros(12), pd, nominal) == nominal).all()

        delta = apply_action(action, pd, nominal) - nominal
        assert delta[5] == pytest.approx(0.25)
        assert np.count_nonzero(delta) == 1

    def test_apply_action_linear(self, pd, robot):
        nominal = robot.nominal
        action = np.linspace(-1.0, 1.0, 12)

        double = apply_action(2 * action, pd, nominal) - nominal
        single = apply_action(action, pd, nominal) - nominal
        assert double == pytest.approx(2 * single)

    @pytest.mark.parametrize(
        'kwargs',
        [
            {'kp': [30.0] * 11},
            {'kd': [0.0] * 12},
            {'action_scale': 0.0},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ConfigError):
            PdParams(**kwargs)
