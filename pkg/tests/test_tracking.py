import numpy as np
import pytest

from camp_locomotion import DataError, EmptySelectionError, EnvConfig, MotionClip
from camp_locomotion.analysis.tracking import expert_replay, expert_replay_targets, tracking_accuracy


class TestTrackingAccuracy:
    steps = 200

    @pytest.fixture
    def target(self):
        t = np.linspace(0.0, 2.0, self.steps)
        return np.stack([0.3 * np.sin(2 * np.pi * 2.0 * t + phase) for phase in np.linspace(0, 1, 12)], axis=1)

    def test_perfect(self, target):
        assert tracking_accuracy(target, target) == 100.0

    def test_constant_offset(self, target):
        spread = target.max(axis=0) - target.min(axis=0)

        assert tracking_accuracy(target, target + 0.1 * spread) == pytest.approx(90.0, abs=1e-9)

    def test_single_joint(self):
        target = np.array([0.0, 1.0, 2.0, 1.0])

        assert tracking_accuracy(target, target - 0.5) == pytest.approx(75.0)

    def test_constant_joint(self, target):
        target = target.copy()
        target[:, 0] = 0.5

        with pytest.raises(EmptySelectionError):
            tracking_accuracy(target, target)
        assert tracking_accuracy(target, target, ignore_constant=True) == 100.0

    def test_all_constant(self):
        with pytest.raises(EmptySelectionError):
            tracking_accuracy(np.zeros((10, 3)), np.zeros((10, 3)), ignore_constant=True)

    def test_shape_mismatch(self, target):
        with pytest.raises(DataError):
            tracking_accuracy(target, target[:-1])


class TestExpertReplay:
    minimum_accuracy = 85.0

    @pytest.fixture(scope='class')
    def cycle(self, clip_factory):
        return clip_factory.get(0, duration=0.5)

    def test_one_trot_cycle(self, cycle):
        target, actual = expert_replay(cycle, EnvConfig())

        assert target.shape == actual.shape == (len(cycle) - 1, 12)
        assert tracking_accuracy(target, actual, ignore_constant=True) >= self.minimum_accuracy

    def test_targets_lead_reference(self, cycle):
        config = EnvConfig()
        targets = expert_replay_targets(cycle, config)
        lead = config.pd.kd_array / config.pd.kp_array + 0.5 * config.dt + config.actuator_lag

        assert targets.shape == (len(cycle) - 1, 12)
        assert targets == pytest.approx(cycle.joint_positions[1:] + lead * cycle.joint_velocities[1:])

    def test_explicit_targets(self, cycle):
        held = np.repeat(cycle.joint_positions[:1], len(cycle) - 1, axis=0)
        _, actual = expert_replay(cycle, EnvConfig(), targets=held)

        assert np.abs(actual[-1] - held[-1]).max() < 0.05

    def test_too_short(self, cycle):
        single = MotionClip.from_frames(cycle.label, cycle.dt, cycle.frames[:1])

        with pytest.raises(DataError):
            expert_replay(single, EnvConfig())
