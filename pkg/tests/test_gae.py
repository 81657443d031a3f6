import numpy as np
import pytest

from camp_locomotion import gae_advantages


class TestGae:
    gamma = 0.9
    gae_lambda = 0.8

    def test_single_step(self):
        advantages, returns = gae_advantages(
            np.array([[1.0]]), np.array([[0.5]]), np.array([[False]]), np.array([2.0]), self.gamma, normalize=False
        )

        assert advantages[0, 0] == pytest.approx(1.0 + self.gamma * 2.0 - 0.5)
        assert returns[0, 0] == pytest.approx(1.0 + self.gamma * 2.0)

    def test_expected_values(self):
        rewards = np.array([[1.0], [0.0], [2.0]])
        values = np.array([[0.5], [1.0], [0.0]])
        dones = np.zeros((3, 1), dtype=bool)
        last = np.array([1.0])

        deltas = [1.0 + 0.9 * 1.0 - 0.5, 0.0 + 0.9 * 0.0 - 1.0, 2.0 + 0.9 * 1.0 - 0.0]
        a2 = deltas[2]
        a1 = deltas[1] + 0.72 * a2
        a0 = deltas[0] + 0.72 * a1

        advantages, returns = gae_advantages(
            rewards, values, dones, last, self.gamma, self.gae_lambda, normalize=False
        )

        assert advantages[:, 0] == pytest.approx([a0, a1, a2])
        assert returns == pytest.approx(advantages + values)

    def test_done_cuts_bootstrap(self):
        rewards = np.array([[1.0], [1.0]])
        values = np.array([[0.0], [5.0]])
        dones = np.array([[True], [False]])

        advantages, _ = gae_advantages(
            rewards, values, dones, np.array([3.0]), self.gamma, self.gae_lambda, normalize=False
        )

        assert advantages[0, 0] == pytest.approx(1.0)
        assert advantages[1, 0] == pytest.approx(1.0 + self.gamma * 3.0 - 5.0)

    def test_timeout_bootstraps_from_value(self):
        rewards = np.array([[1.0]])
        values = np.array([[4.0]])
        dones = np.array([[True]])
        timeouts = np.array([[True]])

        advantages, _ = gae_advantages(
            rewards, values, dones, np.array([100.0]), self.gamma, timeouts=timeouts, normalize=False
        )

        assert advantages[0, 0] == pytest.approx(1.0 + self.gamma * 4.0 - 4.0)

    def test_timeout_bootstraps_from_final_state(self):
        rewards = np.array([[1.0], [1.0]])
        values = np.array([[4.0], [2.0]])
        dones = np.array([[True], [False]])
        timeouts = np.array([[True], [False]])
        timeout_values = np.array([[6.0], [0.0]])

        advantages, returns = gae_advantages(
            rewards,
            values,
            dones,
            np.array([3.0]),
            self.gamma,
            self.gae_lambda,
            timeouts=timeouts,
            timeout_values=timeout_values,
            normalize=False,
        )

        assert advantages[0, 0] == pytest.approx(1.0 + self.gamma * 6.0 - 4.0)
        assert advantages[1, 0] == pytest.approx(1.0 + self.gamma * 3.0 - 2.0)
        assert returns[0, 0] == pytest.approx(1.0 + self.gamma * 6.0)

    def test_columns_are_independent(self):
        rng = np.random.default_rng(0)
        rewards = rng.normal(size=(6, 3))
        values = rng.normal(size=(6, 3))
        dones = rng.random((6, 3)) < 0.2
        last = rng.normal(size=3)

        full, _ = gae_advantages(rewards, values, dones, last, normalize=False)
        column, _ = gae_advantages(rewards[:, 1:2], values[:, 1:2], dones[:, 1:2], last[1:2], normalize=False)

        assert full[:, 1] == pytest.approx(column[:, 0])

    def test_normalize(self):
        rng = np.random.default_rng(1)
        rewards = rng.normal(size=(8, 4))
        values = rng.normal(size=(8, 4))
        dones = np.zeros((8, 4), dtype=bool)

        raw, raw_returns = gae_advantages(rewards, values, dones, np.zeros(4), normalize=False)
        advantages, returns = gae_advantages(rewards, values, dones, np.zeros(4))

        assert advantages.mean() == pytest.approx(0.0, abs=1e-12)
        assert advantages.std() == pytest.approx(1.0, abs=1e-6)
        assert returns == pytest.approx(raw_returns)
        assert np.corrcoef(raw.ravel(), advantages.ravel())[0, 1] == pytest.approx(1.0)
