import numpy as np
import pytest
from scipy import stats

from camp_locomotion import Mlp, MlpSpec, NonFiniteError
from camp_locomotion.nn.gradcheck import check_gradient
from camp_locomotion.ppo.policy import (
    gaussian_entropy,
    gaussian_kl,
    gaussian_log_prob,
    surrogate_loss,
    value_loss,
)


@pytest.fixture(scope='module')
def policy_batch():
    rng = np.random.default_rng(11)
    mean = rng.normal(size=(16, 12))
    log_std = rng.uniform(-1.0, 0.0, size=12)
    actions = mean + np.exp(log_std) * rng.standard_normal((16, 12))
    advantages = rng.normal(size=16)
    return mean, log_std, actions, advantages


class TestGaussian:
    def test_log_prob(self, policy_batch):
        mean, log_std, actions, _ = policy_batch
        expected = stats.norm.logpdf(actions, loc=mean, scale=np.exp(log_std)).sum(axis=1)

        assert gaussian_log_prob(mean, log_std, actions) == pytest.approx(expected)

    def test_entropy(self, policy_batch):
        _, log_std, _, _ = policy_batch

        assert gaussian_entropy(log_std) == pytest.approx(stats.norm(scale=np.exp(log_std)).entropy().sum())

    def test_kl(self, policy_batch):
        mean, log_std, _, _ = policy_batch

        assert gaussian_kl(mean, log_std, mean, log_std) == pytest.approx(0.0, abs=1e-12)
        assert gaussian_kl(mean, log_std, mean + 0.1, log_std) > 0
        # один шаг по среднему: KL = Σ Δ² / (2σ²)
        assert gaussian_kl(mean[:1], log_std, mean[:1] + 0.1, log_std) == pytest.approx(
            np.sum(0.01 / (2.0 * np.exp(2.0 * log_std)))
        )


class TestSurrogateLoss:
    clip_ratio = 0.2

    def test_ratio_one(self, policy_batch):
        mean, log_std, actions, advantages = policy_batch
        old = gaussian_log_prob(mean, log_std, actions)
        result = surrogate_loss(mean, log_std, actions, old, advantages, self.clip_ratio)

        assert result.loss == pytest.approx(-advantages.mean())
        assert result.clip_fraction == 0.0
        assert result.grad_mean.shape == (16, 12)
        assert result.grad_log_std.shape == (12,)

    def test_saturated_ratio(self, policy_batch):
        mean, log_std, actions, _ = policy_batch
        old = gaussian_log_prob(mean, log_std, actions) - 1.0
        advantages = np.ones(16)
        result = surrogate_loss(mean, log_std, actions, old, advantages, self.clip_ratio)

        assert result.loss == pytest.approx(-(1.0 + self.clip_ratio))
        assert result.clip_fraction == 1.0
        assert np.all(result.grad_mean == 0)
        assert np.all(result.grad_log_std == 0)

    def test_negative_advantage_is_not_clipped_above(self, policy_batch):
        mean, log_std, actions, _ = policy_batch
        old = gaussian_log_prob(mean, log_std, actions) - 1.0
        advantages = -np.ones(16)
        result = surrogate_loss(mean, log_std, actions, old, advantages, self.clip_ratio)

        assert result.loss == pytest.approx(np.e)
        assert result.clip_fraction == 0.0

    def test_gradients(self, policy_batch):
        mean, log_std, actions, advantages = policy_batch
        rng = np.random.default_rng(5)
        old = gaussian_log_prob(mean, log_std, actions) + rng.uniform(-0.05, 0.05, size=16)
        result = surrogate_loss(mean, log_std, actions, old, advantages, self.clip_ratio)

        def loss_of_mean(flat):
            return surrogate_loss(flat.reshape(mean.shape), log_std, actions, old, advantages, self.clip_ratio).loss

        def loss_of_log_std(values):
            return surrogate_loss(mean, values, actions, old, advantages, self.clip_ratio).loss

        assert check_gradient(loss_of_mean, mean.ravel(), result.grad_mean, eps=1e-5).passed
        assert check_gradient(loss_of_log_std, log_std, result.grad_log_std, eps=1e-5).passed

    def test_non_finite(self, policy_batch):
        mean, log_std, actions, advantages = policy_batch
        advantages = advantages.copy()
        advantages[0] = np.nan

        with pytest.raises(NonFiniteError):
            surrogate_loss(mean, log_std, actions, np.zeros(16), advantages)


class TestValueLoss:
    def test_expected_values(self):
        loss, grad = value_loss(np.array([1.0, 2.0, 3.0]), np.array([1.0, 0.0, 4.0]))

        assert loss == pytest.approx(5.0 / 3.0)
        assert grad == pytest.approx([0.0, 4.0 / 3.0, -2.0 / 3.0])

    def test_gradient(self):
        rng = np.random.default_rng(3)
        values, returns = rng.normal(size=20), rng.normal(size=20)
        _, grad = value_loss(values, returns)

        assert check_gradient(lambda v: value_loss(v, returns)[0], values, grad).passed

    def test_critic_gradients(self):
        rng = np.random.default_rng(4)
        spec = MlpSpec.build(10, [8], 1, activation='tanh')
        critic = Mlp(spec, rng=0)
        inputs, returns = rng.normal(size=(6, 10)), rng.normal(size=6)
        cache = critic.forward_cache(inputs)
        _, grad = value_loss(cache.output[:, 0], returns)
        param_grad, input_grad = critic.backward(cache, grad[:, None])

        def by_params(params):
            return value_loss(Mlp(spec, params=params)(inputs)[:, 0], returns)[0]

        def by_inputs(flat):
            return value_loss(critic(flat.reshape(inputs.shape))[:, 0], returns)[0]

        assert check_gradient(by_params, critic.params, param_grad).passed
        assert check_gradient(by_inputs, inputs.ravel(), input_grad.ravel()).passed

    def test_non_finite(self):
        with pytest.raises(NonFiniteError):
            value_loss(np.array([np.inf]), np.array([0.0]))
