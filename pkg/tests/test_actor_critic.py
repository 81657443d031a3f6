import numpy as np
import pytest

from camp_locomotion import ActorCritic, DataError
from camp_locomotion.ppo.policy import gaussian_log_prob
from camp_locomotion.sim.observation import PRIVILEGED_DIM, observation_dim


class TestActorCritic:
    skill_count = 3
    hidden = [32, 16]
    init_std = 0.8
    learning_rate = 1e-3

    @pytest.fixture
    def ac(self):
        return ActorCritic(observation_dim(self.skill_count), PRIVILEGED_DIM, self.hidden, self.hidden, seed=0)

    @pytest.fixture
    def observations(self):
        rng = np.random.default_rng(0)
        return rng.normal(size=(5, observation_dim(self.skill_count))), rng.normal(size=(5, PRIVILEGED_DIM))

    def test_expected_values(self, ac):
        assert ac.observation_dim == 48
        assert ac.privileged_dim == PRIVILEGED_DIM
        assert ac.actor.spec.input_dim == 48
        assert ac.critic.spec.input_dim == 48 + PRIVILEGED_DIM
        assert np.exp(ac.log_std) == pytest.approx(np.full(12, self.init_std))
        assert ac.learning_rate == self.learning_rate

    def test_act(self, ac, observations):
        obs, _ = observations
        actions, log_probs, means = ac.act(obs, np.random.default_rng(1))

        assert actions.shape == means.shape == (5, 12)
        assert log_probs == pytest.approx(gaussian_log_prob(means, ac.log_std, actions))
        assert not np.allclose(actions, means)

    def test_act_deterministic(self, ac, observations):
        obs, _ = observations
        actions, _, means = ac.act(obs, deterministic=True)

        assert np.array_equal(actions, means)

    def test_stochastic_needs_rng(self, ac, observations):
        with pytest.raises(DataError):
            ac.act(observations[0])

    def test_values(self, ac, observations):
        assert ac.values(*observations).shape == (5,)

    def test_learning_rate_setter(self, ac):
        ac.learning_rate = 5e-4

        assert all(optimizer.learning_rate == 5e-4 for optimizer in ac.optimizers)

    def test_seeded(self, ac):
        again = ActorCritic(observation_dim(self.skill_count), PRIVILEGED_DIM, self.hidden, self.hidden, seed=0)
        other = ActorCritic(observation_dim(self.skill_count), PRIVILEGED_DIM, self.hidden, self.hidden, seed=1)

        assert np.array_equal(again.actor.params, ac.actor.params)
        assert not np.array_equal(other.actor.params, ac.actor.params)

    def test_arrays_round_trip(self, ac, observations):
        ac.log_std[:] = -1.0
        ac.actor_optimizer.step(np.ones_like(ac.actor.params))
        arrays = ac.to_arrays()

        restored = ActorCritic(observation_dim(self.skill_count), PRIVILEGED_DIM, self.hidden, self.hidden, seed=7)
        restored.load_arrays(arrays)

        obs = observations[0]
        assert np.array_equal(restored.act(obs, deterministic=True)[0], ac.act(obs, deterministic=True)[0])
        assert np.array_equal(restored.values(*observations), ac.values(*observations))
        assert np.array_equal(restored.log_std, ac.log_std)
        assert restored.actor_optimizer.state.step == ac.actor_optimizer.state.step
