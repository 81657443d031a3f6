import logging
from dataclasses import dataclass

import numpy as np

from camp_locomotion.exceptions import NonFiniteError
from camp_locomotion.nn.adam import clip_grad_norm
from camp_locomotion.ppo.actor_critic import ActorCritic
from camp_locomotion.ppo.gae import gae_advantages
from camp_locomotion.ppo.policy import gaussian_entropy, gaussian_kl, surrogate_loss, value_loss
from camp_locomotion.ppo.ppo_config import PpoConfig
from camp_locomotion.ppo.rollout_buffer import RolloutBuffer

logger = logging.getLogger(__name__)


@dataclass
class UpdateStats:
    """Средние по мини-пакетам величины одного обновления PPO."""

    policy_loss: float = 0.0
    value_loss: float = 0.0
    entropy: float = 0.0
    kl: float = 0.0
    clip_fraction: float = 0.0
    grad_norm: float = 0.0
    learning_rate: float = 0.0


def adapt_learning_rate(learning_rate: float, kl: float, config: PpoConfig) -> float:
    """Уменьшает скорость обучения в 1.5 раза при KL > 2·цели и увеличивает при KL < цели/2."""
    if kl > 2.0 * config.desired_kl:
        learning_rate /= 1.5
    elif 0.0 < kl < 0.5 * config.desired_kl:
        learning_rate *= 1.5
    return float(np.clip(learning_rate, config.min_learning_rate, config.max_learning_rate))


def ppo_update(ac: ActorCritic, buffer: RolloutBuffer, config: PpoConfig, rng: np.random.Generator) -> UpdateStats:
    """Несколько эпох обновления актора и критика по перемешанным мини-пакетам.

    Note:
        Лосс мини-пакета: обрезанный суррогат + value_coef·MSE критика − entropy_coef·энтропия. Градиенты всех
        трёх групп параметров обрезаются по общей норме. При включённой адаптации скорость обучения меняется по
        KL между распределением при сборе и текущим распределением.

    Args:
        ac (:obj:`camp_locomotion.ActorCritic`): Актор и критик.
        buffer (:obj:`camp_locomotion.RolloutBuffer`): Собранный опыт с итоговыми наградами.
        config (:obj:`camp_locomotion.PpoConfig`): Гиперпараметры PPO.
        rng (:obj:`numpy.random.Generator`): Генератор перемешивания.

    Returns:
        :obj:`camp_locomotion.ppo.ppo_update.UpdateStats`: Средние лоссы и KL.
    """
    advantages, returns = gae_advantages(
        buffer.rewards,
        buffer.values,
        buffer.dones,
        buffer.last_values,
        config.gamma,
        config.gae_lambda,
        timeouts=buffer.timeouts,
        timeout_values=buffer.timeout_values,
        normalize=config.normalize_advantages,
    )

    observations = buffer.flat('observations')
    critic_inputs = ac.critic_inputs(observations, buffer.flat('privileged'))
    actions = buffer.flat('actions')
    old_log_probs = buffer.flat('log_probs')
    old_means = buffer.flat('action_means')
    advantages = advantages.reshape(-1)
    returns = returns.reshape(-1)
    old_log_std = ac.log_std.copy()

    batch = len(advantages)
    size = min(config.minibatch_size, batch)
    stats = UpdateStats()
    count = 0

    for _ in range(config.epochs):
        order = rng.permutation(batch)
        for start in range(0, batch - size + 1, size):
            idx = order[start : start + size]

            actor_cache = ac.actor.forward_cache(observations[idx])
            mean = actor_cache.output

            kl = gaussian_kl(old_means[idx], old_log_std, mean, ac.log_std)
            if config.adaptive_lr:
                ac.learning_rate = adapt_learning_rate(ac.learning_rate, kl, config)

            surrogate = surrogate_loss(
                mean, ac.log_std, actions[idx], old_log_probs[idx], advantages[idx], config.clip_ratio
            )
            critic_cache = ac.critic.forward_cache(critic_inputs[idx])
            v_loss, v_grad = value_loss(critic_cache.output[:, 0], returns[idx])
            entropy = gaussian_entropy(ac.log_std)

            actor_grad, _ = ac.actor.backward(actor_cache, surrogate.grad_mean)
            log_std_grad = surrogate.grad_log_std - config.entropy_coef
            critic_grad, _ = ac.critic.backward(critic_cache, config.value_coef * v_grad[:, None])

            grads = np.concatenate([actor_grad, log_std_grad, critic_grad])
            if not np.all(np.isfinite(grads)):
                raise NonFiniteError('Non-finite PPO gradient')
            grads, norm = clip_grad_norm(grads, config.max_grad_norm)

            split_a = len(actor_grad)
            split_b = split_a + len(log_std_grad)
            ac.actor_optimizer.step(grads[:split_a])
            ac.log_std_optimizer.step(grads[split_a:split_b])
            ac.critic_optimizer.step(grads[split_b:])

            stats.policy_loss += surrogate.loss
            stats.value_loss += v_loss
            stats.entropy += entropy
            stats.kl += kl
            stats.clip_fraction += surrogate.clip_fraction
            stats.grad_norm += norm
            count += 1

    for name in ('policy_loss', 'value_loss', 'entropy', 'kl', 'clip_fraction', 'grad_norm'):
        setattr(stats, name, getattr(stats, name) / max(count, 1))
    stats.learning_rate = ac.learning_rate

    return stats
