import logging
from typing import Optional, Sequence, Union

import numpy as np

from camp_locomotion.adversarial.camp_discriminators import CampDiscriminators
from camp_locomotion.ppo.actor_critic import ActorCritic
from camp_locomotion.ppo.reward_weights import RewardWeights
from camp_locomotion.ppo.rollout_buffer import RolloutBuffer
from camp_locomotion.sim.env import QuadrupedVecEnv
from camp_locomotion.sim.observation import PRIVILEGED_DIM

logger = logging.getLogger(__name__)

Number = Union[float, np.ndarray]


def compose_reward(task: Number, style: Number, skill: Number, weights: RewardWeights) -> Number:
    """r = ω_task·r_task + ω_style·r_style + ω_skill·r_skill."""
    return weights.task * task + weights.style * style + weights.skill * skill


def collect_rollouts(
    ac: ActorCritic,
    env: QuadrupedVecEnv,
    horizon: int,
    skill_labels: Sequence[int],
    rng: Optional[np.random.Generator] = None,
    deterministic: bool = False,
) -> RolloutBuffer:
    """Собирает T шагов опыта в каждом из N окружений.

    Note:
        Окружения должны быть сброшены заранее; завершившиеся эпизоды сбрасываются автоматически с новым навыком.
        Награды стиля и навыка не заполняются, см. :func:`assign_rewards`; итоговая награда до этого равна
        награде за отслеживание команды.

    Args:
        ac (:obj:`camp_locomotion.ActorCritic`): Актор и критик.
        env (:obj:`camp_locomotion.QuadrupedVecEnv`): Сброшенные окружения.
        horizon (:obj:`int`): T.
        skill_labels (:obj:`Sequence` из :obj:`int`): Глобальные метки активных навыков по локальному индексу.
        rng (:obj:`numpy.random.Generator`, optional): Генератор шума действий.
        deterministic (:obj:`bool`, optional): Действовать средним распределения.

    Returns:
        :obj:`camp_locomotion.RolloutBuffer`: Собранный опыт.
    """
    labels = np.asarray(skill_labels, dtype=np.int64)
    buffer = RolloutBuffer.allocate(horizon, env.num_envs, env.observation_dim, PRIVILEGED_DIM)

    observations = env.observations()
    privileged = env.privileged_observations()
    for t in range(horizon):
        actions, log_probs, means = ac.act(observations, rng, deterministic=deterministic)
        buffer.observations[t] = observations
        buffer.privileged[t] = privileged
        buffer.actions[t] = actions
        buffer.log_probs[t] = log_probs
        buffer.action_means[t] = means
        buffer.values[t] = ac.values(observations, privileged)

        result = env.step(actions)
        buffer.task_rewards[t] = result.task_reward
        buffer.dones[t] = result.dones
        buffer.timeouts[t] = result.timed_out
        if result.timed_out.any():
            final_values = ac.values(result.final_observations, result.final_privileged)
            buffer.timeout_values[t] = np.where(result.timed_out, final_values, 0.0)
        buffer.amp_prev[t] = result.amp_prev
        buffer.amp_next[t] = result.amp_next
        buffer.skill_labels[t] = labels[result.skill_indices]

        observations, privileged = result.observations, result.privileged

    buffer.last_values[:] = ac.values(observations, privileged)
    buffer.rewards[:] = buffer.task_rewards

    return buffer


def assign_rewards(
    buffer: RolloutBuffer, weights: RewardWeights, discriminators: Optional[CampDiscriminators] = None
) -> None:
    """Заполняет награды стиля и навыка по текущим дискриминаторам и пересчитывает итоговую награду."""
    if discriminators is not None:
        style, skill = discriminators.rewards(buffer.policy_transitions())
        buffer.style_rewards[:] = style.reshape(buffer.values.shape)
        buffer.skill_rewards[:] = skill.reshape(buffer.values.shape)
    buffer.rewards[:] = compose_reward(buffer.task_rewards, buffer.style_rewards, buffer.skill_rewards, weights)
