from dataclasses import dataclass, fields
from typing import Dict

import numpy as np

from camp_locomotion.exceptions import DataError
from camp_locomotion.motion.amp_feature import AMP_FEATURE_DIM
from camp_locomotion.motion.transition_buffer import TransitionBatch


@dataclass
class RolloutBuffer:
    """Опыт политики за T шагов в N окружениях. Все массивы имеют ведущую форму (T, N).

    Attributes:
        observations (:obj:`numpy.ndarray`): o_t (T, N, obs).
        privileged (:obj:`numpy.ndarray`): x_t (T, N, 9).
        actions (:obj:`numpy.ndarray`): (T, N, 12).
        log_probs (:obj:`numpy.ndarray`): Логарифмы вероятностей действий (T, N).
        action_means (:obj:`numpy.ndarray`): Средние распределения при сборе (T, N, 12).
        values (:obj:`numpy.ndarray`): Оценки критика (T, N).
        task_rewards (:obj:`numpy.ndarray`): (T, N).
        style_rewards (:obj:`numpy.ndarray`): (T, N).
        skill_rewards (:obj:`numpy.ndarray`): (T, N).
        rewards (:obj:`numpy.ndarray`): Итоговая награда (T, N).
        dones (:obj:`numpy.ndarray`): Конец эпизода (T, N).
        timeouts (:obj:`numpy.ndarray`): Конец эпизода по лимиту времени (T, N).
        timeout_values (:obj:`numpy.ndarray`): Оценка критика финального состояния при таймауте, иначе 0 (T, N).
        amp_prev (:obj:`numpy.ndarray`): s_t (T, N, 43).
        amp_next (:obj:`numpy.ndarray`): s_{t+1} (T, N, 43).
        skill_labels (:obj:`numpy.ndarray`): Метка командуемого навыка (T, N).
        last_values (:obj:`numpy.ndarray`): Оценка критика после последнего шага (N,).
    """

    observations: np.ndarray
    privileged: np.ndarray
    actions: np.ndarray
    log_probs: np.ndarray
    action_means: np.ndarray
    values: np.ndarray
    task_rewards: np.ndarray
    style_rewards: np.ndarray
    skill_rewards: np.ndarray
    rewards: np.ndarray
    dones: np.ndarray
    timeouts: np.ndarray
    timeout_values: np.ndarray
    amp_prev: np.ndarray
    amp_next: np.ndarray
    skill_labels: np.ndarray
    last_values: np.ndarray

    @classmethod
    def allocate(cls, horizon: int, num_envs: int, observation_dim: int, privileged_dim: int) -> 'RolloutBuffer':
        scalar = (horizon, num_envs)
        return cls(
            observations=np.zeros((*scalar, observation_dim)),
            privileged=np.zeros((*scalar, privileged_dim)),
            actions=np.zeros((*scalar, 12)),
            log_probs=np.zeros(scalar),
            action_means=np.zeros((*scalar, 12)),
            values=np.zeros(scalar),
            task_rewards=np.zeros(scalar),
            style_rewards=np.zeros(scalar),
            skill_rewards=np.zeros(scalar),
            rewards=np.zeros(scalar),
            dones=np.zeros(scalar, dtype=bool),
            timeouts=np.zeros(scalar, dtype=bool),
            timeout_values=np.zeros(scalar),
            amp_prev=np.zeros((*scalar, AMP_FEATURE_DIM)),
            amp_next=np.zeros((*scalar, AMP_FEATURE_DIM)),
            skill_labels=np.zeros(scalar, dtype=np.int64),
            last_values=np.zeros(num_envs),
        )

    def __post_init__(self) -> None:
        shape = self.values.shape
        for f in fields(self):
            if f.name != 'last_values' and getattr(self, f.name).shape[:2] != shape:
                raise DataError(f'Rollout array {f.name} does not share the (T, N) shape {shape}')

    @property
    def horizon(self) -> int:
        return self.values.shape[0]

    @property
    def num_envs(self) -> int:
        return self.values.shape[1]

    def policy_transitions(self) -> TransitionBatch:
        """AMP пары политики, помеченные командуемым навыком."""
        return TransitionBatch(
            self.amp_prev.reshape(-1, AMP_FEATURE_DIM),
            self.amp_next.reshape(-1, AMP_FEATURE_DIM),
            self.skill_labels.reshape(-1),
        )

    def flat(self, name: str) -> np.ndarray:
        array = getattr(self, name)
        return array.reshape(self.horizon * self.num_envs, *array.shape[2:])

    def reward_means(self) -> Dict[str, float]:
        return {
            'reward_total': float(self.rewards.mean()),
            'reward_task': float(self.task_rewards.mean()),
            'reward_style': float(self.style_rewards.mean()),
            'reward_skill': float(self.skill_rewards.mean()),
        }
