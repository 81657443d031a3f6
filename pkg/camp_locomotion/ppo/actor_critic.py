import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from camp_locomotion.config.trainer_config import TrainerConfig
from camp_locomotion.exceptions import DataError
from camp_locomotion.nn.adam import Adam, OptimizerState
from camp_locomotion.nn.mlp import Mlp
from camp_locomotion.nn.mlp_spec import MlpSpec
from camp_locomotion.ppo.policy import gaussian_log_prob
from camp_locomotion.utils.seeding import stream_rng

ACTION_DIM = 12
POLICY_OUTPUT_GAIN = 0.01

logger = logging.getLogger(__name__)


class ActorCritic:
    """Асимметричная пара актор-критик.

    Note:
        Актор видит только наблюдение o_t и задаёт диагональное нормальное распределение действий с обучаемыми,
        не зависящими от состояния log σ. Критик видит (o_t, x_t), где x_t включает привилегированное состояние.

    Args:
        observation_dim (:obj:`int`): Размерность o_t.
        privileged_dim (:obj:`int`): Размерность x_t.
        actor_hidden (:obj:`list` из :obj:`int`): Скрытые слои актора.
        critic_hidden (:obj:`list` из :obj:`int`): Скрытые слои критика.
        activation (:obj:`str`, optional): Активация скрытых слоёв.
        init_std (:obj:`float`, optional): Начальное стандартное отклонение.
        learning_rate (:obj:`float`, optional): Скорость обучения всех трёх оптимизаторов.
        seed (:obj:`int`, optional): Корневое зерно инициализации.
    """

    def __init__(
        self,
        observation_dim: int,
        privileged_dim: int,
        actor_hidden: List[int],
        critic_hidden: List[int],
        activation: str = 'elu',
        init_std: float = 0.8,
        learning_rate: float = 1e-3,
        seed: int = 0,
    ) -> None:
        self.observation_dim = observation_dim
        self.privileged_dim = privileged_dim
        actor_spec = MlpSpec.build(
            observation_dim, actor_hidden, ACTION_DIM, activation=activation, output_gain=POLICY_OUTPUT_GAIN
        )
        self.actor = Mlp(actor_spec, rng=stream_rng(seed, 301))
        self.critic = Mlp(
            MlpSpec.build(observation_dim + privileged_dim, critic_hidden, 1, activation=activation),
            rng=stream_rng(seed, 302),
        )
        self.log_std = np.full(ACTION_DIM, np.log(init_std))

        self.actor_optimizer = Adam(self.actor.params, learning_rate)
        self.log_std_optimizer = Adam(self.log_std, learning_rate)
        self.critic_optimizer = Adam(self.critic.params, learning_rate)

    @classmethod
    def from_config(
        cls, config: TrainerConfig, observation_dim: int, privileged_dim: int, seed: int = 0
    ) -> 'ActorCritic':
        return cls(
            observation_dim,
            privileged_dim,
            config.actor_hidden,
            config.critic_hidden,
            config.activation,
            config.init_std,
            config.ppo.learning_rate,
            seed,
        )

    @property
    def optimizers(self) -> Tuple[Adam, Adam, Adam]:
        return self.actor_optimizer, self.log_std_optimizer, self.critic_optimizer

    @property
    def learning_rate(self) -> float:
        return self.actor_optimizer.learning_rate

    @learning_rate.setter
    def learning_rate(self, value: float) -> None:
        for optimizer in self.optimizers:
            optimizer.learning_rate = value

    def critic_inputs(self, observations: np.ndarray, privileged: np.ndarray) -> np.ndarray:
        return np.concatenate([observations, privileged], axis=-1)

    def values(self, observations: np.ndarray, privileged: np.ndarray) -> np.ndarray:
        return self.critic(self.critic_inputs(observations, privileged))[..., 0]

    def act(
        self, observations: np.ndarray, rng: Optional[np.random.Generator] = None, deterministic: bool = False
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Действия, их логарифмы вероятностей и средние распределения.

        Args:
            observations (:obj:`numpy.ndarray`): Наблюдения (N, obs).
            rng (:obj:`numpy.random.Generator`, optional): Генератор шума, обязателен для стохастической политики.
            deterministic (:obj:`bool`, optional): Вернуть среднее без шума.

        Returns:
            :obj:`tuple`: (actions, log_probs, means).
        """
        mean = self.actor(observations)
        if deterministic:
            actions = mean.copy()
        else:
            if rng is None:
                raise DataError('Stochastic actions need a random generator')
            actions = mean + np.exp(self.log_std) * rng.standard_normal(mean.shape)
        return actions, gaussian_log_prob(mean, self.log_std, actions), mean

    def to_arrays(self, prefix: str = 'ac.') -> Dict[str, np.ndarray]:
        arrays = {
            f'{prefix}actor': self.actor.params,
            f'{prefix}critic': self.critic.params,
            f'{prefix}log_std': self.log_std,
        }
        for name, optimizer in zip(('actor_opt', 'log_std_opt', 'critic_opt'), self.optimizers):
            arrays.update(optimizer.state.to_arrays(f'{prefix}{name}.'))
        return arrays

    def load_arrays(self, arrays: Dict[str, np.ndarray], prefix: str = 'ac.') -> None:
        self.actor.set_params(arrays[f'{prefix}actor'])
        self.critic.set_params(arrays[f'{prefix}critic'])
        self.log_std[...] = arrays[f'{prefix}log_std']
        for name, optimizer in zip(('actor_opt', 'log_std_opt', 'critic_opt'), self.optimizers):
            optimizer.state = OptimizerState.from_arrays(arrays, f'{prefix}{name}.')
