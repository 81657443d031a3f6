from camp_locomotion.base import CampModel, model
from camp_locomotion.exceptions import ConfigError


@model
class PpoConfig(CampModel):
    """Класс, представляющий гиперпараметры PPO.

    Attributes:
        gamma (:obj:`float`): Коэффициент дисконтирования, [0, 1).
        gae_lambda (:obj:`float`): Параметр GAE.
        clip_ratio (:obj:`float`): Ограничение отношения вероятностей.
        epochs (:obj:`int`): Число эпох на пакет.
        minibatches (:obj:`int`): Число мини-пакетов на эпоху.
        learning_rate (:obj:`float`): Начальная скорость обучения.
        horizon (:obj:`int`): Длина роллаута T.
        num_envs (:obj:`int`): Число окружений N.
        entropy_coef (:obj:`float`): Вес бонуса энтропии.
        value_coef (:obj:`float`): Вес функции потерь критика.
        max_grad_norm (:obj:`float`): Предельная норма градиента.
        desired_kl (:obj:`float`): Целевая дивергенция для адаптации скорости обучения.
        adaptive_lr (:obj:`bool`): Адаптировать ли скорость обучения по дивергенции.
        min_learning_rate (:obj:`float`): Нижняя граница скорости обучения.
        max_learning_rate (:obj:`float`): Верхняя граница скорости обучения.
        normalize_advantages (:obj:`bool`): Нормировать ли преимущества в пакете.
    """

    gamma: float = 0.99
    gae_lambda: float = 0.95
    clip_ratio: float = 0.2
    epochs: int = 5
    minibatches: int = 4
    learning_rate: float = 1e-3
    horizon: int = 24
    num_envs: int = 64
    entropy_coef: float = 0.005
    value_coef: float = 1.0
    max_grad_norm: float = 1.0
    desired_kl: float = 0.01
    adaptive_lr: bool = True
    min_learning_rate: float = 1e-5
    max_learning_rate: float = 1e-2
    normalize_advantages: bool = True

    def __post_init__(self) -> None:
        if not 0 <= self.gamma < 1:
            raise ConfigError(f'gamma must lie in [0, 1), got {self.gamma}')
        if not 0 <= self.gae_lambda <= 1:
            raise ConfigError(f'gae_lambda must lie in [0, 1], got {self.gae_lambda}')
        if self.clip_ratio <= 0 or self.epochs < 1 or self.minibatches < 1:
            raise ConfigError('clip_ratio must be > 0, epochs and minibatches >= 1')
        if self.horizon < 1 or self.num_envs < 1:
            raise ConfigError('horizon and num_envs must be >= 1')
        if not 0 < self.min_learning_rate <= self.learning_rate <= self.max_learning_rate:
            raise ConfigError('learning_rate must lie within [min_learning_rate, max_learning_rate]')

        self._id_attrs = self._field_id_attrs()

    @property
    def batch_size(self) -> int:
        return self.horizon * self.num_envs

    @property
    def minibatch_size(self) -> int:
        return max(1, self.batch_size // self.minibatches)
