from dataclasses import field
from typing import TYPE_CHECKING, List, Optional

from camp_locomotion.base import CampModel, model
from camp_locomotion.config.adversarial_config import AdversarialConfig
from camp_locomotion.exceptions import ConfigError
from camp_locomotion.motion.skills import parse_skill
from camp_locomotion.ppo.ppo_config import PpoConfig
from camp_locomotion.ppo.reward_weights import RewardWeights

if TYPE_CHECKING:
    from typing_extensions import Self

    from camp_locomotion.base import JSONType


@model
class TrainerConfig(CampModel):
    """Класс, представляющий раздел конфигурации обучения.

    Attributes:
        iterations (:obj:`int`): Число итераций политики.
        skills (:obj:`list` из :obj:`str`): Активные навыки (имена вида ``trot_2Hz``), l = len(skills).
        actor_hidden (:obj:`list` из :obj:`int`): Скрытые слои актора.
        critic_hidden (:obj:`list` из :obj:`int`): Скрытые слои критика.
        activation (:obj:`str`): Функция активации скрытых слоёв.
        init_std (:obj:`float`): Начальное стандартное отклонение действий.
        checkpoint_interval (:obj:`int`): Период сохранения чекпоинтов в итерациях, 0 отключает промежуточные.
        normalizer_update_iterations (:obj:`int`, optional): Число первых итераций, в которых обновляется
            нормализатор. По умолчанию доля `adversarial.normalizer_warmup_fraction` от `iterations`.
        ppo (:obj:`camp_locomotion.PpoConfig`): Гиперпараметры PPO.
        rewards (:obj:`camp_locomotion.RewardWeights`): Веса слагаемых награды.
        adversarial (:obj:`camp_locomotion.AdversarialConfig`): Параметры дискриминаторов.
    """

    iterations: int = 200
    skills: List[str] = field(default_factory=lambda: ['trot_2Hz', 'pace_2Hz', 'bound_2Hz'])
    actor_hidden: List[int] = field(default_factory=lambda: [512, 256, 128])
    critic_hidden: List[int] = field(default_factory=lambda: [512, 256, 128])
    activation: str = 'elu'
    init_std: float = 0.8
    checkpoint_interval: int = 50
    normalizer_update_iterations: Optional[int] = None
    ppo: PpoConfig = field(default_factory=PpoConfig)
    rewards: RewardWeights = field(default_factory=RewardWeights)
    adversarial: AdversarialConfig = field(default_factory=AdversarialConfig)

    def __post_init__(self) -> None:
        if self.iterations < 0 or self.checkpoint_interval < 0:
            raise ConfigError('iterations and checkpoint_interval must be >= 0')
        if not self.skills:
            raise ConfigError('At least one skill must be active')
        labels = [parse_skill(name) for name in self.skills]
        if len(set(labels)) != len(labels):
            raise ConfigError(f'Duplicate skills in {self.skills}')
        if self.init_std <= 0:
            raise ConfigError('init_std must be > 0')

        self._id_attrs = self._field_id_attrs()

    @property
    def skill_labels(self) -> List[int]:
        """:obj:`list` из :obj:`int`: Глобальные метки активных навыков в порядке конфигурации."""
        return [parse_skill(name) for name in self.skills]

    @property
    def normalizer_iterations(self) -> int:
        if self.normalizer_update_iterations is not None:
            return self.normalizer_update_iterations
        return int(round(self.adversarial.normalizer_warmup_fraction * self.iterations))

    @classmethod
    def de_json(cls, data: 'JSONType') -> Optional['Self']:
        """Десериализация объекта.

        Args:
            data (:obj:`dict`): Поля и значения десериализуемого объекта.

        Returns:
            :obj:`camp_locomotion.TrainerConfig`: Раздел конфигурации обучения.
        """
        if data is None:
            return None

        cls_data = cls.cleanup_data(data)
        if 'ppo' in cls_data:
            cls_data['ppo'] = PpoConfig.de_json(cls_data['ppo']) or PpoConfig()
        if 'rewards' in cls_data:
            cls_data['rewards'] = RewardWeights.de_json(cls_data['rewards']) or RewardWeights()
        if 'adversarial' in cls_data:
            cls_data['adversarial'] = AdversarialConfig.de_json(cls_data['adversarial']) or AdversarialConfig()

        return cls(**cls_data)  # type: ignore
