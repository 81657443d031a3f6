import dataclasses
import logging
import os
from dataclasses import field
from typing import TYPE_CHECKING, Optional

from camp_locomotion.base import CampModel, loads, model
from camp_locomotion.config.ablation_config import AblationConfig
from camp_locomotion.config.analysis_config import AnalysisConfig
from camp_locomotion.config.dataset_config import DatasetConfig
from camp_locomotion.config.env_config import EnvConfig
from camp_locomotion.config.trainer_config import TrainerConfig
from camp_locomotion.exceptions import ConfigError

if TYPE_CHECKING:
    from typing_extensions import Self

    from camp_locomotion.base import JSONType

CONFIG_FILE_NAME = 'config.json'

logger = logging.getLogger(__name__)


@model
class ExperimentConfig(CampModel):
    """Класс, представляющий полную конфигурацию эксперимента.

    Note:
        Все поля имеют значения по умолчанию, неизвестные ключи на любом уровне приводят к
        :class:`camp_locomotion.exceptions.ConfigError`. Вся случайность выводится из `seed`.

    Attributes:
        seed (:obj:`int`): Корневое зерно.
        dataset (:obj:`camp_locomotion.DatasetConfig`): Эталонный набор данных.
        env (:obj:`camp_locomotion.EnvConfig`): Окружение.
        trainer (:obj:`camp_locomotion.TrainerConfig`): Обучение.
        ablation (:obj:`camp_locomotion.AblationConfig`): Флаги абляции.
        analysis (:obj:`camp_locomotion.AnalysisConfig`): Анализ.
    """

    seed: int = 0
    dataset: DatasetConfig = field(default_factory=DatasetConfig)
    env: EnvConfig = field(default_factory=EnvConfig)
    trainer: TrainerConfig = field(default_factory=TrainerConfig)
    ablation: AblationConfig = field(default_factory=AblationConfig)
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)

    def __post_init__(self) -> None:
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError(f'seed must be a non-negative integer, got {self.seed!r}')
        self._id_attrs = self._field_id_attrs()

    @classmethod
    def de_json(cls, data: 'JSONType') -> Optional['Self']:
        """Десериализация объекта.

        Args:
            data (:obj:`dict`): Поля и значения десериализуемого объекта.

        Returns:
            :obj:`camp_locomotion.ExperimentConfig`: Конфигурация эксперимента.
        """
        if data is None:
            return None

        cls_data = cls.cleanup_data(data)
        sections = {
            'dataset': DatasetConfig,
            'env': EnvConfig,
            'trainer': TrainerConfig,
            'ablation': AblationConfig,
            'analysis': AnalysisConfig,
        }
        for name, section in sections.items():
            if name in cls_data:
                cls_data[name] = section.de_json(cls_data[name]) or section()

        return cls(**cls_data)  # type: ignore

    @classmethod
    def from_file(cls, path: Optional[str]) -> 'ExperimentConfig':
        """Читает конфигурацию из JSON файла, :obj:`None` даёт значения по умолчанию."""
        if path is None:
            return cls()
        if not os.path.isfile(path):
            raise ConfigError(f'Config file {path} not found')

        with open(path, encoding='utf-8') as f:
            try:
                data = loads(f.read())
            except ValueError as e:
                raise ConfigError(f'{path}: invalid JSON ({e})') from e

        logger.debug(f'Loaded config from {path}')
        return cls.de_json(data) or cls()

    def replace(self, **changes: object) -> 'ExperimentConfig':
        return dataclasses.replace(self, **changes)

    def resolved(self) -> 'ExperimentConfig':
        """Конфигурация с применёнными флагами абляции, в том виде, в котором она записывается в вывод."""
        trainer = self.trainer
        if self.ablation.disable_skill_reward or self.ablation.disable_skill_disc:
            trainer = dataclasses.replace(trainer, rewards=dataclasses.replace(trainer.rewards, skill=0.0))
        if trainer.normalizer_update_iterations is None:
            trainer = dataclasses.replace(trainer, normalizer_update_iterations=trainer.normalizer_iterations)
        return dataclasses.replace(self, trainer=trainer)

    def save(self, out_dir: str) -> str:
        path = os.path.join(out_dir, CONFIG_FILE_NAME)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(self.to_json())
        return path
