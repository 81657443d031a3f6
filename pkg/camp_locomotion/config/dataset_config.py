from dataclasses import field
from typing import List

from camp_locomotion.base import CampModel, model
from camp_locomotion.exceptions import ConfigError
from camp_locomotion.motion.gait_spec import GAITS
from camp_locomotion.motion.skills import skill_label


@model
class DatasetConfig(CampModel):
    """Класс, представляющий раздел конфигурации эталонного набора данных.

    Attributes:
        gaits (:obj:`list` из :obj:`str`): Походки.
        frequencies (:obj:`list` из :obj:`float`): Частоты шага, Гц.
        duration (:obj:`float`): Длительность клипа, с.
        dt (:obj:`float`): Интервал между кадрами, с.
        command_velocity (:obj:`list` из :obj:`float`): Команда скорости эталонных клипов (vx, vy, ωz).
        body_height (:obj:`float`): Высота корпуса в эталонах, м.
        transitions_per_clip (:obj:`int`): Число предзагружаемых пар на клип.
    """

    gaits: List[str] = field(default_factory=lambda: list(GAITS))
    frequencies: List[float] = field(default_factory=lambda: [2.0, 4.0])
    duration: float = 4.0
    dt: float = 0.02
    command_velocity: List[float] = field(default_factory=lambda: [0.5, 0.0, 0.0])
    body_height: float = 0.30
    transitions_per_clip: int = 2000

    def __post_init__(self) -> None:
        if not self.gaits or not self.frequencies:
            raise ConfigError('Dataset needs at least one gait and one frequency')
        unknown = [gait for gait in self.gaits if gait not in GAITS]
        if unknown:
            raise ConfigError(f'Unknown gaits {unknown}, expected a subset of {GAITS}')
        for frequency in self.frequencies:
            skill_label(self.gaits[0], frequency)
        if self.duration <= 0 or self.dt <= 0 or self.transitions_per_clip < 1:
            raise ConfigError('duration, dt and transitions_per_clip must be positive')
        if len(self.command_velocity) != 3:
            raise ConfigError('command_velocity must have 3 components')

        self._id_attrs = self._field_id_attrs()
