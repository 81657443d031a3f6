from dataclasses import dataclass, field
from typing import List

import numpy as np

from camp_locomotion.base import CampModel, model
from camp_locomotion.exceptions import ConfigError

NOMINAL_KP_GAIN = 20.0
NOMINAL_KD_GAIN = 0.5


@model
class DomainRandomizationConfig(CampModel):
    """Класс, представляющий диапазоны рандомизации динамических параметров.

    Note:
        Каждый диапазон задаётся парой [min, max]. Коэффициенты `kp_gain` и `kd_gain` задаются в абсолютных
        единицах (20 и 0.5 номинально) и пересчитываются в масштаб номинальных коэффициентов ПД регулятора.
        Если `enabled` равен :obj:`False`, используются номинальные значения.

    Attributes:
        enabled (:obj:`bool`): Включена ли рандомизация.
        link_mass_scale (:obj:`list` из :obj:`float`): Масштаб масс звеньев.
        payload_mass (:obj:`list` из :obj:`float`): Масса груза, кг.
        payload_position (:obj:`list` из :obj:`float`): Смещение груза по каждой оси, м.
        friction (:obj:`list` из :obj:`float`): Коэффициент трения с землёй.
        motor_strength (:obj:`list` из :obj:`float`): Масштаб силы моторов.
        kp_gain (:obj:`list` из :obj:`float`): Жёсткость, ×20 от [0.8, 1.2].
        kd_gain (:obj:`list` из :obj:`float`): Демпфирование, ×0.5 от [0.8, 1.2].
        init_joint_scale (:obj:`list` из :obj:`float`): Масштаб начальных углов суставов.
    """

    enabled: bool = True
    link_mass_scale: List[float] = field(default_factory=lambda: [0.8, 1.2])
    payload_mass: List[float] = field(default_factory=lambda: [0.0, 3.0])
    payload_position: List[float] = field(default_factory=lambda: [-0.1, 0.1])
    friction: List[float] = field(default_factory=lambda: [0.05, 1.75])
    motor_strength: List[float] = field(default_factory=lambda: [0.8, 1.2])
    kp_gain: List[float] = field(default_factory=lambda: [0.8 * NOMINAL_KP_GAIN, 1.2 * NOMINAL_KP_GAIN])
    kd_gain: List[float] = field(default_factory=lambda: [0.8 * NOMINAL_KD_GAIN, 1.2 * NOMINAL_KD_GAIN])
    init_joint_scale: List[float] = field(default_factory=lambda: [0.5, 1.5])

    RANGE_NAMES = (
        'link_mass_scale',
        'payload_mass',
        'payload_position',
        'friction',
        'motor_strength',
        'kp_gain',
        'kd_gain',
        'init_joint_scale',
    )

    def __post_init__(self) -> None:
        for name in self.RANGE_NAMES:
            bounds = getattr(self, name)
            if len(bounds) != 2 or bounds[0] > bounds[1]:
                raise ConfigError(f'DomainRandomizationConfig.{name} must be [min, max], got {bounds}')
        for name in ('link_mass_scale', 'friction', 'motor_strength', 'kp_gain', 'kd_gain'):
            if getattr(self, name)[0] <= 0:
                raise ConfigError(f'DomainRandomizationConfig.{name} must be positive')

        self._id_attrs = (self.enabled,) + tuple(tuple(getattr(self, name)) for name in self.RANGE_NAMES)


@dataclass
class RandomizedParams:
    """Значения, выбранные для одного эпизода одного окружения.

    Attributes:
        link_mass_scale (:obj:`float`): Масштаб масс звеньев.
        payload_mass (:obj:`float`): Масса груза, кг.
        payload_position (:obj:`numpy.ndarray`): Положение груза (3,), м.
        friction (:obj:`float`): Трение.
        motor_strength (:obj:`float`): Масштаб силы моторов.
        kp_gain (:obj:`numpy.ndarray`): Жёсткость по суставам (12,) в абсолютных единицах.
        kd_gain (:obj:`numpy.ndarray`): Демпфирование по суставам (12,) в абсолютных единицах.
        init_joint_scale (:obj:`numpy.ndarray`): Масштаб начальных углов (12,).
    """

    link_mass_scale: float = 1.0
    payload_mass: float = 0.0
    payload_position: np.ndarray = field(default_factory=lambda: np.zeros(3))
    friction: float = 1.0
    motor_strength: float = 1.0
    kp_gain: np.ndarray = field(default_factory=lambda: np.full(12, NOMINAL_KP_GAIN))
    kd_gain: np.ndarray = field(default_factory=lambda: np.full(12, NOMINAL_KD_GAIN))
    init_joint_scale: np.ndarray = field(default_factory=lambda: np.ones(12))

    @property
    def kp_scale(self) -> np.ndarray:
        return self.kp_gain / NOMINAL_KP_GAIN

    @property
    def kd_scale(self) -> np.ndarray:
        return self.kd_gain / NOMINAL_KD_GAIN


def sample_randomization(config: DomainRandomizationConfig, rng: np.random.Generator) -> RandomizedParams:
    """Равномерно выбирает параметры эпизода в заданных диапазонах.

    Note:
        При выключенной рандомизации генератор не используется, и последовательность случайных чисел окружения
        не сдвигается.
    """
    if not config.enabled:
        return RandomizedParams()

    def uniform(bounds: List[float], size: int = 0) -> np.ndarray:
        return rng.uniform(bounds[0], bounds[1], size=size or None)

    return RandomizedParams(
        link_mass_scale=float(uniform(config.link_mass_scale)),
        payload_mass=float(uniform(config.payload_mass)),
        payload_position=uniform(config.payload_position, 3),
        friction=float(uniform(config.friction)),
        motor_strength=float(uniform(config.motor_strength)),
        kp_gain=uniform(config.kp_gain, 12),
        kd_gain=uniform(config.kd_gain, 12),
        init_joint_scale=uniform(config.init_joint_scale, 12),
    )
