from dataclasses import field
from typing import List

import numpy as np

from camp_locomotion.base import CampModel, model
from camp_locomotion.exceptions import ConfigError
from camp_locomotion.motion.kinematics import LINK_LENGTHS, NOMINAL_LEG_ANGLES


@model
class RobotModel(CampModel):
    """Класс, представляющий упрощённую модель четвероногого робота.

    Note:
        Массивы по суставам имеют длину 12 в порядке FL, FR, RL, RR × (отведение, бедро, колено). Массивы по звеньям
        ноги имеют длину 3 и одинаковы для всех ног.

    Attributes:
        base_mass (:obj:`float`): Масса корпуса, кг.
        link_masses (:obj:`list` из :obj:`float`): Массы звеньев ноги, кг.
        link_lengths (:obj:`list` из :obj:`float`): Длины (L_hip, L_thigh, L_calf), м.
        nominal_joint_positions (:obj:`list` из :obj:`float`): Номинальная стойка θ_init, рад.
        torque_limits (:obj:`list` из :obj:`float`): Предельные моменты, Н·м.
        joint_lower_limits (:obj:`list` из :obj:`float`): Нижние пределы углов, рад.
        joint_upper_limits (:obj:`list` из :obj:`float`): Верхние пределы углов, рад.
        joint_inertia (:obj:`list` из :obj:`float`): Приведённая инерция сустава по типу звена, кг·м².
    """

    base_mass: float = 6.921
    link_masses: List[float] = field(default_factory=lambda: [0.678, 1.152, 0.154])
    link_lengths: List[float] = field(default_factory=lambda: list(LINK_LENGTHS))
    nominal_joint_positions: List[float] = field(default_factory=lambda: list(NOMINAL_LEG_ANGLES) * 4)
    torque_limits: List[float] = field(default_factory=lambda: [23.7, 23.7, 45.43] * 4)
    joint_lower_limits: List[float] = field(default_factory=lambda: [-1.05, -1.57, -2.72] * 4)
    joint_upper_limits: List[float] = field(default_factory=lambda: [1.05, 3.49, -0.84] * 4)
    joint_inertia: List[float] = field(default_factory=lambda: [0.01, 0.01, 0.006])

    def __post_init__(self) -> None:
        if self.base_mass <= 0 or len(self.link_masses) != 3 or any(m <= 0 for m in self.link_masses):
            raise ConfigError('RobotModel masses must be positive (base and 3 link masses)')
        if len(self.link_lengths) != 3 or any(length <= 0 for length in self.link_lengths):
            raise ConfigError('RobotModel link_lengths must be 3 positive values')
        if len(self.joint_inertia) != 3 or any(i <= 0 for i in self.joint_inertia):
            raise ConfigError('RobotModel joint_inertia must be 3 positive values')
        for name in ('nominal_joint_positions', 'torque_limits', 'joint_lower_limits', 'joint_upper_limits'):
            if len(getattr(self, name)) != 12:
                raise ConfigError(f'RobotModel.{name} must have 12 values')
        if any(t <= 0 for t in self.torque_limits):
            raise ConfigError('RobotModel torque_limits must be positive')

        self._id_attrs = self._field_id_attrs()

    @property
    def nominal(self) -> np.ndarray:
        return np.asarray(self.nominal_joint_positions, dtype=np.float64)

    @property
    def lower(self) -> np.ndarray:
        return np.asarray(self.joint_lower_limits, dtype=np.float64)

    @property
    def upper(self) -> np.ndarray:
        return np.asarray(self.joint_upper_limits, dtype=np.float64)

    @property
    def torque_limit_array(self) -> np.ndarray:
        return np.asarray(self.torque_limits, dtype=np.float64)

    @property
    def inertia_array(self) -> np.ndarray:
        """:obj:`numpy.ndarray`: Инерция по 12 суставам."""
        return np.tile(np.asarray(self.joint_inertia, dtype=np.float64), 4)

    @property
    def total_mass(self) -> float:
        return self.base_mass + 4 * sum(self.link_masses)
