from dataclasses import field
from typing import List, Optional

import numpy as np

from camp_locomotion.base import CampModel, model
from camp_locomotion.exceptions import ConfigError

CALF_JOINTS = (2, 5, 8, 11)


def _default_kp() -> List[float]:
    return [40.0 if j in CALF_JOINTS else 30.0 for j in range(12)]


@model
class PdParams(CampModel):
    """Класс, представляющий параметры низкоуровневого ПД регулятора.

    Attributes:
        kp (:obj:`list` из :obj:`float`): Коэффициенты жёсткости: 40 для коленных суставов, 30 для остальных.
        kd (:obj:`list` из :obj:`float`): Коэффициенты демпфирования.
        action_scale (:obj:`float`): Масштаб k в θ_target = θ_init + k·a, рад на единицу действия.
    """

    kp: List[float] = field(default_factory=_default_kp)
    kd: List[float] = field(default_factory=lambda: [1.0] * 12)
    action_scale: float = 0.25

    def __post_init__(self) -> None:
        if len(self.kp) != 12 or len(self.kd) != 12:
            raise ConfigError('PdParams kp and kd must have 12 values')
        if any(v <= 0 for v in self.kp) or any(v <= 0 for v in self.kd):
            raise ConfigError('PdParams kp and kd must be positive')
        if self.action_scale <= 0:
            raise ConfigError('PdParams action_scale must be positive')

        self._id_attrs = self._field_id_attrs()

    @property
    def kp_array(self) -> np.ndarray:
        return np.asarray(self.kp, dtype=np.float64)

    @property
    def kd_array(self) -> np.ndarray:
        return np.asarray(self.kd, dtype=np.float64)


def pd_torque(
    theta_target: np.ndarray,
    theta: np.ndarray,
    theta_dot: np.ndarray,
    pd: PdParams,
    torque_limits: Optional[np.ndarray] = None,
    motor_strength: float = 1.0,
    kp: Optional[np.ndarray] = None,
    kd: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Момент ПД регулятора τ = kp (θ_target − θ) − kd θ̇.

    Args:
        theta_target (:obj:`numpy.ndarray`): Целевые углы (..., 12).
        theta (:obj:`numpy.ndarray`): Текущие углы (..., 12).
        theta_dot (:obj:`numpy.ndarray`): Скорости (..., 12).
        pd (:obj:`camp_locomotion.PdParams`): Номинальные коэффициенты.
        torque_limits (:obj:`numpy.ndarray`, optional): Предельные моменты, масштабируются `motor_strength`.
        motor_strength (:obj:`float` | :obj:`numpy.ndarray`, optional): Масштаб силы мотора.
        kp (:obj:`numpy.ndarray`, optional): Переопределение жёсткости (например, после рандомизации).
        kd (:obj:`numpy.ndarray`, optional): Переопределение демпфирования.

    Returns:
        :obj:`numpy.ndarray`: Моменты (..., 12), Н·м.
    """
    kp = pd.kp_array if kp is None else kp
    kd = pd.kd_array if kd is None else kd

    torque = kp * (np.asarray(theta_target) - np.asarray(theta)) - kd * np.asarray(theta_dot)
    if torque_limits is None:
        return torque

    strength = np.asarray(motor_strength, dtype=np.float64)
    if strength.ndim:
        strength = strength[..., None]
    limit = np.asarray(torque_limits) * strength
    return np.clip(torque, -limit, limit)


def apply_action(action: np.ndarray, pd: PdParams, nominal: np.ndarray) -> np.ndarray:
    """Целевые углы θ_target = θ_init + k·a."""
    return np.asarray(nominal, dtype=np.float64) + pd.action_scale * np.asarray(action, dtype=np.float64)
