"""Аналитическая кинематика трёхзвенной ноги.

Углы ноги: (отведение, бедро, колено). В нулевой конфигурации нога вытянута вертикально вниз, колено сгибается
назад (отрицательный угол). Положение стопы задаётся в системе координат бедра: ось x вперёд, y влево, z вверх.
"""
import logging
from typing import Sequence, Tuple

import numpy as np

from camp_locomotion.exceptions import UnreachableTargetError

LEG_NAMES = ('FL', 'FR', 'RL', 'RR')
SIDE_SIGNS = np.array([1.0, -1.0, 1.0, -1.0])
HIP_OFFSETS = np.array(
    [
        [0.1934, 0.0465, 0.0],
        [0.1934, -0.0465, 0.0],
        [-0.1934, 0.0465, 0.0],
        [-0.1934, -0.0465, 0.0],
    ]
)
LINK_LENGTHS = (0.0955, 0.213, 0.213)
NOMINAL_LEG_ANGLES = (0.0, 0.8, -1.5)

REACH_TOLERANCE = 1e-12

logger = logging.getLogger(__name__)


def forward_kinematics(
    angles: np.ndarray, link_lengths: Sequence[float] = LINK_LENGTHS, side: float = 1.0
) -> np.ndarray:
    """Положение стопы в системе координат бедра.

    Args:
        angles (:obj:`numpy.ndarray`): Углы (..., 3): отведение, бедро, колено.
        link_lengths (:obj:`Sequence` из :obj:`float`): Длины (L_hip, L_thigh, L_calf).
        side (:obj:`float` | :obj:`numpy.ndarray`): +1 для левых ног, -1 для правых.

    Returns:
        :obj:`numpy.ndarray`: Положение стопы (..., 3).
    """
    angles = np.asarray(angles, dtype=np.float64)
    l_hip, l_thigh, l_calf = link_lengths
    q1, q2, q3 = angles[..., 0], angles[..., 1], angles[..., 2]

    l1 = np.asarray(side, dtype=np.float64) * l_hip
    x = -l_thigh * np.sin(q2) - l_calf * np.sin(q2 + q3)
    zp = -l_thigh * np.cos(q2) - l_calf * np.cos(q2 + q3)
    y = l1 * np.cos(q1) - zp * np.sin(q1)
    z = l1 * np.sin(q1) + zp * np.cos(q1)

    return np.stack([x, y, z], axis=-1)


def leg_inverse_kinematics(
    foot_pos_hip_frame: np.ndarray, link_lengths: Sequence[float] = LINK_LENGTHS, side: float = 1.0
) -> np.ndarray:
    """Углы ноги, приводящие стопу в заданную точку.

    Note:
        Работает как с одной точкой (3,), так и с пакетом (..., 3). Из двух решений выбирается то, в котором колено
        согнуто назад. Точки вне кольца досягаемости не подрезаются, а приводят к ошибке.

    Args:
        foot_pos_hip_frame (:obj:`numpy.ndarray`): Положение стопы в системе координат бедра.
        link_lengths (:obj:`Sequence` из :obj:`float`): Длины (L_hip, L_thigh, L_calf).
        side (:obj:`float` | :obj:`numpy.ndarray`): +1 для левых ног, -1 для правых.

    Returns:
        :obj:`numpy.ndarray`: Углы (отведение, бедро, колено).

    Raises:
        :class:`camp_locomotion.exceptions.UnreachableTargetError`: Цель вне досягаемости.
    """
    target = np.asarray(foot_pos_hip_frame, dtype=np.float64)
    l_hip, l_thigh, l_calf = link_lengths
    x, y, z = target[..., 0], target[..., 1], target[..., 2]
    l1 = np.broadcast_to(np.asarray(side, dtype=np.float64) * l_hip, x.shape)

    r_min = abs(l_thigh - l_calf)
    r_max = l_thigh + l_calf

    radial_sq = y**2 + z**2 - l1**2
    zp = -np.sqrt(np.maximum(radial_sq, 0.0))
    r = np.sqrt(x**2 + zp**2)

    bad = (radial_sq < -REACH_TOLERANCE) | (r > r_max + REACH_TOLERANCE) | (r < r_min - REACH_TOLERANCE)
    if np.any(bad):
        index = np.unravel_index(int(np.argmax(bad)), bad.shape) if bad.ndim else ()
        _raise_unreachable(target[index], float(r[index]), (r_min, r_max))

    q1 = np.arctan2(z, y) - np.arctan2(zp, l1)
    q1 = np.arctan2(np.sin(q1), np.cos(q1))

    cos_knee = np.clip((r**2 - l_thigh**2 - l_calf**2) / (2 * l_thigh * l_calf), -1.0, 1.0)
    q3 = -np.arccos(cos_knee)
    a = l_thigh + l_calf * np.cos(q3)
    b = l_calf * np.sin(q3)
    q2 = np.arctan2(-x, -zp) - np.arctan2(b, a)

    return np.stack([q1, q2, q3], axis=-1)


def _raise_unreachable(target: np.ndarray, distance: float, reach: Tuple[float, float]) -> None:
    logger.debug(f'Unreachable foot target {target.tolist()}')
    raise UnreachableTargetError(target.tolist(), distance, reach)


def nominal_joint_positions() -> np.ndarray:
    """Номинальная стойка: 12 углов в порядке FL, FR, RL, RR × (отведение, бедро, колено)."""
    return np.tile(np.array(NOMINAL_LEG_ANGLES), 4)


def feet_in_body_frame(joint_positions: np.ndarray, link_lengths: Sequence[float] = LINK_LENGTHS) -> np.ndarray:
    """Положения четырёх стоп в системе координат корпуса.

    Args:
        joint_positions (:obj:`numpy.ndarray`): Углы (..., 12).
        link_lengths (:obj:`Sequence` из :obj:`float`): Длины звеньев.

    Returns:
        :obj:`numpy.ndarray`: Положения стоп (..., 4, 3).
    """
    angles = np.asarray(joint_positions, dtype=np.float64).reshape(*np.shape(joint_positions)[:-1], 4, 3)
    return forward_kinematics(angles, link_lengths, SIDE_SIGNS) + HIP_OFFSETS


def joints_from_feet(feet_body: np.ndarray, link_lengths: Sequence[float] = LINK_LENGTHS) -> np.ndarray:
    """Обратная задача для всех ног: стопы (..., 4, 3) в системе корпуса -> углы (..., 12)."""
    feet_body = np.asarray(feet_body, dtype=np.float64)
    angles = leg_inverse_kinematics(feet_body - HIP_OFFSETS, link_lengths, SIDE_SIGNS)
    return angles.reshape(*feet_body.shape[:-2], 12)
