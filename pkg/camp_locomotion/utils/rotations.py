"""Вспомогательные функции для ориентации корпуса.

Кватернионы хранятся в порядке (x, y, z, w), как в :class:`scipy.spatial.transform.Rotation`.
"""
from typing import Tuple

import numpy as np
from scipy.spatial.transform import Rotation

IDENTITY_QUAT = np.array([0.0, 0.0, 0.0, 1.0])
GRAVITY_DIRECTION = np.array([0.0, 0.0, -1.0])


def yaw_quaternion(yaw: float) -> np.ndarray:
    """Кватернион поворота вокруг вертикальной оси.

    Args:
        yaw (:obj:`float`): Угол рыскания в радианах.

    Returns:
        :obj:`numpy.ndarray`: Кватернион (x, y, z, w).
    """
    return np.array([0.0, 0.0, np.sin(0.5 * yaw), np.cos(0.5 * yaw)])


def euler_quaternion(roll: float, pitch: float, yaw: float) -> np.ndarray:
    return Rotation.from_euler('xyz', [roll, pitch, yaw]).as_quat()


def world_to_body(quat: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Переводит векторы из мировой системы координат в систему координат корпуса.

    Args:
        quat (:obj:`numpy.ndarray`): Ориентация корпуса, одна (4,) или пакет (N, 4).
        vectors (:obj:`numpy.ndarray`): Векторы (3,) или (N, 3).

    Returns:
        :obj:`numpy.ndarray`: Векторы в системе координат корпуса.
    """
    return Rotation.from_quat(quat).inv().apply(vectors)


def body_to_world(quat: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    return Rotation.from_quat(quat).apply(vectors)


def gravity_projection(quat: np.ndarray) -> np.ndarray:
    """Проекция направления гравитации (0, 0, -1) на оси корпуса."""
    quat = np.asarray(quat, dtype=np.float64)
    if quat.ndim == 2:
        return world_to_body(quat, np.broadcast_to(GRAVITY_DIRECTION, (quat.shape[0], 3)))
    return world_to_body(quat, GRAVITY_DIRECTION)


def body_angular_velocity(quat: np.ndarray, prev_quat: np.ndarray, dt: float) -> np.ndarray:
    """Угловая скорость корпуса по двум последовательным ориентациям.

    Note:
        Приращение ``R · R_prev⁻¹`` переводится в вектор поворота, делится на `dt` и выражается в системе
        координат текущей ориентации.

    Args:
        quat (:obj:`numpy.ndarray`): Текущая ориентация.
        prev_quat (:obj:`numpy.ndarray`): Предыдущая ориентация.
        dt (:obj:`float`): Интервал между ориентациями.

    Returns:
        :obj:`numpy.ndarray`: Угловая скорость (3,) в рад/с.
    """
    current = Rotation.from_quat(quat)
    delta = current * Rotation.from_quat(prev_quat).inv()
    return current.inv().apply(delta.as_rotvec() / dt)


def roll_pitch(quat: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Крен и тангаж (рад) для одной ориентации или пакета ориентаций."""
    angles = Rotation.from_quat(quat).as_euler('xyz')
    return angles[..., 0], angles[..., 1]


def is_unit_quaternion(quat: np.ndarray, tol: float = 1e-9) -> bool:
    return bool(abs(np.linalg.norm(quat) - 1.0) <= tol)
