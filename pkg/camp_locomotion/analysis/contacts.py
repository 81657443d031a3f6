import logging
from dataclasses import dataclass

import numpy as np

from camp_locomotion.exceptions import DataError, EmptySelectionError
from camp_locomotion.motion.kinematics import LEG_NAMES

logger = logging.getLogger(__name__)


@dataclass
class ContactMetrics:
    """Коэффициенты опоры и относительные фазы ног FL, FR, RL, RR.

    Attributes:
        duty_factors (:obj:`numpy.ndarray`): Доля времени в опоре (4,).
        phase_offsets (:obj:`numpy.ndarray`): Фазовый сдвиг ноги относительно FL в долях цикла, [0, 1) (4,).
    """

    duty_factors: np.ndarray
    phase_offsets: np.ndarray


def circular_distance(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Расстояние между фазами на окружности длины 1."""
    d = np.mod(np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64), 1.0)
    return np.minimum(d, 1.0 - d)


def phase_signature_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Наибольшее по ногам круговое расстояние между двумя наборами фазовых сдвигов."""
    return float(np.max(circular_distance(a, b)))


def contact_metrics(contacts: np.ndarray, dt: float, frequency: float, min_cycles: float = 2.0) -> ContactMetrics:
    """Коэффициенты опоры и фазовые сдвиги по последовательности опор.

    Note:
        Фаза касания ноги i: frac(f·t) в моменты переходов 0 -> 1. Сдвиг ноги равен круговому среднему фаз касания
        FL минус круговое среднее фаз касания ноги i, поэтому нога с большим сдвигом касается земли раньше.

    Args:
        contacts (:obj:`numpy.ndarray`): Признаки опоры (T, 4).
        dt (:obj:`float`): Шаг по времени, с.
        frequency (:obj:`float`): Частота походки, Гц.
        min_cycles (:obj:`float`, optional): Минимальное число циклов в данных.

    Returns:
        :obj:`camp_locomotion.analysis.contacts.ContactMetrics`: Коэффициенты опоры и сдвиги.

    Raises:
        :class:`camp_locomotion.exceptions.DataError`: Данных меньше `min_cycles` циклов.
        :class:`camp_locomotion.exceptions.EmptySelectionError`: Нога ни разу не коснулась земли после отрыва.
    """
    contacts = np.asarray(contacts).astype(bool)
    if contacts.ndim != 2 or contacts.shape[1] != 4:
        raise DataError(f'Contacts must have shape (T, 4), got {contacts.shape}')
    if len(contacts) * dt * frequency < min_cycles - 1e-9:
        raise DataError(f'Contact sequence covers fewer than {min_cycles} gait cycles')

    duty = contacts.mean(axis=0)
    mean_phase = np.zeros(4)
    for leg in range(4):
        onsets = np.flatnonzero(contacts[1:, leg] & ~contacts[:-1, leg]) + 1
        if not len(onsets):
            raise EmptySelectionError(f'Leg {LEG_NAMES[leg]} never touches down')
        angles = 2.0 * np.pi * np.mod(frequency * onsets * dt, 1.0)
        mean_phase[leg] = np.mod(np.arctan2(np.sin(angles).mean(), np.cos(angles).mean()) / (2.0 * np.pi), 1.0)

    offsets = np.mod(mean_phase[0] - mean_phase, 1.0)
    offsets[np.isclose(offsets, 1.0)] = 0.0

    return ContactMetrics(duty_factors=duty, phase_offsets=offsets)
