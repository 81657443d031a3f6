from dataclasses import dataclass
from typing import Sequence

import numpy as np

from camp_locomotion.exceptions import DataError


@dataclass
class Command:
    """Класс, представляющий команды для пакета окружений.

    Attributes:
        velocity (:obj:`numpy.ndarray`): c_t = (vx, vy, ωz) для каждого окружения, форма (N, 3).
        skill (:obj:`numpy.ndarray`): g_t, вектор навыка длины l для каждого окружения, форма (N, l).
    """

    velocity: np.ndarray
    skill: np.ndarray

    def __post_init__(self) -> None:
        self.velocity = np.atleast_2d(np.asarray(self.velocity, dtype=np.float64))
        self.skill = np.atleast_2d(np.asarray(self.skill, dtype=np.float64))
        if self.velocity.shape[1] != 3 or len(self.velocity) != len(self.skill):
            raise DataError(f'Command shapes mismatch: velocity {self.velocity.shape}, skill {self.skill.shape}')
        if np.any(self.skill < 0) or np.any(self.skill > 1):
            raise DataError('Skill vector entries must lie in [0, 1]')

    @classmethod
    def one_hot(cls, velocity: np.ndarray, skill_indices: Sequence[int], skill_count: int) -> 'Command':
        """Команда с one-hot вектором навыка.

        Args:
            velocity (:obj:`numpy.ndarray`): (N, 3) или (3,).
            skill_indices (:obj:`Sequence` из :obj:`int`): Локальные индексы навыков, по одному на окружение.
            skill_count (:obj:`int`): Число активных навыков l.
        """
        indices = np.atleast_1d(np.asarray(skill_indices, dtype=np.int64))
        if np.any(indices < 0) or np.any(indices >= skill_count):
            raise DataError(f'Skill index out of range [0, {skill_count}): {indices.tolist()}')
        skill = np.zeros((len(indices), skill_count))
        skill[np.arange(len(indices)), indices] = 1.0
        return cls(velocity=np.broadcast_to(velocity, (len(indices), 3)).copy(), skill=skill)

    def __len__(self) -> int:
        return len(self.velocity)

    @property
    def skill_indices(self) -> np.ndarray:
        return np.argmax(self.skill, axis=1)

    def select(self, indices: np.ndarray) -> 'Command':
        return Command(self.velocity[indices], self.skill[indices])
