from dataclasses import dataclass

import numpy as np

from camp_locomotion.exceptions import DataError
from camp_locomotion.utils.rotations import is_unit_quaternion


@dataclass(frozen=True)
class MotionFrame:
    """Класс, представляющий один кадр эталонного движения.

    Attributes:
        body_position (:obj:`numpy.ndarray`): Положение корпуса (3,) в мировой системе, м.
        body_orientation (:obj:`numpy.ndarray`): Единичный кватернион (x, y, z, w).
        joint_positions (:obj:`numpy.ndarray`): Углы суставов (12,), рад.
        joint_velocities (:obj:`numpy.ndarray`): Скорости суставов (12,), рад/с.
        foot_positions (:obj:`numpy.ndarray`): Положения стоп (4, 3) в системе корпуса, м.
        foot_velocities (:obj:`numpy.ndarray`): Скорости стоп (4, 3) в системе корпуса, м/с.
    """

    body_position: np.ndarray
    body_orientation: np.ndarray
    joint_positions: np.ndarray
    joint_velocities: np.ndarray
    foot_positions: np.ndarray
    foot_velocities: np.ndarray

    def __post_init__(self) -> None:
        shapes = {
            'body_position': (3,),
            'body_orientation': (4,),
            'joint_positions': (12,),
            'joint_velocities': (12,),
            'foot_positions': (4, 3),
            'foot_velocities': (4, 3),
        }
        for name, shape in shapes.items():
            value = np.asarray(getattr(self, name), dtype=np.float64)
            if value.shape != shape:
                raise DataError(f'MotionFrame.{name} must have shape {shape}, got {value.shape}')
            object.__setattr__(self, name, value)

        if not is_unit_quaternion(self.body_orientation):
            raise DataError(f'MotionFrame.body_orientation is not a unit quaternion: {self.body_orientation}')
