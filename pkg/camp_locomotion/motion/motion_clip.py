from dataclasses import dataclass
from typing import Iterator, List, Optional

import numpy as np

from camp_locomotion.exceptions import DataError
from camp_locomotion.motion.gait_spec import GaitSpec
from camp_locomotion.motion.motion_frame import MotionFrame
from camp_locomotion.utils.rotations import body_to_world

CONTACT_HEIGHT = 1e-6


@dataclass
class MotionClip:
    """Класс, представляющий размеченную эталонную траекторию.

    Note:
        Кадры хранятся поколоночно: каждое поле это массив с ведущей осью по кадрам. Объекты
        :class:`camp_locomotion.MotionFrame` создаются по запросу.

    Attributes:
        label (:obj:`int`): Метка навыка.
        dt (:obj:`float`): Интервал между кадрами, с.
        body_positions (:obj:`numpy.ndarray`): (n, 3).
        body_orientations (:obj:`numpy.ndarray`): (n, 4).
        joint_positions (:obj:`numpy.ndarray`): (n, 12).
        joint_velocities (:obj:`numpy.ndarray`): (n, 12).
        foot_positions (:obj:`numpy.ndarray`): (n, 4, 3), система корпуса.
        foot_velocities (:obj:`numpy.ndarray`): (n, 4, 3), система корпуса.
        spec (:obj:`camp_locomotion.GaitSpec`, optional): Параметры, из которых клип сгенерирован.
    """

    label: int
    dt: float
    body_positions: np.ndarray
    body_orientations: np.ndarray
    joint_positions: np.ndarray
    joint_velocities: np.ndarray
    foot_positions: np.ndarray
    foot_velocities: np.ndarray
    spec: Optional[GaitSpec] = None

    def __post_init__(self) -> None:
        if not self.dt > 0:
            raise DataError(f'Clip dt must be > 0, got {self.dt}')
        n = len(self.body_positions)
        expected = {
            'body_positions': (n, 3),
            'body_orientations': (n, 4),
            'joint_positions': (n, 12),
            'joint_velocities': (n, 12),
            'foot_positions': (n, 4, 3),
            'foot_velocities': (n, 4, 3),
        }
        for name, shape in expected.items():
            value = np.asarray(getattr(self, name), dtype=np.float64)
            if value.shape != shape:
                raise DataError(f'MotionClip.{name} must have shape {shape}, got {value.shape}')
            setattr(self, name, value)

    @classmethod
    def from_frames(
        cls, label: int, dt: float, frames: List[MotionFrame], spec: Optional[GaitSpec] = None
    ) -> 'MotionClip':
        if not frames:
            raise DataError('A clip needs at least one frame')
        return cls(
            label=label,
            dt=dt,
            body_positions=np.stack([f.body_position for f in frames]),
            body_orientations=np.stack([f.body_orientation for f in frames]),
            joint_positions=np.stack([f.joint_positions for f in frames]),
            joint_velocities=np.stack([f.joint_velocities for f in frames]),
            foot_positions=np.stack([f.foot_positions for f in frames]),
            foot_velocities=np.stack([f.foot_velocities for f in frames]),
            spec=spec,
        )

    def __len__(self) -> int:
        return len(self.body_positions)

    def frame(self, index: int) -> MotionFrame:
        return MotionFrame(
            body_position=self.body_positions[index],
            body_orientation=self.body_orientations[index],
            joint_positions=self.joint_positions[index],
            joint_velocities=self.joint_velocities[index],
            foot_positions=self.foot_positions[index],
            foot_velocities=self.foot_velocities[index],
        )

    @property
    def frames(self) -> List[MotionFrame]:
        """:obj:`list` из :obj:`camp_locomotion.MotionFrame`: Все кадры по порядку."""
        return list(iter(self))

    def __iter__(self) -> Iterator[MotionFrame]:
        for index in range(len(self)):
            yield self.frame(index)

    @property
    def duration(self) -> float:
        return self.dt * (len(self) - 1)

    def foot_heights(self) -> np.ndarray:
        """Высоты стоп над плоскостью земли (n, 4)."""
        world = np.stack(
            [body_to_world(self.body_orientations, self.foot_positions[:, leg]) for leg in range(4)], axis=1
        )
        return world[..., 2] + self.body_positions[:, None, 2]

    def contacts(self, threshold: float = CONTACT_HEIGHT) -> np.ndarray:
        """Признаки опоры по ногам (n, 4) из высоты стоп."""
        return (self.foot_heights() <= threshold).astype(np.int8)
