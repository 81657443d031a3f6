from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from camp_locomotion.exceptions import DataError
from camp_locomotion.motion.motion_clip import MotionClip
from camp_locomotion.motion.motion_frame import MotionFrame
from camp_locomotion.utils.rotations import body_angular_velocity, world_to_body

AMP_FEATURE_LAYOUT: Tuple[Tuple[str, int], ...] = (
    ('joint_positions', 12),
    ('joint_velocities', 12),
    ('base_linear_velocity', 3),
    ('base_angular_velocity', 3),
    ('base_height', 1),
    ('foot_positions', 12),
)
AMP_FEATURE_DIM = sum(width for _, width in AMP_FEATURE_LAYOUT)


def _layout_slices() -> Dict[str, slice]:
    slices = {}
    start = 0
    for name, width in AMP_FEATURE_LAYOUT:
        slices[name] = slice(start, start + width)
        start += width
    return slices


AMP_FEATURE_SLICES = _layout_slices()


@dataclass(frozen=True)
class AmpFeature:
    """Класс, представляющий наблюдение дискриминатора (43 значения).

    Note:
        Порядок в плоском векторе: углы суставов, скорости суставов, линейная скорость корпуса, угловая скорость
        корпуса, высота корпуса, положения стоп. Все величины в системе координат корпуса.

    Attributes:
        joint_positions (:obj:`numpy.ndarray`): (12,).
        joint_velocities (:obj:`numpy.ndarray`): (12,).
        base_linear_velocity (:obj:`numpy.ndarray`): (3,).
        base_angular_velocity (:obj:`numpy.ndarray`): (3,).
        base_height (:obj:`numpy.ndarray`): (1,).
        foot_positions (:obj:`numpy.ndarray`): (12,).
    """

    joint_positions: np.ndarray
    joint_velocities: np.ndarray
    base_linear_velocity: np.ndarray
    base_angular_velocity: np.ndarray
    base_height: np.ndarray
    foot_positions: np.ndarray

    def flatten(self) -> np.ndarray:
        parts = [np.asarray(getattr(self, name), dtype=np.float64).ravel() for name, _ in AMP_FEATURE_LAYOUT]
        return np.concatenate(parts)

    @classmethod
    def unflatten(cls, vector: np.ndarray) -> 'AmpFeature':
        vector = np.asarray(vector, dtype=np.float64)
        if vector.shape != (AMP_FEATURE_DIM,):
            raise DataError(f'AMP feature vector must have shape ({AMP_FEATURE_DIM},), got {vector.shape}')
        return cls(**{name: vector[AMP_FEATURE_SLICES[name]].copy() for name, _ in AMP_FEATURE_LAYOUT})


def extract_amp_feature(frame: MotionFrame, prev_frame: MotionFrame, dt: float) -> AmpFeature:
    """Извлекает наблюдение дискриминатора из двух последовательных кадров.

    Note:
        Скорости суставов берутся из кадра. Скорости корпуса в кадрах не хранятся и вычисляются разностью
        кадров, после чего выражаются в системе координат `frame`.

    Args:
        frame (:obj:`camp_locomotion.MotionFrame`): Текущий кадр.
        prev_frame (:obj:`camp_locomotion.MotionFrame`): Предыдущий кадр.
        dt (:obj:`float`): Интервал между кадрами.

    Returns:
        :obj:`camp_locomotion.AmpFeature`: Наблюдение дискриминатора.
    """
    if not dt > 0:
        raise DataError(f'dt must be > 0, got {dt}')

    world_velocity = (frame.body_position - prev_frame.body_position) / dt

    return AmpFeature(
        joint_positions=frame.joint_positions.copy(),
        joint_velocities=frame.joint_velocities.copy(),
        base_linear_velocity=world_to_body(frame.body_orientation, world_velocity),
        base_angular_velocity=body_angular_velocity(frame.body_orientation, prev_frame.body_orientation, dt),
        base_height=np.array([frame.body_position[2]]),
        foot_positions=frame.foot_positions.reshape(12).copy(),
    )


def clip_amp_features(clip: MotionClip) -> np.ndarray:
    """Наблюдения дискриминатора для всех кадров клипа (n, 43).

    Note:
        Кадр k > 0 использует пару (k-1, k). Для первого кадра берётся прямая разность (0, 1).
    """
    if len(clip) < 2:
        raise DataError(f'Clip with label {clip.label} has {len(clip)} frame(s), at least 2 are required')

    features = np.empty((len(clip), AMP_FEATURE_DIM))
    for k in range(1, len(clip)):
        features[k] = extract_amp_feature(clip.frame(k), clip.frame(k - 1), clip.dt).flatten()

    first = extract_amp_feature(clip.frame(1), clip.frame(0), clip.dt)
    start_velocity = (clip.body_positions[1] - clip.body_positions[0]) / clip.dt
    features[0] = AmpFeature(
        joint_positions=clip.joint_positions[0],
        joint_velocities=clip.joint_velocities[0],
        base_linear_velocity=world_to_body(clip.body_orientations[0], start_velocity),
        base_angular_velocity=first.base_angular_velocity,
        base_height=np.array([clip.body_positions[0, 2]]),
        foot_positions=clip.foot_positions[0].reshape(12),
    ).flatten()

    return features
