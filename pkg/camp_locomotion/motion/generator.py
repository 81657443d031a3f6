import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from camp_locomotion.exceptions import DataError, EmptySelectionError
from camp_locomotion.motion.gait_spec import GaitSpec
from camp_locomotion.motion.kinematics import (
    HIP_OFFSETS,
    LINK_LENGTHS,
    SIDE_SIGNS,
    feet_in_body_frame,
    joints_from_feet,
)
from camp_locomotion.motion.motion_clip import MotionClip
from camp_locomotion.motion.skills import DEFAULT_BODY_HEIGHT, default_gait_spec, skill_label
from camp_locomotion.utils.log import log

logger = logging.getLogger(__name__)


def leg_phases(spec: GaitSpec, times: np.ndarray) -> np.ndarray:
    """Фазы ног φ_i(t) = frac(f·t + offset_i), форма (n, 4)."""
    phases = spec.frequency * np.asarray(times)[:, None] + np.asarray(spec.phase_offsets)[None, :]
    return phases - np.floor(phases)


def foot_trajectory(spec: GaitSpec, phases: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Смещение стопы вдоль направления движения и высота подъёма.

    Note:
        В опоре стопа равномерно уходит назад от S/2 до -S/2. В переносе горизонтальная координата идёт по
        циклоиде с поправкой, согласующей скорость на границах фаз, подъём синусоидальный с вершиной
        `step_height` в середине переноса.

    Args:
        spec (:obj:`camp_locomotion.GaitSpec`): Параметры походки.
        phases (:obj:`numpy.ndarray`): Фазы ног.

    Returns:
        :obj:`tuple`: Продольное смещение и высота подъёма той же формы, что и `phases`.
    """
    duty = spec.duty_factor
    stride = spec.step_length

    stance = phases < duty
    swing_phase = np.where(stance, 0.0, (phases - duty) / (1.0 - duty))
    boundary_slope = -stride * (1.0 - duty) / duty

    stance_x = stride / 2.0 - stride * phases / duty
    swing_x = (
        -stride / 2.0
        + stride * swing_phase
        + (boundary_slope - stride) * np.sin(2 * np.pi * swing_phase) / (2 * np.pi)
    )
    lift = spec.step_height * (1.0 - np.cos(2 * np.pi * swing_phase)) / 2.0

    return np.where(stance, stance_x, swing_x), np.where(stance, 0.0, lift)


def body_trajectory(spec: GaitSpec, times: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Положение и рыскание корпуса при постоянной команде скорости в системе корпуса.

    Returns:
        :obj:`tuple`: Положения (n, 3) и углы рыскания (n,).
    """
    vx, vy, wz = spec.command_velocity
    yaw = wz * times

    if math.isclose(wz, 0.0, abs_tol=1e-12):
        x = vx * times
        y = vy * times
    else:
        x = (vx * np.sin(yaw) + vy * (np.cos(yaw) - 1.0)) / wz
        y = (vx * (1.0 - np.cos(yaw)) + vy * np.sin(yaw)) / wz

    positions = np.stack([x, y, np.full_like(times, spec.body_height)], axis=-1)
    return positions, yaw


@log
def generate_clip(spec: GaitSpec, duration: float = 4.0, dt: float = 0.02, label: int = 0) -> MotionClip:
    """Процедурно генерирует эталонный клип походки.

    Note:
        Стопы в системе корпуса стоят под бедрами на расстоянии отведения, углы суставов получаются обратной
        кинематикой, скорости суставов и стоп вычисляются центральными разностями (односторонними на концах).

    Args:
        spec (:obj:`camp_locomotion.GaitSpec`): Параметры походки.
        duration (:obj:`float`, optional): Длительность клипа в секундах.
        dt (:obj:`float`, optional): Интервал между кадрами.
        label (:obj:`int`, optional): Метка навыка.

    Returns:
        :obj:`camp_locomotion.MotionClip`: Клип из ``round(duration / dt) + 1`` кадров.

    Raises:
        :class:`camp_locomotion.exceptions.DataError`: Неверные `dt` или `duration`.
        :class:`camp_locomotion.exceptions.UnreachableTargetError`: Точка стопы вне досягаемости ноги.
    """
    if not dt > 0:
        raise DataError(f'dt must be > 0, got {dt}')
    if duration < spec.period - 1e-12:
        raise DataError(f'duration {duration} s is shorter than one gait cycle ({spec.period} s)')

    count = int(round(duration / dt)) + 1
    if count < 2:
        raise DataError(f'duration {duration} s with dt {dt} s yields fewer than 2 frames')
    times = np.arange(count) * dt

    vx, vy, _ = spec.command_velocity
    speed = math.hypot(vx, vy)
    direction = np.array([vx, vy]) / speed if speed > 1e-12 else np.array([1.0, 0.0])

    stride, lift = foot_trajectory(spec, leg_phases(spec, times))

    rest = HIP_OFFSETS + np.stack([np.zeros(4), SIDE_SIGNS * LINK_LENGTHS[0], np.zeros(4)], axis=-1)
    feet = np.broadcast_to(rest, (count, 4, 3)).copy()
    feet[..., 0] += stride * direction[0]
    feet[..., 1] += stride * direction[1]
    feet[..., 2] = -spec.body_height + lift

    joint_positions = joints_from_feet(feet)
    foot_positions = feet_in_body_frame(joint_positions)

    body_positions, yaw = body_trajectory(spec, times)
    orientations = np.stack([np.zeros(count), np.zeros(count), np.sin(0.5 * yaw), np.cos(0.5 * yaw)], axis=-1)

    logger.debug(f'Generated {spec.gait} clip at {spec.frequency} Hz with {count} frames')

    return MotionClip(
        label=label,
        dt=dt,
        body_positions=body_positions,
        body_orientations=orientations,
        joint_positions=joint_positions,
        joint_velocities=np.gradient(joint_positions, dt, axis=0),
        foot_positions=foot_positions,
        foot_velocities=np.gradient(foot_positions, dt, axis=0),
        spec=spec,
    )


@log
def generate_dataset(
    gaits: Sequence[str],
    frequencies: Sequence[float],
    duration: float = 4.0,
    dt: float = 0.02,
    command_velocity: Optional[Sequence[float]] = None,
    body_height: float = DEFAULT_BODY_HEIGHT,
) -> List[MotionClip]:
    """Клипы для всех пар (походка, частота) в порядке меток навыков.

    Raises:
        :class:`camp_locomotion.exceptions.EmptySelectionError`: Пустой список походок или частот.
    """
    if not gaits or not frequencies:
        raise EmptySelectionError('Dataset needs at least one gait and one frequency')

    clips = []
    for gait in gaits:
        for frequency in frequencies:
            spec = default_gait_spec(gait, frequency, command_velocity, body_height)
            clips.append(generate_clip(spec, duration, dt, skill_label(gait, frequency)))
    return sorted(clips, key=lambda clip: clip.label)
