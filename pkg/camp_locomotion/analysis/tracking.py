import dataclasses
import logging
from typing import Optional, Tuple

import numpy as np

from camp_locomotion.config.env_config import EnvConfig
from camp_locomotion.exceptions import DataError, EmptySelectionError
from camp_locomotion.motion.motion_clip import MotionClip
from camp_locomotion.sim.env import standing_state, step

logger = logging.getLogger(__name__)


def tracking_accuracy(
    target: np.ndarray, actual: np.ndarray, ignore_constant: bool = False, min_range: float = 1e-6
) -> float:
    """Точность отслеживания траекторий суставов в процентах.

    Note:
        Для каждого сустава 100·(1 − mean|θ_target − θ| / (max θ_target − min θ_target)), затем среднее по суставам.

    Args:
        target (:obj:`numpy.ndarray`): Целевая траектория (T,) или (T, J).
        actual (:obj:`numpy.ndarray`): Фактическая траектория той же формы.
        ignore_constant (:obj:`bool`, optional): Пропускать суставы с постоянной целевой траекторией.
        min_range (:obj:`float`, optional): Размах, ниже которого траектория считается постоянной, рад.

    Returns:
        :obj:`float`: Точность, %.

    Raises:
        :class:`camp_locomotion.exceptions.DataError`: Длины не совпадают.
        :class:`camp_locomotion.exceptions.EmptySelectionError`: Целевая траектория постоянна.
    """
    target = np.asarray(target, dtype=np.float64)
    actual = np.asarray(actual, dtype=np.float64)
    if target.shape != actual.shape:
        raise DataError(f'Trajectory shapes differ: {target.shape} vs {actual.shape}')
    if target.ndim == 1:
        target, actual = target[:, None], actual[:, None]
    if not len(target):
        raise EmptySelectionError('Empty trajectories')

    spread = target.max(axis=0) - target.min(axis=0)
    moving = spread > min_range
    if not ignore_constant and not moving.all():
        raise EmptySelectionError(f'Target trajectory is constant for joints {np.flatnonzero(~moving).tolist()}')
    if not moving.any():
        raise EmptySelectionError('All target trajectories are constant')

    error = np.mean(np.abs(target - actual), axis=0)[moving]
    return float(np.mean(100.0 * (1.0 - error / spread[moving])))


def expert_replay_targets(clip: MotionClip, config: EnvConfig) -> np.ndarray:
    """Целевые углы для воспроизведения клипа ПД регулятором (n − 1, 12).

    Note:
        Цель шага k -> k + 1 равна эталонному углу кадра k + 1 с опережением по скорости на
        kd/kp + dt/2 + запаздывание привода, что компенсирует отставание регулятора без модели нагрузки.
    """
    lead = config.pd.kd_array / config.pd.kp_array + 0.5 * config.dt + config.actuator_lag
    return clip.joint_positions[1:] + lead * clip.joint_velocities[1:]


def expert_replay(
    clip: MotionClip, config: EnvConfig, targets: Optional[np.ndarray] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """Воспроизводит клип в окружении с номинальными параметрами.

    Returns:
        :obj:`tuple`: Эталонные углы кадров 1..n − 1 и фактические углы после каждого шага, оба (n − 1, 12).
    """
    if len(clip) < 2:
        raise DataError('Replay needs a clip of at least 2 frames')

    config = dataclasses.replace(config, randomization=dataclasses.replace(config.randomization, enabled=False))
    targets = expert_replay_targets(clip, config) if targets is None else np.asarray(targets, dtype=np.float64)
    actions = (targets - config.robot.nominal) / config.pd.action_scale

    state = standing_state(config.robot, clip.joint_positions[0], contact_height=config.contact_height)
    state.joint_velocities = clip.joint_velocities[:1].copy()

    actual = np.zeros_like(targets)
    for k in range(len(targets)):
        state = step(state, actions[k : k + 1], config).state
        actual[k] = state.joint_positions[0]

    return clip.joint_positions[1:], actual
