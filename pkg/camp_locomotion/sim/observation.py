from typing import Optional

import numpy as np

from camp_locomotion.motion.amp_feature import AMP_FEATURE_DIM
from camp_locomotion.motion.kinematics import feet_in_body_frame
from camp_locomotion.sim.command import Command
from camp_locomotion.sim.env_state import EnvState
from camp_locomotion.sim.robot_model import RobotModel
from camp_locomotion.utils.rotations import gravity_projection, world_to_body

OBSERVATION_BASE_DIM = 45
PRIVILEGED_DIM = 9


def observation_dim(skill_count: int) -> int:
    return OBSERVATION_BASE_DIM + skill_count


def build_observation(
    state: EnvState,
    command: Command,
    prev_action: np.ndarray,
    robot: Optional[RobotModel] = None,
    angular_velocity_scale: float = 0.25,
    joint_velocity_scale: float = 0.05,
    disable_skill_obs: bool = False,
) -> np.ndarray:
    """Наблюдение актора o_t.

    Note:
        Порядок: угловая скорость корпуса (3), проекция гравитации (3), команда c_t (3), вектор навыка g_t (l),
        углы суставов относительно номинальной стойки (12), скорости суставов (12), предыдущее действие (12).
        При `disable_skill_obs` вектор навыка обнуляется, размерность сохраняется.

    Args:
        state (:obj:`camp_locomotion.EnvState`): Состояние N окружений.
        command (:obj:`camp_locomotion.Command`): Команды N окружений.
        prev_action (:obj:`numpy.ndarray`): Предыдущие действия (N, 12).
        robot (:obj:`camp_locomotion.RobotModel`, optional): Модель робота для номинальной стойки.
        angular_velocity_scale (:obj:`float`, optional): Масштаб угловой скорости.
        joint_velocity_scale (:obj:`float`, optional): Масштаб скоростей суставов.
        disable_skill_obs (:obj:`bool`, optional): Скрыть вектор навыка от политики.

    Returns:
        :obj:`numpy.ndarray`: Наблюдения (N, 45 + l).
    """
    robot = robot or RobotModel()
    skill = np.zeros_like(command.skill) if disable_skill_obs else command.skill

    return np.concatenate(
        [
            state.base_angular_velocity * angular_velocity_scale,
            gravity_projection(state.base_orientation).reshape(-1, 3),
            command.velocity,
            skill,
            state.joint_positions - robot.nominal,
            state.joint_velocities * joint_velocity_scale,
            np.atleast_2d(prev_action),
        ],
        axis=1,
    )


def build_privileged_observation(state: EnvState) -> np.ndarray:
    """Привилегированный вход критика x_t: линейная скорость корпуса в его системе (3), признаки опоры (4),
    трение (1), масса груза (1)."""
    return np.concatenate(
        [
            world_to_body(state.base_orientation, state.base_linear_velocity).reshape(-1, 3),
            state.contacts.astype(np.float64),
            state.friction[:, None],
            state.payload_mass[:, None],
        ],
        axis=1,
    )


def amp_feature_from_state(state: EnvState, robot: Optional[RobotModel] = None) -> np.ndarray:
    """Наблюдение дискриминатора (N, 43) из состояния симулятора в той же раскладке, что и у эталонов."""
    robot = robot or RobotModel()
    n = state.num_envs
    feet = feet_in_body_frame(state.joint_positions, robot.link_lengths)

    features = np.concatenate(
        [
            state.joint_positions,
            state.joint_velocities,
            world_to_body(state.base_orientation, state.base_linear_velocity).reshape(n, 3),
            state.base_angular_velocity,
            state.base_position[:, 2:3],
            feet.reshape(n, 12),
        ],
        axis=1,
    )
    assert features.shape == (n, AMP_FEATURE_DIM)
    return features
