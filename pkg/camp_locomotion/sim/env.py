"""Упрощённое детерминированное окружение четвероногого робота.

Суставы интегрируются полунеявным методом Эйлера под моментами ПД регулятора с запаздыванием привода первого
порядка. Корпус описывается центроидным приближением: опирающийся корпус стоит на самой низкой стопе и
разгоняется вслед за стопами в опоре с ускорением, ограниченным трением; корпус без опоры падает свободно.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from scipy.spatial.transform import Rotation

from camp_locomotion.config.env_config import EnvConfig
from camp_locomotion.exceptions import EnvStepError
from camp_locomotion.motion.kinematics import feet_in_body_frame
from camp_locomotion.sim.command import Command
from camp_locomotion.sim.domain_randomization import (
    NOMINAL_KD_GAIN,
    NOMINAL_KP_GAIN,
    DomainRandomizationConfig,
    RandomizedParams,
    sample_randomization,
)
from camp_locomotion.sim.env_state import EnvState
from camp_locomotion.sim.observation import (
    amp_feature_from_state,
    build_observation,
    build_privileged_observation,
    observation_dim,
)
from camp_locomotion.sim.pd_params import apply_action, pd_torque
from camp_locomotion.sim.reward import task_reward
from camp_locomotion.sim.robot_model import RobotModel
from camp_locomotion.utils.rotations import IDENTITY_QUAT
from camp_locomotion.utils.seeding import SeedLike, dump_rng_state, load_rng_state, make_rng, stream_rng

FRONT_LEGS = [0, 1]
REAR_LEGS = [2, 3]
LEFT_LEGS = [0, 2]
RIGHT_LEGS = [1, 3]

logger = logging.getLogger(__name__)


@dataclass
class StepOutput:
    """Результат шага пакета окружений.

    Attributes:
        state (:obj:`camp_locomotion.EnvState`): Новое состояние.
        amp_features (:obj:`numpy.ndarray`): Наблюдения дискриминатора нового состояния (N, 43).
        contacts (:obj:`numpy.ndarray`): Признаки опоры (N, 4).
        terminated (:obj:`numpy.ndarray`): Признак аварийного завершения (N,).
    """

    state: EnvState
    amp_features: np.ndarray
    contacts: np.ndarray
    terminated: np.ndarray

    @classmethod
    def concat(cls, outputs: List['StepOutput']) -> 'StepOutput':
        return cls(
            state=EnvState.concat([o.state for o in outputs]),
            amp_features=np.concatenate([o.amp_features for o in outputs]),
            contacts=np.concatenate([o.contacts for o in outputs]),
            terminated=np.concatenate([o.terminated for o in outputs]),
        )


def nominal_base_height(robot: RobotModel) -> float:
    """Высота корпуса в номинальной стойке на ровной земле."""
    feet = feet_in_body_frame(robot.nominal, robot.link_lengths)
    return float(-feet[:, 2].min())


def standing_state(
    robot: RobotModel,
    joint_positions: np.ndarray,
    params: Optional[RandomizedParams] = None,
    contact_height: float = 0.01,
) -> EnvState:
    """Состояние одного окружения: неподвижный корпус без наклона, самая низкая стопа на земле.

    Args:
        robot (:obj:`camp_locomotion.RobotModel`): Модель робота.
        joint_positions (:obj:`numpy.ndarray`): Углы суставов (12,).
        params (:obj:`camp_locomotion.RandomizedParams`, optional): Параметры рандомизации.
        contact_height (:obj:`float`, optional): Порог высоты стопы для признака опоры.

    Returns:
        :obj:`camp_locomotion.EnvState`: Состояние с N = 1.
    """
    params = params or RandomizedParams()
    q = np.asarray(joint_positions, dtype=np.float64).reshape(1, 12)
    feet = feet_in_body_frame(q, robot.link_lengths)
    height = -feet[..., 2].min(axis=1)

    return EnvState(
        base_position=np.stack([np.zeros(1), np.zeros(1), height], axis=1),
        base_orientation=IDENTITY_QUAT[None, :].copy(),
        base_linear_velocity=np.zeros((1, 3)),
        base_angular_velocity=np.zeros((1, 3)),
        joint_positions=q.copy(),
        joint_velocities=np.zeros((1, 12)),
        applied_torques=np.zeros((1, 12)),
        contacts=(height[:, None] + feet[..., 2]) <= contact_height,
        episode_time=np.zeros(1),
        step_count=np.zeros(1, dtype=np.int64),
        link_mass_scale=np.array([params.link_mass_scale]),
        payload_mass=np.array([params.payload_mass]),
        payload_position=np.asarray(params.payload_position, dtype=np.float64).reshape(1, 3),
        friction=np.array([params.friction]),
        motor_strength=np.array([params.motor_strength]),
        kp_gain=np.asarray(params.kp_gain, dtype=np.float64).reshape(1, 12),
        kd_gain=np.asarray(params.kd_gain, dtype=np.float64).reshape(1, 12),
        init_joint_scale=np.asarray(params.init_joint_scale, dtype=np.float64).reshape(1, 12),
    )


def reset(
    robot: RobotModel, rand_cfg: DomainRandomizationConfig, seed: SeedLike = None, contact_height: float = 0.01
) -> EnvState:
    """Сброс одного окружения.

    Note:
        Начальные углы суставов равны номинальной стойке, умноженной на выбранный масштаб, и ограничены пределами
        суставов. Все выбранные параметры рандомизации записываются в состояние.

    Args:
        robot (:obj:`camp_locomotion.RobotModel`): Модель робота.
        rand_cfg (:obj:`camp_locomotion.DomainRandomizationConfig`): Диапазоны рандомизации.
        seed (:obj:`int` | :obj:`numpy.random.Generator`, optional): Зерно или генератор окружения.
        contact_height (:obj:`float`, optional): Порог высоты стопы для признака опоры.

    Returns:
        :obj:`camp_locomotion.EnvState`: Состояние с N = 1.
    """
    params = sample_randomization(rand_cfg, make_rng(seed))
    joint_positions = np.clip(robot.nominal * params.init_joint_scale, robot.lower, robot.upper)
    return standing_state(robot, joint_positions, params, contact_height)


def _leg_group_mean(values: np.ndarray, mask: np.ndarray, legs: List[int]) -> Any:  # noqa: ANN401
    weights = mask[:, legs]
    count = weights.sum(axis=1)
    mean = (values[:, legs] * weights).sum(axis=1) / np.maximum(count, 1.0)
    return mean, count > 0


def step(
    state: EnvState, actions: np.ndarray, config: EnvConfig, env_indices: Optional[Sequence[int]] = None
) -> StepOutput:
    """Один шаг управления для пакета окружений.

    Note:
        Все операции поэлементны по окружениям, поэтому результат не зависит от того, как пакет разбит на части.

    Args:
        state (:obj:`camp_locomotion.EnvState`): Текущее состояние (не изменяется).
        actions (:obj:`numpy.ndarray`): Действия (N, 12).
        config (:obj:`camp_locomotion.EnvConfig`): Конфигурация окружения, период управления `config.dt`.
        env_indices (:obj:`Sequence` из :obj:`int`, optional): Глобальные индексы окружений для сообщений об ошибках.

    Returns:
        :obj:`camp_locomotion.StepOutput`: Новое состояние, наблюдения дискриминатора, опоры и признак завершения.

    Raises:
        :class:`camp_locomotion.exceptions.EnvStepError`: Нечисловое действие или неверная форма.
    """
    n = state.num_envs
    actions = np.asarray(actions, dtype=np.float64).reshape(n, -1)
    indices = list(range(n)) if env_indices is None else list(env_indices)
    if actions.shape[1] != 12:
        raise EnvStepError(f'expected actions of shape ({n}, 12), got {actions.shape}', indices[0])
    finite = np.isfinite(actions).all(axis=1)
    if not finite.all():
        raise EnvStepError('non-finite action', indices[int(np.flatnonzero(~finite)[0])])

    robot, pd = config.robot, config.pd
    dt, h, g = config.dt, config.substep, config.gravity
    nxt = state.copy()

    target = apply_action(actions, pd, robot.nominal)
    kp = pd.kp_array * state.kp_gain / NOMINAL_KP_GAIN
    kd = pd.kd_array * state.kd_gain / NOMINAL_KD_GAIN
    inertia = robot.inertia_array * state.link_mass_scale[:, None]
    alpha = h / (config.actuator_lag + h)
    lower, upper = robot.lower, robot.upper

    q, qd, applied = nxt.joint_positions, nxt.joint_velocities, nxt.applied_torques
    feet_before = feet_in_body_frame(q, robot.link_lengths)
    for _ in range(config.decimation):
        commanded = pd_torque(target, q, qd, pd, robot.torque_limit_array, state.motor_strength, kp, kd)
        applied = applied + alpha * (commanded - applied)
        qd = qd + h * applied / inertia
        q = q + h * qd
        blocked = ((q < lower) & (qd < 0)) | ((q > upper) & (qd > 0))
        q = np.clip(q, lower, upper)
        qd = np.where(blocked, 0.0, qd)

    feet = feet_in_body_frame(q, robot.link_lengths)
    foot_velocity = (feet - feet_before) / dt

    roll, pitch, yaw = Rotation.from_quat(state.base_orientation).as_euler('xyz').T
    tilt = Rotation.from_euler('xyz', np.stack([roll, pitch, np.zeros(n)], axis=1))
    leveled = np.stack([tilt.apply(feet[:, leg]) for leg in range(4)], axis=1)

    z, vz = state.base_position[:, 2], state.base_linear_velocity[:, 2]
    support = -leveled[..., 2].min(axis=1)
    vz_free = vz - g * dt
    z_free = z + vz_free * dt
    supported = z_free <= support
    z_new = np.where(supported, support, z_free)
    vz_new = np.where(supported, (support - z) / dt, vz_free)

    contacts = (z_new[:, None] + leveled[..., 2]) <= config.contact_height
    mask = contacts.astype(np.float64)
    count = mask.sum(axis=1)
    has_contact = count > 0
    traction = state.friction * g * dt

    cos_yaw, sin_yaw = np.cos(yaw), np.sin(yaw)
    vx, vy = state.base_linear_velocity[:, 0], state.base_linear_velocity[:, 1]
    heading_velocity = np.stack([cos_yaw * vx + sin_yaw * vy, -sin_yaw * vx + cos_yaw * vy], axis=1)

    stance_velocity = -(foot_velocity[..., :2] * mask[..., None]).sum(axis=1) / np.maximum(count, 1.0)[:, None]
    delta = np.where(has_contact[:, None], stance_velocity - heading_velocity, 0.0)
    delta_norm = np.linalg.norm(delta, axis=1)
    delta *= np.minimum(1.0, traction / np.maximum(delta_norm, 1e-12))[:, None]
    heading_velocity = heading_velocity + delta

    radius_sq = feet[..., 0] ** 2 + feet[..., 1] ** 2
    foot_yaw_rate = (feet[..., 0] * foot_velocity[..., 1] - feet[..., 1] * foot_velocity[..., 0]) / radius_sq
    stance_yaw_rate = -(foot_yaw_rate * mask).sum(axis=1) / np.maximum(count, 1.0)
    yaw_limit = traction / np.sqrt(radius_sq.mean(axis=1))
    wz = state.base_angular_velocity[:, 2]
    wz_new = wz + np.clip(np.where(has_contact, stance_yaw_rate - wz, 0.0), -yaw_limit, yaw_limit)
    yaw_new = yaw + wz_new * dt

    cos_new, sin_new = np.cos(yaw_new), np.sin(yaw_new)
    world_x = cos_new * heading_velocity[:, 0] - sin_new * heading_velocity[:, 1]
    world_y = sin_new * heading_velocity[:, 0] + cos_new * heading_velocity[:, 1]

    front_z, has_front = _leg_group_mean(feet[..., 2], mask, FRONT_LEGS)
    rear_z, has_rear = _leg_group_mean(feet[..., 2], mask, REAR_LEGS)
    front_x, _ = _leg_group_mean(feet[..., 0], mask, FRONT_LEGS)
    rear_x, _ = _leg_group_mean(feet[..., 0], mask, REAR_LEGS)
    left_z, has_left = _leg_group_mean(feet[..., 2], mask, LEFT_LEGS)
    right_z, has_right = _leg_group_mean(feet[..., 2], mask, RIGHT_LEGS)
    left_y, _ = _leg_group_mean(feet[..., 1], mask, LEFT_LEGS)
    right_y, _ = _leg_group_mean(feet[..., 1], mask, RIGHT_LEGS)

    payload_moment = config.payload_tilt_gain * state.payload_mass / robot.total_mass
    pitch_span = np.where(has_front & has_rear, front_x - rear_x, 1.0)
    roll_span = np.where(has_left & has_right, left_y - right_y, 1.0)
    pitch_target = np.where(
        has_front & has_rear,
        np.arctan((front_z - rear_z) / pitch_span) + payload_moment * state.payload_position[:, 0],
        pitch,
    )
    roll_target = np.where(
        has_left & has_right,
        np.arctan((right_z - left_z) / roll_span) - payload_moment * state.payload_position[:, 1],
        roll,
    )
    blend = 1.0 - np.exp(-dt / config.attitude_time_constant)
    roll_new = roll + blend * (roll_target - roll)
    pitch_new = pitch + blend * (pitch_target - pitch)

    nxt.joint_positions = q
    nxt.joint_velocities = qd
    nxt.applied_torques = applied
    nxt.base_position = np.stack(
        [state.base_position[:, 0] + world_x * dt, state.base_position[:, 1] + world_y * dt, z_new], axis=1
    )
    nxt.base_linear_velocity = np.stack([world_x, world_y, vz_new], axis=1)
    nxt.base_angular_velocity = np.stack([(roll_new - roll) / dt, (pitch_new - pitch) / dt, wz_new], axis=1)
    nxt.base_orientation = Rotation.from_euler('xyz', np.stack([roll_new, pitch_new, yaw_new], axis=1)).as_quat()
    nxt.contacts = contacts
    nxt.episode_time = state.episode_time + dt
    nxt.step_count = state.step_count + 1

    terminated = (
        (z_new < config.termination_height_ratio * nominal_base_height(robot))
        | (np.abs(roll_new) > config.termination_tilt)
        | (np.abs(pitch_new) > config.termination_tilt)
    )

    return StepOutput(
        state=nxt, amp_features=amp_feature_from_state(nxt, robot), contacts=contacts.copy(), terminated=terminated
    )


def batch_step(
    states: EnvState, actions: np.ndarray, config: EnvConfig, executor: Optional[ThreadPoolExecutor] = None
) -> StepOutput:
    """Шаг N независимых окружений.

    Note:
        Каждое окружение вычисляется отдельным вызовом :func:`step`, поэтому результат побитно совпадает при любом
        порядке и числе потоков. Ошибка окружения пробрасывается с его индексом.

    Args:
        states (:obj:`camp_locomotion.EnvState`): Состояния N окружений.
        actions (:obj:`numpy.ndarray`): Действия (N, 12).
        config (:obj:`camp_locomotion.EnvConfig`): Конфигурация окружения.
        executor (:obj:`concurrent.futures.ThreadPoolExecutor`, optional): Пул потоков.

    Returns:
        :obj:`camp_locomotion.StepOutput`: Объединённый результат.
    """
    actions = np.asarray(actions, dtype=np.float64)

    def run(index: int) -> StepOutput:
        return step(states.select([index]), actions[index:index + 1], config, env_indices=[index])

    indices = range(states.num_envs)
    outputs = list(executor.map(run, indices)) if executor is not None else [run(i) for i in indices]
    return StepOutput.concat(outputs)


@dataclass
class VecStep:
    """Результат шага :class:`QuadrupedVecEnv` до и после автосброса.

    Attributes:
        observations (:obj:`numpy.ndarray`): Наблюдения актора после автосброса (N, 45 + l).
        privileged (:obj:`numpy.ndarray`): Привилегированные наблюдения после автосброса (N, 9).
        amp_prev (:obj:`numpy.ndarray`): s_t (N, 43).
        amp_next (:obj:`numpy.ndarray`): s_{t+1} до автосброса (N, 43).
        task_reward (:obj:`numpy.ndarray`): Награда за отслеживание команды (N,).
        terminated (:obj:`numpy.ndarray`): Аварийное завершение (N,).
        timed_out (:obj:`numpy.ndarray`): Достигнута предельная длина эпизода (N,).
        contacts (:obj:`numpy.ndarray`): Опоры до автосброса (N, 4).
        skill_indices (:obj:`numpy.ndarray`): Локальные индексы навыков, действовавшие на шаге (N,).
        joint_targets (:obj:`numpy.ndarray`): Целевые углы (N, 12).
        joint_positions (:obj:`numpy.ndarray`): Углы после шага до автосброса (N, 12).
        final_observations (:obj:`numpy.ndarray`): Наблюдения актора до автосброса (N, 45 + l).
        final_privileged (:obj:`numpy.ndarray`): Привилегированные наблюдения до автосброса (N, 9).
    """

    observations: np.ndarray
    privileged: np.ndarray
    amp_prev: np.ndarray
    amp_next: np.ndarray
    task_reward: np.ndarray
    terminated: np.ndarray
    timed_out: np.ndarray
    contacts: np.ndarray
    skill_indices: np.ndarray
    joint_targets: np.ndarray
    joint_positions: np.ndarray
    final_observations: np.ndarray
    final_privileged: np.ndarray

    @property
    def dones(self) -> np.ndarray:
        return self.terminated | self.timed_out


class QuadrupedVecEnv:
    """Пакет из N окружений с автосбросом и командами навыков.

    Note:
        У каждого окружения свой поток случайных чисел ``SeedSequence([seed, index])``; при сбросе из него выбираются
        параметры рандомизации и навык эпизода (равномерно среди активных), команда скорости берётся у навыка.

    Args:
        config (:obj:`camp_locomotion.EnvConfig`): Конфигурация окружения.
        num_envs (:obj:`int`): Число окружений.
        skill_velocities (:obj:`numpy.ndarray`): Команды скорости активных навыков (l, 3).
        seed (:obj:`int`): Корневое зерно.
        disable_skill_obs (:obj:`bool`, optional): Обнулять вектор навыка в наблюдении.
        resample_commands (:obj:`bool`, optional): Выбирать навык заново при каждом сбросе.
    """

    def __init__(
        self,
        config: EnvConfig,
        num_envs: int,
        skill_velocities: np.ndarray,
        seed: int = 0,
        disable_skill_obs: bool = False,
        resample_commands: bool = True,
    ) -> None:
        self.config = config
        self.num_envs = num_envs
        self.skill_velocities = np.atleast_2d(np.asarray(skill_velocities, dtype=np.float64))
        self.seed = seed
        self.disable_skill_obs = disable_skill_obs
        self.resample_commands = resample_commands

        self.rngs = [stream_rng(seed, index) for index in range(num_envs)]
        self.executor = ThreadPoolExecutor(config.workers) if config.workers > 1 else None

        self.state: Optional[EnvState] = None
        self.skill_indices = np.zeros(num_envs, dtype=np.int64)
        self.velocity_commands = np.zeros((num_envs, 3))
        self.prev_actions = np.zeros((num_envs, 12))
        self.amp = np.zeros((num_envs, 0))

    @property
    def skill_count(self) -> int:
        return len(self.skill_velocities)

    @property
    def observation_dim(self) -> int:
        return observation_dim(self.skill_count)

    def _reset_env(self, index: int) -> EnvState:
        rng = self.rngs[index]
        fresh = reset(self.config.robot, self.config.randomization, rng, self.config.contact_height)
        if self.resample_commands:
            skill = int(rng.integers(0, self.skill_count))
            self.skill_indices[index] = skill
            self.velocity_commands[index] = self.skill_velocities[skill]
        self.prev_actions[index] = 0.0
        return fresh

    def reset(self) -> np.ndarray:
        """Сбрасывает все окружения и возвращает наблюдения актора."""
        self.state = EnvState.concat([self._reset_env(index) for index in range(self.num_envs)])
        self.amp = amp_feature_from_state(self.state, self.config.robot)
        return self.observations()

    def set_skill(self, index: int, skill: int, velocity: Optional[Sequence[float]] = None) -> None:
        """Задаёт навык и команду скорости окружению без сброса (для расписаний переключения)."""
        self.skill_indices[index] = skill
        self.velocity_commands[index] = self.skill_velocities[skill] if velocity is None else velocity

    def command(self) -> Command:
        return Command.one_hot(self.velocity_commands, self.skill_indices, self.skill_count)

    def observations(self) -> np.ndarray:
        return build_observation(
            self.state,
            self.command(),
            self.prev_actions,
            self.config.robot,
            self.config.angular_velocity_scale,
            self.config.joint_velocity_scale,
            self.disable_skill_obs,
        )

    def privileged_observations(self) -> np.ndarray:
        return build_privileged_observation(self.state)

    def step(self, actions: np.ndarray) -> VecStep:
        """Шаг всех окружений с автосбросом завершившихся эпизодов.

        Args:
            actions (:obj:`numpy.ndarray`): Действия (N, 12).

        Returns:
            :obj:`camp_locomotion.VecStep`: Результат шага.
        """
        assert self.state is not None, 'reset() must be called before step()'
        actions = np.asarray(actions, dtype=np.float64).reshape(self.num_envs, 12)
        command = self.command()
        amp_prev = self.amp

        out = batch_step(self.state, actions, self.config, self.executor)
        reward = task_reward(out.state, command)
        timed_out = out.state.step_count >= self.config.episode_length
        terminated = out.terminated & ~timed_out

        result = VecStep(
            observations=np.empty(0),
            privileged=np.empty(0),
            amp_prev=amp_prev,
            amp_next=out.amp_features,
            task_reward=reward,
            terminated=terminated,
            timed_out=timed_out,
            contacts=out.contacts,
            skill_indices=self.skill_indices.copy(),
            joint_targets=apply_action(actions, self.config.pd, self.config.robot.nominal),
            joint_positions=out.state.joint_positions.copy(),
            final_observations=np.empty(0),
            final_privileged=np.empty(0),
        )

        self.state = out.state
        self.prev_actions = actions.copy()
        self.amp = out.amp_features.copy()
        result.final_observations = self.observations()
        result.final_privileged = self.privileged_observations()

        done = np.flatnonzero(result.dones)
        for index in done:
            self.state.assign([index], self._reset_env(int(index)))
        if len(done):
            self.amp[done] = amp_feature_from_state(self.state.select(done), self.config.robot)
            logger.debug(f'Auto-reset envs {done.tolist()}')

        result.observations = self.observations()
        result.privileged = self.privileged_observations()
        return result

    def get_checkpoint(self) -> Dict[str, Any]:
        """Массивы и JSON метаданные, полностью описывающие окружения."""
        assert self.state is not None
        arrays = self.state.to_arrays()
        arrays.update(
            {
                'env.skill_indices': self.skill_indices.astype(np.float64),
                'env.velocity_commands': self.velocity_commands,
                'env.prev_actions': self.prev_actions,
                'env.amp': self.amp,
            }
        )
        return {'arrays': arrays, 'rng_states': [dump_rng_state(rng) for rng in self.rngs]}

    def load_checkpoint(self, arrays: Dict[str, np.ndarray], rng_states: List[Dict[str, Any]]) -> None:
        self.state = EnvState.from_arrays(arrays)
        self.skill_indices = arrays['env.skill_indices'].astype(np.int64)
        self.velocity_commands = np.array(arrays['env.velocity_commands'])
        self.prev_actions = np.array(arrays['env.prev_actions'])
        self.amp = np.array(arrays['env.amp'])
        for rng, state in zip(self.rngs, rng_states):
            load_rng_state(rng, state)

    def close(self) -> None:
        if self.executor is not None:
            self.executor.shutdown()
