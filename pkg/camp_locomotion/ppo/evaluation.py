import dataclasses
import logging
from typing import Optional, Tuple

import numpy as np

from camp_locomotion.config.experiment_config import ExperimentConfig
from camp_locomotion.exceptions import ClipFormatError, ConfigError
from camp_locomotion.ppo.actor_critic import ActorCritic
from camp_locomotion.ppo.skill_schedule import SkillSchedule
from camp_locomotion.ppo.trainer import CHECKPOINT_FORMAT_VERSION, latest_checkpoint, load_run_config, skill_velocities
from camp_locomotion.sim.env import QuadrupedVecEnv
from camp_locomotion.sim.observation import PRIVILEGED_DIM, observation_dim
from camp_locomotion.sim.rollout_trace import RolloutTrace
from camp_locomotion.utils.array_store import load_arrays
from camp_locomotion.utils.log import log

logger = logging.getLogger(__name__)


@log
def evaluate_schedule(
    ac: ActorCritic,
    config: ExperimentConfig,
    schedule: SkillSchedule,
    duration: Optional[float] = None,
    seed: Optional[int] = None,
    randomize: bool = False,
) -> RolloutTrace:
    """Роллаут детерминированной политики в одном окружении по расписанию навыков.

    Note:
        Навык и команда скорости задаются окружению перед каждым шагом по записи расписания, действующей в момент
        начала шага. Аварийно завершившийся эпизод сбрасывается, а завершение отмечается в трассе. Без
        `randomize` используются номинальные параметры робота.

    Args:
        ac (:obj:`camp_locomotion.ActorCritic`): Обученная политика.
        config (:obj:`camp_locomotion.ExperimentConfig`): Конфигурация запуска.
        schedule (:obj:`camp_locomotion.SkillSchedule`): Расписание навыков.
        duration (:obj:`float`, optional): Длительность, с. По умолчанию `analysis.evaluation_duration`.
        seed (:obj:`int`, optional): Зерно окружения. По умолчанию `config.seed`.
        randomize (:obj:`bool`, optional): Использовать рандомизацию динамики.

    Returns:
        :obj:`camp_locomotion.RolloutTrace`: Трасса роллаута.
    """
    duration = config.analysis.evaluation_duration if duration is None else duration
    seed = config.seed if seed is None else seed
    labels = config.trainer.skill_labels

    env_config = config.env
    if not randomize:
        env_config = dataclasses.replace(
            env_config, randomization=dataclasses.replace(env_config.randomization, enabled=False)
        )

    for entry in schedule.entries:
        if entry.label not in labels:
            raise ConfigError(f'Skill {entry.skill} is not among the trained skills {config.trainer.skills}')

    env = QuadrupedVecEnv(
        env_config,
        1,
        skill_velocities(config),
        seed=seed,
        disable_skill_obs=config.ablation.disable_skill_obs,
        resample_commands=False,
    )
    steps = int(round(duration / env_config.dt))
    trace = RolloutTrace(
        time=np.arange(steps) * env_config.dt,
        skill=np.zeros(steps, dtype=np.int64),
        velocity=np.zeros((steps, 3)),
        joint_targets=np.zeros((steps, 12)),
        joint_positions=np.zeros((steps, 12)),
        contacts=np.zeros((steps, 4), dtype=bool),
        terminated=np.zeros(steps, dtype=bool),
    )

    try:
        first = schedule.entry_at(0.0)
        env.set_skill(0, labels.index(first.label), first.velocity)
        env.reset()
        for k in range(steps):
            entry = schedule.entry_at(float(trace.time[k]))
            env.set_skill(0, labels.index(entry.label), entry.velocity)
            observations = env.observations()
            actions, _, _ = ac.act(observations, deterministic=True)
            result = env.step(actions)

            trace.skill[k] = entry.label
            trace.velocity[k] = env.velocity_commands[0]
            trace.joint_targets[k] = result.joint_targets[0]
            trace.joint_positions[k] = result.joint_positions[0]
            trace.contacts[k] = result.contacts[0]
            trace.terminated[k] = result.terminated[0]
    finally:
        env.close()

    logger.debug(f'Evaluated schedule over {steps} steps, {int(trace.terminated.sum())} terminations')
    return trace


def load_policy(run_dir: str, checkpoint: Optional[str] = None) -> Tuple[ActorCritic, ExperimentConfig]:
    """Загружает политику и конфигурацию запуска.

    Args:
        run_dir (:obj:`str`): Каталог запуска с `config.json`.
        checkpoint (:obj:`str`, optional): Путь к чекпоинту без расширения. По умолчанию последний.

    Returns:
        :obj:`tuple`: (:obj:`camp_locomotion.ActorCritic`, :obj:`camp_locomotion.ExperimentConfig`).
    """
    config = load_run_config(run_dir)
    path = latest_checkpoint(run_dir) if checkpoint is None else checkpoint
    arrays, meta = load_arrays(path)
    if meta.get('format_version') != CHECKPOINT_FORMAT_VERSION:
        raise ClipFormatError(f'{path}: unsupported checkpoint version {meta.get("format_version")}')

    labels = config.trainer.skill_labels
    ac = ActorCritic.from_config(config.trainer, observation_dim(len(labels)), PRIVILEGED_DIM, config.seed)
    ac.load_arrays(arrays)
    logger.debug(f'Loaded policy from {path} at iteration {meta.get("iteration")}')
    return ac, config
