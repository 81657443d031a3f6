import dataclasses
import logging
import os
import re
from typing import Dict, List, Optional

import numpy as np

from camp_locomotion.adversarial.camp_discriminators import CampDiscriminators, sample_policy_and_expert
from camp_locomotion.config.experiment_config import CONFIG_FILE_NAME, ExperimentConfig
from camp_locomotion.exceptions import ClipFormatError, EmptySelectionError, MissingRunError
from camp_locomotion.motion.skills import skill_gait_spec, skill_name
from camp_locomotion.motion.transition_buffer import TransitionBuffer, sample_expert
from camp_locomotion.ppo.actor_critic import ActorCritic
from camp_locomotion.ppo.metrics import MetricsWriter
from camp_locomotion.ppo.ppo_update import ppo_update
from camp_locomotion.ppo.rollout import assign_rewards, collect_rollouts
from camp_locomotion.sim.env import QuadrupedVecEnv
from camp_locomotion.sim.observation import PRIVILEGED_DIM
from camp_locomotion.utils import dump_rng_state, load_rng_state, log, stream_rng
from camp_locomotion.utils.array_store import load_arrays, save_arrays

CHECKPOINT_DIR = 'checkpoints'
METRICS_FILE_NAME = 'metrics.csv'
CHECKPOINT_FORMAT_VERSION = 1
_CHECKPOINT_RE = re.compile(r'^iter_(\d{6})\.json$')

logger = logging.getLogger(__name__)


def skill_velocities(config: ExperimentConfig) -> np.ndarray:
    """Команды скорости активных навыков (l, 3), взятые из их параметров походки."""
    labels = config.trainer.skill_labels
    return np.array([skill_gait_spec(label, config.dataset.command_velocity).command_velocity for label in labels])


def checkpoint_path(out_dir: str, iteration: int) -> str:
    return os.path.join(out_dir, CHECKPOINT_DIR, f'iter_{iteration:06d}')


def latest_checkpoint(out_dir: str) -> str:
    """Путь (без расширения) к чекпоинту с наибольшим номером итерации."""
    directory = os.path.join(out_dir, CHECKPOINT_DIR)
    if not os.path.isdir(directory):
        raise MissingRunError(f'No checkpoints in {out_dir}')
    iterations = [int(m.group(1)) for m in map(_CHECKPOINT_RE.match, os.listdir(directory)) if m]
    if not iterations:
        raise MissingRunError(f'No checkpoints in {directory}')
    return checkpoint_path(out_dir, max(iterations))


def load_run_config(out_dir: str) -> ExperimentConfig:
    path = os.path.join(out_dir, CONFIG_FILE_NAME)
    if not os.path.isfile(path):
        raise MissingRunError(f'Run directory {out_dir} has no {CONFIG_FILE_NAME}')
    return ExperimentConfig.from_file(path)


class CampTrainer:
    """Цикл обучения одной политики нескольким навыкам.

    Note:
        Итерация: сбор роллаутов; на первых итерациях обновление нормализатора признаков; награды стиля и навыка
        от текущих дискриминаторов; обновление D_θ, E и f_θ; обновление PPO актора и критика. Чекпоинт содержит
        всё состояние обучения, включая генераторы случайных чисел, поэтому продолжение с чекпоинта совпадает
        с непрерывным обучением.

    Args:
        config (:obj:`camp_locomotion.ExperimentConfig`): Конфигурация, флаги абляции применяются здесь.
        expert (:obj:`camp_locomotion.TransitionBuffer`): Предзагруженные экспертные переходы.
        out_dir (:obj:`str`): Каталог запуска.
    """

    def __init__(self, config: ExperimentConfig, expert: TransitionBuffer, out_dir: str) -> None:
        self.config = config.resolved()
        self.expert = expert
        self.out_dir = out_dir

        trainer = self.config.trainer
        self.skill_labels = trainer.skill_labels
        missing = [skill_name(label) for label in self.skill_labels if label not in expert.label_indices]
        if missing:
            raise EmptySelectionError(f'Expert data has no transitions for skills {missing}')

        seed = self.config.seed
        self.env = QuadrupedVecEnv(
            self.config.env,
            trainer.ppo.num_envs,
            skill_velocities(self.config),
            seed=seed,
            disable_skill_obs=self.config.ablation.disable_skill_obs,
        )
        self.ac = ActorCritic.from_config(trainer, self.env.observation_dim, PRIVILEGED_DIM, seed)
        self.discriminators = CampDiscriminators(
            self.skill_labels,
            trainer.adversarial,
            conditioning=not self.config.ablation.disable_conditioning,
            skill_disc_enabled=not self.config.ablation.disable_skill_disc,
            seed=seed,
        )
        self.rng = stream_rng(seed, 200)
        self.iteration = 0
        self._metrics: Optional[MetricsWriter] = None

    @classmethod
    def resume(cls, out_dir: str, expert: TransitionBuffer, iterations: Optional[int] = None) -> 'CampTrainer':
        """Восстанавливает обучение из последнего чекпоинта каталога запуска.

        Args:
            out_dir (:obj:`str`): Каталог запуска.
            expert (:obj:`camp_locomotion.TransitionBuffer`): Экспертные переходы.
            iterations (:obj:`int`, optional): Новое общее число итераций.

        Returns:
            :obj:`camp_locomotion.CampTrainer`: Тренер в состоянии последнего чекпоинта.
        """
        config = load_run_config(out_dir)
        if iterations is not None:
            config = config.replace(trainer=dataclasses.replace(config.trainer, iterations=iterations))
        trainer = cls(config, expert, out_dir)
        trainer.load_checkpoint(latest_checkpoint(out_dir))
        return trainer

    def save_checkpoint(self) -> str:
        path = checkpoint_path(self.out_dir, self.iteration)
        os.makedirs(os.path.dirname(path), exist_ok=True)

        env = self.env.get_checkpoint()
        arrays = self.ac.to_arrays()
        arrays.update(self.discriminators.to_arrays())
        arrays.update(env['arrays'])
        meta = {
            'format_version': CHECKPOINT_FORMAT_VERSION,
            'iteration': self.iteration,
            'skills': self.config.trainer.skills,
            'ablation': self.config.ablation.to_dict(),
            'trainer_rng': dump_rng_state(self.rng),
            'env_rngs': env['rng_states'],
        }
        save_arrays(path, arrays, meta)
        logger.debug(f'Saved checkpoint {path}')
        return path

    def load_checkpoint(self, path: str) -> None:
        arrays, meta = load_arrays(path)
        if meta.get('format_version') != CHECKPOINT_FORMAT_VERSION:
            raise ClipFormatError(f'{path}: unsupported checkpoint version {meta.get("format_version")}')

        self.ac.load_arrays(arrays)
        self.discriminators.load_arrays(arrays)
        self.env.load_checkpoint(arrays, meta['env_rngs'])  # type: ignore[arg-type]
        load_rng_state(self.rng, meta['trainer_rng'])  # type: ignore[arg-type]
        self.iteration = int(meta['iteration'])  # type: ignore[arg-type]
        logger.info(f'Resumed from {path} at iteration {self.iteration}')

    def train_iteration(self) -> Dict[str, float]:
        """Одна итерация обучения, возвращает строку метрик."""
        trainer = self.config.trainer
        adversarial = trainer.adversarial

        buffer = collect_rollouts(self.ac, self.env, trainer.ppo.horizon, self.skill_labels, self.rng)
        policy = buffer.policy_transitions()

        if self.iteration < trainer.normalizer_iterations:
            self.discriminators.update_normalizer(sample_expert(self.expert, len(policy), rng=self.rng), policy)

        assign_rewards(buffer, trainer.rewards, self.discriminators)

        for _ in range(adversarial.disc_updates):
            expert_batch, policy_batch = sample_policy_and_expert(
                self.expert, policy, adversarial.disc_batch_size, self.rng
            )
            disc_stats = self.discriminators.update(expert_batch, policy_batch)

        update = ppo_update(self.ac, buffer, trainer.ppo, self.rng)

        row = {'iteration': self.iteration, **buffer.reward_means()}
        row.update(dataclasses.asdict(disc_stats))
        row.update(dataclasses.asdict(update))
        row['terminations'] = float(np.sum(buffer.dones & ~buffer.timeouts))
        row.pop('clip_fraction', None)
        row.pop('grad_norm', None)

        logger.info(
            f'iter {self.iteration}: reward {row["reward_total"]:.4f} (task {row["reward_task"]:.4f}, '
            f'style {row["reward_style"]:.4f}, skill {row["reward_skill"]:.4f}), disc {row["disc_loss"]:.4f}, '
            f'policy {row["policy_loss"]:.4f}, value {row["value_loss"]:.4f}, lr {row["learning_rate"]:.2e}'
        )
        self.iteration += 1
        return row

    @log
    def train(self, iterations: Optional[int] = None) -> List[Dict[str, float]]:
        """Обучает до `iterations` итераций всего (по умолчанию из конфигурации).

        Note:
            Перед первой итерацией сохраняется начальный чекпоинт, после последней итерации сохраняется итоговый.
            Промежуточные чекпоинты пишутся каждые `checkpoint_interval` итераций.

        Returns:
            :obj:`list` из :obj:`dict`: Строки метрик выполненных итераций.
        """
        total = self.config.trainer.iterations if iterations is None else iterations
        interval = self.config.trainer.checkpoint_interval

        os.makedirs(self.out_dir, exist_ok=True)
        self.config.save(self.out_dir)
        self._metrics = MetricsWriter(os.path.join(self.out_dir, METRICS_FILE_NAME), self.iteration)

        if self.env.state is None:
            self.env.reset()
        if self.iteration == 0:
            self.save_checkpoint()

        rows = []
        while self.iteration < total:
            row = self.train_iteration()
            self._metrics.append(row)
            rows.append(row)
            if interval and self.iteration % interval == 0:
                self.save_checkpoint()

        if rows and not (interval and self.iteration % interval == 0):
            self.save_checkpoint()

        return rows

    def close(self) -> None:
        self.env.close()
