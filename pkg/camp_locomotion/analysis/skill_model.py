import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from camp_locomotion.adversarial.camp_discriminators import CampDiscriminators, train_skill_discriminator
from camp_locomotion.adversarial.normalizer import FeatureNormalizer
from camp_locomotion.adversarial.rewards import predict_skill
from camp_locomotion.adversarial.skill_discriminator import SkillDiscriminator
from camp_locomotion.adversarial.skill_embedding import SkillEmbeddingTable
from camp_locomotion.analysis.latent import LatentSequence, latent_sequences
from camp_locomotion.config.experiment_config import ExperimentConfig
from camp_locomotion.exceptions import ConfigError, EmptySelectionError
from camp_locomotion.motion.motion_clip import MotionClip
from camp_locomotion.motion.transition_buffer import TransitionBatch, preload_transitions
from camp_locomotion.ppo.trainer import latest_checkpoint, load_run_config
from camp_locomotion.utils import log, stream_rng
from camp_locomotion.utils.array_store import load_arrays

STANDALONE_LEARNING_RATE = 1e-3

logger = logging.getLogger(__name__)


@dataclass
class SkillModel:
    """Дискриминатор навыков вместе с таблицей навыков и нормализатором, на которых он обучен."""

    table: SkillEmbeddingTable
    skill_disc: SkillDiscriminator
    normalizer: FeatureNormalizer

    def classify(self, batch: TransitionBatch) -> np.ndarray:
        """Ближайшая метка навыка для каждого перехода."""
        _, labels = predict_skill(self.skill_disc, self.table, self.normalizer.normalize_batch(batch))
        return labels

    def accuracy(self, batch: TransitionBatch) -> float:
        return float(np.mean(self.classify(batch) == batch.labels))

    def latents(self, clips: Sequence[MotionClip]) -> List[LatentSequence]:
        return latent_sequences(clips, self.skill_disc, self.normalizer)


@log
def fit_skill_model(
    clips: Sequence[MotionClip], config: ExperimentConfig, seed: Optional[int] = None, epochs: Optional[int] = None
) -> SkillModel:
    """Обучает f_θ с учителем на эталонных переходах без обучения политики.

    Note:
        Таблица навыков инициализируется случайно и не обучается, нормализатор строится по тем же переходам.

    Args:
        clips (:obj:`Sequence` из :obj:`camp_locomotion.MotionClip`): Эталонные клипы.
        config (:obj:`camp_locomotion.ExperimentConfig`): Конфигурация (размеры сетей, число пар на клип, эпохи).
        seed (:obj:`int`, optional): Зерно. По умолчанию `config.seed`.
        epochs (:obj:`int`, optional): Число эпох. По умолчанию `analysis.skill_disc_epochs`.

    Returns:
        :obj:`camp_locomotion.analysis.skill_model.SkillModel`: Обученная модель.
    """
    if not clips:
        raise EmptySelectionError('No clips to fit the skill discriminator on')
    seed = config.seed if seed is None else seed
    epochs = config.analysis.skill_disc_epochs if epochs is None else epochs
    adversarial = config.trainer.adversarial

    buffer = preload_transitions(clips, config.dataset.transitions_per_clip, rng=stream_rng(seed, 100))
    table = SkillEmbeddingTable(buffer.labels, adversarial.latent_dim, rng=stream_rng(seed, 101))
    skill_disc = SkillDiscriminator(
        adversarial.latent_dim, adversarial.skill_disc_hidden, adversarial.activation, rng=stream_rng(seed, 103)
    )
    normalizer = FeatureNormalizer()
    normalizer.update(buffer.pairs)

    history = train_skill_discriminator(
        skill_disc,
        table,
        normalizer,
        buffer,
        epochs=epochs,
        learning_rate=STANDALONE_LEARNING_RATE,
        gp_weight=adversarial.skill_gp_weight,
        rng=stream_rng(seed, 104),
    )
    if history:
        logger.info(f'Skill discriminator trained for {epochs} epochs, final loss {history[-1].loss:.5f}')
    return SkillModel(table, skill_disc, normalizer)


def load_skill_model(run_dir: str, checkpoint: Optional[str] = None) -> SkillModel:
    """Дискриминатор навыков, таблица и нормализатор из чекпоинта запуска.

    Raises:
        :class:`camp_locomotion.exceptions.ConfigError`: Запуск обучен без дискриминатора навыков.
    """
    config = load_run_config(run_dir).resolved()
    if config.ablation.disable_skill_disc:
        raise ConfigError(f'Run {run_dir} was trained without a skill discriminator')

    discriminators = CampDiscriminators(
        config.trainer.skill_labels,
        config.trainer.adversarial,
        conditioning=not config.ablation.disable_conditioning,
        seed=config.seed,
    )
    arrays, _ = load_arrays(latest_checkpoint(run_dir) if checkpoint is None else checkpoint)
    discriminators.load_arrays(arrays)
    return SkillModel(discriminators.table, discriminators.skill_disc, discriminators.normalizer)  # type: ignore
