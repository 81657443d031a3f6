import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from camp_locomotion.adversarial.conditional_discriminator import ConditionalDiscriminator
from camp_locomotion.adversarial.losses import SkillLossResult, disc_loss, skill_disc_loss
from camp_locomotion.adversarial.normalizer import FeatureNormalizer, NormalizedBatch
from camp_locomotion.adversarial.rewards import nearest_skill, skill_reward, style_reward_from_output
from camp_locomotion.adversarial.skill_discriminator import SkillDiscriminator
from camp_locomotion.adversarial.skill_embedding import SkillEmbeddingTable
from camp_locomotion.config.adversarial_config import AdversarialConfig
from camp_locomotion.exceptions import DataError
from camp_locomotion.motion.transition_buffer import TransitionBatch, TransitionBuffer, sample_expert_for_labels
from camp_locomotion.nn.adam import Adam, OptimizerState
from camp_locomotion.utils.log import log
from camp_locomotion.utils.seeding import SeedLike, make_rng, stream_rng

logger = logging.getLogger(__name__)


@dataclass
class DiscriminatorStats:
    disc_loss: float = 0.0
    disc_expert_loss: float = 0.0
    disc_policy_loss: float = 0.0
    disc_penalty: float = 0.0
    disc_accuracy: float = 0.0
    skill_loss: float = 0.0
    skill_penalty: float = 0.0
    skill_accuracy: float = 0.0


class CampDiscriminators:
    """Условный дискриминатор, таблица навыков, дискриминатор навыков и общий нормализатор признаков.

    Note:
        Таблица навыков обучается вместе с D_θ и служит постоянной целью для f_θ. При отключённом дискриминаторе
        навыков `skill_disc` равен :obj:`None`, и награда навыка тождественно равна 0.

    Args:
        labels (:obj:`Sequence` из :obj:`int`): Метки активных навыков.
        config (:obj:`camp_locomotion.AdversarialConfig`): Параметры дискриминаторов.
        conditioning (:obj:`bool`, optional): Обусловливать ли D_θ вектором навыка.
        skill_disc_enabled (:obj:`bool`, optional): Создавать ли дискриминатор навыков.
        seed (:obj:`int`, optional): Корневое зерно инициализации.
    """

    def __init__(
        self,
        labels: Sequence[int],
        config: AdversarialConfig,
        conditioning: bool = True,
        skill_disc_enabled: bool = True,
        seed: int = 0,
    ) -> None:
        self.config = config
        self.table = SkillEmbeddingTable(labels, config.latent_dim, rng=stream_rng(seed, 101))
        self.disc = ConditionalDiscriminator(
            self.table,
            hidden=config.disc_hidden,
            activation=config.activation,
            conditioning=conditioning,
            rng=stream_rng(seed, 102),
        )
        self.skill_disc: Optional[SkillDiscriminator] = None
        if skill_disc_enabled:
            self.skill_disc = SkillDiscriminator(
                config.latent_dim, config.skill_disc_hidden, config.activation, rng=stream_rng(seed, 103)
            )
        self.normalizer = FeatureNormalizer()

        self.disc_optimizer = Adam(self.disc.net.params, config.disc_learning_rate)
        self.table_optimizer = Adam(self.table.params, config.disc_learning_rate)
        self.skill_optimizer = (
            Adam(self.skill_disc.net.params, config.skill_disc_learning_rate) if self.skill_disc else None
        )

    def update_normalizer(self, *batches: TransitionBatch) -> None:
        for batch in batches:
            self.normalizer.update(batch)

    def update(self, expert: TransitionBatch, policy: TransitionBatch) -> DiscriminatorStats:
        """Один шаг D_θ и таблицы навыков по LSGAN лоссу и один шаг f_θ по экспертным переходам."""
        expert_norm = self.normalizer.normalize_batch(expert)
        policy_norm = self.normalizer.normalize_batch(policy)

        result = disc_loss(expert_norm, policy_norm, self.disc, self.config.gp_weight)
        self.disc_optimizer.step(result.disc_grad)
        if self.disc.conditioning:
            self.table_optimizer.step(result.embedding_grad)

        stats = DiscriminatorStats(
            disc_loss=result.loss,
            disc_expert_loss=result.expert_loss,
            disc_policy_loss=result.policy_loss,
            disc_penalty=result.penalty,
            disc_accuracy=result.accuracy,
        )

        if self.skill_disc is not None and self.skill_optimizer is not None:
            skill_result = skill_disc_loss(expert_norm, self.table, self.skill_disc, self.config.skill_gp_weight)
            self.skill_optimizer.step(skill_result.grad)
            stats.skill_loss = skill_result.loss
            stats.skill_penalty = skill_result.penalty
            predicted = nearest_skill(self.skill_disc(expert_norm), self.table)
            stats.skill_accuracy = float(np.mean(predicted == expert.labels))

        return stats

    def rewards(self, policy: TransitionBatch) -> Tuple[np.ndarray, np.ndarray]:
        """Награды стиля и навыка для переходов политики, помеченных командуемым навыком."""
        batch = self.normalizer.normalize_batch(policy)
        style = style_reward_from_output(self.disc(batch))
        if self.skill_disc is None:
            return style, np.zeros(len(policy))
        skill = skill_reward(self.skill_disc(batch), self.table.embed(policy.labels))
        return style, np.asarray(skill, dtype=np.float64)

    def to_arrays(self, prefix: str = 'adv.') -> Dict[str, np.ndarray]:
        arrays = {f'{prefix}disc': self.disc.net.params}
        arrays.update(self.table.to_arrays(f'{prefix}table.'))
        arrays.update(self.normalizer.to_arrays(f'{prefix}normalizer.'))
        arrays.update(self.disc_optimizer.state.to_arrays(f'{prefix}disc_opt.'))
        arrays.update(self.table_optimizer.state.to_arrays(f'{prefix}table_opt.'))
        if self.skill_disc is not None and self.skill_optimizer is not None:
            arrays[f'{prefix}skill_disc'] = self.skill_disc.net.params
            arrays.update(self.skill_optimizer.state.to_arrays(f'{prefix}skill_opt.'))
        return arrays

    def load_arrays(self, arrays: Dict[str, np.ndarray], prefix: str = 'adv.') -> None:
        self.disc.net.set_params(arrays[f'{prefix}disc'])
        self.table.load_arrays(arrays, f'{prefix}table.')
        self.normalizer.load_arrays(arrays, f'{prefix}normalizer.')
        self.disc_optimizer.state = OptimizerState.from_arrays(arrays, f'{prefix}disc_opt.')
        self.table_optimizer.state = OptimizerState.from_arrays(arrays, f'{prefix}table_opt.')
        if self.skill_disc is not None and self.skill_optimizer is not None:
            if f'{prefix}skill_disc' not in arrays:
                raise DataError('Checkpoint has no skill discriminator')
            self.skill_disc.net.set_params(arrays[f'{prefix}skill_disc'])
            self.skill_optimizer.state = OptimizerState.from_arrays(arrays, f'{prefix}skill_opt.')


@log
def train_skill_discriminator(
    skill_disc: SkillDiscriminator,
    table: SkillEmbeddingTable,
    normalizer: FeatureNormalizer,
    buffer: TransitionBuffer,
    epochs: int = 30,
    batch_size: int = 256,
    learning_rate: float = 1e-3,
    gp_weight: float = 10.0,
    rng: SeedLike = 0,
) -> List[SkillLossResult]:
    """Обучает f_θ с учителем: предсказывать E(y) по экспертным переходам.

    Note:
        Нормализатор не обновляется, его статистики должны быть заданы заранее. Каждая эпоха проходит буфер
        в случайном порядке.

    Args:
        skill_disc (:obj:`camp_locomotion.SkillDiscriminator`): Обучаемый дискриминатор навыков.
        table (:obj:`camp_locomotion.SkillEmbeddingTable`): Таблица целевых векторов.
        normalizer (:obj:`camp_locomotion.FeatureNormalizer`): Нормализатор признаков.
        buffer (:obj:`camp_locomotion.TransitionBuffer`): Экспертные переходы.
        epochs (:obj:`int`, optional): Число эпох.
        batch_size (:obj:`int`, optional): Размер мини-пакета.
        learning_rate (:obj:`float`, optional): Скорость обучения Adam.
        gp_weight (:obj:`float`, optional): Вес штрафа λ.
        rng (:obj:`int` | :obj:`numpy.random.Generator`, optional): Генератор перемешивания.

    Returns:
        :obj:`list` из :obj:`camp_locomotion.adversarial.losses.SkillLossResult`: Последний лосс каждой эпохи.
    """
    generator = make_rng(rng)
    optimizer = Adam(skill_disc.net.params, learning_rate)
    normalized = normalizer.normalize_batch(buffer.pairs)

    history = []
    for epoch in range(epochs):
        order = generator.permutation(len(normalized))
        for start in range(0, len(order), batch_size):
            result = skill_disc_loss(normalized.take(order[start : start + batch_size]), table, skill_disc, gp_weight)
            optimizer.step(result.grad)
        history.append(result)
        logger.debug(f'Skill discriminator epoch {epoch}: loss {result.loss:.5f}, penalty {result.penalty:.5f}')

    return history


def sample_policy_and_expert(
    buffer: TransitionBuffer, policy: TransitionBatch, batch_size: int, rng: np.random.Generator
) -> Tuple[TransitionBatch, TransitionBatch]:
    """Равные по размеру пакеты политики и эксперта; экспертные метки повторяют метки политики."""
    size = min(batch_size, len(policy))
    policy_batch = policy.take(rng.choice(len(policy), size=size, replace=False))
    expert_batch = sample_expert_for_labels(buffer, policy_batch.labels, rng)
    return expert_batch, policy_batch

