import logging
from typing import Tuple

import numpy as np

from camp_locomotion.adversarial.conditional_discriminator import ConditionalDiscriminator
from camp_locomotion.adversarial.normalizer import NormalizedBatch
from camp_locomotion.adversarial.skill_discriminator import SkillDiscriminator
from camp_locomotion.adversarial.skill_embedding import SkillEmbeddingTable

logger = logging.getLogger(__name__)


def style_reward_from_output(d: np.ndarray) -> np.ndarray:
    """r = max(0, 1 − 0.25·(D − 1)²)."""
    d = np.asarray(d, dtype=np.float64)
    return np.maximum(0.0, 1.0 - 0.25 * (d - 1.0) ** 2)


def style_reward(disc: ConditionalDiscriminator, batch: NormalizedBatch) -> np.ndarray:
    """Награда стиля для нормализованных переходов, обусловленных метками `batch.labels`."""
    return style_reward_from_output(disc(batch))


def skill_reward(z_hat: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Косинусное сходство предсказанного и целевого латентных векторов.

    Note:
        Для векторов нулевой нормы награда равна 0, число таких случаев логируется предупреждением.

    Args:
        z_hat (:obj:`numpy.ndarray`): Предсказания (d_z,) или (B, d_z).
        z (:obj:`numpy.ndarray`): Целевые векторы той же формы.

    Returns:
        :obj:`numpy.ndarray` | :obj:`float`: Награда в [−1, 1].
    """
    z_hat = np.asarray(z_hat, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    single = z_hat.ndim == 1
    z_hat, z = np.atleast_2d(z_hat), np.atleast_2d(z)

    norms = np.linalg.norm(z_hat, axis=1) * np.linalg.norm(z, axis=1)
    degenerate = norms == 0
    if np.any(degenerate):
        logger.warning(f'Zero-norm latent in skill reward for {int(degenerate.sum())} samples, reward set to 0')

    safe = np.where(degenerate, 1.0, norms)
    reward = np.where(degenerate, 0.0, np.sum(z_hat * z, axis=1) / safe)
    reward = np.clip(reward, -1.0, 1.0)

    return float(reward[0]) if single else reward


def predict_skill(
    skill_disc: SkillDiscriminator, table: SkillEmbeddingTable, batch: NormalizedBatch
) -> Tuple[np.ndarray, np.ndarray]:
    """ẑ и ближайшая по косинусу метка навыка для каждого перехода."""
    z_hat = skill_disc(batch)
    return z_hat, nearest_skill(z_hat, table)


def nearest_skill(z_hat: np.ndarray, table: SkillEmbeddingTable) -> np.ndarray:
    """Метка с максимальным косинусом к ẑ; при равенстве выбирается меньшая метка."""
    z_hat = np.atleast_2d(np.asarray(z_hat, dtype=np.float64))
    rows = table.weights / np.maximum(np.linalg.norm(table.weights, axis=1, keepdims=True), 1e-12)
    cosine = z_hat @ rows.T / np.maximum(np.linalg.norm(z_hat, axis=1, keepdims=True), 1e-12)
    return np.asarray(table.labels, dtype=np.int64)[np.argmax(cosine, axis=1)]
