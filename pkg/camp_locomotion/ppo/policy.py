import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from camp_locomotion.exceptions import NonFiniteError

LOG_2PI = float(np.log(2.0 * np.pi))

logger = logging.getLogger(__name__)


def gaussian_log_prob(mean: np.ndarray, log_std: np.ndarray, actions: np.ndarray) -> np.ndarray:
    """Логарифм плотности диагонального нормального распределения, (B,)."""
    z = (actions - mean) * np.exp(-log_std)
    return -0.5 * np.sum(z**2, axis=-1) - np.sum(log_std) - 0.5 * mean.shape[-1] * LOG_2PI


def gaussian_entropy(log_std: np.ndarray) -> float:
    return float(np.sum(log_std) + 0.5 * len(log_std) * (1.0 + LOG_2PI))


def gaussian_kl(old_mean: np.ndarray, old_log_std: np.ndarray, mean: np.ndarray, log_std: np.ndarray) -> float:
    """Средняя KL(старое ‖ новое) по пакету для диагональных нормальных распределений."""
    old_var = np.exp(2.0 * old_log_std)
    var = np.exp(2.0 * log_std)
    kl = np.sum(log_std - old_log_std + (old_var + (old_mean - mean) ** 2) / (2.0 * var) - 0.5, axis=-1)
    return float(np.mean(kl))


@dataclass
class SurrogateResult:
    """Обрезанный суррогатный лосс PPO и его градиенты.

    Attributes:
        loss (:obj:`float`): −E[min(ρA, clip(ρ, 1 − ε, 1 + ε)A)].
        grad_mean (:obj:`numpy.ndarray`): ∂loss/∂μ, (B, 12).
        grad_log_std (:obj:`numpy.ndarray`): ∂loss/∂log σ, (12,).
        clip_fraction (:obj:`float`): Доля примеров, у которых градиент отсечён.
    """

    loss: float
    grad_mean: np.ndarray
    grad_log_std: np.ndarray
    clip_fraction: float


def surrogate_loss(
    mean: np.ndarray,
    log_std: np.ndarray,
    actions: np.ndarray,
    old_log_prob: np.ndarray,
    advantages: np.ndarray,
    clip_ratio: float = 0.2,
) -> SurrogateResult:
    """Обрезанный суррогатный лосс PPO.

    Args:
        mean (:obj:`numpy.ndarray`): Средние действий текущей политики (B, 12).
        log_std (:obj:`numpy.ndarray`): Логарифмы стандартных отклонений (12,).
        actions (:obj:`numpy.ndarray`): Выполненные действия (B, 12).
        old_log_prob (:obj:`numpy.ndarray`): Логарифмы вероятностей при сборе данных (B,).
        advantages (:obj:`numpy.ndarray`): Преимущества (B,).
        clip_ratio (:obj:`float`, optional): ε.

    Returns:
        :obj:`camp_locomotion.ppo.policy.SurrogateResult`: Лосс и градиенты.
    """
    batch = len(advantages)
    log_prob = gaussian_log_prob(mean, log_std, actions)
    ratio = np.exp(log_prob - old_log_prob)
    unclipped = ratio * advantages
    clipped = np.clip(ratio, 1.0 - clip_ratio, 1.0 + clip_ratio) * advantages
    loss = -float(np.mean(np.minimum(unclipped, clipped)))
    if not np.isfinite(loss):
        raise NonFiniteError(f'Surrogate loss is not finite: {loss}')

    active = unclipped <= clipped
    d_log_prob = np.where(active, -ratio * advantages / batch, 0.0)

    inv_var = np.exp(-2.0 * log_std)
    diff = actions - mean
    grad_mean = d_log_prob[:, None] * diff * inv_var
    grad_log_std = np.sum(d_log_prob[:, None] * (diff**2 * inv_var - 1.0), axis=0)

    return SurrogateResult(
        loss=loss, grad_mean=grad_mean, grad_log_std=grad_log_std, clip_fraction=float(np.mean(~active))
    )


def value_loss(values: np.ndarray, returns: np.ndarray) -> Tuple[float, np.ndarray]:
    """Среднеквадратичная ошибка критика и её градиент по предсказаниям."""
    diff = values - returns
    loss = float(np.mean(diff**2))
    if not np.isfinite(loss):
        raise NonFiniteError(f'Value loss is not finite: {loss}')
    return loss, 2.0 * diff / len(diff)
