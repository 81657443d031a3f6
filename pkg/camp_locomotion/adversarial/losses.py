import logging
from dataclasses import dataclass

import numpy as np

from camp_locomotion.adversarial.conditional_discriminator import TRANSITION_DIM, ConditionalDiscriminator
from camp_locomotion.adversarial.normalizer import NormalizedBatch
from camp_locomotion.adversarial.skill_discriminator import SkillDiscriminator
from camp_locomotion.adversarial.skill_embedding import SkillEmbeddingTable
from camp_locomotion.exceptions import EmptySelectionError, NonFiniteError

logger = logging.getLogger(__name__)


@dataclass
class DiscLossResult:
    """Лосс условного дискриминатора и его градиенты.

    Attributes:
        loss (:obj:`float`): Полный лосс.
        expert_loss (:obj:`float`): E_expert[(D − 1)²].
        policy_loss (:obj:`float`): E_policy[(D + 1)²].
        penalty (:obj:`float`): ω_gp · E_expert[‖∇D‖²].
        disc_grad (:obj:`numpy.ndarray`): Градиент по параметрам D_θ.
        embedding_grad (:obj:`numpy.ndarray`): Градиент по таблице навыков.
        expert_input_grad (:obj:`numpy.ndarray`): Градиент по нормализованным экспертным переходам (B, 86).
        policy_input_grad (:obj:`numpy.ndarray`): Градиент по нормализованным переходам политики (B, 86).
        expert_accuracy (:obj:`float`): Доля экспертных переходов с D > 0.
        policy_accuracy (:obj:`float`): Доля политических переходов с D < 0.
    """

    loss: float
    expert_loss: float
    policy_loss: float
    penalty: float
    disc_grad: np.ndarray
    embedding_grad: np.ndarray
    expert_input_grad: np.ndarray
    policy_input_grad: np.ndarray
    expert_accuracy: float
    policy_accuracy: float

    @property
    def accuracy(self) -> float:
        return 0.5 * (self.expert_accuracy + self.policy_accuracy)


@dataclass
class SkillLossResult:
    """Лосс дискриминатора навыков: MSE до целевого вектора плюс λ·E[‖∇_x f‖²].

    Attributes:
        loss (:obj:`float`): Полный лосс.
        mse (:obj:`float`): Средняя квадратичная ошибка до E(y).
        penalty (:obj:`float`): Штраф градиента.
        grad (:obj:`numpy.ndarray`): Градиент по параметрам f_θ.
        input_grad (:obj:`numpy.ndarray`): Градиент по нормализованным переходам (B, 86).
    """

    loss: float
    mse: float
    penalty: float
    grad: np.ndarray
    input_grad: np.ndarray


def _check_finite(value: float, name: str) -> None:
    if not np.isfinite(value):
        raise NonFiniteError(f'{name} is not finite: {value}')


def disc_loss(
    expert: NormalizedBatch, policy: NormalizedBatch, disc: ConditionalDiscriminator, gp_weight: float = 10.0
) -> DiscLossResult:
    """LSGAN лосс условного дискриминатора со штрафом градиента на экспертных переходах.

    Note:
        loss = E_expert[(D − 1)²] + E_policy[(D + 1)²] + ω_gp·E_expert[‖∇_x D‖²]. Штраф берётся по части входа,
        соответствующей переходу (s_t, s_{t+1}). Градиенты возвращаются совместно для D_θ и таблицы навыков.

    Args:
        expert (:obj:`camp_locomotion.adversarial.normalizer.NormalizedBatch`): Экспертные переходы.
        policy (:obj:`camp_locomotion.adversarial.normalizer.NormalizedBatch`): Переходы политики.
        disc (:obj:`camp_locomotion.ConditionalDiscriminator`): Дискриминатор.
        gp_weight (:obj:`float`, optional): Вес штрафа ω_gp.

    Returns:
        :obj:`camp_locomotion.adversarial.losses.DiscLossResult`: Лосс, его части и градиенты.

    Raises:
        :class:`camp_locomotion.exceptions.EmptySelectionError`: Пустой пакет.
        :class:`camp_locomotion.exceptions.NonFiniteError`: Лосс не конечен.
    """
    if not len(expert) or not len(policy):
        raise EmptySelectionError('Discriminator loss needs non-empty expert and policy batches')

    expert_cache = disc.forward_cache(expert)
    policy_cache = disc.forward_cache(policy)
    d_expert = expert_cache.output[:, 0]
    d_policy = policy_cache.output[:, 0]

    expert_loss = float(np.mean((d_expert - 1.0) ** 2))
    policy_loss = float(np.mean((d_policy + 1.0) ** 2))

    expert_grad, expert_input = disc.net.backward(expert_cache, (2.0 * (d_expert - 1.0) / len(expert))[:, None])
    policy_grad, policy_input = disc.net.backward(policy_cache, (2.0 * (d_policy + 1.0) / len(policy))[:, None])

    disc_grad = expert_grad + policy_grad
    embedding_grad = disc.embedding_grad(expert.labels, expert_input) + disc.embedding_grad(
        policy.labels, policy_input
    )

    penalty = 0.0
    if gp_weight > 0:
        result = disc.net.gradient_penalty(
            expert_cache.inputs,
            sample_weights=np.full(len(expert), gp_weight / len(expert)),
            input_mask=disc.penalty_mask,
            cache=expert_cache,
        )
        penalty = result.value
        disc_grad = disc_grad + result.param_grad
        embedding_grad = embedding_grad + disc.embedding_grad(expert.labels, result.input_grad)
        expert_input = expert_input + result.input_grad

    loss = expert_loss + policy_loss + penalty
    _check_finite(loss, 'Discriminator loss')

    return DiscLossResult(
        loss=loss,
        expert_loss=expert_loss,
        policy_loss=policy_loss,
        penalty=penalty,
        disc_grad=disc_grad,
        embedding_grad=embedding_grad,
        expert_input_grad=expert_input[:, :TRANSITION_DIM],
        policy_input_grad=policy_input[:, :TRANSITION_DIM],
        expert_accuracy=float(np.mean(d_expert > 0)),
        policy_accuracy=float(np.mean(d_policy < 0)),
    )


def skill_disc_loss(
    expert: NormalizedBatch, table: SkillEmbeddingTable, skill_disc: SkillDiscriminator, gp_weight: float = 10.0
) -> SkillLossResult:
    """Лосс дискриминатора навыков на экспертных переходах.

    Note:
        loss = E[‖f_θ(s_t, s_{t+1}) − E(y)‖²] + λ·E[‖∂f_θ/∂x‖_F²]. Целевой вектор E(y) считается константой,
        градиент возвращается только для f_θ.

    Args:
        expert (:obj:`camp_locomotion.adversarial.normalizer.NormalizedBatch`): Экспертные переходы.
        table (:obj:`camp_locomotion.SkillEmbeddingTable`): Таблица навыков.
        skill_disc (:obj:`camp_locomotion.SkillDiscriminator`): Дискриминатор навыков.
        gp_weight (:obj:`float`, optional): Вес штрафа λ.

    Returns:
        :obj:`camp_locomotion.adversarial.losses.SkillLossResult`: Лосс и градиент по параметрам f_θ.
    """
    if not len(expert):
        raise EmptySelectionError('Skill discriminator loss needs a non-empty batch')

    cache = skill_disc.forward_cache(expert)
    residual = cache.output - table.embed(expert.labels)
    mse = float(np.mean(np.sum(residual**2, axis=1)))
    grad, input_grad = skill_disc.net.backward(cache, 2.0 * residual / len(expert))

    penalty = 0.0
    if gp_weight > 0:
        result = skill_disc.net.gradient_penalty(
            cache.inputs, sample_weights=np.full(len(expert), gp_weight / len(expert)), cache=cache
        )
        penalty = result.value
        grad = grad + result.param_grad
        input_grad = input_grad + result.input_grad

    loss = mse + penalty
    _check_finite(loss, 'Skill discriminator loss')

    return SkillLossResult(loss=loss, mse=mse, penalty=penalty, grad=grad, input_grad=input_grad)
