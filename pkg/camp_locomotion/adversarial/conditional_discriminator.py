import logging
from typing import List, Optional

import numpy as np

from camp_locomotion.adversarial.normalizer import NormalizedBatch
from camp_locomotion.adversarial.skill_embedding import SkillEmbeddingTable
from camp_locomotion.exceptions import DataError
from camp_locomotion.motion.amp_feature import AMP_FEATURE_DIM
from camp_locomotion.nn.mlp import ForwardCache, Mlp
from camp_locomotion.nn.mlp_spec import MlpSpec
from camp_locomotion.utils.seeding import SeedLike

TRANSITION_DIM = 2 * AMP_FEATURE_DIM

logger = logging.getLogger(__name__)


class ConditionalDiscriminator:
    """Условный дискриминатор D_θ(s_t, s_{t+1} | z^p) -> ℝ.

    Note:
        Латентный вектор навыка присоединяется к входу: x = (s_t, s_{t+1}, z). При отключённом обусловливании
        z заменяется нулями, и таблица навыков не получает градиентов.

    Args:
        table (:obj:`camp_locomotion.SkillEmbeddingTable`): Таблица навыков E.
        hidden (:obj:`list` из :obj:`int`, optional): Скрытые слои.
        activation (:obj:`str`, optional): Активация скрытых слоёв.
        conditioning (:obj:`bool`, optional): Присоединять ли z = E(y).
        rng (:obj:`int` | :obj:`numpy.random.Generator`, optional): Генератор для инициализации.
        net (:obj:`camp_locomotion.Mlp`, optional): Готовая сеть, если задана, `hidden` не используется.
    """

    def __init__(
        self,
        table: SkillEmbeddingTable,
        hidden: Optional[List[int]] = None,
        activation: str = 'elu',
        conditioning: bool = True,
        rng: SeedLike = None,
        net: Optional[Mlp] = None,
    ) -> None:
        self.table = table
        self.conditioning = conditioning
        if net is None:
            spec = MlpSpec.build(self.input_dim, hidden or [1024, 512], 1, activation=activation)
            net = Mlp(spec, rng=rng)
        if net.spec.input_dim != self.input_dim or net.spec.output_dim != 1:
            raise DataError(f'Discriminator network must map {self.input_dim} inputs to 1 output')
        self.net = net

    @property
    def input_dim(self) -> int:
        return TRANSITION_DIM + self.table.dim

    @property
    def penalty_mask(self) -> np.ndarray:
        """Маска входов, по которым берётся штраф градиента: только переход (s_t, s_{t+1})."""
        mask = np.zeros(self.input_dim)
        mask[:TRANSITION_DIM] = 1.0
        return mask

    def latents(self, labels: np.ndarray) -> np.ndarray:
        if not self.conditioning:
            return np.zeros((len(labels), self.table.dim))
        return self.table.embed(labels)

    def inputs(self, batch: NormalizedBatch) -> np.ndarray:
        return np.concatenate([batch.transitions(), self.latents(batch.labels)], axis=1)

    def forward_cache(self, batch: NormalizedBatch) -> ForwardCache:
        return self.net.forward_cache(self.inputs(batch))

    def forward(self, batch: NormalizedBatch) -> np.ndarray:
        """D для каждого перехода, (B,)."""
        return self.forward_cache(batch).output[:, 0]

    __call__ = forward

    def embedding_grad(self, labels: np.ndarray, input_grad: np.ndarray) -> np.ndarray:
        """Градиент по таблице навыков из градиента по входу дискриминатора."""
        if not self.conditioning:
            return np.zeros_like(self.table.params)
        return self.table.accumulate_grad(labels, input_grad[:, TRANSITION_DIM:])
