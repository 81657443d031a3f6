from typing import List, Optional

import numpy as np

from camp_locomotion.adversarial.conditional_discriminator import TRANSITION_DIM
from camp_locomotion.adversarial.normalizer import NormalizedBatch
from camp_locomotion.exceptions import DataError
from camp_locomotion.nn.mlp import ForwardCache, Mlp
from camp_locomotion.nn.mlp_spec import MlpSpec
from camp_locomotion.utils.seeding import SeedLike


class SkillDiscriminator:
    """Дискриминатор навыков f_θ(s_t, s_{t+1}) -> ẑ ∈ ℝ^{d_z}.

    Args:
        latent_dim (:obj:`int`, optional): Размерность выхода d_z.
        hidden (:obj:`list` из :obj:`int`, optional): Скрытые слои.
        activation (:obj:`str`, optional): Активация скрытых слоёв.
        rng (:obj:`int` | :obj:`numpy.random.Generator`, optional): Генератор для инициализации.
        net (:obj:`camp_locomotion.Mlp`, optional): Готовая сеть.
    """

    def __init__(
        self,
        latent_dim: int = 8,
        hidden: Optional[List[int]] = None,
        activation: str = 'elu',
        rng: SeedLike = None,
        net: Optional[Mlp] = None,
    ) -> None:
        if net is None:
            net = Mlp(MlpSpec.build(TRANSITION_DIM, hidden or [512, 256], latent_dim, activation=activation), rng=rng)
        if net.spec.input_dim != TRANSITION_DIM:
            raise DataError(f'Skill discriminator network must take {TRANSITION_DIM} inputs')
        self.net = net

    @property
    def latent_dim(self) -> int:
        return self.net.spec.output_dim

    def forward_cache(self, batch: NormalizedBatch) -> ForwardCache:
        return self.net.forward_cache(batch.transitions())

    def forward(self, batch: NormalizedBatch) -> np.ndarray:
        """ẑ для каждого перехода, (B, d_z)."""
        return self.forward_cache(batch).output

    __call__ = forward
