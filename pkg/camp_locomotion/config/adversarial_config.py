from dataclasses import field
from typing import List

from camp_locomotion.base import CampModel, model
from camp_locomotion.exceptions import ConfigError


@model
class AdversarialConfig(CampModel):
    """Класс, представляющий параметры дискриминаторов.

    Attributes:
        latent_dim (:obj:`int`): Размерность латентного вектора навыка d_z.
        gp_weight (:obj:`float`): Вес штрафа градиента ω_gp условного дискриминатора.
        skill_gp_weight (:obj:`float`): Вес штрафа градиента λ дискриминатора навыков.
        disc_hidden (:obj:`list` из :obj:`int`): Скрытые слои D_θ.
        skill_disc_hidden (:obj:`list` из :obj:`int`): Скрытые слои f_θ.
        disc_learning_rate (:obj:`float`): Скорость обучения D_θ и таблицы навыков.
        skill_disc_learning_rate (:obj:`float`): Скорость обучения f_θ.
        disc_batch_size (:obj:`int`): Размер экспертного и политического пакетов на обновление.
        disc_updates (:obj:`int`): Число обновлений дискриминаторов на итерацию.
        normalizer_warmup_fraction (:obj:`float`): Доля итераций, в течение которых обновляется нормализатор.
        activation (:obj:`str`): Функция активации скрытых слоёв.
    """

    latent_dim: int = 8
    gp_weight: float = 10.0
    skill_gp_weight: float = 10.0
    disc_hidden: List[int] = field(default_factory=lambda: [1024, 512])
    skill_disc_hidden: List[int] = field(default_factory=lambda: [512, 256])
    disc_learning_rate: float = 1e-4
    skill_disc_learning_rate: float = 1e-4
    disc_batch_size: int = 512
    disc_updates: int = 1
    normalizer_warmup_fraction: float = 0.25
    activation: str = 'elu'

    def __post_init__(self) -> None:
        if self.latent_dim < 1 or self.disc_batch_size < 1 or self.disc_updates < 1:
            raise ConfigError('latent_dim, disc_batch_size and disc_updates must be >= 1')
        if self.gp_weight < 0 or self.skill_gp_weight < 0:
            raise ConfigError('Gradient penalty weights must be >= 0')
        if not 0 <= self.normalizer_warmup_fraction <= 1:
            raise ConfigError('normalizer_warmup_fraction must lie in [0, 1]')

        self._id_attrs = self._field_id_attrs()
