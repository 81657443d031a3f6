from camp_locomotion.base import CampModel, model
from camp_locomotion.exceptions import ConfigError

ABLATION_VARIANTS = ('full', 'no_skill_obs', 'no_conditioning', 'no_skill_reward', 'baseline')


@model
class AblationConfig(CampModel):
    """Класс, представляющий флаги абляции.

    Attributes:
        disable_skill_obs (:obj:`bool`): Обнулить вектор навыка g_t в наблюдении политики.
        disable_conditioning (:obj:`bool`): Не подавать латент навыка z^p в D_θ.
        disable_skill_disc (:obj:`bool`): Не обучать f_θ и не начислять награду за навык.
        disable_skill_reward (:obj:`bool`): Положить ω_skill = 0.
    """

    disable_skill_obs: bool = False
    disable_conditioning: bool = False
    disable_skill_disc: bool = False
    disable_skill_reward: bool = False

    def __post_init__(self) -> None:
        self._id_attrs = self._field_id_attrs()

    @classmethod
    def for_variant(cls, variant: str) -> 'AblationConfig':
        """Флаги для одной из строк сравнения: полный метод, три абляции и базовая линия."""
        variants = {
            'full': cls(),
            'no_skill_obs': cls(disable_skill_obs=True),
            'no_conditioning': cls(disable_conditioning=True),
            'no_skill_reward': cls(disable_skill_reward=True),
            'baseline': cls(disable_skill_obs=True, disable_conditioning=True, disable_skill_disc=True),
        }
        if variant not in variants:
            raise ConfigError(f'Unknown ablation variant {variant!r}, expected one of {ABLATION_VARIANTS}')
        return variants[variant]
