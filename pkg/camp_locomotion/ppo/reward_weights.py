from camp_locomotion.base import CampModel, model
from camp_locomotion.exceptions import ConfigError


@model
class RewardWeights(CampModel):
    """Класс, представляющий веса слагаемых награды r = ω_task·r_task + ω_style·r_style + ω_skill·r_skill.

    Note:
        Веса подслагаемых награды за отслеживание команды (1.5 и 0.75) уже учтены внутри `task_reward`, поэтому
        `task` по умолчанию равен 1.

    Attributes:
        task (:obj:`float`): ω_task.
        style (:obj:`float`): ω_style.
        skill (:obj:`float`): ω_skill.
    """

    task: float = 1.0
    style: float = 1.0
    skill: float = 0.3

    def __post_init__(self) -> None:
        if min(self.task, self.style, self.skill) < 0:
            raise ConfigError(f'Reward weights must be >= 0, got {self.task}, {self.style}, {self.skill}')
        self._id_attrs = self._field_id_attrs()
