from typing import TYPE_CHECKING, List, Optional

from camp_locomotion.base import CampModel, model
from camp_locomotion.exceptions import ConfigError
from camp_locomotion.motion.skills import parse_skill, skill_name

if TYPE_CHECKING:
    from typing_extensions import Self

    from camp_locomotion.base import JSONType


@model
class ScheduleEntry(CampModel):
    """Класс, представляющий одну запись расписания навыков.

    Attributes:
        time (:obj:`float`): Время начала действия записи, с.
        skill (:obj:`str`): Имя навыка, например ``trot_2Hz``.
        velocity (:obj:`list` из :obj:`float`, optional): Команда (vx, vy, ωz); по умолчанию команда навыка.
    """

    time: float
    skill: str
    velocity: Optional[List[float]] = None

    def __post_init__(self) -> None:
        self.skill = skill_name(parse_skill(self.skill))
        if self.velocity is not None and len(self.velocity) != 3:
            raise ConfigError(f'Schedule velocity must have 3 components, got {self.velocity}')
        self._id_attrs = (self.time, self.skill)

    @property
    def label(self) -> int:
        return parse_skill(self.skill)


@model
class SkillSchedule(CampModel):
    """Класс, представляющий расписание переключения навыков.

    Attributes:
        entries (:obj:`list` из :obj:`camp_locomotion.ScheduleEntry`): Записи, время строго возрастает с 0.
    """

    entries: List[ScheduleEntry]

    def __post_init__(self) -> None:
        if not self.entries:
            raise ConfigError('Skill schedule must not be empty')
        times = [entry.time for entry in self.entries]
        if times[0] != 0:
            raise ConfigError(f'Skill schedule must start at time 0, got {times[0]}')
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ConfigError(f'Skill schedule times must be strictly increasing: {times}')
        self._id_attrs = tuple(self.entries)

    @classmethod
    def de_json(cls, data: 'JSONType') -> Optional['Self']:
        """Десериализация объекта.

        Args:
            data (:obj:`dict`): Поля и значения десериализуемого объекта.

        Returns:
            :obj:`camp_locomotion.SkillSchedule`: Расписание навыков.
        """
        if data is None:
            return None

        cls_data = cls.cleanup_data(data)
        cls_data['entries'] = ScheduleEntry.de_list(cls_data.get('entries', []))

        return cls(**cls_data)  # type: ignore

    @classmethod
    def constant(cls, skill: str) -> 'SkillSchedule':
        return cls(entries=[ScheduleEntry(time=0.0, skill=skill)])

    @classmethod
    def parse(cls, text: str) -> 'SkillSchedule':
        """Разбирает запись вида ``0:trot_2Hz,3.5:pace_2Hz``."""
        entries = []
        for item in filter(None, (part.strip() for part in text.split(','))):
            time, sep, skill = item.partition(':')
            if not sep:
                raise ConfigError(f'Schedule item {item!r} must look like <time>:<skill>')
            try:
                entries.append(ScheduleEntry(time=float(time), skill=skill.strip()))
            except ValueError as e:
                raise ConfigError(f'Schedule item {item!r} has an invalid time') from e
        return cls(entries=entries)

    def entry_at(self, time: float) -> ScheduleEntry:
        """Запись, действующая в момент `time`."""
        current = self.entries[0]
        for entry in self.entries[1:]:
            if entry.time > time + 1e-9:
                break
            current = entry
        return current

    @property
    def switch_times(self) -> List[float]:
        return [entry.time for entry in self.entries[1:]]
