"""Реестр навыков: пары (походка, частота) и их целочисленные метки."""
import math
from typing import Dict, List, Optional, Sequence, Tuple

from camp_locomotion.exceptions import ConfigError
from camp_locomotion.motion.gait_spec import GAITS, GaitSpec

FREQUENCIES = (2.0, 4.0)

PHASE_OFFSETS: Dict[str, Tuple[float, float, float, float]] = {
    'trot': (0.0, 0.5, 0.5, 0.0),
    'pace': (0.0, 0.5, 0.0, 0.5),
    'bound': (0.0, 0.0, 0.5, 0.5),
    'pronk': (0.0, 0.0, 0.0, 0.0),
}
DUTY_FACTORS: Dict[str, float] = {'trot': 0.55, 'pace': 0.55, 'bound': 0.45, 'pronk': 0.4}
STEP_HEIGHTS: Dict[float, float] = {2.0: 0.08, 4.0: 0.06}

DEFAULT_FORWARD_VELOCITY = 0.5
DEFAULT_BODY_HEIGHT = 0.30


def skill_label(gait: str, frequency: float) -> int:
    """Метка навыка: ``gait_index * 2 + frequency_index``.

    Raises:
        :class:`camp_locomotion.exceptions.ConfigError`: Неизвестная походка или частота.
    """
    if gait not in GAITS:
        raise ConfigError(f'Unknown gait {gait!r}')
    for index, known in enumerate(FREQUENCIES):
        if math.isclose(known, frequency):
            return GAITS.index(gait) * len(FREQUENCIES) + index
    raise ConfigError(f'Unsupported frequency {frequency} Hz, expected one of {FREQUENCIES}')


def skill_gait(label: int) -> str:
    return GAITS[label // len(FREQUENCIES)]


def skill_frequency(label: int) -> float:
    return FREQUENCIES[label % len(FREQUENCIES)]


def skill_name(label: int) -> str:
    """Имя навыка вида ``trot_2Hz``."""
    if not 0 <= label < skill_count():
        raise ConfigError(f'Unknown skill label {label}')
    return f'{skill_gait(label)}_{skill_frequency(label):g}Hz'


def parse_skill(name_or_label: str) -> int:
    """Разбирает имя навыка (``pace_4Hz``) или его числовую метку."""
    text = str(name_or_label).strip()
    if text.isdigit():
        label = int(text)
        skill_name(label)
        return label
    for label in range(skill_count()):
        if skill_name(label) == text:
            return label
    raise ConfigError(f'Unknown skill {text!r}, expected one of {all_skill_names()}')


def skill_count() -> int:
    return len(GAITS) * len(FREQUENCIES)


def all_skill_names() -> List[str]:
    return [skill_name(label) for label in range(skill_count())]


def default_gait_spec(
    gait: str,
    frequency: float,
    command_velocity: Optional[Sequence[float]] = None,
    body_height: float = DEFAULT_BODY_HEIGHT,
) -> GaitSpec:
    """Параметры походки по умолчанию для пары (походка, частота).

    Note:
        Длина шага выбирается так, чтобы стопа в опоре не скользила: ``|v| · duty / f``.

    Args:
        gait (:obj:`str`): Тип походки.
        frequency (:obj:`float`): Частота шага в Гц.
        command_velocity (:obj:`Sequence` из :obj:`float`, optional): Команда (vx, vy, ωz). По умолчанию шаг вперёд
            со скоростью 0.5 м/с.
        body_height (:obj:`float`, optional): Высота корпуса.

    Returns:
        :obj:`camp_locomotion.GaitSpec`: Параметры походки.
    """
    if gait not in GAITS:
        raise ConfigError(f'Unknown gait {gait!r}')
    if command_velocity is None:
        command_velocity = (DEFAULT_FORWARD_VELOCITY, 0.0, 0.0)

    duty = DUTY_FACTORS[gait]
    speed = math.hypot(command_velocity[0], command_velocity[1])
    step_height = STEP_HEIGHTS.get(float(frequency), 0.08 if frequency < 3 else 0.06)

    return GaitSpec(
        gait=gait,
        frequency=float(frequency),
        duty_factor=duty,
        phase_offsets=list(PHASE_OFFSETS[gait]),
        step_length=speed * duty / frequency,
        step_height=step_height,
        body_height=body_height,
        command_velocity=list(command_velocity),
    )


def skill_gait_spec(label: int, command_velocity: Optional[Sequence[float]] = None) -> GaitSpec:
    return default_gait_spec(skill_gait(label), skill_frequency(label), command_velocity)
