import csv
import logging
from dataclasses import dataclass
from typing import List, Tuple, Union

import numpy as np

from camp_locomotion.exceptions import ClipFormatError, MissingRunError
from camp_locomotion.motion.kinematics import LEG_NAMES
from camp_locomotion.motion.skills import skill_name

TRACE_FORMAT_VERSION = 1
TRACE_HEADER_PREFIX = '# camp-trace format_version='

logger = logging.getLogger(__name__)


def trace_columns() -> List[str]:
    return [
        'time',
        'skill',
        'skill_name',
        'vx',
        'vy',
        'wz',
        *[f'target_{i}' for i in range(12)],
        *[f'joint_{i}' for i in range(12)],
        *[f'contact_{leg}' for leg in LEG_NAMES],
        'terminated',
    ]


@dataclass
class RolloutTrace:
    """Трасса оценочного роллаута с частотой шага политики.

    Attributes:
        time (:obj:`numpy.ndarray`): Время начала шага, с (T,).
        skill (:obj:`numpy.ndarray`): Командуемая метка навыка (T,).
        velocity (:obj:`numpy.ndarray`): Команда скорости (T, 3).
        joint_targets (:obj:`numpy.ndarray`): Целевые углы суставов (T, 12).
        joint_positions (:obj:`numpy.ndarray`): Углы суставов после шага (T, 12).
        contacts (:obj:`numpy.ndarray`): Опоры ног FL, FR, RL, RR (T, 4).
        terminated (:obj:`numpy.ndarray`): Аварийное завершение эпизода на шаге (T,).
    """

    time: np.ndarray
    skill: np.ndarray
    velocity: np.ndarray
    joint_targets: np.ndarray
    joint_positions: np.ndarray
    contacts: np.ndarray
    terminated: np.ndarray

    def __len__(self) -> int:
        return len(self.time)

    @property
    def dt(self) -> float:
        return float(self.time[1] - self.time[0]) if len(self) > 1 else 0.0

    def window(self, start: float, end: float) -> 'RolloutTrace':
        """Строки со временем в [start, end)."""
        return self._rows((self.time >= start - 1e-9) & (self.time < end - 1e-9))

    def segments(self) -> List[Tuple[int, 'RolloutTrace']]:
        """Непрерывные отрезки с одним командуемым навыком, в порядке времени."""
        if not len(self):
            return []
        bounds = [0, *(np.flatnonzero(np.diff(self.skill)) + 1).tolist(), len(self)]
        return [(int(self.skill[start]), self._rows(slice(start, end))) for start, end in zip(bounds, bounds[1:])]

    def _rows(self, rows: Union[slice, np.ndarray]) -> 'RolloutTrace':
        return RolloutTrace(
            self.time[rows],
            self.skill[rows],
            self.velocity[rows],
            self.joint_targets[rows],
            self.joint_positions[rows],
            self.contacts[rows],
            self.terminated[rows],
        )


def write_trace(path: str, trace: RolloutTrace) -> None:
    """Записывает трассу в CSV с версионированной строкой-заголовком."""
    with open(path, 'w', newline='', encoding='utf-8') as f:
        f.write(f'{TRACE_HEADER_PREFIX}{TRACE_FORMAT_VERSION}\n')
        writer = csv.writer(f)
        writer.writerow(trace_columns())
        for i in range(len(trace)):
            writer.writerow(
                [
                    repr(float(trace.time[i])),
                    int(trace.skill[i]),
                    skill_name(int(trace.skill[i])),
                    *[repr(float(v)) for v in trace.velocity[i]],
                    *[repr(float(v)) for v in trace.joint_targets[i]],
                    *[repr(float(v)) for v in trace.joint_positions[i]],
                    *[int(c) for c in trace.contacts[i]],
                    int(trace.terminated[i]),
                ]
            )
    logger.debug(f'Wrote {len(trace)} trace rows to {path}')


def read_trace(path: str) -> RolloutTrace:
    try:
        with open(path, newline='', encoding='utf-8') as f:
            first = f.readline().strip()
            version = first[len(TRACE_HEADER_PREFIX) :] if first.startswith(TRACE_HEADER_PREFIX) else None
            if version != str(TRACE_FORMAT_VERSION):
                raise ClipFormatError(f'{path}: not a rollout trace of version {TRACE_FORMAT_VERSION}')
            rows = list(csv.DictReader(f))
    except FileNotFoundError as e:
        raise MissingRunError(f'Trace {path} not found') from e

    def column(name: str) -> np.ndarray:
        return np.array([float(row[name]) for row in rows])

    def block(names: List[str]) -> np.ndarray:
        return np.stack([column(name) for name in names], axis=1) if rows else np.zeros((0, len(names)))

    return RolloutTrace(
        time=column('time'),
        skill=column('skill').astype(np.int64),
        velocity=block(['vx', 'vy', 'wz']),
        joint_targets=block([f'target_{i}' for i in range(12)]),
        joint_positions=block([f'joint_{i}' for i in range(12)]),
        contacts=block([f'contact_{leg}' for leg in LEG_NAMES]).astype(bool),
        terminated=column('terminated').astype(bool),
    )
