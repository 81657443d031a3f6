import dataclasses
from dataclasses import dataclass
from typing import Dict, List

import numpy as np

from camp_locomotion.sim.domain_randomization import RandomizedParams


@dataclass
class EnvState:
    """Класс, представляющий состояние пакета из N окружений.

    Note:
        Все поля имеют ведущую ось по окружениям. Линейная скорость корпуса хранится в мировой системе,
        угловая в системе корпуса. Выбранные при сбросе параметры рандомизации хранятся вместе с состоянием.

    Attributes:
        base_position (:obj:`numpy.ndarray`): (N, 3).
        base_orientation (:obj:`numpy.ndarray`): (N, 4), кватернион (x, y, z, w).
        base_linear_velocity (:obj:`numpy.ndarray`): (N, 3), мировая система.
        base_angular_velocity (:obj:`numpy.ndarray`): (N, 3), система корпуса.
        joint_positions (:obj:`numpy.ndarray`): (N, 12).
        joint_velocities (:obj:`numpy.ndarray`): (N, 12).
        applied_torques (:obj:`numpy.ndarray`): (N, 12), выход звена запаздывания привода.
        contacts (:obj:`numpy.ndarray`): (N, 4), признаки опоры.
        episode_time (:obj:`numpy.ndarray`): (N,), с.
        step_count (:obj:`numpy.ndarray`): (N,), шаги с начала эпизода.
        link_mass_scale (:obj:`numpy.ndarray`): (N,).
        payload_mass (:obj:`numpy.ndarray`): (N,).
        payload_position (:obj:`numpy.ndarray`): (N, 3).
        friction (:obj:`numpy.ndarray`): (N,).
        motor_strength (:obj:`numpy.ndarray`): (N,).
        kp_gain (:obj:`numpy.ndarray`): (N, 12).
        kd_gain (:obj:`numpy.ndarray`): (N, 12).
        init_joint_scale (:obj:`numpy.ndarray`): (N, 12).
    """

    base_position: np.ndarray
    base_orientation: np.ndarray
    base_linear_velocity: np.ndarray
    base_angular_velocity: np.ndarray
    joint_positions: np.ndarray
    joint_velocities: np.ndarray
    applied_torques: np.ndarray
    contacts: np.ndarray
    episode_time: np.ndarray
    step_count: np.ndarray
    link_mass_scale: np.ndarray
    payload_mass: np.ndarray
    payload_position: np.ndarray
    friction: np.ndarray
    motor_strength: np.ndarray
    kp_gain: np.ndarray
    kd_gain: np.ndarray
    init_joint_scale: np.ndarray

    PHYSICAL_FIELDS = (
        'base_position',
        'base_orientation',
        'base_linear_velocity',
        'base_angular_velocity',
        'joint_positions',
        'joint_velocities',
        'applied_torques',
    )

    @classmethod
    def field_names(cls) -> List[str]:
        return [f.name for f in dataclasses.fields(cls)]

    @property
    def num_envs(self) -> int:
        return len(self.base_position)

    def copy(self) -> 'EnvState':
        return EnvState(**{name: getattr(self, name).copy() for name in self.field_names()})

    def select(self, indices: np.ndarray) -> 'EnvState':
        """Подмножество окружений (всегда копия, ведущая ось сохраняется)."""
        indices = np.atleast_1d(indices)
        return EnvState(**{name: getattr(self, name)[indices].copy() for name in self.field_names()})

    def assign(self, indices: np.ndarray, other: 'EnvState') -> None:
        indices = np.atleast_1d(indices)
        for name in self.field_names():
            getattr(self, name)[indices] = getattr(other, name)

    @classmethod
    def concat(cls, states: List['EnvState']) -> 'EnvState':
        return cls(**{name: np.concatenate([getattr(s, name) for s in states]) for name in cls.field_names()})

    def params(self, index: int) -> RandomizedParams:
        return RandomizedParams(
            link_mass_scale=float(self.link_mass_scale[index]),
            payload_mass=float(self.payload_mass[index]),
            payload_position=self.payload_position[index].copy(),
            friction=float(self.friction[index]),
            motor_strength=float(self.motor_strength[index]),
            kp_gain=self.kp_gain[index].copy(),
            kd_gain=self.kd_gain[index].copy(),
            init_joint_scale=self.init_joint_scale[index].copy(),
        )

    def to_arrays(self, prefix: str = 'env.') -> Dict[str, np.ndarray]:
        return {f'{prefix}{name}': np.asarray(getattr(self, name), dtype=np.float64) for name in self.field_names()}

    @classmethod
    def from_arrays(cls, arrays: Dict[str, np.ndarray], prefix: str = 'env.') -> 'EnvState':
        data = {name: np.array(arrays[f'{prefix}{name}']) for name in cls.field_names()}
        data['contacts'] = data['contacts'].astype(bool)
        data['step_count'] = data['step_count'].astype(np.int64)
        return cls(**data)
