from dataclasses import field
from typing import TYPE_CHECKING, Optional

from camp_locomotion.base import CampModel, model
from camp_locomotion.exceptions import ConfigError
from camp_locomotion.sim.domain_randomization import DomainRandomizationConfig
from camp_locomotion.sim.pd_params import PdParams
from camp_locomotion.sim.robot_model import RobotModel

if TYPE_CHECKING:
    from typing_extensions import Self

    from camp_locomotion.base import JSONType


@model
class EnvConfig(CampModel):
    """Класс, представляющий раздел конфигурации окружения.

    Attributes:
        dt (:obj:`float`): Период управления, с.
        decimation (:obj:`int`): Число шагов интегрирования суставов на шаг управления.
        episode_length (:obj:`int`): Предельная длина эпизода в шагах.
        actuator_lag (:obj:`float`): Постоянная времени запаздывания привода, с.
        contact_height (:obj:`float`): Порог высоты стопы для признака опоры, м.
        termination_height_ratio (:obj:`float`): Доля номинальной высоты, ниже которой эпизод завершается.
        termination_tilt (:obj:`float`): Предельный крен и тангаж, рад.
        attitude_time_constant (:obj:`float`): Постоянная времени установки наклона корпуса, с.
        payload_tilt_gain (:obj:`float`): Наклон корпуса на единицу смещения центра масс груза, рад/м.
        gravity (:obj:`float`): Ускорение свободного падения, м/с².
        angular_velocity_scale (:obj:`float`): Масштаб угловой скорости в наблюдении.
        joint_velocity_scale (:obj:`float`): Масштаб скоростей суставов в наблюдении.
        workers (:obj:`int`): Число потоков для пакетного шага.
        robot (:obj:`camp_locomotion.RobotModel`): Модель робота.
        pd (:obj:`camp_locomotion.PdParams`): Параметры ПД регулятора.
        randomization (:obj:`camp_locomotion.DomainRandomizationConfig`): Рандомизация динамики.
    """

    dt: float = 0.02
    decimation: int = 4
    episode_length: int = 500
    actuator_lag: float = 0.01
    contact_height: float = 0.01
    termination_height_ratio: float = 0.6
    termination_tilt: float = 1.0
    attitude_time_constant: float = 0.05
    payload_tilt_gain: float = 0.5
    gravity: float = 9.81
    angular_velocity_scale: float = 0.25
    joint_velocity_scale: float = 0.05
    workers: int = 1
    robot: RobotModel = field(default_factory=RobotModel)
    pd: PdParams = field(default_factory=PdParams)
    randomization: DomainRandomizationConfig = field(default_factory=DomainRandomizationConfig)

    def __post_init__(self) -> None:
        if self.dt <= 0 or self.decimation < 1 or self.episode_length < 1:
            raise ConfigError('dt must be > 0, decimation and episode_length >= 1')
        if self.actuator_lag < 0 or self.attitude_time_constant <= 0 or self.workers < 1:
            raise ConfigError('actuator_lag must be >= 0, attitude_time_constant > 0, workers >= 1')

        self._id_attrs = self._field_id_attrs()

    @property
    def substep(self) -> float:
        return self.dt / self.decimation

    @classmethod
    def de_json(cls, data: 'JSONType') -> Optional['Self']:
        """Десериализация объекта.

        Args:
            data (:obj:`dict`): Поля и значения десериализуемого объекта.

        Returns:
            :obj:`camp_locomotion.EnvConfig`: Раздел конфигурации окружения.
        """
        if data is None:
            return None

        cls_data = cls.cleanup_data(data)
        if 'robot' in cls_data:
            cls_data['robot'] = RobotModel.de_json(cls_data['robot']) or RobotModel()
        if 'pd' in cls_data:
            cls_data['pd'] = PdParams.de_json(cls_data['pd']) or PdParams()
        if 'randomization' in cls_data:
            cls_data['randomization'] = (
                DomainRandomizationConfig.de_json(cls_data['randomization']) or DomainRandomizationConfig()
            )

        return cls(**cls_data)  # type: ignore
