from camp_locomotion.base import CampModel, model
from camp_locomotion.exceptions import ConfigError


@model
class AnalysisConfig(CampModel):
    """Класс, представляющий параметры анализа.

    Attributes:
        reference_duration (:obj:`float`): Длительность эталонных отрезков для латентного анализа, с.
        dtw_rate (:obj:`float`): Частота прореживания латентных последовательностей перед DTW, Гц.
        dtw_workers (:obj:`int`): Число потоков для матрицы DTW.
        multi_gait_threshold (:obj:`float`): Порог расстояния фазовых сигнатур для вывода о нескольких походках.
        switch_window (:obj:`float`): Окно после переключения навыка, с.
        evaluation_duration (:obj:`float`): Длительность оценочных роллаутов, с.
        skill_disc_epochs (:obj:`int`): Эпохи обучения f_θ для эксперимента классификации навыков.
    """

    reference_duration: float = 10.0
    dtw_rate: float = 25.0
    dtw_workers: int = 4
    multi_gait_threshold: float = 0.2
    switch_window: float = 2.0
    evaluation_duration: float = 10.0
    skill_disc_epochs: int = 30

    def __post_init__(self) -> None:
        if self.reference_duration <= 0 or self.dtw_rate <= 0 or self.dtw_workers < 1:
            raise ConfigError('reference_duration and dtw_rate must be > 0, dtw_workers >= 1')
        if self.switch_window <= 0 or self.evaluation_duration <= 0:
            raise ConfigError('switch_window and evaluation_duration must be > 0')

        self._id_attrs = self._field_id_attrs()
