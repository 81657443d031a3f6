from typing import Optional, Sequence


class CampError(Exception):
    """Базовый класс, представляющий исключения общего характера."""


class ConfigError(CampError):
    """Класс исключения, вызываемого при неверных значениях или неизвестных ключах конфигурации."""


class DataError(CampError):
    """Базовый класс исключений, вызываемых для некорректных входных данных (клипы, трассы, выборки)."""


class UnreachableTargetError(DataError):
    """Класс исключения, вызываемого когда целевая точка стопы вне досягаемости ноги.

    Args:
        target (:obj:`Sequence` из :obj:`float`): Целевая точка в системе координат бедра.
        distance (:obj:`float`): Расстояние до цели после исключения смещения отведения.
        reach (:obj:`tuple`): Допустимый интервал расстояний (min, max).
    """

    def __init__(self, target: Sequence[float], distance: float, reach: Sequence[float]) -> None:
        super().__init__(
            f'Foot target {tuple(round(float(v), 6) for v in target)} is unreachable: '
            f'distance {distance:.6f} m outside [{reach[0]:.6f}, {reach[1]:.6f}] m'
        )
        self.target = tuple(target)
        self.distance = distance
        self.reach = tuple(reach)


class ClipFormatError(DataError):
    """Класс исключения, вызываемого при чтении повреждённого или несовместимого файла клипа."""


class EmptySelectionError(DataError):
    """Класс исключения, вызываемого когда выборка данных пуста или вырождена."""


class NumericError(CampError):
    """Базовый класс исключений, вызываемых для численных сбоев."""


class NonFiniteError(NumericError):
    """Класс исключения, вызываемого при появлении NaN или бесконечности в лоссах, градиентах или действиях."""


class EnvStepError(CampError):
    """Класс исключения, вызываемого при ошибке шага окружения.

    Args:
        message (:obj:`str`): Описание ошибки.
        env_index (:obj:`int`, optional): Индекс окружения, в котором произошла ошибка.
    """

    def __init__(self, message: str, env_index: Optional[int] = None) -> None:
        if env_index is not None:
            message = f'env {env_index}: {message}'
        super().__init__(message)
        self.env_index = env_index


class MissingRunError(CampError):
    """Класс исключения, вызываемого при отсутствии каталога запуска или чекпоинта."""


class StoreExistsError(CampError):
    """Класс исключения, вызываемого при попытке перезаписать непустой каталог без флага принудительной записи."""
