import dataclasses
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple, Type, TypeVar, Union, cast

import numpy as np
from typing_extensions import Self, TypeGuard, dataclass_transform

from camp_locomotion.exceptions import ConfigError

ujson: bool = False
try:
    import ujson as json

    ujson = True
except ImportError:
    import json

logger = logging.getLogger(__name__)


JSONType = Union[Dict[str, 'JSONType'], Sequence['JSONType'], str, int, float, bool, None]
ModelFieldType = Union[
    Dict[str, 'ModelFieldType'], Sequence['ModelFieldType'], 'CampModel', str, int, float, bool, None
]
ModelFieldMap = Dict[str, 'ModelFieldType']

_T = TypeVar('_T')


@dataclass_transform(field_specifiers=(dataclasses.Field, dataclasses.field))
def model(cls: Type[_T]) -> Type[_T]:
    """Превращает класс в dataclass без сгенерированных `__eq__` и `__repr__`, их даёт :class:`CampModel`."""
    return dataclasses.dataclass(eq=False, repr=False)(cls)


def dumps(data: JSONType) -> str:
    """Детерминированная сериализация в JSON.

    Note:
        Ключи сортируются, поэтому одинаковые данные дают побайтно одинаковый текст.

    Args:
        data (:obj:`JSONType`): Данные для сериализации.

    Returns:
        :obj:`str`: JSON строка.
    """
    if ujson:
        return json.dumps(data, sort_keys=True, indent=2, escape_forward_slashes=False)
    return json.dumps(data, sort_keys=True, indent=2)


def loads(text: str) -> JSONType:
    """Разбор JSON строки.

    Args:
        text (:obj:`str`): JSON строка.

    Returns:
        :obj:`JSONType`: Разобранные данные.
    """
    return json.loads(text)


@model
class CampModel:
    """Базовый класс для всех моделей конфигурации и записей библиотеки.

    Note:
        В отличие от ответов внешнего API, конфигурация разбирается строго: неизвестные ключи приводят
        к :class:`camp_locomotion.exceptions.ConfigError`.
    """

    def __str__(self) -> str:
        return str(self.to_dict())

    def __repr__(self) -> str:
        return str(self)

    @staticmethod
    def is_dict_model_data(data: JSONType) -> TypeGuard[Dict[str, JSONType]]:
        """Проверка на соответствие данных словарю.

        Args:
            data (:obj:`JSONType`): Данные для проверки.

        Returns:
            :obj:`bool`: Валидны ли данные.
        """
        return isinstance(data, dict)

    @staticmethod
    def is_array_model_data(data: JSONType) -> TypeGuard[List[Dict[str, JSONType]]]:
        """Проверка на соответствие данных массиву словарей.

        Args:
            data (:obj:`JSONType`): Данные для проверки.

        Returns:
            :obj:`bool`: Валидны ли данные.
        """
        return isinstance(data, list) and all(isinstance(item, dict) for item in data)

    @classmethod
    def cleanup_data(cls, data: JSONType) -> ModelFieldMap:
        """Проверяет, что в сырых данных нет незадекларированных полей для текущей модели.

        Args:
            data (:obj:`JSONType`): Поля и значения десериализуемого объекта.

        Returns:
            :obj:`ModelFieldMap`: Копия данных.

        Raises:
            :class:`camp_locomotion.exceptions.ConfigError`: Если найдены неизвестные поля.
        """
        if not CampModel.is_dict_model_data(data):
            raise ConfigError(f'{cls.__name__}: expected an object, got {type(data).__name__}')

        fields = {f.name for f in dataclasses.fields(cls) if f.init}
        unknown = sorted(k for k in data if k not in fields)
        if unknown:
            raise ConfigError(f'{cls.__module__}.{cls.__name__}: unknown keys {unknown}')

        return dict(data)

    @classmethod
    def de_json(cls, data: JSONType) -> Optional[Self]:
        """Десериализация объекта.

        Note:
            Переопределяется в дочерних классах когда есть вложенные объекты.

        Args:
            data (:obj:`JSONType`): Поля и значения десериализуемого объекта.

        Returns:
            :obj:`camp_locomotion.CampModel`: Десериализованный объект или :obj:`None` для :obj:`None` на входе.
        """
        if data is None:
            return None

        try:
            return cls(**cls.cleanup_data(data))
        except TypeError as e:
            raise ConfigError(f'{cls.__name__}: {e}') from e

    @classmethod
    def de_list(cls, data: JSONType) -> List[Self]:
        """Десериализация списка объектов.

        Args:
            data (:obj:`JSONType`): Список словарей с полями и значениями десериализуемого объекта.

        Returns:
            :obj:`list` из :obj:`camp_locomotion.CampModel`: Список десериализованных объектов.
        """
        if not data:
            return []
        if not cls.is_array_model_data(data):
            raise ConfigError(f'{cls.__name__}: expected a list of objects')

        items = [cls.de_json(item) for item in data]
        return [item for item in items if item is not None]

    def to_json(self) -> str:
        """Сериализация объекта.

        Returns:
            :obj:`str`: Сериализованный в JSON объект.
        """
        return dumps(self.to_dict())

    def to_dict(self) -> JSONType:
        """Рекурсивная сериализация объекта.

        Note:
            Исключает из сериализации `_id_attrs`, необходимые в `__eq__`. Массивы numpy переводятся в списки,
            кортежи в списки.

        Returns:
            :obj:`dict`: Сериализованный в dict объект.
        """

        def parse(val: Any) -> Any:  # noqa: ANN401
            if isinstance(val, CampModel):
                return val.to_dict()
            if isinstance(val, (list, tuple)):
                return [parse(it) for it in val]
            if isinstance(val, dict):
                return {key: parse(value) for key, value in val.items()}
            if isinstance(val, np.ndarray):
                return val.tolist()
            if isinstance(val, np.generic):
                return val.item()
            return val

        data = {f.name: getattr(self, f.name) for f in dataclasses.fields(self)}
        data.pop('_id_attrs', None)

        return parse(data)

    def _field_id_attrs(self) -> Tuple[Any, ...]:
        """Ключевые атрибуты из всех полей модели; списки замораживаются в кортежи."""
        return tuple(
            tuple(value) if isinstance(value, list) else value
            for value in (getattr(self, f.name) for f in dataclasses.fields(self))
        )

    def _get_id_attrs(self) -> Tuple[Any, ...]:
        """Получение ключевых атрибутов объекта.

        Returns:
            :obj:`tuple`: Ключевые атрибуты объекта для сравнения.
        """
        return cast(Tuple[Any, ...], getattr(self, '_id_attrs', ()))

    def __eq__(self, other: Any) -> bool:  # noqa: ANN401
        """Проверка на равенство двух объектов.

        Note:
            Проверка осуществляется по определённым атрибутам классов, перечисленных в `_id_attrs`.

        Returns:
            :obj:`bool`: Одинаковые ли объекты (по содержимому).
        """
        if isinstance(other, self.__class__):
            return self._get_id_attrs() == other._get_id_attrs()
        return super(CampModel, self).__eq__(other)

    def __hash__(self) -> int:
        """Реализация хеш-функции на основе ключевых атрибутов.

        Returns:
            :obj:`int`: Хеш объекта.
        """
        id_attrs = self._get_id_attrs()
        if not id_attrs:
            return super(CampModel, self).__hash__()

        frozen_attrs = tuple(tuple(attr) if isinstance(attr, list) else attr for attr in id_attrs)
        return hash((self.__class__, frozen_attrs))
