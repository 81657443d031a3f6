import functools
import logging
import time
from typing import Any, Callable, TypeVar

F = TypeVar('F', bound=Callable[..., Any])


def log(method: F) -> F:
    """Декоратор для долгих операций: пишет в DEBUG начало вызова и затраченное время.

    Логгер берётся по модулю декорируемой функции, поэтому уровень настраивается по пакетам
    (например, ``camp_locomotion.motion``).
    """
    logger = logging.getLogger(method.__module__)
    name = method.__qualname__

    @functools.wraps(method)
    def wrapper(*args: Any, **kwargs: Any) -> Any:  # noqa: ANN401
        logger.debug(f'{name}: started')
        started = time.perf_counter()

        result = method(*args, **kwargs)

        logger.debug(f'{name}: done in {time.perf_counter() - started:.3f} s')
        return result

    return wrapper  # type: ignore
