from dataclasses import dataclass
from typing import Callable

import numpy as np

from camp_locomotion.utils.seeding import SeedLike, make_rng


@dataclass
class GradCheckResult:
    max_relative_error: float
    directions: int

    @property
    def passed(self) -> bool:
        return self.max_relative_error < 1e-6


def relative_error(analytic: float, numeric: float, floor: float = 1e-8) -> float:
    return abs(analytic - numeric) / max(abs(analytic), abs(numeric), floor)


def check_gradient(
    fn: Callable[[np.ndarray], float],
    x: np.ndarray,
    analytic: np.ndarray,
    directions: int = 100,
    eps: float = 1e-6,
    rng: SeedLike = 0,
) -> GradCheckResult:
    """Сравнивает аналитический градиент с центральными конечными разностями вдоль случайных направлений.

    Note:
        Для каждого направления сравнивается производную по направлению d: ``d · analytic`` и
        ``(fn(x + eps·d) − fn(x − eps·d)) / (2·eps)``. Направления нормированы.

    Args:
        fn (:obj:`Callable`): Скалярная функция от плоского вектора.
        x (:obj:`numpy.ndarray`): Точка проверки, не изменяется.
        analytic (:obj:`numpy.ndarray`): Аналитический градиент в точке `x`.
        directions (:obj:`int`, optional): Число случайных направлений.
        eps (:obj:`float`, optional): Шаг конечной разности.
        rng (:obj:`int` | :obj:`numpy.random.Generator`, optional): Генератор направлений.

    Returns:
        :obj:`camp_locomotion.nn.gradcheck.GradCheckResult`: Максимальная относительная ошибка по направлениям.
    """
    rng = make_rng(rng)
    x = np.asarray(x, dtype=np.float64)
    analytic = np.asarray(analytic, dtype=np.float64).reshape(x.shape)

    worst = 0.0
    for _ in range(directions):
        direction = rng.standard_normal(x.shape)
        direction /= np.linalg.norm(direction)
        numeric = (fn(x + eps * direction) - fn(x - eps * direction)) / (2 * eps)
        worst = max(worst, relative_error(float(np.sum(analytic * direction)), numeric))

    return GradCheckResult(max_relative_error=worst, directions=directions)
