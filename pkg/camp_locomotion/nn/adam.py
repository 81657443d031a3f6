import logging
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from camp_locomotion.exceptions import DataError, NonFiniteError

logger = logging.getLogger(__name__)


@dataclass
class OptimizerState:
    """Состояние оптимизатора Adam.

    Attributes:
        m (:obj:`numpy.ndarray`): Первый момент, той же формы, что и параметры.
        v (:obj:`numpy.ndarray`): Второй момент.
        step (:obj:`int`): Число выполненных шагов.
        learning_rate (:obj:`float`): Скорость обучения.
        beta1 (:obj:`float`): Коэффициент затухания первого момента.
        beta2 (:obj:`float`): Коэффициент затухания второго момента.
        eps (:obj:`float`): Стабилизатор знаменателя.
    """

    m: np.ndarray
    v: np.ndarray
    step: int = 0
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def zeros(cls, size: int, learning_rate: float = 1e-3, **kwargs: float) -> 'OptimizerState':
        return cls(m=np.zeros(size), v=np.zeros(size), learning_rate=learning_rate, **kwargs)  # type: ignore[arg-type]

    def to_arrays(self, prefix: str) -> Dict[str, np.ndarray]:
        return {
            f'{prefix}m': self.m,
            f'{prefix}v': self.v,
            f'{prefix}scalars': np.array([self.step, self.learning_rate, self.beta1, self.beta2, self.eps]),
        }

    @classmethod
    def from_arrays(cls, arrays: Dict[str, np.ndarray], prefix: str) -> 'OptimizerState':
        step, learning_rate, beta1, beta2, eps = arrays[f'{prefix}scalars']
        return cls(
            m=arrays[f'{prefix}m'].copy(),
            v=arrays[f'{prefix}v'].copy(),
            step=int(step),
            learning_rate=float(learning_rate),
            beta1=float(beta1),
            beta2=float(beta2),
            eps=float(eps),
        )


def optimizer_step(state: OptimizerState, params: np.ndarray, grads: np.ndarray) -> np.ndarray:
    """Шаг Adam с поправкой смещения моментов. Параметры обновляются на месте.

    Args:
        state (:obj:`camp_locomotion.nn.adam.OptimizerState`): Состояние, изменяется на месте.
        params (:obj:`numpy.ndarray`): Плоский вектор параметров.
        grads (:obj:`numpy.ndarray`): Градиент той же раскладки.

    Returns:
        :obj:`numpy.ndarray`: Обновлённые параметры (тот же объект).

    Raises:
        :class:`camp_locomotion.exceptions.NonFiniteError`: В градиенте есть NaN или бесконечность.
        :class:`camp_locomotion.exceptions.DataError`: Формы не совпадают.
    """
    if grads.shape != params.shape or state.m.shape != params.shape:
        raise DataError(f'Shape mismatch: params {params.shape}, grads {grads.shape}, state {state.m.shape}')
    if not np.all(np.isfinite(grads)):
        raise NonFiniteError('Non-finite gradient passed to optimizer')

    state.step += 1
    state.m *= state.beta1
    state.m += (1.0 - state.beta1) * grads
    state.v *= state.beta2
    state.v += (1.0 - state.beta2) * grads**2

    m_hat = state.m / (1.0 - state.beta1**state.step)
    v_hat = state.v / (1.0 - state.beta2**state.step)
    params -= state.learning_rate * m_hat / (np.sqrt(v_hat) + state.eps)

    return params


def clip_grad_norm(grads: np.ndarray, max_norm: float) -> Tuple[np.ndarray, float]:
    """Масштабирует градиент так, чтобы его норма не превышала `max_norm`. Возвращает градиент и исходную норму."""
    norm = float(np.linalg.norm(grads))
    if not np.isfinite(norm):
        raise NonFiniteError('Non-finite gradient norm')
    if max_norm > 0 and norm > max_norm:
        grads = grads * (max_norm / norm)
    return grads, norm


class Adam:
    """Оптимизатор Adam для плоского вектора параметров.

    Args:
        params (:obj:`numpy.ndarray`): Вектор параметров, обновляется на месте.
        learning_rate (:obj:`float`, optional): Скорость обучения.
        max_grad_norm (:obj:`float`, optional): Порог нормы градиента, 0 отключает обрезку.
    """

    def __init__(self, params: np.ndarray, learning_rate: float = 1e-3, max_grad_norm: float = 0.0, **kwargs: float):
        self.params = params
        self.max_grad_norm = max_grad_norm
        self.state = OptimizerState.zeros(params.size, learning_rate=learning_rate, **kwargs)

    @property
    def learning_rate(self) -> float:
        return self.state.learning_rate

    @learning_rate.setter
    def learning_rate(self, value: float) -> None:
        self.state.learning_rate = value

    def step(self, grads: np.ndarray) -> float:
        """Применяет градиент и возвращает его норму до обрезки."""
        if self.max_grad_norm > 0:
            grads, norm = clip_grad_norm(grads, self.max_grad_norm)
        else:
            norm = float(np.linalg.norm(grads))
        optimizer_step(self.state, self.params, grads)
        return norm
