import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from camp_locomotion.exceptions import DataError
from camp_locomotion.nn.mlp_spec import MlpSpec
from camp_locomotion.utils.seeding import SeedLike, make_rng

logger = logging.getLogger(__name__)

Activation = Tuple[
    Callable[[np.ndarray], np.ndarray], Callable[[np.ndarray], np.ndarray], Callable[[np.ndarray], np.ndarray]
]


def _elu(a: np.ndarray) -> np.ndarray:
    return np.where(a > 0, a, np.expm1(np.minimum(a, 0.0)))


def _elu_d1(a: np.ndarray) -> np.ndarray:
    return np.where(a > 0, 1.0, np.exp(np.minimum(a, 0.0)))


def _elu_d2(a: np.ndarray) -> np.ndarray:
    return np.where(a > 0, 0.0, np.exp(np.minimum(a, 0.0)))


def _tanh_d1(a: np.ndarray) -> np.ndarray:
    return 1.0 - np.tanh(a) ** 2


def _tanh_d2(a: np.ndarray) -> np.ndarray:
    t = np.tanh(a)
    return -2.0 * t * (1.0 - t**2)


ACTIVATION_FUNCTIONS: Dict[str, Activation] = {
    'elu': (_elu, _elu_d1, _elu_d2),
    'tanh': (np.tanh, _tanh_d1, _tanh_d2),
    'identity': (lambda a: a, np.ones_like, np.zeros_like),
}


@dataclass
class ForwardCache:
    """Промежуточные значения прямого прохода.

    Attributes:
        inputs (:obj:`numpy.ndarray`): Вход (B, in).
        pre_activations (:obj:`list` из :obj:`numpy.ndarray`): a_l для всех слоёв, последний равен выходу.
        activations (:obj:`list` из :obj:`numpy.ndarray`): h_0 = вход, h_l = σ(a_l) для скрытых слоёв.
    """

    inputs: np.ndarray
    pre_activations: List[np.ndarray]
    activations: List[np.ndarray]

    @property
    def output(self) -> np.ndarray:
        return self.pre_activations[-1]


@dataclass
class PenaltyResult:
    """Значение штрафа ‖∂y/∂x‖² и его градиенты по параметрам и по входу."""

    value: float
    param_grad: np.ndarray
    input_grad: np.ndarray


def orthogonal(shape: Tuple[int, int], gain: float, rng: np.random.Generator) -> np.ndarray:
    """Ортогональная матрица заданной формы, умноженная на `gain`."""
    rows, cols = shape
    flat = rng.standard_normal((max(rows, cols), min(rows, cols)))
    q, r = np.linalg.qr(flat)
    q *= np.sign(np.diag(r))
    if rows < cols:
        q = q.T
    return gain * q[:rows, :cols]


class Mlp:
    """Многослойный перцептрон с точными градиентами по параметрам и по входу.

    Note:
        Все веса и смещения хранятся в одном плоском векторе `params` (float64). Веса слоя l имеют форму
        (out, in) и являются представлениями этого вектора, поэтому обновление `params` на месте сразу видно слоям.
        Раскладка вектора описывается :meth:`layout`, градиенты имеют ту же раскладку.

    Args:
        spec (:obj:`camp_locomotion.MlpSpec`): Архитектура.
        params (:obj:`numpy.ndarray`, optional): Готовый вектор параметров.
        rng (:obj:`int` | :obj:`numpy.random.Generator`, optional): Генератор для инициализации.
        init (:obj:`str`, optional): `orthogonal` или `zeros`.
    """

    def __init__(
        self, spec: MlpSpec, params: Optional[np.ndarray] = None, rng: SeedLike = None, init: str = 'orthogonal'
    ) -> None:
        self.spec = spec
        self.act, self.act_d1, self.act_d2 = ACTIVATION_FUNCTIONS[spec.activation]

        self._slices: List[Tuple[slice, Tuple[int, int], slice]] = []
        offset = 0
        for fan_in, fan_out in zip(spec.layer_sizes[:-1], spec.layer_sizes[1:]):
            w = slice(offset, offset + fan_in * fan_out)
            offset += fan_in * fan_out
            b = slice(offset, offset + fan_out)
            offset += fan_out
            self._slices.append((w, (fan_out, fan_in), b))

        self.params = np.zeros(offset)
        if params is not None:
            self.set_params(params)
        elif init == 'orthogonal':
            self._init_orthogonal(make_rng(rng))
        elif init != 'zeros':
            raise DataError(f'Unknown initialization {init!r}')

    def _init_orthogonal(self, rng: np.random.Generator) -> None:
        last = self.spec.layer_count - 1
        for index, (w, shape, _) in enumerate(self._slices):
            gain = self.spec.output_gain if index == last else self.spec.hidden_gain
            self.params[w] = orthogonal(shape, gain, rng).ravel()

    def set_params(self, params: np.ndarray) -> None:
        params = np.asarray(params, dtype=np.float64)
        if params.shape != self.params.shape:
            raise DataError(f'Expected {self.params.size} parameters, got {params.shape}')
        self.params[...] = params

    def copy(self) -> 'Mlp':
        return Mlp(self.spec, params=self.params.copy())

    def weight(self, index: int) -> np.ndarray:
        w, shape, _ = self._slices[index]
        return self.params[w].reshape(shape)

    def bias(self, index: int) -> np.ndarray:
        return self.params[self._slices[index][2]]

    def _check_input(self, x: np.ndarray) -> Tuple[np.ndarray, bool]:
        x = np.asarray(x, dtype=np.float64)
        single = x.ndim == 1
        x = np.atleast_2d(x)
        if x.shape[1] != self.spec.input_dim:
            raise DataError(f'Expected input dimension {self.spec.input_dim}, got {x.shape[1]}')
        return x, single

    def forward_cache(self, x: np.ndarray) -> ForwardCache:
        x, _ = self._check_input(x)
        pre = []
        acts = [x]
        h = x
        last = self.spec.layer_count - 1
        for index in range(self.spec.layer_count):
            a = h @ self.weight(index).T + self.bias(index)
            pre.append(a)
            if index < last:
                h = self.act(a)
                acts.append(h)
        return ForwardCache(inputs=x, pre_activations=pre, activations=acts)

    def forward(self, x: np.ndarray) -> np.ndarray:
        """Выход сети (B, out) или (out,) для одиночного входа."""
        _, single = self._check_input(x)
        y = self.forward_cache(x).output
        return y[0] if single else y

    __call__ = forward

    def backward(self, cache: ForwardCache, upstream: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Градиенты скалярной функции L по параметрам и входу при известном ∂L/∂y.

        Args:
            cache (:obj:`camp_locomotion.nn.mlp.ForwardCache`): Результат :meth:`forward_cache`.
            upstream (:obj:`numpy.ndarray`): ∂L/∂y формы (B, out).

        Returns:
            :obj:`tuple`: Градиент по параметрам (плоский) и по входу (B, in).
        """
        upstream = np.asarray(upstream, dtype=np.float64).reshape(cache.output.shape)
        return self._backprop(cache, [None] * self.spec.layer_count, upstream)

    def _backprop(
        self, cache: ForwardCache, injected: List[Optional[np.ndarray]], upstream: Optional[np.ndarray]
    ) -> Tuple[np.ndarray, np.ndarray]:
        grad = np.zeros_like(self.params)
        last = self.spec.layer_count - 1
        adjoint = upstream if upstream is not None else np.zeros_like(cache.output)
        for index in range(last, -1, -1):
            if injected[index] is not None:
                adjoint = adjoint + injected[index]
            w, _, b = self._slices[index]
            grad[w] = (adjoint.T @ cache.activations[index]).ravel()
            grad[b] = adjoint.sum(axis=0)
            h_adjoint = adjoint @ self.weight(index)
            if index > 0:
                adjoint = h_adjoint * self.act_d1(cache.pre_activations[index - 1])
        return grad, h_adjoint

    def input_gradient(self, x: np.ndarray, upstream: Optional[np.ndarray] = None) -> np.ndarray:
        """∂(Σ upstream · y)/∂x; для скалярного выхода по умолчанию upstream = 1."""
        cache = self.forward_cache(x)
        if upstream is None:
            upstream = np.ones_like(cache.output)
        return self.backward(cache, upstream)[1]

    def gradient_penalty(
        self,
        x: np.ndarray,
        sample_weights: Optional[np.ndarray] = None,
        input_mask: Optional[np.ndarray] = None,
        cache: Optional[ForwardCache] = None,
    ) -> PenaltyResult:
        """Штраф Σ_b w_b Σ_k ‖m ⊙ ∂y_k/∂x_b‖² и его точные градиенты (двойное обратное распространение).

        Note:
            Для векторного выхода штраф суммируется по выходам (квадрат нормы Фробениуса якобиана).

        Args:
            x (:obj:`numpy.ndarray`): Входы (B, in).
            sample_weights (:obj:`numpy.ndarray`, optional): Веса примеров w_b, по умолчанию 1/B.
            input_mask (:obj:`numpy.ndarray`, optional): Маска (in,) входных координат, входящих в штраф.
            cache (:obj:`camp_locomotion.nn.mlp.ForwardCache`, optional): Готовый прямой проход для `x`.

        Returns:
            :obj:`camp_locomotion.nn.mlp.PenaltyResult`: Значение и градиенты.
        """
        cache = cache or self.forward_cache(x)
        batch = len(cache.inputs)
        weights = np.full(batch, 1.0 / batch) if sample_weights is None else np.asarray(sample_weights, np.float64)
        mask = np.ones(self.spec.input_dim) if input_mask is None else np.asarray(input_mask, dtype=np.float64)

        last = self.spec.layer_count - 1
        d1 = [self.act_d1(a) for a in cache.pre_activations[:last]]
        d2 = [self.act_d2(a) for a in cache.pre_activations[:last]]

        value = 0.0
        param_grad = np.zeros_like(self.params)
        input_grad = np.zeros_like(cache.inputs)

        for k in range(self.spec.output_dim):
            # backward graph: g[l] = ∂y_k/∂h_l, delta[l] = g[l] * σ'(a_l)
            g: List[np.ndarray] = [np.empty(0)] * (last + 1)
            delta: List[np.ndarray] = [np.empty(0)] * last
            g[last] = np.broadcast_to(self.weight(last)[k], (batch, self.spec.layer_sizes[last])).copy()
            for index in range(last, 0, -1):
                delta[index - 1] = g[index] * d1[index - 1]
                g[index - 1] = delta[index - 1] @ self.weight(index - 1)

            masked = g[0] * mask
            value += float(np.sum(weights * np.sum(masked**2, axis=1)))

            # reverse pass through the backward graph
            g_adj = 2.0 * weights[:, None] * masked * mask
            injected: List[Optional[np.ndarray]] = [None] * (last + 1)
            grad_k = np.zeros_like(self.params)
            for index in range(1, last + 1):
                w, _, _ = self._slices[index - 1]
                grad_k[w] += (delta[index - 1].T @ g_adj).ravel()
                delta_adj = g_adj @ self.weight(index - 1).T
                injected[index - 1] = delta_adj * g[index] * d2[index - 1]
                g_adj = delta_adj * d1[index - 1]
            w_last, _, _ = self._slices[last]
            grad_k[w_last] += np.outer(np.eye(self.spec.output_dim)[k], g_adj.sum(axis=0)).ravel()

            forward_grad, x_adj = self._backprop(cache, injected, None)
            param_grad += grad_k + forward_grad
            input_grad += x_adj

        return PenaltyResult(value=value, param_grad=param_grad, input_grad=input_grad)
