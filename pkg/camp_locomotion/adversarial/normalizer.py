import logging
from dataclasses import dataclass
from typing import Dict, Sequence, Union

import numpy as np

from camp_locomotion.exceptions import DataError, NonFiniteError
from camp_locomotion.motion.amp_feature import AMP_FEATURE_DIM
from camp_locomotion.motion.transition_buffer import TransitionBatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RawFeatures:
    """AMP признаки до нормализации, (B, 43)."""

    values: np.ndarray


@dataclass(frozen=True)
class NormalizedFeatures:
    """AMP признаки после нормализации, (B, 43). Повторная нормализация запрещена."""

    values: np.ndarray


@dataclass
class NormalizedBatch:
    """Пакет нормализованных переходов, который принимают оба дискриминатора.

    Attributes:
        s_t (:obj:`camp_locomotion.adversarial.normalizer.NormalizedFeatures`): Текущие состояния.
        s_next (:obj:`camp_locomotion.adversarial.normalizer.NormalizedFeatures`): Следующие состояния.
        labels (:obj:`numpy.ndarray`): Метки навыков (B,).
    """

    s_t: NormalizedFeatures
    s_next: NormalizedFeatures
    labels: np.ndarray

    def __post_init__(self) -> None:
        self.labels = np.asarray(self.labels, dtype=np.int64).reshape(-1)
        if not len(self.s_t.values) == len(self.s_next.values) == len(self.labels):
            raise DataError('Normalized batch arrays differ in length')

    def __len__(self) -> int:
        return len(self.labels)

    def transitions(self) -> np.ndarray:
        """(B, 86) склеенные (s_t, s_next)."""
        return np.concatenate([self.s_t.values, self.s_next.values], axis=1)

    def take(self, indices: np.ndarray) -> 'NormalizedBatch':
        return NormalizedBatch(
            NormalizedFeatures(self.s_t.values[indices]),
            NormalizedFeatures(self.s_next.values[indices]),
            self.labels[indices],
        )

    @classmethod
    def concat(cls, batches: Sequence['NormalizedBatch']) -> 'NormalizedBatch':
        return cls(
            NormalizedFeatures(np.concatenate([b.s_t.values for b in batches])),
            NormalizedFeatures(np.concatenate([b.s_next.values for b in batches])),
            np.concatenate([b.labels for b in batches]),
        )


class FeatureNormalizer:
    """Скользящая оценка среднего и дисперсии каждой координаты AMP признака.

    Note:
        Статистики общие для экспертных и политических выборок. Дисперсия ограничена снизу `eps`.
        Нормализация принимает только :class:`RawFeatures` и возвращает :class:`NormalizedFeatures`, поэтому
        признак не может быть нормализован дважды.

    Args:
        dim (:obj:`int`, optional): Размерность признака.
        eps (:obj:`float`, optional): Нижняя граница дисперсии.
        clip (:obj:`float`, optional): Ограничение нормализованных значений по модулю, 0 отключает.
    """

    def __init__(self, dim: int = AMP_FEATURE_DIM, eps: float = 1e-4, clip: float = 0.0) -> None:
        self.dim = dim
        self.eps = eps
        self.clip = clip
        self.count = 0.0
        self.mean = np.zeros(dim)
        self.var = np.ones(dim)

    @property
    def std(self) -> np.ndarray:
        return np.sqrt(np.maximum(self.var, self.eps))

    def update(self, features: Union[RawFeatures, TransitionBatch]) -> None:
        """Объединяет статистики с новой выборкой (параллельная формула Уэлфорда)."""
        if isinstance(features, TransitionBatch):
            values = np.concatenate([features.s_t, features.s_next])
        elif isinstance(features, RawFeatures):
            values = np.asarray(features.values, dtype=np.float64).reshape(-1, self.dim)
        else:
            raise TypeError(f'Normalizer statistics accept raw features only, got {type(features).__name__}')
        if not len(values):
            return
        if not np.all(np.isfinite(values)):
            raise NonFiniteError('Non-finite AMP features passed to normalizer')

        batch_count = float(len(values))
        batch_mean = values.mean(axis=0)
        batch_var = values.var(axis=0)

        total = self.count + batch_count
        delta = batch_mean - self.mean
        m2 = self.var * self.count + batch_var * batch_count + delta**2 * self.count * batch_count / total
        self.mean = self.mean + delta * batch_count / total
        self.var = m2 / total
        self.count = total

    def normalize(self, features: RawFeatures) -> NormalizedFeatures:
        if isinstance(features, NormalizedFeatures):
            raise TypeError('Features are already normalized')
        if not isinstance(features, RawFeatures):
            raise TypeError(f'Expected RawFeatures, got {type(features).__name__}')

        values = (np.asarray(features.values, dtype=np.float64) - self.mean) / self.std
        if self.clip > 0:
            values = np.clip(values, -self.clip, self.clip)
        return NormalizedFeatures(values)

    def normalize_batch(self, batch: TransitionBatch) -> NormalizedBatch:
        return NormalizedBatch(
            self.normalize(RawFeatures(batch.s_t)), self.normalize(RawFeatures(batch.s_next)), batch.labels
        )

    def to_arrays(self, prefix: str) -> Dict[str, np.ndarray]:
        return {f'{prefix}mean': self.mean, f'{prefix}var': self.var, f'{prefix}count': np.array([self.count])}

    def load_arrays(self, arrays: Dict[str, np.ndarray], prefix: str) -> None:
        self.mean = arrays[f'{prefix}mean'].copy()
        self.var = arrays[f'{prefix}var'].copy()
        self.count = float(arrays[f'{prefix}count'][0])
