import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from camp_locomotion.exceptions import DataError, EmptySelectionError
from camp_locomotion.motion.amp_feature import AMP_FEATURE_DIM, AmpFeature, clip_amp_features
from camp_locomotion.motion.motion_clip import MotionClip
from camp_locomotion.utils.log import log
from camp_locomotion.utils.seeding import SeedLike, make_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransitionPair:
    """Класс, представляющий пару последовательных состояний одного клипа.

    Attributes:
        s_t (:obj:`camp_locomotion.AmpFeature`): Текущее состояние.
        s_next (:obj:`camp_locomotion.AmpFeature`): Следующее состояние.
        label (:obj:`int`): Метка навыка.
    """

    s_t: AmpFeature
    s_next: AmpFeature
    label: int


@dataclass
class TransitionBatch:
    """Пакет пар переходов в виде массивов.

    Attributes:
        s_t (:obj:`numpy.ndarray`): (B, 43).
        s_next (:obj:`numpy.ndarray`): (B, 43).
        labels (:obj:`numpy.ndarray`): (B,) метки навыков.
    """

    s_t: np.ndarray
    s_next: np.ndarray
    labels: np.ndarray

    def __post_init__(self) -> None:
        self.s_t = np.asarray(self.s_t, dtype=np.float64).reshape(-1, AMP_FEATURE_DIM)
        self.s_next = np.asarray(self.s_next, dtype=np.float64).reshape(-1, AMP_FEATURE_DIM)
        self.labels = np.asarray(self.labels, dtype=np.int64).reshape(-1)
        if not len(self.s_t) == len(self.s_next) == len(self.labels):
            raise DataError('Transition batch arrays differ in length')

    def __len__(self) -> int:
        return len(self.labels)

    def pair(self, index: int) -> TransitionPair:
        return TransitionPair(
            s_t=AmpFeature.unflatten(self.s_t[index]),
            s_next=AmpFeature.unflatten(self.s_next[index]),
            label=int(self.labels[index]),
        )

    @property
    def pairs(self) -> List[TransitionPair]:
        return [self.pair(i) for i in range(len(self))]

    def transitions(self) -> np.ndarray:
        """Склеенные входы (s_t, s_next) формы (B, 86)."""
        return np.concatenate([self.s_t, self.s_next], axis=1)

    def take(self, indices: np.ndarray) -> 'TransitionBatch':
        return TransitionBatch(self.s_t[indices], self.s_next[indices], self.labels[indices])

    @classmethod
    def concat(cls, batches: Sequence['TransitionBatch']) -> 'TransitionBatch':
        return cls(
            np.concatenate([b.s_t for b in batches]),
            np.concatenate([b.s_next for b in batches]),
            np.concatenate([b.labels for b in batches]),
        )


@dataclass
class TransitionBuffer:
    """Класс, представляющий предзагруженный буфер экспертных переходов.

    Note:
        Буфер неизменяем после создания и может читаться из нескольких потоков. Списки индексов по меткам
        разбивают буфер на непересекающиеся части.

    Attributes:
        pairs (:obj:`camp_locomotion.TransitionBatch`): Все пары.
        label_indices (:obj:`dict`): Метка -> индексы пар с этой меткой.
    """

    pairs: TransitionBatch
    label_indices: Dict[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.label_indices:
            self.label_indices = {
                int(label): np.flatnonzero(self.pairs.labels == label) for label in np.unique(self.pairs.labels)
            }

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def labels(self) -> List[int]:
        return sorted(self.label_indices)

    def label_counts(self) -> Dict[int, int]:
        return {label: len(indices) for label, indices in self.label_indices.items()}


@log
def preload_transitions(clips: Sequence[MotionClip], n_per_clip: int, rng: SeedLike = 0) -> TransitionBuffer:
    """Равномерно выбирает пары последовательных кадров из каждого клипа и загружает их в память.

    Args:
        clips (:obj:`Sequence` из :obj:`camp_locomotion.MotionClip`): Эталонные клипы.
        n_per_clip (:obj:`int`): Число пар на клип (выборка с возвращением).
        rng (:obj:`int` | :obj:`numpy.random.Generator`, optional): Генератор или зерно.

    Returns:
        :obj:`camp_locomotion.TransitionBuffer`: Буфер переходов.

    Raises:
        :class:`camp_locomotion.exceptions.EmptySelectionError`: Пустой список клипов.
        :class:`camp_locomotion.exceptions.DataError`: Клип короче двух кадров.
    """
    if not clips:
        raise EmptySelectionError('Cannot preload transitions from an empty clip list')
    if n_per_clip < 1:
        raise DataError(f'n_per_clip must be >= 1, got {n_per_clip}')

    generator = make_rng(rng)
    batches = []
    for clip in clips:
        features = clip_amp_features(clip)
        starts = generator.integers(0, len(clip) - 1, size=n_per_clip)
        batches.append(TransitionBatch(features[starts], features[starts + 1], np.full(n_per_clip, clip.label)))

    buffer = TransitionBuffer(TransitionBatch.concat(batches))
    logger.debug(f'Preloaded {len(buffer)} transitions for labels {buffer.labels}')

    return buffer


def sample_expert(
    buffer: TransitionBuffer, batch: int, label_filter: Optional[int] = None, rng: SeedLike = None
) -> TransitionBatch:
    """Выборка с возвращением из буфера, равномерная по парам.

    Args:
        buffer (:obj:`camp_locomotion.TransitionBuffer`): Буфер переходов.
        batch (:obj:`int`): Размер выборки.
        label_filter (:obj:`int`, optional): Ограничить выборку одной меткой.
        rng (:obj:`numpy.random.Generator`, optional): Генератор случайных чисел вызывающей стороны.

    Returns:
        :obj:`camp_locomotion.TransitionBatch`: Пакет пар.

    Raises:
        :class:`camp_locomotion.exceptions.EmptySelectionError`: Фильтр не совпал ни с одной парой.
    """
    if batch < 1:
        raise DataError(f'batch must be >= 1, got {batch}')

    generator = make_rng(rng)
    if label_filter is None:
        pool = np.arange(len(buffer))
    else:
        pool = buffer.label_indices.get(int(label_filter), np.empty(0, dtype=np.int64))

    if len(pool) == 0:
        raise EmptySelectionError(f'No expert transitions match label {label_filter}')

    return buffer.pairs.take(pool[generator.integers(0, len(pool), size=batch)])


def sample_expert_for_labels(
    buffer: TransitionBuffer, labels: np.ndarray, rng: SeedLike = None
) -> TransitionBatch:
    """Для каждой метки из `labels` выбирает одну экспертную пару с той же меткой."""
    generator = make_rng(rng)
    labels = np.asarray(labels, dtype=np.int64)
    indices = np.empty(len(labels), dtype=np.int64)
    for label in np.unique(labels):
        pool = buffer.label_indices.get(int(label))
        if pool is None or len(pool) == 0:
            raise EmptySelectionError(f'No expert transitions match label {label}')
        where = np.flatnonzero(labels == label)
        indices[where] = pool[generator.integers(0, len(pool), size=len(where))]
    return buffer.pairs.take(indices)
